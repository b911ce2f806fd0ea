//! Quadrature oracles for the closed-form kernels.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{deformed_center, h1_amplitude, wedge, KernelArgs, PI4};
use crate::error::{ensure_finite_c, Error, Result};
use crate::specfun::{CircleRule, QuadratureSpec};
use crate::tomo_transform::{MeasureConvention, TomoPoint};

/// The circle integral preceding the Bessel step:
///
/// `e^{i(X1+X2)}/((1-h^2) pi^4) int delta(X3 - |z3 - m3|^2)
///  exp(-i[2|z3 - (A, B)/2|^2 - (A^2 + B^2)/2 + S + 2hW]/(1-h^2)) d^2 z3`
///
/// with `W = mu1 nu2 - mu2 nu1`. The delta is resolved on the circle of
/// radius `sqrt(X3)` about `m3` under `conv` and the angle is integrated by
/// the `spec.node_count`-point periodic rule.
pub fn quadratic_kernel_oracle(args: &KernelArgs, conv: MeasureConvention, spec: &QuadratureSpec) -> Result<Complex64> {
    args.validate()?;
    spec.validate()?;
    let h = args.h.value();
    if h.abs() >= 1.0 {
        return Err(Error::Domain(format!("quadratic_kernel_oracle needs |h| < 1, got {h}")));
    }
    let (x1, x2, x3) = (args.x1, args.x2, args.x3);
    let d = 1.0 - h * h;
    let (a, b, s) = deformed_center(x1, x2, h);
    let offset = s - 0.5 * (a * a + b * b) + 2.0 * h * wedge(x1, x2);
    let integrand = |q: f64, p: f64| {
        let dq = q - 0.5 * a;
        let dp = p - 0.5 * b;
        Complex64::from_polar(1.0, -(2.0 * (dq * dq + dp * dp) + offset) / d)
    };
    let prefactor = Complex64::from_polar(conv.circle_weight() / (d * PI4), x1.x + x2.x);
    let total = if x3.x == 0.0 {
        integrand(x3.mu, x3.nu) * (2.0 * PI)
    } else {
        let r = x3.x.sqrt();
        CircleRule::new(spec.node_count).integrate(|c, sn| integrand(x3.mu + r * c, x3.nu + r * sn))
    };
    ensure_finite_c(prefactor * total, "quadratic_kernel_oracle")
}

/// `oracle / closed form` at `h = 0`: `pi` for the standard measure, `1`
/// for the paper measure.
pub fn oracle_constant(conv: MeasureConvention) -> f64 {
    2.0 * PI * conv.circle_weight()
}

/// `e^{-2ihW/(1-h^2)}`, the phase carried by the circle integral but absent
/// from the closed form. With it,
/// `oracle = oracle_constant(conv) * k3_phase(args) * quadratic_kernel(args)`.
pub fn k3_phase(args: &KernelArgs) -> Complex64 {
    let h = args.h.value();
    Complex64::from_polar(1.0, -2.0 * h * wedge(args.x1, args.x2) / (1.0 - h * h))
}

/// `S(x1, x2, x3) = int K(x1, z, x3) K(y, x2, z) k(y) dy dz` with the `h = 1`
/// singular kernels and `k(Y, alpha, beta) = delta(Y) delta(alpha) delta(beta)`.
///
/// The deltas of `k` set `y = 0`; the delta of the second kernel fixes
/// `Z = ((mu2 + nu2 - 2gamma)^2 + (nu2 - mu2 - 2zeta)^2)/4` with co-area
/// factor `1/4`; the delta of the first kernel is a circle of radius
/// `sqrt(2 X3)` about `(mu3 + nu1 - nu3, mu3 - mu1 + nu3)` in `(gamma, zeta)`,
/// contributing another `1/4` times the angular integral.
pub fn k_deformed_oracle(x1: TomoPoint, x2: TomoPoint, x3: TomoPoint, spec: &QuadratureSpec) -> Result<Complex64> {
    x1.validate()?;
    x2.validate()?;
    x3.validate()?;
    spec.validate()?;
    let second = h1_amplitude(TomoPoint::ORIGIN, x2)?;
    let g0 = (x3.mu + x1.nu - x3.nu, x3.mu - x1.mu + x3.nu);
    let first = |gamma: f64, zeta: f64| {
        let big_z = 0.25 * ((x2.mu + x2.nu - 2.0 * gamma).powi(2) + (x2.nu - x2.mu - 2.0 * zeta).powi(2));
        let z = TomoPoint {
            x: big_z,
            mu: gamma,
            nu: zeta,
        };
        h1_amplitude(x1, z).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    };
    let angular = if x3.x == 0.0 {
        first(g0.0, g0.1) * (2.0 * PI)
    } else {
        let r = (2.0 * x3.x).sqrt();
        CircleRule::new(spec.node_count).integrate(|c, s| first(g0.0 + r * c, g0.1 + r * s))
    };
    ensure_finite_c(angular * second / 16.0, "k_deformed_oracle")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{k_deformed_kernel, quadratic_kernel, singular_kernel_h1};
    use crate::phase_space::Deformation;

    fn tp(x: f64, mu: f64, nu: f64) -> TomoPoint {
        TomoPoint::new(x, mu, nu).unwrap()
    }

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default().with_nodes(512)
    }

    #[test]
    fn oracle_matches_closed_form_at_zero_h() {
        let a = KernelArgs::new(
            tp(0.7, 1.1, -0.4),
            tp(2.0, -0.3, 2.2),
            tp(3.1, 0.6, 0.9),
            Deformation::CLASSICAL,
        )
        .unwrap();
        let k = quadratic_kernel(&a).unwrap();
        for conv in [MeasureConvention::Standard, MeasureConvention::Paper] {
            let o = quadratic_kernel_oracle(&a, conv, &spec()).unwrap();
            assert!((o / k - oracle_constant(conv)).norm() < 1e-10, "{conv}: {}", o / k);
        }
    }

    #[test]
    fn phase_term_explains_nonzero_h() {
        let a = KernelArgs::new(
            tp(0.7, 1.1, -0.4),
            tp(2.0, -0.3, 2.2),
            tp(3.1, 0.6, 0.9),
            Deformation::new(0.3).unwrap(),
        )
        .unwrap();
        let k = quadratic_kernel(&a).unwrap();
        let o = quadratic_kernel_oracle(&a, MeasureConvention::Standard, &spec()).unwrap();
        let ratio = o / k;
        assert!((ratio - PI).norm() > 0.1);
        assert!((ratio / k3_phase(&a) - PI).norm() < 1e-10);
    }

    #[test]
    fn degenerate_circle() {
        let a = KernelArgs::new(
            tp(0.2, 0.5, 0.1),
            tp(1.0, -1.0, 0.3),
            tp(0.0, 0.4, -0.8),
            Deformation::CLASSICAL,
        )
        .unwrap();
        let k = quadratic_kernel(&a).unwrap();
        let o = quadratic_kernel_oracle(&a, MeasureConvention::Paper, &spec()).unwrap();
        assert!((o - k).norm() < 1e-12 * k.norm());
    }

    #[test]
    fn composition_lands_on_both_deltas() {
        let (x1, x2, x3) = (tp(0.3, 0.8, -1.2), tp(1.1, 0.4, 0.9), tp(2.3, -0.5, 0.6));
        let g0 = (x3.mu + x1.nu - x3.nu, x3.mu - x1.mu + x3.nu);
        let r = (2.0 * x3.x).sqrt();
        for phi in [0.0, 1.0, 2.5, 4.0] {
            let (gamma, zeta) = (g0.0 + r * f64::cos(phi), g0.1 + r * f64::sin(phi));
            let big_z = 0.25 * ((x2.mu + x2.nu - 2.0 * gamma).powi(2) + (x2.nu - x2.mu - 2.0 * zeta).powi(2));
            let z = tp(big_z, gamma, zeta);
            assert!(singular_kernel_h1(x1, z, x3).unwrap().delta_argument.abs() < 1e-12);
            assert!(
                singular_kernel_h1(TomoPoint::ORIGIN, x2, z)
                    .unwrap()
                    .delta_argument
                    .abs()
                    < 1e-12
            );
        }
    }

    #[test]
    fn k_deformed_oracle_matches() {
        let (x1, x2, x3) = (tp(0.3, 0.8, -1.2), tp(1.1, 0.4, 0.9), tp(2.3, -0.5, 0.6));
        let o = k_deformed_oracle(x1, x2, x3, &spec()).unwrap();
        let k = k_deformed_kernel(x1, x2, x3).unwrap();
        assert!((o / k - 1.0).norm() < 1e-10, "{}", o / k);
        let o0 = k_deformed_oracle(x1, x2, tp(0.0, -0.5, 0.6), &spec()).unwrap();
        let k0 = k_deformed_kernel(x1, x2, tp(0.0, -0.5, 0.6)).unwrap();
        assert!((o0 - k0).norm() < 1e-12 * k0.norm());
    }
}
