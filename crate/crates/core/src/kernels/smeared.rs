//! Kernels integrated against Gaussian test functions of `x3`.
//!
//! Near `h = 1` the quadratic kernel oscillates at frequency `~ 1/(1-h^2)`
//! and only its action on smooth functions has a limit. Every kernel except
//! the first-order one depends on `m3` only through `|m3 - kappa|` for a
//! kernel-specific center `kappa`, so with `X3 = u^2` and
//! `m3 = kappa + rho (cos theta, sin theta)` the action is
//!
//! `int 2u du rho drho K(u^2, rho) int g(u^2) c(kappa + rho e^{i theta}) dtheta`
//!
//! for a separable test `g(X) c(m)`. The angular factor is tabulated once per
//! `rho` node. In `(u, rho)` the kernel phase has bounded derivatives, which
//! keeps the panel width uniform.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{
    classical_kernel, deformed_center, first_order_coefficient, h1_amplitude, h1_center, k_deformed_kernel,
    quadratic_kernel, KernelArgs, KernelId,
};
use crate::error::{ensure_finite_c, Error, Result};
use crate::phase_space::Deformation;
use crate::specfun::{panel_grid, CircleRule, QuadratureSpec};
use crate::tomo_transform::{TomoGaussian, TomoPoint, TomoSymbol};

/// Test widths covered on each side of the center.
const REACH: f64 = 6.5;

/// Largest phase change across one 16-point Gauss-Legendre panel.
const PANEL_PHASE: f64 = 12.0;

/// `int K(x1, x2, x3) test(x3) dX3 dmu3 dnu3`.
///
/// `h` is used by [`KernelId::Quantum`] only. The `h1-singular` action is
/// [`singular_action_h1`]. Errors if the quadrature produces a non-finite
/// value or `h` is outside the kernel's domain.
pub fn smeared_kernel_action(
    kernel: KernelId,
    x1: TomoPoint,
    x2: TomoPoint,
    h: Deformation,
    test: &TomoGaussian,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    x1.validate()?;
    x2.validate()?;
    spec.validate()?;
    match kernel {
        KernelId::Quantum => {
            let hv = h.value();
            if hv.abs() >= 1.0 {
                return Err(Error::Domain(format!("quantum kernel action needs |h| < 1, got {hv}")));
            }
            let (a, b, _) = deformed_center(x1, x2, hv);
            let d = 1.0 - hv * hv;
            radial_action(
                |x3| quadratic_kernel(&KernelArgs { x1, x2, x3, h }),
                (0.5 * a, 0.5 * b),
                4.0 / d,
                test,
                spec,
            )
        }
        KernelId::Classical => {
            let (a, b, _) = deformed_center(x1, x2, 0.0);
            radial_action(|x3| classical_kernel(x1, x2, x3), (0.5 * a, 0.5 * b), 4.0, test, spec)
        }
        KernelId::KDeformed => {
            let kappa = (x2.nu - x1.nu, x1.mu - x2.mu);
            radial_action(|x3| k_deformed_kernel(x1, x2, x3), kappa, 2.0, test, spec)
        }
        KernelId::FirstOrder => {
            let (a, b, _) = deformed_center(x1, x2, 0.0);
            full_action(
                |x3| first_order_coefficient(x1, x2, x3),
                (0.5 * a, 0.5 * b),
                4.0,
                test,
                spec,
            )
        }
        KernelId::H1Singular => singular_action_h1(x1, x2, test, spec),
    }
}

/// Action of the `h = 1` kernel. The delta fixes `X3 = |m3 - (A, B)/2|^2`
/// with co-area factor `1/4`, leaving
/// `(amplitude/4) int test(|m3 - (A, B)/2|^2, m3) d^2 m3`.
pub fn singular_action_h1(
    x1: TomoPoint,
    x2: TomoPoint,
    test: &TomoGaussian,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    spec.validate()?;
    let amplitude = h1_amplitude(x1, x2)?;
    let (a, b) = h1_center(x1, x2);
    let kappa = (0.5 * a, 0.5 * b);
    let (lo, hi) = radial_range(kappa, test);
    let (rhos, wrhos) = panel_grid(lo, hi, spec.node_count.max(panels_for(hi - lo, 4.0 / test.width)));
    let rule = angle_rule(kappa, hi, test, spec);
    let mut total = Complex64::new(0.0, 0.0);
    for (&rho, &w) in rhos.iter().zip(&wrhos) {
        let ring = rule.integrate(|c, s| {
            test.eval(TomoPoint {
                x: rho * rho,
                mu: kappa.0 + rho * c,
                nu: kappa.1 + rho * s,
            })
        });
        total += ring * (w * rho);
    }
    ensure_finite_c(amplitude * total * 0.25, "singular_action_h1")
}

fn radial_range(kappa: (f64, f64), test: &TomoGaussian) -> (f64, f64) {
    let delta = (test.center.mu - kappa.0).hypot(test.center.nu - kappa.1);
    let reach = REACH * test.width;
    ((delta - reach).max(0.0), delta + reach)
}

fn angle_rule(kappa: (f64, f64), rho_max: f64, test: &TomoGaussian, spec: &QuadratureSpec) -> CircleRule {
    // the ring integrand has Fourier content up to ~ 2 rho delta / width^2
    let delta = (test.center.mu - kappa.0).hypot(test.center.nu - kappa.1);
    let spread = 2.0 * rho_max * delta / (test.width * test.width);
    let n = spec.node_count.max(32 + (2.0 * spread).ceil() as usize);
    CircleRule::new(n.next_multiple_of(2))
}

fn panels_for(length: f64, freq: f64) -> usize {
    let width = (PANEL_PHASE / freq).min(1.0);
    16 * (length / width).ceil().max(1.0) as usize
}

fn sqrt_x_range(test: &TomoGaussian) -> (f64, f64) {
    let reach = REACH * test.width;
    let lo = (test.center.x - reach).max(0.0).sqrt();
    let hi = (test.center.x + reach).sqrt();
    (lo, hi)
}

/// `scale` bounds the kernel phase derivative per unit of `u + rho`.
fn radial_action<K>(
    kernel: K,
    kappa: (f64, f64),
    scale: f64,
    test: &TomoGaussian,
    spec: &QuadratureSpec,
) -> Result<Complex64>
where
    K: Fn(TomoPoint) -> Result<Complex64>,
{
    let (ulo, uhi) = sqrt_x_range(test);
    let (rlo, rhi) = radial_range(kappa, test);
    let freq = scale * (uhi + rhi) + 2.0 * (uhi + rhi) / test.width + 4.0;
    let (us, wus) = panel_grid(ulo, uhi, spec.node_count.max(panels_for(uhi - ulo, freq)));
    let (rhos, wrhos) = panel_grid(rlo, rhi, spec.node_count.max(panels_for(rhi - rlo, freq)));
    let rule = angle_rule(kappa, rhi, test, spec);
    let rings: Vec<f64> = rhos
        .iter()
        .map(|&rho| {
            rule.integrate(|c, s| Complex64::new(test.center_factor(kappa.0 + rho * c, kappa.1 + rho * s), 0.0))
                .re
        })
        .collect();
    let mut total = Complex64::new(0.0, 0.0);
    for (&u, &wu) in us.iter().zip(&wus) {
        let gx = test.x_factor(u * u);
        if gx == 0.0 {
            continue;
        }
        let mut row = Complex64::new(0.0, 0.0);
        for ((&rho, &wr), &ring) in rhos.iter().zip(&wrhos).zip(&rings) {
            let k = kernel(TomoPoint {
                x: u * u,
                mu: kappa.0 + rho,
                nu: kappa.1,
            })?;
            row += k * (wr * rho * ring);
        }
        total += row * (2.0 * u * wu * gx);
    }
    ensure_finite_c(total * test.amplitude, "smeared_kernel_action")
}

/// Same coordinates as [`radial_action`] without assuming radial symmetry.
fn full_action<K>(
    kernel: K,
    kappa: (f64, f64),
    scale: f64,
    test: &TomoGaussian,
    spec: &QuadratureSpec,
) -> Result<Complex64>
where
    K: Fn(TomoPoint) -> Result<Complex64>,
{
    let (ulo, uhi) = sqrt_x_range(test);
    let (rlo, rhi) = radial_range(kappa, test);
    let freq = scale * (uhi + rhi) + 2.0 * (uhi + rhi) / test.width + 4.0;
    let (us, wus) = panel_grid(ulo, uhi, spec.node_count.max(panels_for(uhi - ulo, freq)));
    let (rhos, wrhos) = panel_grid(rlo, rhi, spec.node_count.max(panels_for(rhi - rlo, freq)));
    let rule = angle_rule(kappa, rhi, test, spec);
    let mut total = Complex64::new(0.0, 0.0);
    for (&u, &wu) in us.iter().zip(&wus) {
        let mut row = Complex64::new(0.0, 0.0);
        for (&rho, &wr) in rhos.iter().zip(&wrhos) {
            let mut ring = Complex64::new(0.0, 0.0);
            for &(c, s) in rule.nodes() {
                let x3 = TomoPoint {
                    x: u * u,
                    mu: kappa.0 + rho * c,
                    nu: kappa.1 + rho * s,
                };
                ring += kernel(x3)? * test.eval(x3);
            }
            row += ring * (wr * rho);
        }
        total += row * (2.0 * u * wu);
    }
    let angle_weight = 2.0 * PI / rule.len() as f64;
    ensure_finite_c(total * angle_weight, "smeared_kernel_action")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::GaussLegendre;

    fn tp(x: f64, mu: f64, nu: f64) -> TomoPoint {
        TomoPoint::new(x, mu, nu).unwrap()
    }

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default().with_nodes(64)
    }

    /// Plain product Gauss-Legendre over a box in `(X3, mu3, nu3)`.
    fn box_action<K: Fn(TomoPoint) -> Complex64>(k: K, test: &TomoGaussian, n: usize) -> Complex64 {
        let rule = GaussLegendre::new(16);
        let reach = REACH * test.width;
        let c = test.center;
        let (xs, wx) = rule.composite((c.x - reach).max(0.0), c.x + reach, n);
        let (ms, wm) = rule.composite(c.mu - reach, c.mu + reach, n);
        let (ns, wn) = rule.composite(c.nu - reach, c.nu + reach, n);
        let mut total = Complex64::new(0.0, 0.0);
        for (&x, &a) in xs.iter().zip(&wx) {
            for (&mu, &b) in ms.iter().zip(&wm) {
                for (&nu, &w) in ns.iter().zip(&wn) {
                    let p = TomoPoint { x, mu, nu };
                    total += k(p) * test.eval(p) * (a * b * w);
                }
            }
        }
        total
    }

    #[test]
    fn zero_test_function() {
        let test = TomoGaussian::new(tp(1.0, 0.2, 0.1), 0.5, Complex64::new(0.0, 0.0)).unwrap();
        let (x1, x2) = (tp(0.2, 0.3, 0.4), tp(0.5, -0.1, 0.2));
        for id in KernelId::ALL {
            let v = smeared_kernel_action(id, x1, x2, Deformation::new(0.5).unwrap(), &test, &spec()).unwrap();
            assert_eq!(v.norm(), 0.0, "{id}");
        }
    }

    #[test]
    fn radial_reduction_matches_box_quadrature() {
        let test = TomoGaussian::new(tp(1.5, 0.4, -0.2), 0.5, Complex64::new(1.0, 0.5)).unwrap();
        let (x1, x2) = (tp(0.2, 0.3, 0.4), tp(0.5, -0.1, 0.2));
        let h = Deformation::new(0.3).unwrap();
        let cases: [(KernelId, Box<dyn Fn(TomoPoint) -> Complex64>); 4] = [
            (
                KernelId::Quantum,
                Box::new(move |x3| quadratic_kernel(&KernelArgs { x1, x2, x3, h }).unwrap()),
            ),
            (
                KernelId::Classical,
                Box::new(move |x3| classical_kernel(x1, x2, x3).unwrap()),
            ),
            (
                KernelId::KDeformed,
                Box::new(move |x3| k_deformed_kernel(x1, x2, x3).unwrap()),
            ),
            (
                KernelId::FirstOrder,
                Box::new(move |x3| first_order_coefficient(x1, x2, x3).unwrap()),
            ),
        ];
        for (id, k) in cases {
            let reduced = smeared_kernel_action(id, x1, x2, h, &test, &spec()).unwrap();
            let direct = box_action(k, &test, 12);
            assert!(
                (reduced - direct).norm() < 1e-8 * direct.norm(),
                "{id}: {reduced} vs {direct}"
            );
        }
    }

    #[test]
    fn singular_action_on_and_off_manifold() {
        let (x1, x2) = (tp(0.3, 0.4, 0.2), tp(0.1, 0.8, 0.4));
        let (a, b) = h1_center(x1, x2);
        let m0 = (0.5 * a + 1.0, 0.5 * b);
        let on = TomoGaussian::new(tp(1.0, m0.0, m0.1), 0.3, Complex64::new(1.0, 0.0)).unwrap();
        // X = 0 and 2.5 away from kappa: nearest manifold point is 6 widths off
        let off = 2.5;
        let gap = (0..=2500)
            .map(|k| {
                let rho = k as f64 * 1e-3;
                (rho.powi(4) + (off - rho).powi(2)).sqrt()
            })
            .fold(f64::INFINITY, f64::min);
        assert!(gap > 5.0 * 0.3);
        let far = TomoGaussian::new(tp(0.0, 0.5 * a + off, 0.5 * b), 0.3, Complex64::new(1.0, 0.0)).unwrap();
        let v_on = singular_action_h1(x1, x2, &on, &spec()).unwrap();
        let v_far = singular_action_h1(x1, x2, &far, &spec()).unwrap();
        assert!(v_on.norm() > 1e-3);
        assert!(v_far.norm() < 1e-6 * v_on.norm(), "{v_far} vs {v_on}");
    }
}
