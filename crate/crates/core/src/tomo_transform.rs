//! Quadratic (circle) and symplectic (line) tomographic transforms.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite_c, Error, Result};
use crate::kernels::SingularKernel;
use crate::phase_space::{Deformation, PhasePoint, PhaseSymbol};
use crate::specfun::{damped_semiinfinite_integral, panel_grid, richardson_ladder, CircleRule, QuadratureSpec};

/// Circle parameters: squared radius `X` and center `(mu, nu)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TomoPoint {
    /// Squared radius `X >= 0`.
    #[serde(rename = "X")]
    pub x: f64,
    pub mu: f64,
    pub nu: f64,
}

impl TomoPoint {
    pub const ORIGIN: TomoPoint = TomoPoint {
        x: 0.0,
        mu: 0.0,
        nu: 0.0,
    };

    pub fn new(x: f64, mu: f64, nu: f64) -> Result<Self> {
        let t = TomoPoint { x, mu, nu };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.x.is_finite() && self.mu.is_finite() && self.nu.is_finite()) {
            return Err(Error::Domain(format!("non-finite tomographic point {self:?}")));
        }
        if self.x < 0.0 {
            return Err(Error::Domain(format!(
                "squared radius X = {} must be non-negative",
                self.x
            )));
        }
        Ok(())
    }

    pub fn center(&self) -> PhasePoint {
        PhasePoint::new(self.mu, self.nu)
    }
}

/// Normalization of the circle delta `delta(X - (q-mu)^2 - (p-nu)^2)`.
///
/// `Standard` is the planar measure, `int delta dq dp = (1/2) int dphi`,
/// under which tomograms integrate to one over `X`. `Paper` replaces the
/// factor by `1/(2 pi)`; its tomograms are the standard ones divided by `pi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureConvention {
    #[default]
    Standard,
    Paper,
}

impl MeasureConvention {
    /// Factor multiplying `int_0^{2pi} dphi` in the circle reduction.
    pub fn circle_weight(self) -> f64 {
        match self {
            MeasureConvention::Standard => 0.5,
            MeasureConvention::Paper => 0.5 / PI,
        }
    }

    /// Constant `c` of the inverse `f(z) = c int w(x) e^{i(X - |z - m|^2)} dx`.
    ///
    /// For `Paper` this is the `1/pi` of the transition function; the
    /// standard value follows from the Gaussian round trip.
    pub fn inverse_constant(self) -> f64 {
        match self {
            MeasureConvention::Standard => 1.0 / (PI * PI),
            MeasureConvention::Paper => 1.0 / PI,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            MeasureConvention::Standard => "standard",
            MeasureConvention::Paper => "paper",
        }
    }
}

impl fmt::Display for MeasureConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MeasureConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(MeasureConvention::Standard),
            "paper" => Ok(MeasureConvention::Paper),
            other => Err(Error::Domain(format!(
                "unknown measure convention '{other}' (expected standard or paper)"
            ))),
        }
    }
}

/// A complex function on tomographic parameter space.
pub trait TomoSymbol: Sync {
    fn eval(&self, x: TomoPoint) -> Complex64;
}

impl<F> TomoSymbol for F
where
    F: Fn(TomoPoint) -> Complex64 + Sync,
{
    fn eval(&self, x: TomoPoint) -> Complex64 {
        self(x)
    }
}

/// `amplitude * exp(-((X - X0)^2 + (mu - mu0)^2 + (nu - nu0)^2) / width^2)`,
/// the smooth test function for smeared kernel actions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TomoGaussian {
    pub center: TomoPoint,
    pub width: f64,
    pub amplitude: Complex64,
}

impl TomoGaussian {
    pub fn new(center: TomoPoint, width: f64, amplitude: Complex64) -> Result<Self> {
        center.validate()?;
        if !(width.is_finite() && width > 0.0) {
            return Err(Error::Domain(format!("Gaussian width {width} must be positive")));
        }
        Ok(TomoGaussian {
            center,
            width,
            amplitude,
        })
    }

    /// The `X` factor `exp(-(X - X0)^2 / width^2)`.
    pub fn x_factor(&self, x: f64) -> f64 {
        (-(x - self.center.x).powi(2) / (self.width * self.width)).exp()
    }

    /// The center factor `exp(-((mu - mu0)^2 + (nu - nu0)^2) / width^2)`.
    pub fn center_factor(&self, mu: f64, nu: f64) -> f64 {
        let d = (mu - self.center.mu).powi(2) + (nu - self.center.nu).powi(2);
        (-d / (self.width * self.width)).exp()
    }
}

impl TomoSymbol for TomoGaussian {
    fn eval(&self, x: TomoPoint) -> Complex64 {
        let d = (x.x - self.center.x).powi(2) + (x.mu - self.center.mu).powi(2) + (x.nu - self.center.nu).powi(2);
        self.amplitude * (-d / (self.width * self.width)).exp()
    }
}

/// The quadratic tomogram of a phase symbol, evaluated on demand.
pub struct Tomogram<'a, F: ?Sized> {
    symbol: &'a F,
    conv: MeasureConvention,
    rule: CircleRule,
}

impl<'a, F: PhaseSymbol + ?Sized> Tomogram<'a, F> {
    pub fn new(symbol: &'a F, conv: MeasureConvention, spec: &QuadratureSpec) -> Result<Self> {
        spec.validate()?;
        Ok(Tomogram {
            symbol,
            conv,
            rule: CircleRule::new(spec.node_count),
        })
    }
}

impl<F: PhaseSymbol + ?Sized> TomoSymbol for Tomogram<'_, F> {
    fn eval(&self, x: TomoPoint) -> Complex64 {
        circle_average(self.symbol, x, self.conv, &self.rule)
    }
}

fn circle_average<F: PhaseSymbol + ?Sized>(
    f: &F,
    x: TomoPoint,
    conv: MeasureConvention,
    rule: &CircleRule,
) -> Complex64 {
    if x.x == 0.0 {
        return f.eval(x.center()) * (2.0 * PI * conv.circle_weight());
    }
    let r = x.x.sqrt();
    rule.integrate(|c, s| f.eval(PhasePoint::new(x.mu + r * c, x.nu + r * s))) * conv.circle_weight()
}

/// `w(X, mu, nu) = int f(q, p) delta(X - (q-mu)^2 - (p-nu)^2) dq dp` under
/// `conv`, by the `spec.node_count`-point periodic rule on the circle.
/// `X = 0` is evaluated exactly.
pub fn quadratic_forward<F: PhaseSymbol + ?Sized>(
    f: &F,
    x: TomoPoint,
    conv: MeasureConvention,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    x.validate()?;
    spec.validate()?;
    let rule = CircleRule::new(if x.x == 0.0 { 1 } else { spec.node_count });
    ensure_finite_c(circle_average(f, x, conv, &rule), "quadratic_forward")
}

/// Cutoff used by `QuadratureSpec::for_inverse`; shorter cutoffs leave
/// truncation errors near 1e-3 on unit-width states.
pub const INVERSE_CUTOFF: f64 = 140.0;

const INVERSE_PANEL: f64 = 8.0;

impl QuadratureSpec {
    /// Settings suited to `quadratic_inverse` on unit-scale states.
    pub fn for_inverse() -> Self {
        QuadratureSpec::default().with_nodes(64).with_cutoff(INVERSE_CUTOFF)
    }
}

/// Inverse quadratic transform
/// `f(z) = c int_0^inf dX int d^2m w(X, m) e^{i(X - |z - m|^2)}`, with `c` from
/// [`MeasureConvention::inverse_constant`].
///
/// The center `m` is integrated in polar coordinates about `z`, with
/// `s = |m - z|^2` so that the Fresnel factor becomes `e^{-is}`; `s` and `X`
/// use composite Gauss-Legendre rules and the angle a `spec.node_count`-point
/// periodic rule. `X` runs to `L = spec.upper_cutoff`.
///
/// Without damping the disk is `s <= L/4`, which pairs the two truncations so
/// that circles reaching the state from outside the disk lie beyond `L`.
/// With `spec.damping = eps > 0` the integrand carries `e^{-eps'(X + s)}`,
/// the disk is `s <= L` and the ladder `eps, eps/2, eps/4` is extrapolated;
/// an extrapolation error above `spec.tolerance * |value|` is an accuracy
/// error.
pub fn quadratic_inverse<W: TomoSymbol + ?Sized>(
    w: &W,
    pt: PhasePoint,
    conv: MeasureConvention,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    spec.validate()?;
    let cutoff = spec.upper_cutoff;
    let eps = spec.damping;
    let s_max = if eps > 0.0 { cutoff } else { 0.25 * cutoff };
    let (xs, wxs) = panel_grid(0.0, cutoff, 16 * (cutoff / INVERSE_PANEL).ceil() as usize);
    let (ss, wss) = panel_grid(0.0, s_max, 16 * (s_max / INVERSE_PANEL).ceil() as usize);
    let rule = CircleRule::new(spec.node_count);
    let angle_weight = 2.0 * PI / rule.len() as f64;

    // angular sums of w over the circle |m - z|^2 = s, for every (X, s) node
    let table: Vec<Complex64> = xs
        .par_iter()
        .flat_map_iter(|&x| {
            let rule = &rule;
            ss.iter().map(move |&s| {
                let rho = s.sqrt();
                let mut acc = Complex64::new(0.0, 0.0);
                for &(c, sn) in rule.nodes() {
                    acc += w.eval(TomoPoint {
                        x,
                        mu: pt.q + rho * c,
                        nu: pt.p + rho * sn,
                    });
                }
                acc * angle_weight
            })
        })
        .collect();

    let ns = ss.len();
    let sum = |damp: f64| {
        let mut total = Complex64::new(0.0, 0.0);
        for (i, (&x, &wx)) in xs.iter().zip(&wxs).enumerate() {
            let mut row = Complex64::new(0.0, 0.0);
            for (j, (&s, &ws)) in ss.iter().zip(&wss).enumerate() {
                row += table[i * ns + j] * Complex64::from_polar(ws * (-damp * s).exp(), -s);
            }
            total += row * Complex64::from_polar(wx * (-damp * x).exp(), x);
        }
        // d^2m = (1/2) ds dtheta
        total * (0.5 * conv.inverse_constant())
    };

    if eps == 0.0 {
        return ensure_finite_c(sum(0.0), "quadratic_inverse");
    }
    let ex = richardson_ladder([sum(eps), sum(0.5 * eps), sum(0.25 * eps)]);
    ensure_finite_c(ex.value, "quadratic_inverse")?;
    if ex.error_estimate > spec.tolerance * ex.value.norm() {
        return Err(Error::Accuracy {
            estimate: ex.value,
            error_estimate: ex.error_estimate,
        });
    }
    Ok(ex.value)
}

/// `quadratic_inverse` at several probe points, in input order.
pub fn quadratic_inverse_batch<W: TomoSymbol + ?Sized>(
    w: &W,
    pts: &[PhasePoint],
    conv: MeasureConvention,
    spec: &QuadratureSpec,
) -> Result<Vec<Complex64>> {
    pts.iter().map(|&pt| quadratic_inverse(w, pt, conv, spec)).collect()
}

/// Symplectic tomogram `int f(q, p) delta(X - mu q - nu p) dq dp`.
///
/// The line is parameterized by arclength `t` from its foot point; the
/// integral over `t` is folded onto `[0, spec.upper_cutoff]` and divided by
/// `sqrt(mu^2 + nu^2)`.
pub fn symplectic_forward<F: PhaseSymbol + ?Sized>(
    f: &F,
    x: f64,
    mu: f64,
    nu: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    if !(x.is_finite() && mu.is_finite() && nu.is_finite()) {
        return Err(Error::Domain("symplectic_forward arguments must be finite".into()));
    }
    let norm = mu.hypot(nu);
    if norm == 0.0 {
        return Err(Error::Degenerate(
            "the line mu q + nu p = X needs (mu, nu) != (0, 0)".into(),
        ));
    }
    let (uq, up) = (mu / norm, nu / norm);
    let foot = PhasePoint::new(x * uq / norm, x * up / norm);
    let along = |t: f64| PhasePoint::new(foot.q - t * up, foot.p + t * uq);
    let v = damped_semiinfinite_integral(|t| f.eval(along(t)) + f.eval(along(-t)), spec)?;
    Ok(v / norm)
}

/// Star-product kernel of symplectic tomography, a point mass on the
/// plane `nu3 (mu1 + mu2) = mu3 (nu1 + nu2)` written in the chart `nu3 != 0`.
pub fn symplectic_kernel(x1: TomoPoint, x2: TomoPoint, x3: TomoPoint, h: Deformation) -> Result<SingularKernel> {
    if x3.nu == 0.0 {
        return Err(Error::Degenerate(
            "symplectic kernel chart needs nu3 != 0; use the mu3 chart".into(),
        ));
    }
    let phase = (x1.x + x2.x) - (x1.nu + x2.nu) / x3.nu * x3.x + 0.5 * h.value() * (x1.nu * x2.mu - x2.nu * x1.mu);
    Ok(SingularKernel {
        amplitude: Complex64::from_polar(1.0 / (4.0 * PI * PI), phase),
        delta_argument: x3.nu * (x1.mu + x2.mu) - x3.mu * (x1.nu + x2.nu),
    })
}
