//! Star-product kernels of quadratic tomography.
//!
//! Closed forms live here; [`oracle`] holds the independent quadrature
//! evaluations they are checked against and [`smeared`] the integrals of
//! kernels against smooth test functions.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite_c, Error, Result};
use crate::phase_space::Deformation;
use crate::specfun::j0_unchecked;
use crate::tomo_transform::TomoPoint;

pub mod oracle;
pub mod smeared;

pub use oracle::{k3_phase, k_deformed_oracle, oracle_constant, quadratic_kernel_oracle};
pub use smeared::{singular_action_h1, smeared_kernel_action};

const PI4: f64 = PI * PI * PI * PI;

/// Nine kernel arguments and the deformation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelArgs {
    pub x1: TomoPoint,
    pub x2: TomoPoint,
    pub x3: TomoPoint,
    pub h: Deformation,
}

impl KernelArgs {
    pub fn new(x1: TomoPoint, x2: TomoPoint, x3: TomoPoint, h: Deformation) -> Result<Self> {
        let a = KernelArgs { x1, x2, x3, h };
        a.validate()?;
        Ok(a)
    }

    /// Builds from `[X1, mu1, nu1, X2, mu2, nu2, X3, mu3, nu3]`.
    pub fn from_tuple(t: [f64; 9], h: Deformation) -> Result<Self> {
        Self::new(
            TomoPoint::new(t[0], t[1], t[2])?,
            TomoPoint::new(t[3], t[4], t[5])?,
            TomoPoint::new(t[6], t[7], t[8])?,
            h,
        )
    }

    pub fn to_tuple(&self) -> [f64; 9] {
        let (a, b, c) = (self.x1, self.x2, self.x3);
        [a.x, a.mu, a.nu, b.x, b.mu, b.nu, c.x, c.mu, c.nu]
    }

    /// Arguments with `x1` and `x2` exchanged.
    pub fn swapped(&self) -> Self {
        KernelArgs {
            x1: self.x2,
            x2: self.x1,
            ..*self
        }
    }

    pub fn with_h(&self, h: Deformation) -> Self {
        KernelArgs { h, ..*self }
    }

    pub fn validate(&self) -> Result<()> {
        self.x1.validate()?;
        self.x2.validate()?;
        self.x3.validate()
    }
}

/// A distribution `amplitude * delta(delta_argument)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingularKernel {
    pub amplitude: Complex64,
    pub delta_argument: f64,
}

/// Kernel selector shared by the smeared actions and the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelId {
    Quantum,
    Classical,
    FirstOrder,
    H1Singular,
    KDeformed,
}

impl KernelId {
    pub const ALL: [KernelId; 5] = [
        KernelId::Quantum,
        KernelId::Classical,
        KernelId::FirstOrder,
        KernelId::H1Singular,
        KernelId::KDeformed,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            KernelId::Quantum => "quantum",
            KernelId::Classical => "classical",
            KernelId::FirstOrder => "first-order",
            KernelId::H1Singular => "h1-singular",
            KernelId::KDeformed => "k-deformed",
        }
    }
}

impl fmt::Display for KernelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for KernelId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        KernelId::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Domain(format!("unknown kernel '{s}'")))
    }
}

/// Deformed center `(A, B)` and `S = |m1|^2 + |m2|^2`.
///
/// Written so that exchanging `x1, x2` together with `h -> -h` reproduces
/// every intermediate bit for bit.
pub(crate) fn deformed_center(x1: TomoPoint, x2: TomoPoint, h: f64) -> (f64, f64, f64) {
    let a = (x1.mu + x2.mu) + h * (x2.nu - x1.nu);
    let b = (x1.nu + x2.nu) + h * (x1.mu - x2.mu);
    let s = (x1.mu * x1.mu + x1.nu * x1.nu) + (x2.mu * x2.mu + x2.nu * x2.nu);
    (a, b, s)
}

/// `W = mu1 nu2 - mu2 nu1`.
pub(crate) fn wedge(x1: TomoPoint, x2: TomoPoint) -> f64 {
    x1.mu * x2.nu - x2.mu * x1.nu
}

fn regular_kernel(x1: TomoPoint, x2: TomoPoint, x3: TomoPoint, h: f64) -> Complex64 {
    let d = 1.0 - h * h;
    let (a, b, s) = deformed_center(x1, x2, h);
    let bracket = 2.0 * x3.x + s + 2.0 * (x3.mu * x3.mu + x3.nu * x3.nu) - 2.0 * a * x3.mu - 2.0 * b * x3.nu;
    let arg = 2.0 * x3.x.sqrt() / d * (a - 2.0 * x3.mu).hypot(b - 2.0 * x3.nu);
    Complex64::from_polar(1.0 / (d * PI4), (x1.x + x2.x) - bracket / d) * j0_unchecked(arg)
}

/// Closed-form quadratic-tomography kernel for `|h| < 1`:
///
/// `e^{i(X1+X2)}/((1-h^2) pi^4) exp(-i[2X3 + S + 2|m3|^2 - 2A mu3 - 2B nu3]/(1-h^2))
///  J0(2 sqrt(X3) |(A, B) - 2 m3| / (1-h^2))`
///
/// with `A = mu1 - h nu1 + mu2 + h nu2`, `B = h mu1 + nu1 - h mu2 + nu2` and
/// `S = mu1^2 + nu1^2 + mu2^2 + nu2^2`.
pub fn quadratic_kernel(args: &KernelArgs) -> Result<Complex64> {
    args.validate()?;
    let h = args.h.value();
    if h.abs() >= 1.0 {
        return Err(Error::Domain(format!(
            "quadratic_kernel needs |h| < 1, got {h}; use singular_kernel_h1 at h = 1"
        )));
    }
    ensure_finite_c(regular_kernel(args.x1, args.x2, args.x3, h), "quadratic_kernel")
}

/// The commutative kernel, `quadratic_kernel` at `h = 0`.
pub fn classical_kernel(x1: TomoPoint, x2: TomoPoint, x3: TomoPoint) -> Result<Complex64> {
    x1.validate()?;
    x2.validate()?;
    x3.validate()?;
    ensure_finite_c(regular_kernel(x1, x2, x3, 0.0), "classical_kernel")
}

/// Coefficient of `h` in the expansion of the kernel about `h = 0`,
/// `K0 * 2i((mu1 - mu2) nu3 - (nu1 - nu2) mu3)`, as printed. This omits the
/// `J0'` term, so it is the true derivative only where the `h`-derivative of
/// the Bessel argument vanishes; see [`bessel_slope_at_zero`].
pub fn first_order_coefficient(x1: TomoPoint, x2: TomoPoint, x3: TomoPoint) -> Result<Complex64> {
    let k0 = classical_kernel(x1, x2, x3)?;
    let lever = (x1.mu - x2.mu) * x3.nu - (x1.nu - x2.nu) * x3.mu;
    Ok(k0 * Complex64::new(0.0, 2.0 * lever))
}

/// `(mu1 + mu2 - 2mu3)(nu2 - nu1) + (nu1 + nu2 - 2nu3)(mu1 - mu2)`, proportional
/// to the `h`-derivative at `0` of the Bessel argument's square.
pub fn bessel_slope_at_zero(x1: TomoPoint, x2: TomoPoint, x3: TomoPoint) -> f64 {
    (x1.mu + x2.mu - 2.0 * x3.mu) * (x2.nu - x1.nu) + (x1.nu + x2.nu - 2.0 * x3.nu) * (x1.mu - x2.mu)
}

/// Default finite-difference step for [`hbar_derivative_fd`].
pub const FD_STEP: f64 = 1e-4;

/// Central difference `(K(h = step) - K(h = -step)) / (2 step)`.
pub fn hbar_derivative_fd(x1: TomoPoint, x2: TomoPoint, x3: TomoPoint, step: f64) -> Result<Complex64> {
    if !(step > 0.0 && step <= 1e-3) {
        return Err(Error::Domain(format!(
            "finite-difference step {step} outside (0, 1e-3]"
        )));
    }
    let plus = quadratic_kernel(&KernelArgs::new(x1, x2, x3, Deformation::new(step)?)?)?;
    let minus = quadratic_kernel(&KernelArgs::new(x1, x2, x3, Deformation::new(-step)?)?)?;
    Ok((plus - minus) / (2.0 * step))
}

/// Richardson combination of central differences at `step` and `step/2`,
/// with the difference between the two levels as error estimate.
pub fn hbar_derivative_extrapolated(
    x1: TomoPoint,
    x2: TomoPoint,
    x3: TomoPoint,
    step: f64,
) -> Result<(Complex64, f64)> {
    let coarse = hbar_derivative_fd(x1, x2, x3, step)?;
    let fine = hbar_derivative_fd(x1, x2, x3, 0.5 * step)?;
    let value = (fine * 4.0 - coarse) / 3.0;
    Ok((value, (value - fine).norm()))
}

/// Kernel at `h = 1`:
/// `(2/(i pi^3)) e^{i(X1+X2)} e^{-i|m1 - m2|^2/2}
///  delta(4X3 - (mu1 - nu1 + mu2 + nu2 - 2mu3)^2 - (mu1 + nu1 - mu2 + nu2 - 2nu3)^2)`.
pub fn singular_kernel_h1(x1: TomoPoint, x2: TomoPoint, x3: TomoPoint) -> Result<SingularKernel> {
    x3.validate()?;
    let (a, b) = h1_center(x1, x2);
    Ok(SingularKernel {
        amplitude: h1_amplitude(x1, x2)?,
        delta_argument: 4.0 * x3.x - (a - 2.0 * x3.mu).powi(2) - (b - 2.0 * x3.nu).powi(2),
    })
}

/// `(A, B)` at `h = 1`.
pub(crate) fn h1_center(x1: TomoPoint, x2: TomoPoint) -> (f64, f64) {
    (x1.mu - x1.nu + x2.mu + x2.nu, x1.mu + x1.nu - x2.mu + x2.nu)
}

pub(crate) fn h1_amplitude(x1: TomoPoint, x2: TomoPoint) -> Result<Complex64> {
    x1.validate()?;
    x2.validate()?;
    let dm = x1.mu - x2.mu;
    let dn = x1.nu - x2.nu;
    let phase = (x1.x + x2.x) - 0.5 * (dm * dm + dn * dn);
    // 2/i = -2i
    Ok(Complex64::from_polar(2.0 / (PI * PI * PI), phase) * Complex64::new(0.0, -1.0))
}

/// Kernel of the product deformed by `k = delta(Y) delta(alpha) delta(beta)`:
///
/// `-(1/(2 pi^5)) e^{i(X1+X2+X3)}
///  exp(i[mu3^2 + nu3^2 - mu1 mu2 - nu1 nu2 + (mu1 nu2 - mu2 nu1)
///        - 2(mu1 nu3 - mu3 nu1) + 2(mu2 nu3 - mu3 nu2)])
///  J0(2 sqrt(X3) |(mu1 - mu2 - nu3, mu3 + nu1 - nu2)|)`.
pub fn k_deformed_kernel(x1: TomoPoint, x2: TomoPoint, x3: TomoPoint) -> Result<Complex64> {
    x1.validate()?;
    x2.validate()?;
    x3.validate()?;
    let phase = (x1.x + x2.x + x3.x)
        + (x3.mu * x3.mu + x3.nu * x3.nu - x1.mu * x2.mu - x1.nu * x2.nu + (x1.mu * x2.nu - x2.mu * x1.nu)
            - 2.0 * (x1.mu * x3.nu - x3.mu * x1.nu)
            + 2.0 * (x2.mu * x3.nu - x3.mu * x2.nu));
    let arg = 2.0 * x3.x.sqrt() * (x1.mu - x2.mu - x3.nu).hypot(x3.mu + x1.nu - x2.nu);
    let pi5 = PI4 * PI;
    ensure_finite_c(
        Complex64::from_polar(-1.0 / (2.0 * pi5), phase) * j0_unchecked(arg),
        "k_deformed_kernel",
    )
}
