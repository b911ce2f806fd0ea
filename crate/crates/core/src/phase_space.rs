//! Phase-space symbols: oscillator Wigner functions, closed-form test
//! families, the Groenewold kernel and the Moyal product.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{laguerre, laguerre_unchecked, panel_grid, richardson_ladder, QuadratureSpec};

/// A point `(q, p)` of the single-mode phase plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint {
    pub q: f64,
    pub p: f64,
}

impl PhasePoint {
    pub const ORIGIN: PhasePoint = PhasePoint { q: 0.0, p: 0.0 };

    pub fn new(q: f64, p: f64) -> Self {
        PhasePoint { q, p }
    }

    pub fn norm_sqr(self) -> f64 {
        self.q * self.q + self.p * self.p
    }
}

/// The deformation parameter `h`, the commutator scale `[q, p] = i h`.
///
/// Admitted on `(-1, 1]`; negative values exist only for the swap
/// symmetry `K(x2, x1, x3; h) = K(x1, x2, x3; -h)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Deformation(f64);

impl Deformation {
    pub const CLASSICAL: Deformation = Deformation(0.0);
    pub const UNIT: Deformation = Deformation(1.0);

    pub fn new(hbar: f64) -> Result<Self> {
        if hbar.is_finite() && hbar > -1.0 && hbar <= 1.0 {
            Ok(Deformation(hbar))
        } else {
            Err(Error::Domain(format!("deformation parameter {hbar} outside (-1, 1]")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// A complex symbol on phase space, evaluated on demand.
pub trait PhaseSymbol: Sync {
    fn eval(&self, pt: PhasePoint) -> Complex64;
}

impl<F> PhaseSymbol for F
where
    F: Fn(PhasePoint) -> Complex64 + Sync,
{
    fn eval(&self, pt: PhasePoint) -> Complex64 {
        self(pt)
    }
}

/// `e^{i(a q + b p)}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaneWaveSymbol {
    pub a: f64,
    pub b: f64,
}

impl PlaneWaveSymbol {
    pub fn new(a: f64, b: f64) -> Self {
        PlaneWaveSymbol { a, b }
    }
}

impl PhaseSymbol for PlaneWaveSymbol {
    fn eval(&self, pt: PhasePoint) -> Complex64 {
        Complex64::from_polar(1.0, self.a * pt.q + self.b * pt.p)
    }
}

/// `amplitude * exp(-((q - q0)^2 + (p - p0)^2) / width^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianSymbol {
    pub center: PhasePoint,
    pub width: f64,
    pub amplitude: Complex64,
}

impl GaussianSymbol {
    pub fn new(center: PhasePoint, width: f64, amplitude: Complex64) -> Result<Self> {
        if !(width.is_finite() && width > 0.0) {
            return Err(Error::Domain(format!("Gaussian width {width} must be positive")));
        }
        Ok(GaussianSymbol {
            center,
            width,
            amplitude,
        })
    }

    /// Unit-amplitude Gaussian.
    pub fn unit(center: PhasePoint, width: f64) -> Result<Self> {
        Self::new(center, width, Complex64::new(1.0, 0.0))
    }
}

impl PhaseSymbol for GaussianSymbol {
    fn eval(&self, pt: PhasePoint) -> Complex64 {
        let dq = pt.q - self.center.q;
        let dp = pt.p - self.center.p;
        self.amplitude * (-(dq * dq + dp * dp) / (self.width * self.width)).exp()
    }
}

/// Wigner function of the `n`-th oscillator eigenstate as a symbol.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FockWigner {
    n: u32,
    hbar: f64,
}

impl FockWigner {
    pub fn new(n: u32, h: Deformation) -> Result<Self> {
        // validates n and h
        wigner_fock(n, h, PhasePoint::ORIGIN)?;
        Ok(FockWigner { n, hbar: h.value() })
    }

    pub fn level(&self) -> u32 {
        self.n
    }

    pub fn value(&self, pt: PhasePoint) -> f64 {
        fock_value(self.n, self.hbar, pt)
    }
}

impl PhaseSymbol for FockWigner {
    fn eval(&self, pt: PhasePoint) -> Complex64 {
        Complex64::new(self.value(pt), 0.0)
    }
}

fn fock_value(n: u32, hbar: f64, pt: PhasePoint) -> f64 {
    let energy = 0.5 * pt.norm_sqr();
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    sign / (PI * hbar) * (-2.0 * energy / hbar).exp() * laguerre_unchecked(n, 4.0 * energy / hbar)
}

/// `f_n(q, p) = (-1)^n / (pi h) e^{-2H/h} L_n(4H/h)` with `H = (q^2 + p^2)/2`.
pub fn wigner_fock(n: u32, h: Deformation, pt: PhasePoint) -> Result<f64> {
    let hbar = h.value();
    if hbar <= 0.0 {
        return Err(Error::Domain(format!(
            "oscillator Wigner functions need h > 0, got {hbar}"
        )));
    }
    // range check on n
    laguerre(n, 0.0)?;
    Ok(fock_value(n, hbar, pt))
}

/// Groenewold kernel
/// `(1/(pi^2 h^2)) exp((2i/h)[(q1 p2 - q2 p1) + (q3 p1 - q1 p3) + (q2 p3 - q3 p2)])`.
pub fn groenewold_kernel(p1: PhasePoint, p2: PhasePoint, p3: PhasePoint, h: Deformation) -> Result<Complex64> {
    let hbar = h.value();
    if hbar == 0.0 {
        return Err(Error::SingularLimit(
            "the h = 0 Groenewold kernel is a distribution".into(),
        ));
    }
    let bracket = (p1.q * p2.p - p2.q * p1.p) + (p3.q * p1.p - p1.q * p3.p) + (p2.q * p3.p - p3.q * p2.p);
    Ok(Complex64::from_polar(
        1.0 / (PI * PI * hbar * hbar),
        2.0 * bracket / hbar,
    ))
}

/// Moyal product of two plane waves:
/// `e^{i k1.z} * e^{i k2.z} = e^{-(i h/2)(a1 b2 - b1 a2)} e^{i (k1 + k2).z}`.
///
/// The sign of the phase follows from integrating the Groenewold kernel
/// (the kernel phase pairs `q1` with `p2` positively); `moyal_sign_is_pinned`
/// in the tests re-derives it numerically.
pub fn moyal_planewave_product(
    w1: PlaneWaveSymbol,
    w2: PlaneWaveSymbol,
    h: Deformation,
) -> (PlaneWaveSymbol, Complex64) {
    let result = PlaneWaveSymbol::new(w1.a + w2.a, w1.b + w2.b);
    let phase = Complex64::from_polar(1.0, -0.5 * h.value() * (w1.a * w2.b - w1.b * w2.a));
    (result, phase)
}

/// Numerical Moyal product `(f1 * f2)(pt)` from the Groenewold integral.
///
/// With `z1 = pt + u`, `z2 = pt + v` the integral becomes
/// `(1/(pi^2 h^2)) int f1(pt + u) f2(pt + v) e^{(2i/h)(u_q v_p - u_p v_q)} d^2u d^2v`.
/// Each of the four axes carries the same composite Gauss-Legendre rule on
/// `[-L, L]`, `L = spec.upper_cutoff`, with at least `spec.node_count` nodes.
/// The kernel phase factorizes per axis pair, so the product-rule sum is
/// evaluated as two matrix contractions in `O(n^3)`.
///
/// When `spec.damping = eps > 0` the integrand is multiplied by
/// `e^{-eps' (|u|^2 + |v|^2)}` for `eps' in {eps, eps/2, eps/4}` and the three
/// values are Richardson-extrapolated; an extrapolation error above
/// `spec.tolerance * |value|` is reported as an accuracy error.
pub fn moyal_star_numeric<A, B>(
    f1: &A,
    f2: &B,
    pt: PhasePoint,
    h: Deformation,
    spec: &QuadratureSpec,
) -> Result<Complex64>
where
    A: PhaseSymbol + ?Sized,
    B: PhaseSymbol + ?Sized,
{
    spec.validate()?;
    let hbar = h.value();
    if hbar == 0.0 {
        return Err(Error::SingularLimit("the numerical Moyal product needs h != 0".into()));
    }
    let half = spec.upper_cutoff;
    let (xs, ws) = panel_grid(-half, half, spec.node_count);
    let grid = MoyalGrid::new(&xs, &ws, hbar, f1, f2, pt);
    if spec.damping == 0.0 {
        return Ok(grid.sum(0.0));
    }
    let eps = spec.damping;
    let ladder = [grid.sum(eps), grid.sum(0.5 * eps), grid.sum(0.25 * eps)];
    let ex = richardson_ladder(ladder);
    if ex.error_estimate > spec.tolerance * ex.value.norm() {
        return Err(Error::Accuracy {
            estimate: ex.value,
            error_estimate: ex.error_estimate,
        });
    }
    Ok(ex.value)
}

struct MoyalGrid<'a> {
    xs: &'a [f64],
    ws: &'a [f64],
    // phase table e^{(2i/h) x_a x_k}
    phase: Vec<Complex64>,
    f1: Vec<Complex64>,
    f2: Vec<Complex64>,
    prefactor: f64,
}

impl<'a> MoyalGrid<'a> {
    fn new<A, B>(xs: &'a [f64], ws: &'a [f64], hbar: f64, f1: &A, f2: &B, pt: PhasePoint) -> Self
    where
        A: PhaseSymbol + ?Sized,
        B: PhaseSymbol + ?Sized,
    {
        let n = xs.len();
        let mut phase = Vec::with_capacity(n * n);
        for &xa in xs {
            for &xk in xs {
                phase.push(Complex64::from_polar(1.0, 2.0 * xa * xk / hbar));
            }
        }
        let sample = |f: &dyn Fn(PhasePoint) -> Complex64| {
            let mut out = Vec::with_capacity(n * n);
            for (&xj, &wj) in xs.iter().zip(ws) {
                for (&xk, &wk) in xs.iter().zip(ws) {
                    out.push(f(PhasePoint::new(pt.q + xj, pt.p + xk)) * (wj * wk));
                }
            }
            out
        };
        MoyalGrid {
            xs,
            ws,
            phase,
            f1: sample(&|z| f1.eval(z)),
            f2: sample(&|z| f2.eval(z)),
            prefactor: 1.0 / (PI * PI * hbar * hbar),
        }
    }

    fn sum(&self, eps: f64) -> Complex64 {
        let n = self.xs.len();
        debug_assert_eq!(self.ws.len(), n);
        let damp: Vec<f64> = self.xs.iter().map(|x| (-eps * x * x).exp()).collect();
        // t[j][a] = sum_k f2[j][k] e^{(2i/h) x_a x_k}, v = (x_j, x_k)
        let mut t = vec![Complex64::new(0.0, 0.0); n * n];
        for j in 0..n {
            let row = &self.f2[j * n..(j + 1) * n];
            for a in 0..n {
                let ph = &self.phase[a * n..(a + 1) * n];
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    acc += row[k] * ph[k] * damp[k];
                }
                t[j * n + a] = acc * damp[j];
            }
        }
        // total = sum_{a,b} f1[a][b] sum_j conj(e^{(2i/h) x_b x_j}) t[j][a]
        let mut total = Complex64::new(0.0, 0.0);
        for a in 0..n {
            for b in 0..n {
                let ph = &self.phase[b * n..(b + 1) * n];
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..n {
                    acc += ph[j].conj() * t[j * n + a];
                }
                total += self.f1[a * n + b] * damp[a] * damp[b] * acc;
            }
        }
        total * self.prefactor
    }
}
