//! Deterministic quadrature engines: periodic trapezoid, Gauss-Legendre
//! product grids, adaptive Gauss-Kronrod on a truncated half line, and the
//! damping-ladder Richardson combination.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite_c, Error, Result};

/// Numerical settings shared by every integrating operation.
///
/// Identical settings and an identical integrand always produce a
/// bit-identical result: every engine below uses a fixed evaluation order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Equispaced nodes for periodic rules, Gauss-Legendre nodes per axis for
    /// product rules.
    pub node_count: usize,
    /// Regularization exponent `eps` for conditionally convergent integrands.
    pub damping: f64,
    /// Truncation point of semi-infinite ranges (and box half width where a
    /// routine documents it).
    pub upper_cutoff: f64,
    /// Monte Carlo stream key.
    pub seed: u64,
    /// Monte Carlo sample count.
    pub sample_count: usize,
    /// Relative accuracy target for adaptive refinement and extrapolation.
    pub tolerance: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            node_count: 128,
            damping: 0.0,
            upper_cutoff: 40.0,
            seed: 0x5eed_2013,
            sample_count: 100_000,
            tolerance: 1e-10,
        }
    }
}

impl QuadratureSpec {
    pub fn with_nodes(mut self, node_count: usize) -> Self {
        self.node_count = node_count;
        self
    }

    pub fn with_damping(mut self, damping: f64) -> Self {
        self.damping = damping;
        self
    }

    pub fn with_cutoff(mut self, upper_cutoff: f64) -> Self {
        self.upper_cutoff = upper_cutoff;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_samples(mut self, sample_count: usize) -> Self {
        self.sample_count = sample_count;
        self
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    /// Checks the field invariants.
    pub fn validate(&self) -> Result<()> {
        if self.node_count < 8 {
            return Err(Error::Domain(format!(
                "node_count must be at least 8, got {}",
                self.node_count
            )));
        }
        if !(self.damping.is_finite() && self.damping >= 0.0) {
            return Err(Error::Domain(format!(
                "damping must be finite and non-negative, got {}",
                self.damping
            )));
        }
        if !(self.upper_cutoff.is_finite() && self.upper_cutoff > 0.0) {
            return Err(Error::Domain(format!(
                "upper_cutoff must be positive, got {}",
                self.upper_cutoff
            )));
        }
        if self.sample_count == 0 {
            return Err(Error::Domain("sample_count must be positive".into()));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::Domain(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        Ok(())
    }
}

/// Trapezoidal rule on `[0, 2pi)` with `spec.node_count` equispaced nodes.
pub fn periodic_integral<F>(f: F, spec: &QuadratureSpec) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    spec.validate()?;
    periodic_sum(f, spec.node_count)
}

pub(crate) fn periodic_sum<F>(f: F, n: usize) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let step = 2.0 * PI / n as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n {
        acc += f(step * k as f64);
    }
    ensure_finite_c(acc * step, "periodic_integral")
}

/// Unit-circle nodes `(cos, sin)` of the `n`-point periodic rule, tabulated
/// once for repeated circle integrals.
#[derive(Debug, Clone)]
pub struct CircleRule {
    nodes: Vec<(f64, f64)>,
}

impl CircleRule {
    pub fn new(n: usize) -> Self {
        let step = 2.0 * PI / n as f64;
        let nodes = (0..n)
            .map(|k| {
                let (s, c) = (step * k as f64).sin_cos();
                (c, s)
            })
            .collect();
        CircleRule { nodes }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[(f64, f64)] {
        &self.nodes
    }

    /// `int_0^{2pi} f(cos phi, sin phi) dphi` by the trapezoidal rule.
    pub fn integrate<F>(&self, f: F) -> Complex64
    where
        F: Fn(f64, f64) -> Complex64,
    {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(c, s) in &self.nodes {
            acc += f(c, s);
        }
        acc * (2.0 * PI / self.nodes.len() as f64)
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Newton iteration on `P_n` from the Chebyshev-like initial guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    /// Composite rule: `panels` equal panels on `[a, b]`, each carrying this
    /// rule. Returns flattened `(nodes, weights)`.
    pub fn composite(&self, a: f64, b: f64, panels: usize) -> (Vec<f64>, Vec<f64>) {
        let panels = panels.max(1);
        let width = (b - a) / panels as f64;
        let mut xs = Vec::with_capacity(panels * self.nodes.len());
        let mut ws = Vec::with_capacity(panels * self.nodes.len());
        for k in 0..panels {
            let lo = a + width * k as f64;
            let half = 0.5 * width;
            for (x, w) in self.nodes.iter().zip(&self.weights) {
                xs.push(lo + half * (x + 1.0));
                ws.push(half * w);
            }
        }
        (xs, ws)
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p, d)
}

// 7-point Gauss / 15-point Kronrod abscissae and weights (QUADPACK qk15).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

struct Segment {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    abs_value: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        // largest error first; ties broken by position for a total order
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn gk15<F>(f: &F, a: f64, b: f64) -> Result<Segment>
where
    F: Fn(f64) -> Complex64,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_value = fc.norm() * WGK[7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        kronrod += (f1 + f2) * WGK[j];
        abs_value += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    let value = ensure_finite_c(kronrod * half, "damped_semiinfinite_integral")?;
    let error = ((kronrod - gauss) * half).norm();
    Ok(Segment {
        a,
        b,
        value,
        error,
        abs_value: abs_value * half.abs(),
    })
}

/// Upper bound on adaptive bisections.
pub const MAX_SUBDIVISIONS: usize = 20_000;

/// `int_0^L f(X) e^{-eps X} dX` with `eps = spec.damping`, `L = spec.upper_cutoff`.
///
/// Globally adaptive 15-point Gauss-Kronrod. The range starts split into
/// panels no longer than `pi` so that unit-frequency oscillations are
/// resolved before the first error estimate. Refinement stops when the
/// summed error estimate is below `spec.tolerance` relative to
/// `max(|I|, 1e-3 * int |f|)`.
pub fn damped_semiinfinite_integral<F>(f: F, spec: &QuadratureSpec) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    spec.validate()?;
    let eps = spec.damping;
    let g = |x: f64| {
        if eps > 0.0 {
            f(x) * (-eps * x).exp()
        } else {
            f(x)
        }
    };
    adaptive_gk(&g, 0.0, spec.upper_cutoff, spec.tolerance)
}

pub(crate) fn adaptive_gk<F>(f: &F, a: f64, b: f64, tolerance: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let initial = (((b - a) / PI).ceil() as usize).clamp(1, MAX_SUBDIVISIONS / 4);
    let width = (b - a) / initial as f64;
    let mut heap = BinaryHeap::with_capacity(2 * initial);
    for k in 0..initial {
        let lo = a + width * k as f64;
        let hi = if k + 1 == initial { b } else { lo + width };
        heap.push(gk15(f, lo, hi)?);
    }
    let mut count = heap.len();
    loop {
        // deterministic totals: sum in position order
        let (total, err, abs_total) = totals(&heap);
        let target = tolerance * total.norm().max(1e-3 * abs_total);
        if err <= target {
            return Ok(total);
        }
        if count >= MAX_SUBDIVISIONS {
            return Err(Error::Accuracy {
                estimate: total,
                error_estimate: err,
            });
        }
        let worst = heap.pop().expect("non-empty segment heap");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            return Err(Error::Accuracy {
                estimate: total,
                error_estimate: err,
            });
        }
        heap.push(gk15(f, worst.a, mid)?);
        heap.push(gk15(f, mid, worst.b)?);
        count += 1;
    }
}

fn totals(heap: &BinaryHeap<Segment>) -> (Complex64, f64, f64) {
    let mut segs: Vec<&Segment> = heap.iter().collect();
    segs.sort_by(|x, y| x.a.total_cmp(&y.a));
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut abs_total = 0.0;
    for s in segs {
        total += s.value;
        err += s.error;
        abs_total += s.abs_value;
    }
    (total, err, abs_total)
}

/// Result of a damping-ladder extrapolation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrapolated {
    pub value: Complex64,
    /// `|R2 - R1|`: difference between the second and first Richardson levels.
    pub error_estimate: f64,
}

/// Richardson combination of values computed at damping `eps, eps/2, eps/4`,
/// assuming an error series in integer powers of `eps`.
pub fn richardson_ladder(values: [Complex64; 3]) -> Extrapolated {
    let first_a = values[1] * 2.0 - values[0];
    let first_b = values[2] * 2.0 - values[1];
    let second = (first_b * 4.0 - first_a) / 3.0;
    Extrapolated {
        value: second,
        error_estimate: (second - first_b).norm(),
    }
}

/// Composite Gauss-Legendre product grid covering `[lo, hi]` with at least
/// `min_nodes` nodes, in 16-point panels.
pub(crate) fn panel_grid(lo: f64, hi: f64, min_nodes: usize) -> (Vec<f64>, Vec<f64>) {
    let rule = GaussLegendre::new(16);
    rule.composite(lo, hi, min_nodes.div_ceil(16))
}
