//! Seeded Monte Carlo over axis-aligned boxes.
//!
//! Sample `i` draws its `dim` coordinates from the ChaCha8 keystream of
//! `seed` starting at word `2 * dim * i`, so every sample is a pure function
//! of `(seed, i)`. Samples are accumulated in fixed-size chunks and the chunk
//! statistics are merged in chunk order, which keeps the result independent
//! of how the chunks are scheduled across workers.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::specfun::QuadratureSpec;

/// Largest supported dimension.
pub const MAX_DIM: usize = 8;

const CHUNK: usize = 4096;

/// Mean times box volume, with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub estimate: Complex64,
    pub std_error: f64,
}

#[derive(Debug, Clone, Copy)]
struct Moments {
    n: usize,
    mean: Complex64,
    m2: f64,
}

impl Moments {
    fn empty() -> Self {
        Moments {
            n: 0,
            mean: Complex64::new(0.0, 0.0),
            m2: 0.0,
        }
    }

    fn push(&mut self, x: Complex64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        let delta2 = x - self.mean;
        self.m2 += delta.re * delta2.re + delta.im * delta2.im;
    }

    fn merge(self, other: Moments) -> Moments {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        let frac = other.n as f64 / n as f64;
        Moments {
            n,
            mean: self.mean + delta * frac,
            m2: self.m2 + other.m2 + delta.norm_sqr() * self.n as f64 * frac,
        }
    }
}

/// Uniform-sampling estimate of `int_box f`.
///
/// `bounds[k] = (lo, hi)` for axis `k`; `bounds.len()` must equal `dim`.
pub fn monte_carlo_integral<F>(f: F, dim: usize, bounds: &[(f64, f64)], spec: &QuadratureSpec) -> Result<McEstimate>
where
    F: Fn(&[f64]) -> Complex64 + Sync,
{
    if spec.sample_count == 0 {
        return Err(Error::Domain("sample_count must be positive".into()));
    }
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::Domain(format!("dimension must be in 1..={MAX_DIM}, got {dim}")));
    }
    if bounds.len() != dim {
        return Err(Error::Domain(format!(
            "expected {dim} axis bounds, got {}",
            bounds.len()
        )));
    }
    if bounds
        .iter()
        .any(|&(lo, hi)| !(lo.is_finite() && hi.is_finite() && hi > lo))
    {
        return Err(Error::Domain("box bounds must be finite with hi > lo".into()));
    }
    let volume: f64 = bounds.iter().map(|&(lo, hi)| hi - lo).product();
    let n = spec.sample_count;
    let chunks = n.div_ceil(CHUNK);
    let seed = spec.seed;

    let partial: Vec<Moments> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK;
            let end = (start + CHUNK).min(n);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_word_pos((2 * dim * start) as u128);
            let mut point = [0.0f64; MAX_DIM];
            let mut m = Moments::empty();
            for _ in start..end {
                for (x, &(lo, hi)) in point.iter_mut().zip(bounds) {
                    let u: f64 = rng.gen();
                    *x = lo + (hi - lo) * u;
                }
                m.push(f(&point[..dim]));
            }
            m
        })
        .collect();

    let total = partial.into_iter().fold(Moments::empty(), |acc, m| acc.merge(m));
    let variance = if total.n > 1 {
        total.m2 / (total.n - 1) as f64
    } else {
        0.0
    };
    let estimate = total.mean * volume;
    if !(estimate.re.is_finite() && estimate.im.is_finite()) {
        return Err(Error::NonFinite("monte_carlo_integral"));
    }
    Ok(McEstimate {
        estimate,
        std_error: volume * (variance / total.n as f64).sqrt(),
    })
}
