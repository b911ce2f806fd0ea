//! Special functions and quadrature engines.

mod bessel;
mod monte_carlo;
mod quadrature;

pub(crate) use bessel::j0_unchecked;
pub use bessel::{bessel_j0, SERIES_LIMIT};
pub use monte_carlo::{monte_carlo_integral, McEstimate, MAX_DIM};
pub(crate) use quadrature::panel_grid;
pub use quadrature::{
    damped_semiinfinite_integral, periodic_integral, richardson_ladder, CircleRule, Extrapolated, GaussLegendre,
    QuadratureSpec, MAX_SUBDIVISIONS,
};

use crate::error::{Error, Result};

/// Largest supported Laguerre degree.
pub const MAX_LAGUERRE_DEGREE: u32 = 64;

/// Laguerre polynomial `L_n(x)` by the three-term recurrence
/// `(k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}`.
pub fn laguerre(n: u32, x: f64) -> Result<f64> {
    if n > MAX_LAGUERRE_DEGREE {
        return Err(Error::Domain(format!(
            "Laguerre degree {n} exceeds supported maximum {MAX_LAGUERRE_DEGREE}"
        )));
    }
    if !x.is_finite() {
        return Err(Error::Domain(format!("Laguerre argument {x} is not finite")));
    }
    Ok(laguerre_unchecked(n, x))
}

pub(crate) fn laguerre_unchecked(n: u32, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 - x;
    for k in 1..n {
        let kf = f64::from(k);
        let next = ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degrees() {
        assert_eq!(laguerre(0, 3.7).unwrap(), 1.0);
        assert_eq!(laguerre(1, 2.0).unwrap(), -1.0);
        assert!((laguerre(2, 1.0).unwrap() + 0.5).abs() < 1e-15);
    }

    #[test]
    fn closed_form_degree_three() {
        // L3 = (-x^3 + 9x^2 - 18x + 6)/6
        for x in [-1.0, 0.5, 2.0, 7.5] {
            let want = (-x * x * x + 9.0 * x * x - 18.0 * x + 6.0) / 6.0;
            assert!((laguerre(3, x).unwrap() - want).abs() < 1e-12);
        }
    }

    #[test]
    fn unit_at_origin() {
        for n in 0..=MAX_LAGUERRE_DEGREE {
            assert!((laguerre(n, 0.0).unwrap() - 1.0).abs() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(laguerre(65, 1.0), Err(Error::Domain(_))));
        assert!(laguerre(3, f64::NAN).is_err());
    }
}
