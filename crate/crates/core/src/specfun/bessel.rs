//! Bessel function of the first kind, order zero.
//!
//! Two branches:
//!
//! * `|x| <= SERIES_LIMIT`: the power series `sum_k (-x^2/4)^k / (k!)^2`,
//!   accumulated in double-double arithmetic. The terms grow to roughly
//!   `I0(x)` before cancelling, so plain `f64` accumulation loses about
//!   `log10(I0(x))` digits; the extra 53 bits keep the absolute error at the
//!   level of one `f64` rounding.
//! * `|x| > SERIES_LIMIT`: the Hankel asymptotic expansion
//!   `J0(x) = sqrt(2/(pi x)) (P cos(x - pi/4) - Q sin(x - pi/4))`, truncated at
//!   its smallest term. Past the limit the smallest term is below `e^{-2x}`.
//!
//! Both branches agree to better than `1e-14` at the seam.

use crate::error::{Error, Result};

/// Switch point between the series and the asymptotic expansion.
pub const SERIES_LIMIT: f64 = 25.0;

/// Double-double value `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    fn two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        let bb = s - a;
        let err = (a - (s - bb)) + (b - bb);
        Dd { hi: s, lo: err }
    }

    fn quick_two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        Dd { hi: s, lo: b - (s - a) }
    }

    fn two_prod(a: f64, b: f64) -> Self {
        let p = a * b;
        Dd {
            hi: p,
            lo: a.mul_add(b, -p),
        }
    }

    fn add(self, other: Dd) -> Dd {
        let s = Dd::two_sum(self.hi, other.hi);
        let t = Dd::two_sum(self.lo, other.lo);
        let r = Dd::quick_two_sum(s.hi, s.lo + t.hi);
        Dd::quick_two_sum(r.hi, r.lo + t.lo)
    }

    fn mul(self, other: Dd) -> Dd {
        let p = Dd::two_prod(self.hi, other.hi);
        let lo = p.lo + (self.hi * other.lo + self.lo * other.hi);
        Dd::quick_two_sum(p.hi, lo)
    }

    fn div_f64(self, d: f64) -> Dd {
        let q1 = self.hi / d;
        let p = Dd::two_prod(q1, d);
        let rem = Dd::two_sum(self.hi, -p.hi);
        let rem_lo = rem.lo - p.lo + self.lo;
        let q2 = (rem.hi + rem_lo) / d;
        Dd::quick_two_sum(q1, q2)
    }

    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

fn j0_series(x: f64) -> f64 {
    // y = -x^2/4, exact up to the double-double width
    let y = Dd::two_prod(x, x).div_f64(4.0).neg();
    let mut term = Dd::from_f64(1.0);
    let mut sum = Dd::from_f64(1.0);
    for k in 1..200u32 {
        let kf = f64::from(k);
        term = term.mul(y).div_f64(kf * kf);
        sum = sum.add(term);
        if term.hi.abs() < 1e-34 * sum.hi.abs().max(1e-300) && kf * kf > -y.hi {
            break;
        }
    }
    sum.to_f64()
}

fn j0_asymptotic(x: f64) -> f64 {
    // a_k = prod_{j<=k} (-(2j-1)^2) / (k! 8^k); P and Q alternate over even/odd k
    let mut p = 1.0;
    let mut q = 0.0;
    let mut a = 1.0;
    let mut xpow = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200u32 {
        let kf = f64::from(k);
        let odd = 2.0 * kf - 1.0;
        a *= -(odd * odd) / (8.0 * kf);
        xpow *= x;
        let term = a / xpow;
        if term.abs() >= last {
            break;
        }
        last = term.abs();
        // sign (-1)^{floor(k/2)}
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * term;
        } else {
            q += sign * term;
        }
        if last < 1e-18 {
            break;
        }
    }
    let (s, c) = x.sin_cos();
    // cos(x - pi/4) = (cos x + sin x)/sqrt2, sin(x - pi/4) = (sin x - cos x)/sqrt2
    let cos_chi = (c + s) * std::f64::consts::FRAC_1_SQRT_2;
    let sin_chi = (s - c) * std::f64::consts::FRAC_1_SQRT_2;
    (2.0 / (std::f64::consts::PI * x)).sqrt() * (p * cos_chi - q * sin_chi)
}

/// `J0(x)`; absolute error below `1e-13` on `|x| <= 50`.
pub fn bessel_j0(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("bessel_j0 argument {x} is not finite")));
    }
    Ok(j0_unchecked(x))
}

/// `J0` without the finiteness check, for inner loops whose arguments are
/// finite by construction.
pub(crate) fn j0_unchecked(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= SERIES_LIMIT {
        j0_series(ax)
    } else {
        j0_asymptotic(ax)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Plain f64 series with a fixed number of terms; adequate for small x.
    fn series_oracle(x: f64, terms: usize) -> f64 {
        let y = -x * x / 4.0;
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..terms {
            term *= y / ((k * k) as f64);
            sum += term;
        }
        sum
    }

    #[test]
    fn value_at_zero() {
        assert_eq!(bessel_j0(0.0).unwrap(), 1.0);
    }

    #[test]
    fn value_at_one() {
        let oracle = series_oracle(1.0, 30);
        assert!((oracle - 0.765_197_686_557_966_6).abs() < 1e-16);
        assert!((bessel_j0(1.0).unwrap() - oracle).abs() < 1e-15);
    }

    #[test]
    fn first_zero() {
        // bisection on the plain series for the first sign change
        let (mut lo, mut hi) = (2.0, 3.0);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if series_oracle(mid, 40) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((lo - 2.404_825_557_695_77).abs() < 1e-12);
        assert!(bessel_j0(2.404_825_557_695_77).unwrap().abs() < 1e-10);
    }

    #[test]
    fn seam_agreement() {
        for x in [SERIES_LIMIT - 0.5, SERIES_LIMIT, SERIES_LIMIT + 0.5] {
            let d = (j0_series(x) - j0_asymptotic(x)).abs();
            assert!(d < 1e-13, "seam mismatch {d:e} at {x}");
        }
    }

    #[test]
    fn even_function() {
        for x in [0.3, 7.0, 31.0, 120.0] {
            assert_eq!(bessel_j0(-x).unwrap(), bessel_j0(x).unwrap());
        }
    }

    #[test]
    fn rejects_non_finite() {
        assert!(matches!(bessel_j0(f64::NAN), Err(Error::Domain(_))));
        assert!(bessel_j0(f64::INFINITY).is_err());
    }

    #[test]
    fn known_reference_values() {
        // tabulated values (Abramowitz & Stegun, Table 9.1 and 9.x extensions)
        let table = [
            (5.0, -0.177_596_771_314_338_3),
            (10.0, -0.245_935_764_451_348_3),
            (20.0, 0.167_024_664_340_583_1),
            (50.0, 0.055_812_327_669_251_86),
        ];
        for (x, v) in table {
            let got = bessel_j0(x).unwrap();
            assert!((got - v).abs() < 1e-13, "J0({x}) = {got}, want {v}");
        }
    }
}
