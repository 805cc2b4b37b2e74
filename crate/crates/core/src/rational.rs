//! Small helpers on top of [`num_rational::BigRational`]: literal parsing,
//! float conversion, falling factorials and binomial coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Rational from an integer.
pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Accurate conversion to `f64` (works for numerators and denominators of any size).
pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parse `"num"` or `"num/den"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::BadRational(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().map_err(|_| bad())?;
            let d: BigInt = den.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// Exact rational value of a finite `f64` (its binary expansion).
pub fn rational_from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::BadRational(format!("{x}")))
}

/// Best rational approximation of `x` by truncating its continued-fraction
/// expansion at the last convergent whose denominator stays `<= max_denominator`.
pub fn approx_rational(x: f64, max_denominator: u64) -> Result<BigRational> {
    if !x.is_finite() {
        return Err(Error::BadRational(format!("{x}")));
    }
    let exact = rational_from_f64(x)?;
    let max_den = BigInt::from(max_denominator);
    if exact.denom() <= &max_den {
        return Ok(exact);
    }

    // Continued-fraction convergents h_k/k_k of |x|.
    let negative = exact.is_negative();
    let mut frac = exact.abs();
    let (mut h_prev, mut h) = (BigInt::one(), frac.to_integer());
    let (mut k_prev, mut k) = (BigInt::zero(), BigInt::one());
    loop {
        frac -= BigRational::from_integer(frac.to_integer());
        if frac.is_zero() {
            break;
        }
        frac = frac.recip();
        let a = frac.to_integer();
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        if k_next > max_den {
            break;
        }
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
    let approx = BigRational::new(h, k);
    Ok(if negative { -approx } else { approx })
}

/// Falling factorial `(beta)_k = beta (beta-1) ... (beta-k+1)`, with `(beta)_0 = 1`.
///
/// Vanishes whenever `beta` is a non-negative integer smaller than `k`.
pub fn falling_factorial(beta: &BigRational, k: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut term = beta.clone();
    for _ in 0..k {
        acc *= &term;
        term -= BigRational::one();
    }
    acc
}

/// Binomial coefficient `C(n, k)` as an exact integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Round to the nearest integer, ties toward zero (so 2.5 -> 2 and -2.5 -> -2).
pub fn round_ties_toward_zero(r: &BigRational) -> BigInt {
    let abs = r.abs();
    let floor_abs = abs.floor();
    let frac_doubled = (&abs - &floor_abs) * rat_int(2);
    let mag = if frac_doubled > BigRational::one() {
        floor_abs.to_integer() + BigInt::one()
    } else {
        floor_abs.to_integer()
    };
    if r.is_negative() {
        -mag
    } else {
        mag
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_literals() {
        assert_eq!(parse_rational("3").unwrap(), rat_int(3));
        assert_eq!(parse_rational("-1/2").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("4/-8").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn float_roundtrip_is_exact() {
        let r = rational_from_f64(0.1).unwrap();
        assert_eq!(to_f64(&r), 0.1);
        assert_ne!(r, rat(1, 10)); // 0.1 is not exactly 1/10 in binary
    }

    #[test]
    fn continued_fraction_approximation() {
        // 0.1 within denominator 100 recovers 1/10 exactly.
        assert_eq!(approx_rational(0.1, 100).unwrap(), rat(1, 10));
        let pi = approx_rational(std::f64::consts::PI, 1000).unwrap();
        assert_eq!(pi, rat(355, 113));
        assert_eq!(approx_rational(-0.5, 10).unwrap(), rat(-1, 2));
    }

    #[test]
    fn falling_factorials() {
        assert_eq!(falling_factorial(&rat_int(5), 0), rat_int(1));
        assert_eq!(falling_factorial(&rat_int(5), 2), rat_int(20));
        // positive integer beta with k > beta vanishes
        assert_eq!(falling_factorial(&rat_int(2), 3), rat_int(0));
        assert_eq!(falling_factorial(&rat(1, 2), 2), rat(-1, 4));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(10, 0), BigInt::from(1));
        assert_eq!(binomial(3, 5), BigInt::from(0));
    }

    #[test]
    fn rounding_ties_toward_zero() {
        assert_eq!(round_ties_toward_zero(&rat(5, 2)), BigInt::from(2));
        assert_eq!(round_ties_toward_zero(&rat(-5, 2)), BigInt::from(-2));
        assert_eq!(round_ties_toward_zero(&rat(7, 2)), BigInt::from(3));
        assert_eq!(round_ties_toward_zero(&rat(1, 3)), BigInt::from(0));
        assert_eq!(round_ties_toward_zero(&rat(-2, 3)), BigInt::from(-1));
    }
}
