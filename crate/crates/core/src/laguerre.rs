//! Exact Laguerre polynomials in standard, monic, and conjugate form.
//!
//! The degree-`p` Laguerre polynomial with parameter `alpha` is
//!
//! ```text
//! L_p(x) = sum_{j=0}^{p} (-1)^j C(alpha+p, p-j) x^j / j!
//! ```
//!
//! and its monic version `l_p = (-1)^p p! L_p` has the closed coefficient form
//!
//! ```text
//! l_p(z) = sum_{j=0}^{p} (-1)^j (p)_j (alpha+p)_j / j! * z^(p-j)
//! ```
//!
//! with `(beta)_j` the falling factorial. The conjugate of a degree-`d`
//! polynomial `f` is `z^d f(1/z)`, i.e. the reversed coefficient sequence;
//! conjugates of monic Laguerre polynomials satisfy their own three-term
//! recursion and a first-order derivative identity, both implemented here.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{rat_int, to_f64};

/// Degree and parameter of a Laguerre polynomial.
///
/// The parameter is kept exact even when experiments drive it from floats;
/// callers convert through [`crate::rational::approx_rational`] or
/// [`crate::rational::rational_from_f64`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaguerreParams {
    /// Degree `p >= 0`.
    pub degree: u64,
    /// Parameter `alpha`, exact.
    pub alpha: BigRational,
}

impl LaguerreParams {
    pub fn new(degree: u64, alpha: BigRational) -> Self {
        Self { degree, alpha }
    }

    /// `alpha + p`, the second grading variable of the power-sum expansion.
    pub fn alpha_plus_p(&self) -> BigRational {
        &self.alpha + rat_int(self.degree as i64)
    }
}

/// Dense univariate polynomial with exact rational coefficients, ascending by
/// degree. The zero polynomial stores no coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensePoly {
    coeffs: Vec<BigRational>,
}

impl DensePoly {
    /// Build from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `z^i` (zero outside the stored range).
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Ascending coefficient slice (no trailing zeros).
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Horner evaluation at an exact rational point.
    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation at a float; each coefficient is converted on the fly.
    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + to_f64(c);
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> DensePoly {
        if self.coeffs.len() <= 1 {
            return DensePoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rat_int(i as i64))
            .collect();
        DensePoly::new(coeffs)
    }

    /// Multiply by `z^k`.
    pub fn shift_up(&self, k: usize) -> DensePoly {
        if self.is_zero() {
            return DensePoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        DensePoly::new(coeffs)
    }

    pub fn scale(&self, factor: &BigRational) -> DensePoly {
        DensePoly::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn add(&self, other: &DensePoly) -> DensePoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        DensePoly::new(coeffs)
    }

    pub fn sub(&self, other: &DensePoly) -> DensePoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        DensePoly::new(coeffs)
    }

    pub fn mul(&self, other: &DensePoly) -> DensePoly {
        if self.is_zero() || other.is_zero() {
            return DensePoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        DensePoly::new(coeffs)
    }
}

impl std::fmt::Display for DensePoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Monic Laguerre polynomial `l_p` with exact coefficients.
///
/// The coefficient of `z^(p-j)` is `(-1)^j (p)_j (alpha+p)_j / j!`.
pub fn monic_coeffs(params: &LaguerreParams) -> DensePoly {
    let p = params.degree;
    let q = params.alpha_plus_p();
    let mut coeffs = vec![BigRational::zero(); p as usize + 1];
    // Build (p)_j (q)_j / j! incrementally over j.
    let mut term = BigRational::one();
    let mut sign = BigRational::one();
    for j in 0..=p {
        coeffs[(p - j) as usize] = &sign * &term;
        sign = -sign;
        let next = (rat_int(p as i64) - rat_int(j as i64))
            * (&q - rat_int(j as i64))
            / rat_int(j as i64 + 1);
        term *= next;
    }
    DensePoly::new(coeffs)
}

/// Standard Laguerre polynomial `L_p = (-1)^p l_p / p!`.
pub fn standard_coeffs(params: &LaguerreParams) -> DensePoly {
    let p = params.degree;
    let mut factor = BigRational::one();
    for i in 1..=p {
        factor *= rat_int(i as i64);
    }
    let sign = if p.is_multiple_of(2) {
        BigRational::one()
    } else {
        -BigRational::one()
    };
    monic_coeffs(params).scale(&(sign / factor))
}

/// Conjugate polynomial `z^d f(1/z)` for `d = declared_degree`: the
/// coefficient sequence reversed relative to `d`.
///
/// The degree must be declared because conjugation of a polynomial with a
/// zero constant term is not invertible from the coefficients alone.
pub fn conjugate(poly: &DensePoly, declared_degree: usize) -> Result<DensePoly> {
    if let Some(deg) = poly.degree() {
        if declared_degree < deg {
            return Err(Error::DegreeTooSmall {
                declared: declared_degree,
                actual: deg,
            });
        }
    }
    let coeffs = (0..=declared_degree)
        .map(|i| poly.coeff(declared_degree - i))
        .collect();
    Ok(DensePoly::new(coeffs))
}

/// One step of the standard three-term recursion:
/// `(p+1) L_{p+1} = (2p+alpha+1 - z) L_p - (p+alpha) L_{p-1}`.
///
/// Seed with `L_{-1} = 0`, `L_0 = 1`.
pub fn three_term_step(
    l_prev: &DensePoly,
    l_cur: &DensePoly,
    p: u64,
    alpha: &BigRational,
) -> DensePoly {
    let b = rat_int(2 * p as i64 + 1) + alpha;
    let c = rat_int(p as i64) + alpha;
    let shifted = l_cur.shift_up(1); // z * L_p
    let num = l_cur.scale(&b).sub(&shifted).sub(&l_prev.scale(&c));
    num.scale(&(BigRational::one() / rat_int(p as i64 + 1)))
}

/// One step of the conjugate recursion:
/// `Lhat_{p+1} = [1 - (alpha+2p+1) z] Lhat_p - z^2 (p+alpha) p Lhat_{p-1}`.
///
/// Seed with `Lhat_0 = 1`, `Lhat_1 = 1 - (alpha+1) z`.
pub fn conjugate_three_term_step(
    lhat_prev: &DensePoly,
    lhat_cur: &DensePoly,
    p: u64,
    alpha: &BigRational,
) -> DensePoly {
    let b = alpha + rat_int(2 * p as i64 + 1);
    let c = (alpha + rat_int(p as i64)) * rat_int(p as i64);
    lhat_cur
        .sub(&lhat_cur.shift_up(1).scale(&b))
        .sub(&lhat_prev.shift_up(2).scale(&c))
}

/// Formal derivative of the conjugate monic Laguerre polynomial `Lhat_p`.
///
/// Satisfies `d/dz Lhat_p = -(alpha+p) p Lhat_{p-1}` exactly; the sign
/// orientation is pinned by the formal derivative, which this function
/// computes directly (the identity is asserted in tests, not assumed).
pub fn conjugate_derivative(params: &LaguerreParams) -> DensePoly {
    assert!(params.degree >= 1, "derivative identity needs p >= 1");
    let lhat = conjugate(&monic_coeffs(params), params.degree as usize)
        .expect("conjugation at the exact degree cannot fail");
    lhat.derivative()
}

/// Factor out the zero root of `l_p` when `alpha` is an integer in
/// `[-p+1, -1]`: returns the multiplicity `-alpha` and the reduced parameters
/// `(p+alpha, -alpha)` with `l_p = z^(-alpha) * l_(p+alpha)`.
pub fn factor_nonpositive(params: &LaguerreParams) -> Result<(u64, LaguerreParams)> {
    let p = params.degree;
    let err = || Error::AlphaNotFactorable {
        alpha: params.alpha.to_string(),
        p,
    };
    if !params.alpha.is_integer() {
        return Err(err());
    }
    let alpha_int = params.alpha.to_integer();
    let lo = BigInt::from(1i64 - p as i64);
    let hi = BigInt::from(-1i64);
    if alpha_int < lo || alpha_int > hi {
        return Err(err());
    }
    let multiplicity = (-&alpha_int).to_u64().expect("0 < -alpha < p");
    let reduced = LaguerreParams::new(
        p - multiplicity,
        BigRational::from_integer(-alpha_int),
    );
    Ok((multiplicity, reduced))
}
