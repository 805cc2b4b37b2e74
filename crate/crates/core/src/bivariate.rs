//! Exact polynomials in the two grading variables `p` (degree) and
//! `q = alpha + p`, stored as a sparse map from exponent pairs to rational
//! coefficients.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::rational::rat_int;

/// Which of the two variables a symbolic factor refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    /// The polynomial degree `p`.
    P,
    /// The shifted parameter `q = alpha + p`.
    Q,
}

/// Sparse bivariate polynomial `sum c_ij p^i q^j`; zero coefficients are
/// never stored, so structural equality is semantic equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

/// One monomial of a [`BivariatePoly`] in serialized form.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct TermRepr {
    pub p_exp: u32,
    pub q_exp: u32,
    pub coeff: String,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(BigRational::one(), 0, 0)
    }

    /// The monomial `coeff * p^i q^j`.
    pub fn term(coeff: BigRational, p_exp: u32, q_exp: u32) -> Self {
        let mut poly = Self::default();
        if !coeff.is_zero() {
            poly.terms.insert((p_exp, q_exp), coeff);
        }
        poly
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `p^i q^j`.
    pub fn coeff(&self, p_exp: u32, q_exp: u32) -> BigRational {
        self.terms
            .get(&(p_exp, q_exp))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Iterate terms in lexicographic `(p_exp, q_exp)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree `max(i + j)`, or `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    fn insert(&mut self, key: (u32, u32), delta: BigRational) {
        if delta.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(BigRational::zero);
        *entry += delta;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&key, c) in &other.terms {
            out.insert(key, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&key, c) in &other.terms {
            out.insert(key, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::default();
        for (&key, c) in &self.terms {
            out.terms.insert(key, -c.clone());
        }
        out
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        let mut out = Self::default();
        for (&key, c) in &self.terms {
            out.terms.insert(key, c * factor);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                out.insert((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }

    /// Exact evaluation at rational `(p, q)`.
    pub fn eval(&self, p: &BigRational, q: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (&(i, j), c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..i {
                t *= p;
            }
            for _ in 0..j {
                t *= q;
            }
            acc += t;
        }
        acc
    }

    /// Sum of the terms with `i + j = d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        let mut out = Self::default();
        for (&(i, j), c) in &self.terms {
            if i + j == d {
                out.terms.insert((i, j), c.clone());
            }
        }
        out
    }

    /// Terms in serialized form for JSON output.
    pub fn term_reprs(&self) -> Vec<TermRepr> {
        self.terms
            .iter()
            .map(|(&(i, j), c)| TermRepr {
                p_exp: i,
                q_exp: j,
                coeff: c.to_string(),
            })
            .collect()
    }
}

impl std::fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in self.terms.iter().rev() {
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
            if !mag.is_one() || (i == 0 && j == 0) {
                write!(f, "{mag}")?;
                if i + j > 0 {
                    write!(f, " ")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "p")?,
                _ => write!(f, "p^{i}")?,
            }
            if i > 0 && j > 0 {
                write!(f, " ")?;
            }
            match j {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{j}")?,
            }
        }
        Ok(())
    }
}

/// Falling factorial `(var)_j` expanded as an exact polynomial in `var`.
pub fn falling_factorial_poly(var: Var, j: u32) -> BivariatePoly {
    let base = match var {
        Var::P => BivariatePoly::term(BigRational::one(), 1, 0),
        Var::Q => BivariatePoly::term(BigRational::one(), 0, 1),
    };
    let mut acc = BivariatePoly::one();
    for i in 0..j {
        let shifted = base.sub(&BivariatePoly::term(rat_int(i as i64), 0, 0));
        acc = acc.mul(&shifted);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn t(c: i64, i: u32, j: u32) -> BivariatePoly {
        BivariatePoly::term(rat_int(c), i, j)
    }

    #[test]
    fn falling_factorial_expansions() {
        assert_eq!(falling_factorial_poly(Var::Q, 0), BivariatePoly::one());
        // q(q-1) = q^2 - q
        assert_eq!(
            falling_factorial_poly(Var::Q, 2),
            t(1, 0, 2).add(&t(-1, 0, 1))
        );
        // p(p-1)(p-2) = p^3 - 3p^2 + 2p
        assert_eq!(
            falling_factorial_poly(Var::P, 3),
            t(1, 3, 0).add(&t(-3, 2, 0)).add(&t(2, 1, 0))
        );
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let a = t(2, 1, 1).add(&t(3, 0, 2));
        let b = t(2, 1, 1);
        let diff = a.sub(&b);
        assert_eq!(diff, t(3, 0, 2));
        assert_eq!(diff.num_terms(), 1);
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.total_degree(), Some(2));
        assert_eq!(BivariatePoly::zero().total_degree(), None);
    }

    #[test]
    fn evaluation() {
        // 2pq + 3q^2 at p = 1/2, q = 3
        let a = t(2, 1, 1).add(&t(3, 0, 2));
        assert_eq!(a.eval(&rat(1, 2), &rat_int(3)), rat_int(30));
    }

    #[test]
    fn homogeneous_filter() {
        let poly = t(1, 1, 2).add(&t(1, 2, 1)).add(&t(-1, 1, 1));
        assert_eq!(
            poly.homogeneous_part(3),
            t(1, 1, 2).add(&t(1, 2, 1))
        );
        assert!(t(1, 1, 1).homogeneous_part(5).is_zero());
    }
}
