//! Exact power sums of Laguerre roots.
//!
//! Newton's identities link the coefficients of the monic polynomial `l_p` to
//! the sums `M(k)` of the k-th powers of its roots:
//!
//! ```text
//! sum_{j=0}^{k-1} M(k-j) a_{p-j} = -k a_{p-k},   a_{p-j} = (-1)^j (q)_j (p)_j / j!
//! ```
//!
//! with `q = alpha + p`. Solving the triangular system by forward substitution
//! gives `M(k)` exactly, either numerically (rational `alpha`) or symbolically
//! as a polynomial in the two variables `(p, q)`. The homogeneous part of
//! degree `k+1` of the symbolic solution is a Narayana-weighted sum
//! `sum_j (1/k) C(k,j) C(k,j-1) p^j q^(k-j+1)`, which
//! [`certify_theorem2`] checks by exact comparison.
//!
//! The auxiliary quantities `A(k,l)` generalize `M(k) = A(k,1)`; they satisfy
//! the first-column expansion recursion
//!
//! ```text
//! A(k,l) = sum_{r=1}^{l} p (q-r)_(l-r) A(k-1,r) + A(k-1,l+1),   A(1,l) = (q)_l p
//! ```
//!
//! whose leading coefficients are counted by the legal lattice paths of
//! [`crate::lattice_paths`].

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::bivariate::{falling_factorial_poly, BivariatePoly, TermRepr, Var};
use crate::error::{Error, Result};
use crate::laguerre::LaguerreParams;
use crate::rational::{binomial, falling_factorial, rat_int};

/// Exact power sums `M(1..=k_max)` of the roots of one Laguerre polynomial.
///
/// The values are rational for every rational parameter, including the
/// regimes where the roots themselves are complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSumTable {
    pub params: LaguerreParams,
    values: Vec<BigRational>,
}

impl PowerSumTable {
    /// `M(k)`, 1-based; panics outside `1..=k_max`.
    pub fn m(&self, k: usize) -> &BigRational {
        &self.values[k - 1]
    }

    pub fn k_max(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }
}

/// Monic coefficient `a_{p-j} = (-1)^j (q)_j (p)_j / j!` (zero for `j > p`).
fn monic_coefficient(params: &LaguerreParams, j: u64) -> BigRational {
    let p = rat_int(params.degree as i64);
    let q = params.alpha_plus_p();
    let mut factorial = BigRational::one();
    for i in 1..=j {
        factorial *= rat_int(i as i64);
    }
    let sign = if j.is_multiple_of(2) {
        BigRational::one()
    } else {
        -BigRational::one()
    };
    sign * falling_factorial(&q, j) * falling_factorial(&p, j) / factorial
}

/// Solve the Newton system for `M(1..=k_max)` by forward substitution.
pub fn newton_power_sums(params: &LaguerreParams, k_max: usize) -> PowerSumTable {
    assert!(k_max >= 1, "k_max must be at least 1");
    let coeff: Vec<BigRational> = (0..=k_max as u64)
        .map(|j| monic_coefficient(params, j))
        .collect();
    let mut values: Vec<BigRational> = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let mut m = -rat_int(k as i64) * &coeff[k];
        for j in 1..k {
            m -= &coeff[j] * &values[k - j - 1];
        }
        values.push(m);
    }
    PowerSumTable {
        params: params.clone(),
        values,
    }
}

/// The determinant family `A(k,l)`; `A(k,1)` equals the power sum `M(k)`.
pub fn a_value(k: u32, l: u32, params: &LaguerreParams) -> BigRational {
    assert!(k >= 1 && l >= 1, "A(k,l) needs k, l >= 1");
    let mut memo = HashMap::new();
    a_value_memo(k, l, params, &mut memo)
}

fn a_value_memo(
    k: u32,
    l: u32,
    params: &LaguerreParams,
    memo: &mut HashMap<(u32, u32), BigRational>,
) -> BigRational {
    if let Some(v) = memo.get(&(k, l)) {
        return v.clone();
    }
    let p = rat_int(params.degree as i64);
    let q = params.alpha_plus_p();
    let value = if k == 1 {
        falling_factorial(&q, l as u64) * &p
    } else {
        let mut acc = a_value_memo(k - 1, l + 1, params, memo);
        for r in 1..=l {
            let weight = &p * falling_factorial(&(&q - rat_int(r as i64)), (l - r) as u64);
            acc += weight * a_value_memo(k - 1, r, params, memo);
        }
        acc
    };
    memo.insert((k, l), value.clone());
    value
}

/// Symbolic monic coefficient `(-1)^j (q)_j (p)_j / j!` as a bivariate polynomial.
fn symbolic_coefficient(j: u32) -> BivariatePoly {
    let mut factorial = BigRational::one();
    for i in 1..=j {
        factorial *= rat_int(i as i64);
    }
    let sign = if j.is_multiple_of(2) {
        BigRational::one()
    } else {
        -BigRational::one()
    };
    falling_factorial_poly(Var::Q, j)
        .mul(&falling_factorial_poly(Var::P, j))
        .scale(&(sign / factorial))
}

/// The power sum `M(k)` solved symbolically in the variables `(p, q)`.
///
/// Evaluating the result at any integer `p >= k` and rational `q = alpha + p`
/// reproduces [`newton_power_sums`]. Term count grows quickly with `k`;
/// callers that expose this to user input should cap `k` (the CLI defaults to
/// a cap of 10).
pub fn symbolic_power_sum(k: u32) -> BivariatePoly {
    assert!(k >= 1, "power sums are defined for k >= 1");
    let coeff: Vec<BivariatePoly> = (0..=k).map(symbolic_coefficient).collect();
    let mut values: Vec<BivariatePoly> = Vec::with_capacity(k as usize);
    for kk in 1..=k as usize {
        let mut m = coeff[kk].scale(&-rat_int(kk as i64));
        for j in 1..kk {
            m = m.sub(&coeff[j].mul(&values[kk - j - 1]));
        }
        values.push(m);
    }
    values.pop().expect("k >= 1")
}

/// The claimed homogeneous leading polynomial
/// `sum_{j=1}^{k} (1/k) C(k,j) C(k,j-1) p^j q^(k-j+1)`.
pub fn theorem2_leading(k: u32) -> BivariatePoly {
    assert!(k >= 1, "leading polynomial is defined for k >= 1");
    let mut acc = BivariatePoly::zero();
    for j in 1..=k {
        let c = BigRational::new(
            binomial(k as u64, j as u64) * binomial(k as u64, j as u64 - 1),
            k.into(),
        );
        acc = acc.add(&BivariatePoly::term(c, j, k - j + 1));
    }
    acc
}

/// Outcome of one leading-term certification run.
#[derive(Debug, Clone, Serialize)]
pub struct Theorem2Certificate {
    pub k: u32,
    pub leading_terms: Vec<TermRepr>,
    pub remainder_terms: Vec<TermRepr>,
    pub pass: bool,
}

/// List the monomials on which two polynomials disagree.
fn diff_terms(got: &BivariatePoly, want: &BivariatePoly) -> Vec<String> {
    let mut keys: Vec<(u32, u32)> = got.terms().map(|(&k, _)| k).collect();
    keys.extend(want.terms().map(|(&k, _)| k));
    keys.sort_unstable();
    keys.dedup();
    keys.into_iter()
        .filter_map(|(i, j)| {
            let g = got.coeff(i, j);
            let w = want.coeff(i, j);
            (g != w).then(|| format!("p^{i} q^{j}: got {g}, want {w}"))
        })
        .collect()
}

/// Certify that the degree-(k+1) homogeneous part of the symbolic power sum
/// equals [`theorem2_leading`] exactly and that the remainder has total
/// degree at most `k`.
pub fn certify_theorem2(k: u32) -> Result<Theorem2Certificate> {
    assert!(k >= 1, "certification is defined for k >= 1");
    let symbolic = symbolic_power_sum(k);
    let leading = symbolic.homogeneous_part(k + 1);
    let expected = theorem2_leading(k);
    let remainder = symbolic.sub(&leading);

    let mut differing = diff_terms(&leading, &expected);
    if let Some(d) = remainder.total_degree() {
        if d > k {
            differing.push(format!("remainder total degree {d} exceeds {k}"));
        }
    }
    if !differing.is_empty() {
        return Err(Error::CertificationFailed { k, differing });
    }
    Ok(Theorem2Certificate {
        k,
        leading_terms: leading.term_reprs(),
        remainder_terms: remainder.term_reprs(),
        pass: true,
    })
}
