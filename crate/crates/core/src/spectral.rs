//! Numeric Laguerre spectra and the convergence harness toward the
//! Marchenko-Pastur law.
//!
//! For `alpha > -1` the roots are the eigenvalues of the symmetric
//! tridiagonal Jacobi matrix of the three-term recurrence (diagonal
//! `2i + alpha + 1`, off-diagonal `sqrt(i (i + alpha))`), which is stable up
//! to degrees in the hundreds. Negative integer parameters factor a zero
//! root of known multiplicity and recurse; the remaining (non-integer
//! `alpha < -1`) cases fall back to the companion matrix, where complex
//! roots are expected and the practical degree is small.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laguerre::{conjugate, factor_nonpositive, monic_coeffs, DensePoly, LaguerreParams};
use crate::marchenko_pastur::{g_p_minus, moment};
use crate::rational::{rat_int, rational_from_f64, round_ties_toward_zero, to_f64};

/// Root multiset of one Laguerre polynomial.
#[derive(Debug, Clone, Serialize)]
pub struct Spectrum {
    /// Nonzero real roots, ascending.
    pub real_roots: Vec<f64>,
    /// Multiplicity of the root at zero (from the integer-parameter
    /// factorization).
    pub zero_multiplicity: u64,
    /// Complex roots (companion-matrix cases only), sorted by real part.
    pub complex_roots: Vec<(f64, f64)>,
}

impl Spectrum {
    /// Total number of roots counted with multiplicity.
    pub fn total_count(&self) -> u64 {
        self.real_roots.len() as u64 + self.zero_multiplicity + self.complex_roots.len() as u64
    }
}

/// Practical degree limit for the companion-matrix fallback; beyond this the
/// coefficient range exceeds what the dense eigensolver handles reliably.
pub const COMPANION_DEGREE_LIMIT: u64 = 30;

fn jacobi_roots(p: u64, alpha: f64) -> Vec<f64> {
    let n = p as usize;
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = 2.0 * i as f64 + alpha + 1.0;
    }
    for i in 1..n {
        let off = (i as f64 * (i as f64 + alpha)).sqrt();
        m[(i, i - 1)] = off;
        m[(i - 1, i)] = off;
    }
    let mut eig: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    eig.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
    eig
}

fn companion_roots(poly: &DensePoly) -> Vec<Complex64> {
    let d = poly.degree().expect("nonzero polynomial");
    if d == 0 {
        return Vec::new();
    }
    let mut m = DMatrix::<f64>::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..d {
        m[(i, d - 1)] = -to_f64(&poly.coeff(i));
    }
    m.complex_eigenvalues().iter().copied().collect()
}

/// Compute the full root multiset of `l_p` (and hence of `L_p`).
pub fn roots(params: &LaguerreParams) -> Spectrum {
    assert!(params.degree >= 1, "roots need p >= 1");
    let minus_one = rat_int(-1);
    if params.alpha > minus_one {
        return Spectrum {
            real_roots: jacobi_roots(params.degree, to_f64(&params.alpha)),
            zero_multiplicity: 0,
            complex_roots: Vec::new(),
        };
    }
    if let Ok((multiplicity, reduced)) = factor_nonpositive(params) {
        if reduced.degree == 0 {
            return Spectrum {
                real_roots: Vec::new(),
                zero_multiplicity: multiplicity,
                complex_roots: Vec::new(),
            };
        }
        let mut inner = roots(&reduced);
        inner.zero_multiplicity += multiplicity;
        return inner;
    }
    // companion fallback; complex roots permitted
    debug_assert!(
        params.degree <= COMPANION_DEGREE_LIMIT,
        "companion fallback is only reliable up to degree {COMPANION_DEGREE_LIMIT}"
    );
    let eig = companion_roots(&monic_coeffs(params));
    let mut real_roots = Vec::new();
    let mut complex_roots = Vec::new();
    for lambda in eig {
        if lambda.im.abs() <= 1e-8 * (1.0 + lambda.re.abs()) {
            real_roots.push(lambda.re);
        } else {
            complex_roots.push((lambda.re, lambda.im));
        }
    }
    real_roots.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    complex_roots.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    Spectrum {
        real_roots,
        zero_multiplicity: 0,
        complex_roots,
    }
}

/// k-th moment of the empirical distribution of `roots / scale`.
///
/// Returns the value and a flag that is set when complex roots contributed
/// (their conjugate-paired powers sum to the returned real part).
pub fn empirical_moment(spectrum: &Spectrum, k: u32, scale: f64) -> (f64, bool) {
    assert!(scale > 0.0, "scale must be positive");
    let p = spectrum.total_count() as f64;
    if k == 0 {
        return (1.0, false);
    }
    let mut acc = 0.0;
    for &r in &spectrum.real_roots {
        acc += (r / scale).powi(k as i32);
    }
    for &(re, im) in &spectrum.complex_roots {
        acc += (Complex64::new(re, im) / scale).powi(k as i32).re;
    }
    (acc / p, !spectrum.complex_roots.is_empty())
}

/// Integer coefficients `c_j * lcm` of a rational polynomial, for
/// fraction-free evaluation.
struct ScaledPoly {
    coeffs: Vec<BigInt>,
    common_denominator: BigInt,
}

impl ScaledPoly {
    fn new(poly: &DensePoly) -> Self {
        let mut lcm = BigInt::from(1);
        for c in poly.coeffs() {
            lcm = num_integer::Integer::lcm(&lcm, c.denom());
        }
        let coeffs = poly
            .coeffs()
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        Self {
            coeffs,
            common_denominator: lcm,
        }
    }

    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `sum_j coeffs[j] u^j v^(d-j)`; the polynomial value at `u/v` is this
    /// over `common_denominator * v^d`. Pure integer Horner, no reductions.
    fn eval_numerator(&self, u: &BigInt, v: &BigInt) -> BigInt {
        let mut acc = self.coeffs.last().expect("nonzero polynomial").clone();
        let mut v_power = BigInt::from(1);
        for c in self.coeffs.iter().rev().skip(1) {
            v_power *= v;
            acc = acc * u + c * &v_power;
        }
        acc
    }
}

/// Ratio `f_p(z) = Lhat_{p-1}(z/p) / Lhat_p(z/p)` of conjugate monic
/// Laguerre polynomials, evaluated exactly.
///
/// The coefficients overflow `f64` well before `p = 200`, so both
/// polynomials are evaluated in integer arithmetic at the exact binary
/// value of `z/p` (denominators cleared up front); only the final ratio is
/// rounded.
pub struct FpEvaluator {
    p: u64,
    numerator: ScaledPoly,
    denominator: ScaledPoly,
}

impl FpEvaluator {
    pub fn new(params: &LaguerreParams) -> Self {
        assert!(params.degree >= 1, "f_p needs p >= 1");
        let p = params.degree;
        let prev = LaguerreParams::new(p - 1, params.alpha.clone());
        let numerator =
            conjugate(&monic_coeffs(&prev), (p - 1) as usize).expect("exact degree");
        let denominator =
            conjugate(&monic_coeffs(params), p as usize).expect("exact degree");
        Self {
            p,
            numerator: ScaledPoly::new(&numerator),
            denominator: ScaledPoly::new(&denominator),
        }
    }

    pub fn eval(&self, z: f64) -> Result<f64> {
        if z < 0.0 {
            return Err(Error::Domain(format!("f_p needs z >= 0, got {z}")));
        }
        let t = rational_from_f64(z)? / rat_int(self.p as i64);
        let (u, v) = (t.numer().clone(), t.denom().clone());
        let den_value = self.denominator.eval_numerator(&u, &v);
        if den_value <= BigInt::ZERO {
            return Err(Error::NonPositiveDenominator { z });
        }
        let num_value = self.numerator.eval_numerator(&u, &v);
        // f = [N1/(D1 v^d1)] / [N2/(D2 v^d2)]: shift by v^(d2-d1)
        let mut ratio_num = num_value * &self.denominator.common_denominator;
        let mut ratio_den = den_value * &self.numerator.common_denominator;
        let (d1, d2) = (self.numerator.degree(), self.denominator.degree());
        for _ in d1..d2 {
            ratio_num *= &v;
        }
        for _ in d2..d1 {
            ratio_den *= &v;
        }
        Ok(to_f64(&BigRational::new(ratio_num, ratio_den)))
    }
}

/// One-shot evaluation of `f_p`; build an [`FpEvaluator`] to amortize the
/// coefficient work over a grid.
pub fn f_p(params: &LaguerreParams, z: f64) -> Result<f64> {
    FpEvaluator::new(params).eval(z)
}

/// Normalized moment generating function `(1/p) M_p(z/p)`, via the identity
/// `((alpha+p)/p) z f_p(z) + 1`.
pub fn scaled_moment_gen(params: &LaguerreParams, z: f64) -> Result<f64> {
    let ratio = f_p(params, z)?;
    let p = params.degree as f64;
    let q = to_f64(&params.alpha_plus_p());
    Ok(q / p * z * ratio + 1.0)
}

/// One row of a convergence experiment.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceRow {
    pub p: u64,
    pub alpha: i64,
    pub k: u32,
    pub empirical_moment: f64,
    pub mp_moment: f64,
    pub abs_error: f64,
}

/// Empirical moments of `roots(l_p) / p` against the Marchenko-Pastur
/// moments, for `alpha_p = round(c p)` (ties toward zero; clamped into
/// `[-p+1, -1]` when `-1 < c < 0`).
pub fn convergence_table(
    c: &BigRational,
    p_list: &[u64],
    k_max: u32,
) -> Result<Vec<ConvergenceRow>> {
    if *c <= rat_int(-1) {
        return Err(Error::Domain(format!("convergence table needs c > -1, got {c}")));
    }
    let mut rows = Vec::new();
    for &p in p_list {
        assert!(p >= 1, "degrees must be positive");
        let mut alpha = round_ties_toward_zero(&(c * rat_int(p as i64)));
        if *c < BigRational::zero() && p > 1 {
            alpha = alpha.clamp((1 - p as i64).into(), (-1i64).into());
        }
        let alpha_i64 = i64::try_from(&alpha).expect("alpha fits i64");
        let params = LaguerreParams::new(p, BigRational::from_integer(alpha));
        let spectrum = roots(&params);
        for k in 1..=k_max {
            let (empirical, _) = empirical_moment(&spectrum, k, p as f64);
            let mp = to_f64(&moment(c, k));
            rows.push(ConvergenceRow {
                p,
                alpha: alpha_i64,
                k,
                empirical_moment: empirical,
                mp_moment: mp,
                abs_error: (empirical - mp).abs(),
            });
        }
    }
    Ok(rows)
}

/// Check the classical bound: the largest root of `L_p` is at most
/// `4p + 2 alpha + 3` (stated for `alpha > -1`).
pub fn largest_root_bound_check(params: &LaguerreParams) -> bool {
    assert!(params.alpha > rat_int(-1), "bound is stated for alpha > -1");
    let spectrum = roots(params);
    let bound = 4.0 * params.degree as f64 + 2.0 * to_f64(&params.alpha) + 3.0;
    spectrum.real_roots.iter().all(|&r| r <= bound)
}

/// One grid point of the `f_p <= g_{p-}` comparison.
#[derive(Debug, Clone, Serialize)]
pub struct InequalityPoint {
    pub z: f64,
    pub f_p: f64,
    pub g_p_minus: f64,
    pub satisfied: bool,
}

/// Report of the pointwise comparison over a grid.
#[derive(Debug, Clone, Serialize)]
pub struct InequalityReport {
    pub points: Vec<InequalityPoint>,
    pub violations: usize,
}

/// Slack allowed in the floating-point comparison `f_p <= g_{p-}`.
pub const INEQUALITY_SLACK: f64 = 1e-10;

/// Check `f_p(z) <= g_{p-}(z) + slack` on each grid point (`alpha >= 0`,
/// grid below the threshold [`crate::marchenko_pastur::zeta_threshold`]).
pub fn inequality_fp_le_gp(params: &LaguerreParams, z_grid: &[f64]) -> Result<InequalityReport> {
    assert!(
        params.alpha >= BigRational::zero(),
        "the inequality is stated for alpha >= 0"
    );
    let alpha = to_f64(&params.alpha);
    let evaluator = FpEvaluator::new(params);
    let mut points = Vec::with_capacity(z_grid.len());
    let mut violations = 0;
    for &z in z_grid {
        let f = evaluator.eval(z)?;
        let g = g_p_minus(params.degree, alpha, z)?;
        let satisfied = f <= g + INEQUALITY_SLACK;
        if !satisfied {
            violations += 1;
        }
        points.push(InequalityPoint {
            z,
            f_p: f,
            g_p_minus: g,
            satisfied,
        });
    }
    Ok(InequalityReport { points, violations })
}
