//! Sample-covariance experiments: the expected-characteristic-polynomial
//! identity `E det(xI - XX^T) = l_p^(n-p)(x)` and empirical spectral moments
//! of Wishart-type matrices.
//!
//! All randomness is counter-based: every draw is a pure function of
//! `(seed, trial, entry position, draw index)`, so trials can be evaluated in
//! any order and identical inputs always reproduce identical matrices.
//! Rademacher entries are bit-exact across platforms; Gaussian entries use
//! the polar transform and are reproducible per platform.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::laguerre::{monic_coeffs, DensePoly, LaguerreParams};
use crate::rational::rat_int;

/// Entry distribution: mean 0, variance 1 by construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryLaw {
    Gaussian,
    Rademacher,
}

impl std::fmt::Display for EntryLaw {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EntryLaw::Gaussian => write!(f, "gaussian"),
            EntryLaw::Rademacher => write!(f, "rademacher"),
        }
    }
}

impl std::str::FromStr for EntryLaw {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "gaussian" => Ok(EntryLaw::Gaussian),
            "rademacher" => Ok(EntryLaw::Rademacher),
            other => Err(format!("unknown entry law {other:?}")),
        }
    }
}

// splitmix64 finalizer: full-avalanche 64-bit mix
fn mix(mut x: u64) -> u64 {
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Counter-based generator: a keyed mixing function of
/// `(trial, position, draw)`, no mutable state.
#[derive(Debug, Clone, Copy)]
pub struct CounterRng {
    key: u64,
}

impl CounterRng {
    pub fn new(seed: u64) -> Self {
        Self {
            key: mix(seed ^ 0x9e37_79b9_7f4a_7c15),
        }
    }

    fn word(&self, trial: u64, position: u64, draw: u64) -> u64 {
        let mut h = self.key;
        h = mix(h ^ trial.wrapping_mul(0xd134_2543_de82_ef95));
        h = mix(h ^ position.wrapping_mul(0xaf25_1af3_b0f0_25b5));
        h = mix(h ^ draw.wrapping_mul(0x2545_f491_4f6c_dd1d));
        h
    }

    /// Uniform draw in `(0, 1]` (never zero, so logs are safe).
    fn uniform(&self, trial: u64, position: u64, draw: u64) -> f64 {
        ((self.word(trial, position, draw) >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// A Rademacher sign, `+1.0` or `-1.0`.
    pub fn rademacher(&self, trial: u64, position: u64) -> f64 {
        if self.word(trial, position, 0) & 1 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// A standard Gaussian via the polar transform; rejections advance the
    /// draw counter, so the value stays a pure function of the inputs.
    pub fn gaussian(&self, trial: u64, position: u64) -> f64 {
        let mut draw = 0u64;
        loop {
            let x = 2.0 * self.uniform(trial, position, draw) - 1.0;
            let y = 2.0 * self.uniform(trial, position, draw + 1) - 1.0;
            draw += 2;
            let s = x * x + y * y;
            if s > 0.0 && s < 1.0 {
                return x * (-2.0 * s.ln() / s).sqrt();
            }
        }
    }
}

/// Deterministic `p x n` sample; entry `(i, j)` uses counter position
/// `i * n + j`.
pub fn sample_matrix(
    p: usize,
    n: usize,
    law: EntryLaw,
    seed: u64,
    trial_index: u64,
) -> DMatrix<f64> {
    assert!(p >= 1 && n >= 1);
    let rng = CounterRng::new(seed);
    DMatrix::from_fn(p, n, |i, j| {
        let position = (i * n + j) as u64;
        match law {
            EntryLaw::Gaussian => rng.gaussian(trial_index, position),
            EntryLaw::Rademacher => rng.rademacher(trial_index, position),
        }
    })
}

/// Monic characteristic polynomial `det(xI - M)` of a square matrix with
/// exact rational entries, by the Faddeev-LeVerrier trace recursion (the
/// only divisions are by the integers `1..=dim`).
pub fn char_poly_exact(m: &[Vec<BigRational>]) -> DensePoly {
    let d = m.len();
    for row in m {
        assert_eq!(row.len(), d, "matrix must be square");
    }
    // c_k via M_k = M (M_{k-1} + c_{k-1} I), c_k = -tr(M_k)/k
    let mut coeffs_desc = vec![BigRational::one()];
    let mut mk = m.to_vec();
    for k in 1..=d {
        let trace: BigRational = (0..d).map(|i| mk[i][i].clone()).sum();
        let ck = -trace / rat_int(k as i64);
        coeffs_desc.push(ck.clone());
        if k == d {
            break;
        }
        // B = M_k + c_k I, then M_{k+1} = M * B
        let mut b = mk.clone();
        for (i, row) in b.iter_mut().enumerate() {
            row[i] += &ck;
        }
        let mut next = vec![vec![BigRational::zero(); d]; d];
        for i in 0..d {
            for j in 0..d {
                let mut acc = BigRational::zero();
                for (l, b_row) in b.iter().enumerate() {
                    acc += &m[i][l] * &b_row[j];
                }
                next[i][j] = acc;
            }
        }
        mk = next;
    }
    coeffs_desc.reverse();
    DensePoly::new(coeffs_desc)
}

/// Same recursion over plain integers; used by the exhaustive enumeration
/// where all matrices are small sign Gram matrices.
fn char_poly_int(m: &[Vec<i64>]) -> Vec<i64> {
    let d = m.len();
    let mut coeffs_desc = vec![1i64];
    let mut mk = m.to_vec();
    for k in 1..=d {
        let trace: i64 = (0..d).map(|i| mk[i][i]).sum();
        debug_assert_eq!(trace % k as i64, 0, "trace recursion stays integral");
        let ck = -trace / k as i64;
        coeffs_desc.push(ck);
        if k == d {
            break;
        }
        let mut b = mk.clone();
        for (i, row) in b.iter_mut().enumerate() {
            row[i] += ck;
        }
        let mut next = vec![vec![0i64; d]; d];
        for i in 0..d {
            for j in 0..d {
                next[i][j] = (0..d).map(|l| m[i][l] * b[l][j]).sum();
            }
        }
        mk = next;
    }
    coeffs_desc.reverse();
    coeffs_desc
}

/// Cap on `p * n` for the exhaustive sign-matrix average.
pub const EXACT_ENUMERATION_LIMIT: usize = 16;

/// Average `det(xI - XX^T)` exactly over all `2^(pn)` Rademacher sign
/// matrices; equals the monic Laguerre polynomial `l_p` with parameter
/// `n - p`.
pub fn exact_rademacher_expectation(p: usize, n: usize) -> Result<DensePoly> {
    assert!(p >= 1 && n >= 1);
    let bits = p * n;
    if bits > EXACT_ENUMERATION_LIMIT {
        return Err(Error::EnumerationTooLarge {
            p,
            n,
            limit: EXACT_ENUMERATION_LIMIT,
        });
    }
    let mut sums = vec![BigInt::zero(); p + 1];
    for mask in 0u64..(1u64 << bits) {
        let entry = |i: usize, j: usize| -> i64 {
            if mask >> (i * n + j) & 1 == 0 {
                1
            } else {
                -1
            }
        };
        let mut gram = vec![vec![0i64; p]; p];
        for (i, row) in gram.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..n).map(|col| entry(i, col) * entry(j, col)).sum();
            }
        }
        for (s, c) in sums.iter_mut().zip(char_poly_int(&gram)) {
            *s += c;
        }
    }
    let total = BigInt::one() << bits;
    let coeffs = sums
        .into_iter()
        .map(|s| BigRational::new(s, total.clone()))
        .collect();
    Ok(DensePoly::new(coeffs))
}

/// Per-coefficient Monte Carlo summary of `det(xI - XX^T)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McEstimate {
    pub p: usize,
    pub n: usize,
    pub law: EntryLaw,
    pub trials: u64,
    pub seed: u64,
    /// Sample means, ascending degree (the leading mean is exactly 1).
    pub coeff_means: Vec<f64>,
    /// Standard errors of the means, same order.
    pub coeff_stderrs: Vec<f64>,
}

impl McEstimate {
    /// The exact coefficients this estimate converges to.
    pub fn reference(&self) -> DensePoly {
        monic_coeffs(&LaguerreParams::new(
            self.p as u64,
            rat_int(self.n as i64 - self.p as i64),
        ))
    }

    /// `(mean - reference) / stderr` per coefficient; 0 where an exactly
    /// constant statistic matches, infinite where it does not.
    pub fn z_scores(&self) -> Vec<f64> {
        let reference = self.reference();
        self.coeff_means
            .iter()
            .zip(&self.coeff_stderrs)
            .enumerate()
            .map(|(i, (&mean, &se))| {
                let target = crate::rational::to_f64(&reference.coeff(i));
                if se == 0.0 {
                    if mean == target {
                        0.0
                    } else {
                        f64::INFINITY
                    }
                } else {
                    (mean - target) / se
                }
            })
            .collect()
    }

    /// Full JSON report including the reference coefficients.
    pub fn to_json(&self) -> serde_json::Value {
        let reference: Vec<String> = (0..=self.p)
            .map(|i| self.reference().coeff(i).to_string())
            .collect();
        json!({
            "p": self.p,
            "n": self.n,
            "law": self.law.to_string(),
            "trials": self.trials,
            "seed": self.seed,
            "coeff_means": self.coeff_means,
            "coeff_stderrs": self.coeff_stderrs,
            "reference_coeffs": reference,
            "z_scores": self.z_scores(),
        })
    }
}

/// Characteristic polynomial of a small symmetric matrix in floats, by the
/// same trace recursion.
fn char_poly_f64(m: &DMatrix<f64>) -> Vec<f64> {
    let d = m.nrows();
    let mut coeffs_desc = vec![1.0];
    let mut mk = m.clone();
    for k in 1..=d {
        let ck = -mk.trace() / k as f64;
        coeffs_desc.push(ck);
        if k == d {
            break;
        }
        let mut b = mk.clone();
        for i in 0..d {
            b[(i, i)] += ck;
        }
        mk = m * b;
    }
    coeffs_desc.reverse();
    coeffs_desc
}

/// Monte Carlo estimate of the expected characteristic polynomial of
/// `XX^T`. Trials accumulate in index order, so the output is a pure
/// function of the arguments.
pub fn mc_expected_charpoly(
    p: usize,
    n: usize,
    law: EntryLaw,
    trials: u64,
    seed: u64,
) -> McEstimate {
    assert!(n >= p && p >= 1, "needs n >= p >= 1");
    assert!(trials >= 100, "needs at least 100 trials");
    let dim = p + 1;
    let mut sum = vec![0.0f64; dim];
    let mut sumsq = vec![0.0f64; dim];
    for trial in 0..trials {
        let x = sample_matrix(p, n, law, seed, trial);
        let w = &x * x.transpose();
        let coeffs = char_poly_f64(&w);
        for i in 0..dim {
            sum[i] += coeffs[i];
            sumsq[i] += coeffs[i] * coeffs[i];
        }
    }
    let t = trials as f64;
    let coeff_means: Vec<f64> = sum.iter().map(|s| s / t).collect();
    let coeff_stderrs: Vec<f64> = coeff_means
        .iter()
        .zip(&sumsq)
        .map(|(&mean, &sq)| {
            let var = ((sq - t * mean * mean) / (t - 1.0)).max(0.0);
            (var / t).sqrt()
        })
        .collect();
    McEstimate {
        p,
        n,
        law,
        trials,
        seed,
        coeff_means,
        coeff_stderrs,
    }
}

/// Which matrix the empirical spectral moments are taken of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    /// `(1/p) XX^T`: moments approach those of `mu_c` with `c = (n-p)/p`.
    ByP,
    /// `(1/n) XX^T`: moments approach those of `mu~_a` with `a = p/n`.
    ByN,
}

/// Mean and standard error of one empirical spectral moment.
#[derive(Debug, Clone, Serialize)]
pub struct EsdMomentRow {
    pub k: u32,
    pub mean: f64,
    pub stderr: f64,
}

/// Averaged empirical moments `(1/p) sum_i (lambda_i / scale)^k` of the
/// eigenvalues of `XX^T`, with `scale = p` or `n`.
pub fn esd_moment_mc(
    p: usize,
    n: usize,
    law: EntryLaw,
    trials: u64,
    k_max: u32,
    seed: u64,
    normalization: Normalization,
) -> Vec<EsdMomentRow> {
    assert!(p >= 1 && n >= 1 && trials >= 1 && k_max >= 1);
    let scale = match normalization {
        Normalization::ByP => p as f64,
        Normalization::ByN => n as f64,
    };
    let mut sum = vec![0.0f64; k_max as usize];
    let mut sumsq = vec![0.0f64; k_max as usize];
    for trial in 0..trials {
        let x = sample_matrix(p, n, law, seed, trial);
        let w = &x * x.transpose();
        let eigenvalues = w.symmetric_eigenvalues();
        for k in 1..=k_max {
            let m: f64 = eigenvalues
                .iter()
                .map(|&l| (l / scale).powi(k as i32))
                .sum::<f64>()
                / p as f64;
            sum[k as usize - 1] += m;
            sumsq[k as usize - 1] += m * m;
        }
    }
    let t = trials as f64;
    (1..=k_max)
        .map(|k| {
            let mean = sum[k as usize - 1] / t;
            let var = if trials > 1 {
                ((sumsq[k as usize - 1] - t * mean * mean) / (t - 1.0)).max(0.0)
            } else {
                0.0
            };
            EsdMomentRow {
                k,
                mean,
                stderr: (var / t).sqrt(),
            }
        })
        .collect()
}

/// The same moment through powers of the trace,
/// `tr((W/scale)^k) / p`, avoiding the eigendecomposition.
pub fn moment_via_trace_powers(w: &DMatrix<f64>, k: u32, scale: f64) -> f64 {
    assert!(k >= 1);
    let a = w / scale;
    let mut power = a.clone();
    for _ in 1..k {
        power = &power * &a;
    }
    power.trace() / w.nrows() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn rational_matrix(values: &[&[i64]]) -> Vec<Vec<BigRational>> {
        values
            .iter()
            .map(|row| row.iter().map(|&v| rat_int(v)).collect())
            .collect()
    }

    #[test]
    fn char_poly_small_cases() {
        let zero = rational_matrix(&[&[0, 0], &[0, 0]]);
        assert_eq!(char_poly_exact(&zero).coeffs(), &[rat_int(0), rat_int(0), rat_int(1)][..]);

        let diag = rational_matrix(&[&[2, 0], &[0, 3]]);
        assert_eq!(
            char_poly_exact(&diag).coeffs(),
            &[rat_int(6), rat_int(-5), rat_int(1)][..]
        );

        let twice = rational_matrix(&[&[2, 0], &[0, 2]]);
        assert_eq!(
            char_poly_exact(&twice).coeffs(),
            &[rat_int(4), rat_int(-4), rat_int(1)][..]
        );

        // non-integer entries work too
        let m = vec![vec![rat(1, 2), rat_int(0)], vec![rat_int(0), rat(1, 3)]];
        assert_eq!(
            char_poly_exact(&m).coeffs(),
            &[rat(1, 6), rat(-5, 6), rat_int(1)][..]
        );
    }

    #[test]
    fn integer_and_rational_charpolys_agree() {
        let ints = [
            vec![vec![3i64, -1, 2], vec![-1, 4, 0], vec![2, 0, 5]],
            vec![vec![2, 2, 2], vec![2, 2, 2], vec![2, 2, 2]],
        ];
        for m in &ints {
            let as_rational: Vec<Vec<BigRational>> = m
                .iter()
                .map(|row| row.iter().map(|&v| rat_int(v)).collect())
                .collect();
            let got: Vec<BigRational> =
                char_poly_int(m).into_iter().map(rat_int).collect();
            assert_eq!(char_poly_exact(&as_rational).coeffs(), &got[..]);
        }
    }

    #[test]
    fn exact_expectation_tiny_cases() {
        // E(x - (X1^2 + X2^2)) = x - 2 = l_1 with parameter 1
        let e = exact_rademacher_expectation(1, 2).unwrap();
        assert_eq!(e.coeffs(), &[rat_int(-2), rat_int(1)][..]);

        let e = exact_rademacher_expectation(2, 3).unwrap();
        assert_eq!(e.coeffs(), &[rat_int(6), rat_int(-6), rat_int(1)][..]);

        let e = exact_rademacher_expectation(2, 2).unwrap();
        assert_eq!(e.coeffs(), &[rat_int(2), rat_int(-4), rat_int(1)][..]);

        assert!(matches!(
            exact_rademacher_expectation(5, 4),
            Err(Error::EnumerationTooLarge { .. })
        ));
    }

    #[test]
    fn exact_expectation_equals_monic_laguerre_up_to_the_limit() {
        for p in 1..=4usize {
            for n in p..=(EXACT_ENUMERATION_LIMIT / p) {
                let expectation = exact_rademacher_expectation(p, n).unwrap();
                let reference = monic_coeffs(&LaguerreParams::new(
                    p as u64,
                    rat_int(n as i64 - p as i64),
                ));
                assert_eq!(expectation, reference, "p = {p}, n = {n}");
            }
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        for law in [EntryLaw::Gaussian, EntryLaw::Rademacher] {
            let a = sample_matrix(3, 5, law, 42, 7);
            let b = sample_matrix(3, 5, law, 42, 7);
            assert_eq!(a, b);
            let c = sample_matrix(3, 5, law, 42, 8);
            assert_ne!(a, c);
            let d = sample_matrix(3, 5, law, 43, 7);
            assert_ne!(a, d);
        }
    }

    #[test]
    fn rademacher_entries_are_signs() {
        let x = sample_matrix(4, 6, EntryLaw::Rademacher, 1, 0);
        assert!(x.iter().all(|&v| v == 1.0 || v == -1.0));
        // p = 1, n = 2: XX^T is always [2]
        for trial in 0..10 {
            let x = sample_matrix(1, 2, EntryLaw::Rademacher, 5, trial);
            let w = &x * x.transpose();
            assert_eq!(w[(0, 0)], 2.0);
        }
    }

    #[test]
    fn gaussian_moments_are_sane() {
        let rng = CounterRng::new(2024);
        let n = 20_000;
        let mut sum = 0.0;
        let mut sumsq = 0.0;
        for i in 0..n {
            let g = rng.gaussian(0, i);
            sum += g;
            sumsq += g * g;
        }
        let mean = sum / n as f64;
        let var = sumsq / n as f64 - mean * mean;
        assert!(mean.abs() < 0.03, "mean = {mean}");
        assert!((var - 1.0).abs() < 0.05, "var = {var}");
    }

    #[test]
    fn mc_constant_statistic() {
        let est = mc_expected_charpoly(1, 2, EntryLaw::Rademacher, 200, 9);
        assert_eq!(est.coeff_means[0], -2.0);
        assert_eq!(est.coeff_stderrs[0], 0.0);
        assert_eq!(est.coeff_means[1], 1.0);
        assert_eq!(est.coeff_stderrs[1], 0.0);
        assert_eq!(est.z_scores(), vec![0.0, 0.0]);
    }

    #[test]
    fn mc_matches_reference_within_four_sigma() {
        for law in [EntryLaw::Gaussian, EntryLaw::Rademacher] {
            let est = mc_expected_charpoly(2, 3, law, 20_000, 31);
            for (i, z) in est.z_scores().iter().enumerate() {
                assert!(z.abs() <= 4.0, "law {law}, coeff {i}: z = {z}");
            }
        }
    }

    #[test]
    fn mc_is_deterministic() {
        let a = mc_expected_charpoly(2, 4, EntryLaw::Gaussian, 500, 77);
        let b = mc_expected_charpoly(2, 4, EntryLaw::Gaussian, 500, 77);
        assert_eq!(a, b);
    }

    #[test]
    fn esd_first_moment_is_n_over_p() {
        // E tr XX^T = pn exactly, so the k = 1 moment of (1/p)XX^T is n/p.
        let rows = esd_moment_mc(4, 8, EntryLaw::Rademacher, 400, 1, 3, Normalization::ByP);
        assert!((rows[0].mean - 2.0).abs() < 5.0 * rows[0].stderr.max(0.02));
    }

    #[test]
    fn trace_powers_agree_with_eigenvalues() {
        let x = sample_matrix(6, 9, EntryLaw::Gaussian, 11, 0);
        let w = &x * x.transpose();
        let eigenvalues = w.symmetric_eigenvalues();
        for k in 1..=4u32 {
            let via_eig: f64 = eigenvalues
                .iter()
                .map(|&l| (l / 6.0).powi(k as i32))
                .sum::<f64>()
                / 6.0;
            let via_trace = moment_via_trace_powers(&w, k, 6.0);
            assert!(
                (via_eig - via_trace).abs() <= 1e-8 * via_eig.abs().max(1.0),
                "k = {k}: {via_eig} vs {via_trace}"
            );
        }
    }

    #[test]
    fn json_report_fields() {
        let est = mc_expected_charpoly(2, 3, EntryLaw::Rademacher, 150, 5);
        let value = est.to_json();
        for field in [
            "p",
            "n",
            "law",
            "trials",
            "seed",
            "coeff_means",
            "coeff_stderrs",
            "reference_coeffs",
            "z_scores",
        ] {
            assert!(value.get(field).is_some(), "missing {field}");
        }
        assert_eq!(value["reference_coeffs"][2], "1");
    }
}
