//! The Marchenko-Pastur laws, their moments, generating function, and the
//! finite-degree comparison functions.
//!
//! `mu_c` (for `c > -1`) has continuous density
//! `sqrt((x_+ - x)(x - x_-)) / (2 pi x)` on `[x_-, x_+]` with
//! `x_pm = (sqrt(c+1) +- 1)^2`, plus an atom of mass `-c` at zero when
//! `-1 < c < 0`. Its k-th moment has the exact Narayana-weighted closed form
//!
//! ```text
//! m_k = sum_{j=1}^{k} (1/k) C(k,j) C(k,j-1) (c+1)^(k-j+1)
//! ```
//!
//! The moment generating function `M_c(z) = sum m_k z^k` satisfies a
//! quadratic fixed-point equation; both `M_c` and the smaller fixed point
//! `f_{c-}` are evaluated here in the rationalized form
//! `2 / (1 - cz + sqrt(disc))`, which is exact at `z = 0` and has no
//! subtractive cancellation anywhere in the domain.

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice_paths::narayana;
use crate::rational::to_f64;

/// Marchenko-Pastur law `mu_c`: support endpoints and atom mass.
#[derive(Debug, Clone, Serialize)]
pub struct MpLaw {
    pub c: f64,
    pub x_minus: f64,
    pub x_plus: f64,
    pub atom: f64,
}

/// Matrix-normalization variant `mu~_a` with endpoints `(1 +- sqrt(a))^2`.
///
/// The atom mass is `max(0, 1 - 1/a)`: an atom only appears for `a > 1`
/// (more rows than columns), where `1 - 1/a` of the spectrum is pinned at
/// zero. Conventions that attach the `(1 - 1/a)` label to `a < 1` would make
/// the mass negative; the clamp keeps this a probability measure, and the
/// moments of order `k >= 1` are unaffected either way.
#[derive(Debug, Clone, Serialize)]
pub struct TildeMpLaw {
    pub a: f64,
    pub x_minus: f64,
    pub x_plus: f64,
    pub atom: f64,
}

/// Build `mu_c`. Errors for `c <= -1`.
pub fn mp_law(c: f64) -> Result<MpLaw> {
    if c <= -1.0 || c.is_nan() {
        return Err(Error::Domain(format!("mp law requires c > -1, got c = {c}")));
    }
    let s = (c + 1.0).sqrt();
    Ok(MpLaw {
        c,
        x_minus: (s - 1.0) * (s - 1.0),
        x_plus: (s + 1.0) * (s + 1.0),
        atom: if c < 0.0 { -c } else { 0.0 },
    })
}

/// Build `mu~_a`. Errors for `a <= 0`.
pub fn tilde_mp_law(a: f64) -> Result<TildeMpLaw> {
    if a <= 0.0 || a.is_nan() {
        return Err(Error::Domain(format!("tilde law requires a > 0, got a = {a}")));
    }
    let s = a.sqrt();
    Ok(TildeMpLaw {
        a,
        x_minus: (1.0 - s) * (1.0 - s),
        x_plus: (1.0 + s) * (1.0 + s),
        atom: (1.0 - 1.0 / a).max(0.0),
    })
}

impl MpLaw {
    /// Density of the continuous part; zero outside the support and, by
    /// convention, at `x = 0` (the endpoint singularity is integrable).
    pub fn density(&self, x: f64) -> f64 {
        if x <= 0.0 || x < self.x_minus || x > self.x_plus {
            return 0.0;
        }
        ((self.x_plus - x) * (x - self.x_minus)).sqrt() / (2.0 * std::f64::consts::PI * x)
    }
}

impl TildeMpLaw {
    pub fn density(&self, x: f64) -> f64 {
        if x <= 0.0 || x < self.x_minus || x > self.x_plus {
            return 0.0;
        }
        ((x - self.x_minus) * (self.x_plus - x)).sqrt()
            / (2.0 * std::f64::consts::PI * self.a * x)
    }
}

fn rat_pow(base: &BigRational, exp: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Exact k-th moment of `mu_c` for rational `c`; `moment(c, 0) = 1`.
pub fn moment(c: &BigRational, k: u32) -> BigRational {
    if k == 0 {
        return BigRational::one();
    }
    let cp1 = c + BigRational::one();
    let mut acc = BigRational::from_integer(0.into());
    for j in 1..=k {
        let nar = narayana(k, j).expect("1 <= j <= k");
        acc += BigRational::from_integer(nar) * rat_pow(&cp1, k - j + 1);
    }
    acc
}

/// Exact k-th moment of `mu~_a` for rational `a`; `moment_tilde(a, 0) = 1`.
pub fn moment_tilde(a: &BigRational, k: u32) -> BigRational {
    if k == 0 {
        return BigRational::one();
    }
    let mut acc = BigRational::from_integer(0.into());
    for j in 1..=k {
        let nar = narayana(k, j).expect("1 <= j <= k");
        acc += BigRational::from_integer(nar) * rat_pow(a, j - 1);
    }
    acc
}

/// Floating-point convenience for [`moment`].
pub fn moment_f64(c: f64, k: u32) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let cp1 = c + 1.0;
    (1..=k)
        .map(|j| {
            let nar = to_f64(&BigRational::from_integer(narayana(k, j).expect("range")));
            nar * cp1.powi((k - j + 1) as i32)
        })
        .sum()
}

/// Floating-point convenience for [`moment_tilde`].
pub fn moment_tilde_f64(a: f64, k: u32) -> f64 {
    if k == 0 {
        return 1.0;
    }
    (1..=k)
        .map(|j| {
            let nar = to_f64(&BigRational::from_integer(narayana(k, j).expect("range")));
            nar * a.powi((j - 1) as i32)
        })
        .sum()
}

/// Exact residual of the scaling relation
/// `moment(c, k) = (c+1)^k * moment_tilde(1/(c+1), k)`; zero for every
/// rational `c > -1`.
pub fn scaling_relation_check(c: &BigRational, k: u32) -> BigRational {
    let cp1 = c + BigRational::one();
    assert!(
        cp1 > BigRational::from_integer(0.into()),
        "scaling relation requires c > -1"
    );
    let a = BigRational::one() / &cp1;
    moment(c, k) - rat_pow(&cp1, k) * moment_tilde(&a, k)
}

/// Gauss-Legendre nodes and weights on [-1, 1].
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre P_n and its derivative by the three-term recurrence.
            let (mut p_prev, mut p_cur) = (1.0, x);
            for m in 2..=n {
                let m = m as f64;
                let p_next = ((2.0 * m - 1.0) * x * p_cur - (m - 1.0) * p_prev) / m;
                p_prev = p_cur;
                p_cur = p_next;
            }
            dp = n as f64 * (x * p_cur - p_prev) / (x * x - 1.0);
            let dx = p_cur / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn quadrature_pass(law: &MpLaw, k: u32, n: usize) -> f64 {
    let (nodes, weights) = gauss_legendre(n);
    let width = law.x_plus - law.x_minus;
    let quarter_pi = std::f64::consts::FRAC_PI_4;
    let mut acc = 0.0;
    for (t, w) in nodes.iter().zip(&weights) {
        // theta in [0, pi/2]; the substitution x = x_- + width sin^2(theta)
        // turns the endpoint square roots into width * sin * cos.
        let theta = (t + 1.0) * quarter_pi;
        let (sin, cos) = theta.sin_cos();
        let x = law.x_minus + width * sin * sin;
        let base = width * width * sin * sin * cos * cos / std::f64::consts::PI;
        let value = if k == 0 { base / x } else { base * x.powi(k as i32 - 1) };
        acc += w * value * quarter_pi;
    }
    acc
}

/// k-th moment of `mu_c` by quadrature: the continuous part is integrated
/// after the `sin^2` substitution (which removes both endpoint
/// singularities), and the atom contributes only at `k = 0`.
///
/// Two refinements are compared; their disagreement beyond the accuracy
/// target (1e-10 plus a few ulps of the value) is reported as an error
/// carrying the achieved estimate.
pub fn quadrature_moment(c: f64, k: u32) -> Result<f64> {
    let law = mp_law(c)?;
    let coarse = quadrature_pass(&law, k, 80);
    let fine = quadrature_pass(&law, k, 128);
    let achieved = (coarse - fine).abs();
    let target = 1e-10;
    let atom_part = if k == 0 { law.atom } else { 0.0 };
    if achieved > target + 32.0 * f64::EPSILON * fine.abs() {
        return Err(Error::QuadratureAccuracy {
            target,
            achieved,
            estimate: fine + atom_part,
        });
    }
    Ok(fine + atom_part)
}

/// Supremum of the domain of the generating function: `1/(sqrt(c+1)+1)^2`.
pub fn mgf_domain_sup(c: f64) -> f64 {
    let s = (c + 1.0).sqrt();
    1.0 / ((s + 1.0) * (s + 1.0))
}

fn discriminant(c: f64, z: f64) -> Result<f64> {
    // (1-cz)^2 - 4z = (1-(c+2)z)^2 - 4(c+1)z^2, the common discriminant of
    // the generating function and the fixed-point equation.
    let disc = (1.0 - c * z) * (1.0 - c * z) - 4.0 * z;
    if disc < 0.0 {
        if disc > -1e-12 {
            return Ok(0.0);
        }
        return Err(Error::Domain(format!(
            "z = {z} is outside [0, {}) for c = {c}",
            mgf_domain_sup(c)
        )));
    }
    Ok(disc)
}

/// Moment generating function `M_c(z)`, evaluated in the rationalized form
/// `2 / (1 - cz + sqrt((1-cz)^2 - 4z))` (so `M_c(0) = 1` exactly).
pub fn generating_fn(c: f64, z: f64) -> Result<f64> {
    if c <= -1.0 || z < 0.0 || z >= mgf_domain_sup(c) {
        return Err(Error::Domain(format!(
            "generating function needs c > -1 and 0 <= z < {}, got c = {c}, z = {z}",
            mgf_domain_sup(c)
        )));
    }
    let disc = discriminant(c, z)?;
    Ok(2.0 / (1.0 - c * z + disc.sqrt()))
}

/// Smaller root `f_{c-}(z)` of the fixed-point equation
/// `1 = [1-(c+2)z] xi - (c+1) z^2 xi^2`, in the rationalized form
/// `2 / (1 - (c+2)z + sqrt(disc))` (continuous value 1 at `z = 0`).
pub fn f_c_minus(c: f64, z: f64) -> Result<f64> {
    if c <= -1.0 || z < 0.0 || z >= mgf_domain_sup(c) {
        return Err(Error::Domain(format!(
            "f_c_minus needs c > -1 and 0 <= z < {}, got c = {c}, z = {z}",
            mgf_domain_sup(c)
        )));
    }
    let disc = discriminant(c, z)?;
    Ok(2.0 / (1.0 - (c + 2.0) * z + disc.sqrt()))
}

/// Residual `[1-(c+2)z] xi - (c+1) z^2 xi^2 - 1` of the fixed-point equation.
pub fn fixed_point_residual(c: f64, z: f64, xi: f64) -> f64 {
    (1.0 - (c + 2.0) * z) * xi - (c + 1.0) * z * z * xi * xi - 1.0
}

/// Largest `z` for which both roots of the degree-`p` fixed-point analogue
/// are non-negative: `1 / (a_p + 2 sqrt(b_p))` with `a_p = (alpha+2p-1)/p`
/// and `b_p = (p-1)(alpha+p-1)/p^2`.
pub fn zeta_threshold(p: u64, alpha: f64) -> f64 {
    assert!(p >= 1, "threshold needs p >= 1");
    assert!(alpha >= 0.0, "threshold is stated for alpha >= 0");
    let pf = p as f64;
    let a = (alpha + 2.0 * pf - 1.0) / pf;
    let b = (pf - 1.0) * (alpha + pf - 1.0) / (pf * pf);
    1.0 / (a + 2.0 * b.sqrt())
}

/// Smaller non-negative root `g_{p-}(z)` of
/// `1 = [1 - z(alpha+2p-1)/p] xi - z^2 (p-1)(alpha+p-1)/p^2 xi^2`,
/// again in rationalized form (which also covers `p = 1`, where the
/// quadratic degenerates to `1/(1 - z(alpha+1))`).
pub fn g_p_minus(p: u64, alpha: f64, z: f64) -> Result<f64> {
    assert!(p >= 1, "g_p_minus needs p >= 1");
    let zeta = zeta_threshold(p, alpha);
    if z < 0.0 || z >= zeta {
        return Err(Error::Domain(format!(
            "g_p_minus needs 0 <= z < zeta = {zeta}, got z = {z}"
        )));
    }
    let pf = p as f64;
    let a = (alpha + 2.0 * pf - 1.0) / pf;
    let b = (pf - 1.0) * (alpha + pf - 1.0) / (pf * pf);
    let disc = (1.0 - a * z) * (1.0 - a * z) - 4.0 * b * z * z;
    let disc = if disc < 0.0 && disc > -1e-12 { 0.0 } else { disc };
    if disc < 0.0 {
        return Err(Error::Domain(format!(
            "negative discriminant at z = {z} (p = {p}, alpha = {alpha})"
        )));
    }
    Ok(2.0 / (1.0 - a * z + disc.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn law_construction() {
        let law = mp_law(0.0).unwrap();
        assert_eq!(law.x_minus, 0.0);
        assert_eq!(law.x_plus, 4.0);
        assert_eq!(law.atom, 0.0);

        let law = mp_law(3.0).unwrap();
        assert!((law.x_minus - 1.0).abs() < 1e-12);
        assert!((law.x_plus - 9.0).abs() < 1e-12);

        let law = mp_law(-0.5).unwrap();
        assert_eq!(law.atom, 0.5);
        let s = 0.5f64.sqrt();
        assert!((law.x_minus - (s - 1.0).powi(2)).abs() < 1e-12);
        assert!((law.x_plus - (s + 1.0).powi(2)).abs() < 1e-12);

        assert!(mp_law(-1.0).is_err());
        assert!(mp_law(-2.0).is_err());
    }

    #[test]
    fn density_values() {
        let law = mp_law(0.0).unwrap();
        assert!((law.density(2.0) - 1.0 / (2.0 * std::f64::consts::PI)).abs() < 1e-14);
        let law = mp_law(3.0).unwrap();
        assert_eq!(law.density(10.0), 0.0);
        let law = mp_law(1.0).unwrap();
        assert_eq!(law.density(law.x_minus), 0.0);
        assert_eq!(mp_law(0.0).unwrap().density(0.0), 0.0);
    }

    #[test]
    fn tilde_law_atom_clamps() {
        assert_eq!(tilde_mp_law(0.5).unwrap().atom, 0.0);
        assert_eq!(tilde_mp_law(1.0).unwrap().atom, 0.0);
        assert!((tilde_mp_law(2.0).unwrap().atom - 0.5).abs() < 1e-15);
        assert!(tilde_mp_law(0.0).is_err());
    }

    #[test]
    fn moment_closed_form() {
        for c in [rat_int(0), rat_int(1), rat(-1, 2), rat_int(3)] {
            assert_eq!(moment(&c, 0), rat_int(1));
            assert_eq!(moment(&c, 1), &c + rat_int(1));
        }
        assert_eq!(moment(&rat_int(0), 3), rat_int(5));
        assert_eq!(moment(&rat_int(1), 2), rat_int(6));
    }

    #[test]
    fn tilde_moments() {
        for a in [rat(1, 2), rat_int(1), rat_int(2)] {
            assert_eq!(moment_tilde(&a, 1), rat_int(1));
        }
        use crate::lattice_paths::catalan;
        for k in 1..=6u32 {
            assert_eq!(
                moment_tilde(&rat_int(1), k),
                BigRational::from_integer(catalan(k))
            );
        }
        assert_eq!(moment_tilde(&rat_int(2), 2), rat_int(3));
    }

    #[test]
    fn scaling_relation_is_exact() {
        use num_traits::Zero;
        for c in [rat_int(0), rat_int(1), rat_int(3), rat(-1, 2), rat(7, 5)] {
            for k in 1..=8u32 {
                assert!(scaling_relation_check(&c, k).is_zero(), "c = {c}, k = {k}");
            }
        }
    }

    #[test]
    fn quadrature_matches_closed_form() {
        for c in [-0.5, 0.0, 1.0, 3.0] {
            for k in 0..=8u32 {
                let q = quadrature_moment(c, k).unwrap();
                let m = moment_f64(c, k);
                assert!(
                    (q - m).abs() <= 1e-8,
                    "c = {c}, k = {k}: quadrature {q} vs closed form {m}"
                );
            }
        }
    }

    #[test]
    fn total_mass_includes_atom() {
        let q = quadrature_moment(-0.5, 0).unwrap();
        assert!((q - 1.0).abs() < 1e-8);
        // continuous part alone carries mass 1 + c = 1/2
        let law = mp_law(-0.5).unwrap();
        let continuous = quadrature_pass(&law, 0, 128);
        assert!((continuous - 0.5).abs() < 1e-8);
    }

    #[test]
    fn generating_fn_values() {
        for c in [0.0, 1.0, 3.0, -0.5] {
            assert_eq!(generating_fn(c, 0.0).unwrap(), 1.0);
        }
        // Catalan generating function at c = 0
        for z in [0.01f64, 0.1, 0.2, 0.24] {
            let expected = (1.0 - (1.0 - 4.0 * z).sqrt()) / (2.0 * z);
            assert!((generating_fn(0.0, z).unwrap() - expected).abs() < 1e-12);
        }
        // truncated moment series at c = 1, z = 0.05
        let series: f64 = (0..=40u32)
            .map(|k| moment_f64(1.0, k) * 0.05f64.powi(k as i32))
            .sum();
        assert!((generating_fn(1.0, 0.05).unwrap() - series).abs() < 1e-10);
        assert!(generating_fn(0.0, 0.3).is_err());
        assert!(generating_fn(0.0, -0.1).is_err());
    }

    #[test]
    fn fixed_point_and_f_minus() {
        assert_eq!(f_c_minus(0.7, 0.0).unwrap(), 1.0);
        assert_eq!(fixed_point_residual(0.7, 0.0, 1.0), 0.0);
        assert_eq!(fixed_point_residual(1.0, 0.05, 0.0), -1.0);
        for c in [0.0, 1.0, -0.5, 3.0] {
            let sup = mgf_domain_sup(c);
            for i in 0..100 {
                let z = sup * 0.99 * i as f64 / 99.0;
                let xi = f_c_minus(c, z).unwrap();
                assert!(
                    fixed_point_residual(c, z, xi).abs() <= 1e-12,
                    "c = {c}, z = {z}"
                );
                let mgf = generating_fn(c, z).unwrap();
                assert!(
                    (mgf - ((c + 1.0) * z * xi + 1.0)).abs() <= 1e-12,
                    "c = {c}, z = {z}"
                );
            }
        }
    }

    #[test]
    fn zeta_values() {
        for alpha in [0.0, 1.0, 2.5] {
            assert!((zeta_threshold(1, alpha) - 1.0 / (alpha + 1.0)).abs() < 1e-15);
        }
        assert!((zeta_threshold(2, 0.0) - 0.4).abs() < 1e-15);
        // alpha = p: decreasing in p toward 1/(sqrt(2)+1)^2
        let limit = 1.0 / (2f64.sqrt() + 1.0).powi(2);
        let mut prev = f64::INFINITY;
        for p in [1u64, 10, 100, 1_000, 10_000, 100_000] {
            let zeta = zeta_threshold(p, p as f64);
            assert!(zeta < prev, "zeta must decrease, p = {p}");
            prev = zeta;
        }
        assert!((prev - limit).abs() < 1e-4);
    }

    #[test]
    fn g_values() {
        // p = 1 closed form
        for alpha in [0.0, 2.0] {
            for z in [0.0, 0.1, 0.2] {
                if z < zeta_threshold(1, alpha) {
                    let expected = 1.0 / (1.0 - z * (alpha + 1.0));
                    assert!((g_p_minus(1, alpha, z).unwrap() - expected).abs() < 1e-14);
                }
            }
        }
        assert_eq!(g_p_minus(7, 3.0, 0.0).unwrap(), 1.0);
        // root by construction
        let (p, alpha, z) = (5u64, 5.0, 0.02);
        let xi = g_p_minus(p, alpha, z).unwrap();
        let pf = p as f64;
        let a = (alpha + 2.0 * pf - 1.0) / pf;
        let b = (pf - 1.0) * (alpha + pf - 1.0) / (pf * pf);
        let residual = (1.0 - a * z) * xi - b * z * z * xi * xi - 1.0;
        assert!(residual.abs() <= 1e-12);
        // domain error at and beyond zeta
        let zeta = zeta_threshold(5, 5.0);
        assert!(g_p_minus(5, 5.0, zeta).is_err());
        assert!(g_p_minus(5, 5.0, -0.01).is_err());
    }

    #[test]
    fn g_is_monotone_under_degree_scaling() {
        for alpha in [0.0, 5.0, 50.0] {
            for p in [2u64, 5, 20, 100, 200] {
                let zeta = zeta_threshold(p, alpha);
                for i in 1..10 {
                    let z = zeta * 0.9 * i as f64 / 10.0;
                    let lhs = g_p_minus(p - 1, alpha, z * (p - 1) as f64 / p as f64).unwrap();
                    let rhs = g_p_minus(p, alpha, z).unwrap();
                    assert!(
                        lhs <= rhs + 1e-12,
                        "p = {p}, alpha = {alpha}, z = {z}: {lhs} > {rhs}"
                    );
                }
            }
        }
    }

    #[test]
    fn narayana_weights_reproduce_moments() {
        use crate::lattice_paths::narayana;
        for c in [rat_int(0), rat_int(2), rat(-1, 2)] {
            for k in 1..=8u32 {
                let cp1 = &c + rat_int(1);
                let mut acc = BigRational::from_integer(0.into());
                for j in 1..=k {
                    acc += BigRational::from_integer(narayana(k, j).unwrap())
                        * rat_pow(&cp1, k - j + 1);
                }
                assert_eq!(acc, moment(&c, k));
            }
        }
    }
}
