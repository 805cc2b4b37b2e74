//! Property tests for the exact-arithmetic layer.

use num_rational::BigRational;
use proptest::prelude::*;

use lagmp::bivariate::{falling_factorial_poly, Var};
use lagmp::laguerre::{conjugate, DensePoly, LaguerreParams};
use lagmp::power_sums::{newton_power_sums, symbolic_power_sum};
use lagmp::rational::{falling_factorial, rat, rat_int};

fn rational() -> impl Strategy<Value = BigRational> {
    (-200i64..=200, 1i64..=20).prop_map(|(n, d)| rat(n, d))
}

fn poly() -> impl Strategy<Value = DensePoly> {
    prop::collection::vec(rational(), 0..8).prop_map(DensePoly::new)
}

proptest! {
    #[test]
    fn conjugation_is_an_involution(f in poly(), extra in 0usize..4) {
        let d = f.degree().unwrap_or(0) + extra;
        let twice = conjugate(&conjugate(&f, d).unwrap(), d).unwrap();
        prop_assert_eq!(twice, f);
    }

    #[test]
    fn evaluation_respects_products(f in poly(), g in poly(), x in rational()) {
        let product = f.mul(&g).eval_rational(&x);
        let separate = f.eval_rational(&x) * g.eval_rational(&x);
        prop_assert_eq!(product, separate);
    }

    #[test]
    fn falling_factorial_poly_matches_numeric(beta in rational(), j in 0u32..8) {
        // evaluate the symbolic (q)_j at q = beta; the p slot is irrelevant
        let symbolic = falling_factorial_poly(Var::Q, j).eval(&rat_int(0), &beta);
        prop_assert_eq!(symbolic, falling_factorial(&beta, j as u64));
    }

    #[test]
    fn symbolic_power_sum_evaluates_to_newton(
        k in 1u32..6,
        extra in 0u64..4,
        alpha in rational(),
    ) {
        let p = k as u64 + extra; // the symbolic solve is valid for p >= k
        let pars = LaguerreParams::new(p, alpha);
        let expected = newton_power_sums(&pars, k as usize);
        let value = symbolic_power_sum(k).eval(&rat_int(p as i64), &pars.alpha_plus_p());
        prop_assert_eq!(&value, expected.m(k as usize));
    }
}
