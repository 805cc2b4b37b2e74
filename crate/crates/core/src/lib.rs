//! Exact power sums of Laguerre-polynomial roots and their convergence to
//! the Marchenko-Pastur law.
//!
//! The crate has three layers:
//!
//! * **Exact algebra** — [`laguerre`] builds Laguerre polynomials in
//!   standard, monic, and conjugate form over arbitrary-precision rationals;
//!   [`power_sums`] turns their coefficients into exact root power sums via
//!   Newton's identities, both numerically and symbolically in the grading
//!   variables `(p, q = alpha + p)`; [`lattice_paths`] supplies the
//!   combinatorial side of the leading-term computation (legal paths and
//!   Narayana numbers).
//! * **Limit law** — [`marchenko_pastur`] implements the limiting measure:
//!   density, atom, exact moments, generating function, and the fixed-point
//!   machinery used to compare finite degrees against the limit.
//! * **Experiments** — [`spectral`] computes numeric root spectra and
//!   empirical moments; [`random_matrix`] samples Wishart-type matrices,
//!   checks the expected-characteristic-polynomial identity
//!   `E det(xI - XX^T) = l_p^(n-p)(x)`, and estimates empirical spectral
//!   moments.
//!
//! Everything upstream of the experiments is exact: power sums, Narayana
//! counts, moments, and certification compare with `==`, not tolerances.
//!
//! ```
//! use lagmp::laguerre::{monic_coeffs, LaguerreParams};
//! use lagmp::power_sums::newton_power_sums;
//! use lagmp::rational::rat_int;
//!
//! // l_2 with alpha = 0 is z^2 - 4z + 2; its roots 2 +- sqrt(2) have
//! // M(1) = 4 and M(2) = 12.
//! let params = LaguerreParams::new(2, rat_int(0));
//! assert_eq!(monic_coeffs(&params).to_string(), "z^2 - 4*z + 2");
//! let table = newton_power_sums(&params, 2);
//! assert_eq!(*table.m(1), rat_int(4));
//! assert_eq!(*table.m(2), rat_int(12));
//! ```

pub mod bivariate;
pub mod error;
pub mod laguerre;
pub mod lattice_paths;
pub mod marchenko_pastur;
pub mod power_sums;
pub mod random_matrix;
pub mod rational;
pub mod spectral;

pub use error::{Error, Result};

// The guide chapters double as doctests so the book can never drift from
// the library.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/laguerre-polynomials.md")]
    mod laguerre_polynomials {}
    #[doc = include_str!("../../../book/src/power-sums.md")]
    mod power_sums {}
    #[doc = include_str!("../../../book/src/lattice-paths.md")]
    mod lattice_paths {}
    #[doc = include_str!("../../../book/src/marchenko-pastur.md")]
    mod marchenko_pastur {}
    #[doc = include_str!("../../../book/src/spectra.md")]
    mod spectra {}
    #[doc = include_str!("../../../book/src/random-matrices.md")]
    mod random_matrices {}
}
