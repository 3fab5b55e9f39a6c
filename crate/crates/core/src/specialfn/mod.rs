//! Named function corpus: Gauss and generalized hypergeometric series,
//! the complete elliptic integral K, generalized-normalized Bessel series,
//! and Legendre polynomials with exact rational coefficients.

pub mod bessel;
pub mod elliptic;
pub mod hypergeometric;
pub mod legendre;

pub use bessel::{bessel_series, BesselParams};
pub use elliptic::{agm, elliptic_k, elliptic_k_series};
pub use hypergeometric::{
    conjugate_product, contiguous_derivative, gauss_2f1_series, generalized_pfq_series,
    ConjugatePair, GeneralizedHypergeometricParams, HypergeometricParams,
};
pub use legendre::{
    hyp2f1_nn, hyp2f1_nn_exact, legendre, log_deriv_nn, log_deriv_nn_exact,
    log_deriv_nn_slope_at_zero, LegendrePoly, RationalPoly,
};
