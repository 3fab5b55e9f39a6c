//! Generalized mean-convexity toolkit for positive-coefficient Maclaurin
//! series and the classical special functions built from them.
//!
//! A function `f` is `MN`-convex for mean functions `M`, `N` when
//! `f(M(x,y)) <= N(f(x), f(y))`; ordinary convexity is the `AA` case. For
//! series with positive coefficients, each of the nine `{A,G,H}` pairings
//! reduces to monotonicity of a coefficient ratio sequence, which a machine
//! can certify exactly from closed-form parameter conditions or check on a
//! finite prefix. Every certificate here can be cross-examined by an
//! independent numeric verifier that samples the defining inequality.
//!
//! Modules:
//! - [`powerseries`]: series carrier, evaluation with tail control, ratio
//!   sequences and prefix monotonicity verdicts.
//! - [`means`]: arithmetic, geometric, harmonic, logarithmic and identric
//!   means with their axioms as testable properties.
//! - [`specialfn`]: the Gauss hypergeometric function, generalized
//!   hypergeometric series, complete elliptic integral K, Bessel-type
//!   series, and Legendre polynomials with exact rational coefficients.
//! - [`criteria`]: coefficient-level certifiers returning [`criteria::Certificate`].
//! - [`numcheck`]: grid-based numeric verification, counterexample search
//!   and sharpness scans.
//! - [`repro`]: the reproduction suite behind the `repro` CLI subcommand.

pub mod criteria;
pub mod error;
pub mod jsonfmt;
pub mod means;
pub mod numcheck;
pub mod powerseries;
pub mod query;
pub mod repro;
pub mod scalar;
pub mod specialfn;

pub use error::{Error, Result};
pub use powerseries::{eval, eval_with, EvalParams, PowerSeries, RatioSequence};
pub use query::{BasicMean, ConvexityQuery, MeanPair, Sense, Subject};
pub use scalar::{Coeff, Q};
