//! The five classical means on positive pairs.
//!
//! Every mean here satisfies the four mean-function axioms: symmetry,
//! idempotence, internality and positive homogeneity. The logarithmic and
//! identric means use a short expansion in `u = (y-x)/(x+y)` near the
//! diagonal, where the closed forms cancel catastrophically.

use crate::error::{Error, Result};
use crate::powerseries::PowerSeries;
use crate::scalar::{qi, Q};
use num_traits::One;

/// Near-diagonal switch threshold for L and I in `|u| = |y-x|/(x+y)`.
const DIAG_SWITCH: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MeanFn {
    Arithmetic,
    Geometric,
    Harmonic,
    Logarithmic,
    Identric,
}

impl MeanFn {
    pub const ALL: [MeanFn; 5] = [
        MeanFn::Arithmetic,
        MeanFn::Geometric,
        MeanFn::Harmonic,
        MeanFn::Logarithmic,
        MeanFn::Identric,
    ];

    pub fn symbol(&self) -> &'static str {
        match self {
            MeanFn::Arithmetic => "A",
            MeanFn::Geometric => "G",
            MeanFn::Harmonic => "H",
            MeanFn::Logarithmic => "L",
            MeanFn::Identric => "I",
        }
    }
}

/// Evaluate the named mean of two positive reals.
pub fn mean(m: MeanFn, x: f64, y: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::NonPositiveInput(x));
    }
    if !(y > 0.0) {
        return Err(Error::NonPositiveInput(y));
    }
    Ok(match m {
        MeanFn::Arithmetic => (x + y) / 2.0,
        MeanFn::Geometric => (x * y).sqrt(),
        MeanFn::Harmonic => 2.0 * x * y / (x + y),
        MeanFn::Logarithmic => logarithmic(x, y),
        MeanFn::Identric => identric(x, y),
    })
}

fn logarithmic(x: f64, y: f64) -> f64 {
    let (a, b) = if x <= y { (x, y) } else { (y, x) };
    let s = (a + b) / 2.0;
    let u = (b - a) / (a + b);
    if u.abs() < DIAG_SWITCH {
        // L = s (1 - u^2/3 - 4u^4/45 + O(u^6))
        let u2 = u * u;
        return s * (1.0 - u2 / 3.0 - 4.0 * u2 * u2 / 45.0);
    }
    // log b - log a = log(1 + (b-a)/a), kept in ln_1p form so the
    // quotient stays accurate near the diagonal.
    (b - a) / ((b - a) / a).ln_1p()
}

fn identric(x: f64, y: f64) -> f64 {
    let (a, b) = if x <= y { (x, y) } else { (y, x) };
    let s = (a + b) / 2.0;
    let u = (b - a) / (a + b);
    if u.abs() < DIAG_SWITCH {
        // I = s (1 - u^2/6 - 13u^4/360 + O(u^6))
        let u2 = u * u;
        return s * (1.0 - u2 / 6.0 - 13.0 * u2 * u2 / 360.0);
    }
    // log I = (b log b - a log a)/(b - a) - 1
    //       = log a + b log(1 + (b-a)/a)/(b-a) - 1.
    let d = b - a;
    (a.ln() + b * (d / a).ln_1p() / d - 1.0).exp()
}

/// The two ratio series in `t` obtained from `y/x = exp(2 sqrt t)`:
/// `L/G = sum t^n/(2n+1)!` and `A/G = sum t^n/(2n)!`, both entire.
pub fn mean_ratio_series() -> (PowerSeries, PowerSeries) {
    let lg = PowerSeries::from_dual_recurrence(
        "L/G",
        f64::INFINITY,
        Q::one(),
        |n, a| {
            let m = 2 * n as i64;
            a / (qi(m + 2) * qi(m + 3))
        },
        |n, a| {
            let m = 2.0 * n as f64;
            a / ((m + 2.0) * (m + 3.0))
        },
    );
    let ag = PowerSeries::from_dual_recurrence(
        "A/G",
        f64::INFINITY,
        Q::one(),
        |n, a| {
            let m = 2 * n as i64;
            a / (qi(m + 1) * qi(m + 2))
        },
        |n, a| {
            let m = 2.0 * n as f64;
            a / ((m + 1.0) * (m + 2.0))
        },
    );
    (lg, ag)
}
