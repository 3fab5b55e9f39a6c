//! Convexity queries: the subject under test, the mean pair, and the sense.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::means::{mean, MeanFn};
use crate::powerseries::{eval_with, EvalParams, PowerSeries};

/// Means admitting the change-of-variable reduction to ordinary convexity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasicMean {
    Arithmetic,
    Geometric,
    Harmonic,
}

impl BasicMean {
    pub const ALL: [BasicMean; 3] = [
        BasicMean::Arithmetic,
        BasicMean::Geometric,
        BasicMean::Harmonic,
    ];

    pub fn symbol(&self) -> &'static str {
        match self {
            BasicMean::Arithmetic => "A",
            BasicMean::Geometric => "G",
            BasicMean::Harmonic => "H",
        }
    }

    pub fn to_mean_fn(&self) -> MeanFn {
        match self {
            BasicMean::Arithmetic => MeanFn::Arithmetic,
            BasicMean::Geometric => MeanFn::Geometric,
            BasicMean::Harmonic => MeanFn::Harmonic,
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        mean(self.to_mean_fn(), x, y)
    }
}

/// A mean pair `(M, N)`: `M` combines arguments, `N` combines values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MeanPair {
    pub arg: BasicMean,
    pub val: BasicMean,
}

impl MeanPair {
    pub fn new(arg: BasicMean, val: BasicMean) -> Self {
        MeanPair { arg, val }
    }

    /// All nine pairs in row-major `A,G,H` order.
    pub fn all() -> Vec<MeanPair> {
        let mut v = Vec::with_capacity(9);
        for arg in BasicMean::ALL {
            for val in BasicMean::ALL {
                v.push(MeanPair { arg, val });
            }
        }
        v
    }
}

impl fmt::Display for MeanPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.arg.symbol(), self.val.symbol())
    }
}

impl FromStr for MeanPair {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parse = |c: char| match c.to_ascii_uppercase() {
            'A' => Ok(BasicMean::Arithmetic),
            'G' => Ok(BasicMean::Geometric),
            'H' => Ok(BasicMean::Harmonic),
            other => Err(Error::InvalidParameters(format!(
                "unknown mean symbol `{other}` (expected A, G or H)"
            ))),
        };
        let chars: Vec<char> = s.chars().collect();
        if chars.len() != 2 {
            return Err(Error::InvalidParameters(format!(
                "mean pair must be two of A/G/H, got `{s}`"
            )));
        }
        Ok(MeanPair {
            arg: parse(chars[0])?,
            val: parse(chars[1])?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sense {
    Convex,
    Concave,
}

impl Sense {
    pub fn word(&self) -> &'static str {
        match self {
            Sense::Convex => "convex",
            Sense::Concave => "concave",
        }
    }

    pub fn flipped(&self) -> Sense {
        match self {
            Sense::Convex => Sense::Concave,
            Sense::Concave => Sense::Convex,
        }
    }
}

impl FromStr for Sense {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "convex" => Ok(Sense::Convex),
            "concave" => Ok(Sense::Concave),
            other => Err(Error::InvalidParameters(format!(
                "sense must be convex or concave, got `{other}`"
            ))),
        }
    }
}

/// Closed-form test corpus functions on `(0, infinity)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosedFn {
    Cosh,
    Sinh,
    /// `sinh(x)/x`
    Sinhc,
    Exp,
    Log1p,
    Arctan,
}

impl ClosedFn {
    pub fn name(&self) -> &'static str {
        match self {
            ClosedFn::Cosh => "cosh",
            ClosedFn::Sinh => "sinh",
            ClosedFn::Sinhc => "sinhc",
            ClosedFn::Exp => "exp",
            ClosedFn::Log1p => "log1p",
            ClosedFn::Arctan => "arctan",
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            ClosedFn::Cosh => x.cosh(),
            ClosedFn::Sinh => x.sinh(),
            ClosedFn::Sinhc => {
                if x.abs() < 1e-8 {
                    1.0 + x * x / 6.0
                } else {
                    x.sinh() / x
                }
            }
            ClosedFn::Exp => x.exp(),
            ClosedFn::Log1p => x.ln_1p(),
            ClosedFn::Arctan => x.atan(),
        }
    }

    pub fn deriv(&self, x: f64) -> f64 {
        match self {
            ClosedFn::Cosh => x.sinh(),
            ClosedFn::Sinh => x.cosh(),
            ClosedFn::Sinhc => {
                if x.abs() < 1e-6 {
                    x / 3.0 + x * x * x / 30.0
                } else {
                    (x * x.cosh() - x.sinh()) / (x * x)
                }
            }
            ClosedFn::Exp => x.exp(),
            ClosedFn::Log1p => 1.0 / (1.0 + x),
            ClosedFn::Arctan => 1.0 / (1.0 + x * x),
        }
    }
}

/// What a convexity query is about: a coefficient series or a closed-form
/// function with analytic derivative.
#[derive(Clone, Debug)]
pub enum Subject {
    Series(PowerSeries),
    Closed(ClosedFn),
}

impl Subject {
    pub fn name(&self) -> String {
        match self {
            Subject::Series(s) => s.name().to_string(),
            Subject::Closed(c) => c.name().to_string(),
        }
    }

    /// Upper end of the natural domain `(0, r)`.
    pub fn radius(&self) -> f64 {
        match self {
            Subject::Series(s) => s.radius(),
            Subject::Closed(_) => f64::INFINITY,
        }
    }

    pub fn eval(&self, x: f64, p: &EvalParams) -> Result<f64> {
        match self {
            Subject::Series(s) => eval_with(s, x, p),
            Subject::Closed(c) => Ok(c.eval(x)),
        }
    }

    pub fn deriv(&self, x: f64, p: &EvalParams) -> Result<f64> {
        match self {
            Subject::Series(s) => eval_with(&s.derivative(), x, p),
            Subject::Closed(c) => Ok(c.deriv(x)),
        }
    }

    /// Series derivative when available, shared so repeat calls reuse the
    /// memoized coefficients.
    pub fn derivative_series(&self) -> Option<PowerSeries> {
        match self {
            Subject::Series(s) => Some(s.derivative()),
            Subject::Closed(_) => None,
        }
    }
}

/// One convexity question: is `subject` `MN`-convex (or concave) on
/// `(lo, hi)`?
#[derive(Clone, Debug)]
pub struct ConvexityQuery {
    pub subject: Subject,
    pub pair: MeanPair,
    pub sense: Sense,
    pub lo: f64,
    pub hi: f64,
}

impl ConvexityQuery {
    pub fn new(subject: Subject, pair: MeanPair, sense: Sense, lo: f64, hi: f64) -> Result<Self> {
        if !(lo > 0.0 && lo < hi) {
            return Err(Error::InvalidParameters(format!(
                "interval ({lo}, {hi}) must satisfy 0 < lo < hi"
            )));
        }
        if hi >= subject.radius() {
            return Err(Error::InvalidParameters(format!(
                "interval ({lo}, {hi}) exceeds the subject domain (0, {})",
                subject.radius()
            )));
        }
        Ok(ConvexityQuery {
            subject,
            pair,
            sense,
            lo,
            hi,
        })
    }
}
