//! Coefficient-level certifiers.
//!
//! Each certifier inspects closed-form parameter conditions or a finite
//! prefix of a coefficient sequence and returns a [`Certificate`]. A
//! closed-form condition that decides the sequence for every index yields
//! `ProvenByCriterion`; a raw prefix inspection yields `PrefixChecked`. A
//! sufficient condition that fails yields `Inapplicable`, never `Refuted`:
//! refutation is the numeric verifier's job.

use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numcheck::Witness;
use crate::powerseries::{
    monotone_verdict, PowerSeries, PrefixVerdict, RatioSequence, DEFAULT_HORIZON,
};
use crate::scalar::{q, q_from_f64, Coeff, Q};
use crate::specialfn::{BesselParams, GeneralizedHypergeometricParams, HypergeometricParams};

/// Exact-mode Cauchy squares get expensive fast; beyond this horizon the
/// convolution-backed sequences are evaluated in float mode instead.
pub const EXACT_CONVOLUTION_BUDGET: usize = 256;

#[derive(Clone, Debug, Serialize)]
pub struct Hypothesis {
    pub condition: String,
    pub held: bool,
}

impl Hypothesis {
    fn new(condition: impl Into<String>, held: bool) -> Self {
        Hypothesis {
            condition: condition.into(),
            held,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Verdict {
    /// A closed-form parameter condition decides the property for every
    /// coefficient index.
    ProvenByCriterion,
    /// Only the prefix `n <= horizon` was machine-checked.
    PrefixChecked { horizon: usize },
    /// A concrete witness falsifies the property.
    Refuted { witness: Witness },
    /// The sufficient condition does not apply (which proves nothing).
    Inapplicable { reason: String },
}

impl Verdict {
    pub fn granted(&self) -> bool {
        matches!(self, Verdict::ProvenByCriterion | Verdict::PrefixChecked { .. })
    }
}

/// Machine record of which criterion applied and what was checked.
/// Serializes with this exact field order.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub subject: String,
    pub criterion: String,
    pub verdict: Verdict,
    pub hypotheses: Vec<Hypothesis>,
    pub horizon: Option<usize>,
    pub start_index: Option<usize>,
}

#[derive(Clone, Copy, Debug)]
pub struct CertifyOptions {
    /// Prefix horizon for sequence checks.
    pub horizon: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            horizon: DEFAULT_HORIZON,
        }
    }
}

// ---------------------------------------------------------------------------
// Gauss hypergeometric criteria
// ---------------------------------------------------------------------------

/// The four closed-form certificates for `F(a,b;c;x)` with `a,b,c > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HyperCriterion {
    /// `ab/(a+b+1) < c` makes `log F` convex on `(0,1)`:
    /// `F((x+y)/2) <= sqrt(F(x)F(y))`.
    LogConvex,
    /// `(a-c)(b-c) > 0` makes `log F(1-e^{-t})` concave on `(0,inf)`:
    /// `sqrt(F(x)F(y)) <= F(1 - sqrt((1-x)(1-y)))`.
    LogConcaveTransformed,
    /// `a+b >= c` makes `F(1-e^{-t})` convex on `(0,inf)`:
    /// `F(1 - sqrt((1-x)(1-y))) <= (F(x)+F(y))/2`.
    ConvexTransformed,
    /// `a+b >= c >= 2ab` and `c > a+b-1/2` make `1/F` concave on `(0,1)`:
    /// `F((x+y)/2) <= 2F(x)F(y)/(F(x)+F(y))`.
    ReciprocalConcave,
}

impl HyperCriterion {
    pub const ALL: [HyperCriterion; 4] = [
        HyperCriterion::LogConvex,
        HyperCriterion::LogConcaveTransformed,
        HyperCriterion::ConvexTransformed,
        HyperCriterion::ReciprocalConcave,
    ];

    pub fn slug(&self) -> &'static str {
        match self {
            HyperCriterion::LogConvex => "2f1/log-convex",
            HyperCriterion::LogConcaveTransformed => "2f1/transformed-log-concave",
            HyperCriterion::ConvexTransformed => "2f1/transformed-convex",
            HyperCriterion::ReciprocalConcave => "2f1/reciprocal-concave",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "log-convex" => Ok(HyperCriterion::LogConvex),
            "log-concave-transformed" => Ok(HyperCriterion::LogConcaveTransformed),
            "convex-transformed" => Ok(HyperCriterion::ConvexTransformed),
            "reciprocal-concave" => Ok(HyperCriterion::ReciprocalConcave),
            other => Err(Error::InvalidParameters(format!(
                "unknown hypergeometric criterion `{other}`"
            ))),
        }
    }
}

/// Evaluate the exact algebraic condition for the requested criterion.
pub fn certify_hypergeometric(p: &HypergeometricParams, which: HyperCriterion) -> Certificate {
    let (a, b, c) = (p.a(), p.b(), p.c());
    let subject = p.label();
    match which {
        HyperCriterion::LogConvex => {
            let lhs = a * b / (a + b + Q::one());
            let held = lhs < *c;
            let hyp = Hypothesis::new(format!("ab/(a+b+1) = {} < c = {}", lhs, c), held);
            decide(subject, which.slug(), "log F convex on (0,1)", vec![hyp])
        }
        HyperCriterion::LogConcaveTransformed => {
            let prod = (a - c) * (b - c);
            let held = prod.is_positive();
            let hyp = Hypothesis::new(format!("(a-c)(b-c) = {} > 0", prod), held);
            decide(
                subject,
                which.slug(),
                "log F(1-e^{-t}) concave on (0,inf)",
                vec![hyp],
            )
        }
        HyperCriterion::ConvexTransformed => {
            let held = a + b >= *c;
            let hyp = Hypothesis::new(format!("a+b = {} >= c = {}", a + b, c), held);
            decide(
                subject,
                which.slug(),
                "F(1-e^{-t}) convex on (0,inf)",
                vec![hyp],
            )
        }
        HyperCriterion::ReciprocalConcave => {
            let h1 = a + b >= *c;
            let h2 = *c >= a * b * q(2, 1);
            let h3 = *c > a + b - q(1, 2);
            let hyps = vec![
                Hypothesis::new(format!("a+b = {} >= c = {}", a + b, c), h1),
                Hypothesis::new(format!("c = {} >= 2ab = {}", c, a * b * q(2, 1)), h2),
                Hypothesis::new(format!("c = {} > a+b-1/2 = {}", c, a + b - q(1, 2)), h3),
            ];
            decide(subject, which.slug(), "1/F concave on (0,1)", hyps)
        }
    }
}

fn decide(
    subject: String,
    slug: &str,
    conclusion: &str,
    hypotheses: Vec<Hypothesis>,
) -> Certificate {
    let all_held = hypotheses.iter().all(|h| h.held);
    let verdict = if all_held {
        Verdict::ProvenByCriterion
    } else {
        let failed: Vec<&str> = hypotheses
            .iter()
            .filter(|h| !h.held)
            .map(|h| h.condition.as_str())
            .collect();
        Verdict::Inapplicable {
            reason: format!("condition failed: {}", failed.join("; ")),
        }
    };
    Certificate {
        subject,
        criterion: format!("{slug} -> {conclusion}"),
        verdict,
        hypotheses,
        horizon: None,
        start_index: None,
    }
}

// ---------------------------------------------------------------------------
// General positive-coefficient series criteria
// ---------------------------------------------------------------------------

/// Coefficient criteria for a positive-coefficient series on `(-R, R)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesCriterion {
    /// Positive coefficients alone give AA- and GG-convexity.
    PositiveCoefficients,
    /// `{(n+1)a_{n+1}/a_n}` monotone gives AG-convexity/concavity.
    DerivativeRatio,
    /// `{(n+1)a_{n+1}/b_n}` with `b` the Cauchy square gives AH.
    DerivativeSquareRatio,
    /// `{n a_n/b_n}` with `b` the Cauchy square gives GH (and HH in the
    /// convex direction, where multiplication by `x` keeps monotonicity).
    ScaledDerivativeSquareRatio,
    /// `{R(n+1)a_{n+1}/a_n - n}` monotone makes `(R-x)f'/f` monotone, so
    /// `log f(R(1-e^{-t}))` is convex/concave on `(0,inf)`. Needs finite R.
    ShiftedBoundaryRatio,
    /// `{n a_n R^n}` monotone makes `(R-x)f'` monotone, so
    /// `f(R(1-e^{-t}))` is convex/concave on `(0,inf)`. Needs finite R.
    BoundaryWeighted,
    /// `{n a_n R^n}` increasing plus `{n! a_n R^n/(1/2,n)}` decreasing give
    /// `1/f` concave on `(0,R)`. Needs finite R.
    ReciprocalConcave,
}

impl SeriesCriterion {
    pub fn slug(&self) -> &'static str {
        match self {
            SeriesCriterion::PositiveCoefficients => "series/positive-coefficients",
            SeriesCriterion::DerivativeRatio => "series/derivative-ratio",
            SeriesCriterion::DerivativeSquareRatio => "series/derivative-square-ratio",
            SeriesCriterion::ScaledDerivativeSquareRatio => "series/scaled-derivative-square-ratio",
            SeriesCriterion::ShiftedBoundaryRatio => "series/shifted-boundary-ratio",
            SeriesCriterion::BoundaryWeighted => "series/boundary-weighted",
            SeriesCriterion::ReciprocalConcave => "series/reciprocal-concave",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "positive-coefficients" => Ok(SeriesCriterion::PositiveCoefficients),
            "derivative-ratio" => Ok(SeriesCriterion::DerivativeRatio),
            "derivative-square-ratio" => Ok(SeriesCriterion::DerivativeSquareRatio),
            "scaled-derivative-square-ratio" => Ok(SeriesCriterion::ScaledDerivativeSquareRatio),
            "shifted-boundary-ratio" => Ok(SeriesCriterion::ShiftedBoundaryRatio),
            "boundary-weighted" => Ok(SeriesCriterion::BoundaryWeighted),
            "reciprocal-concave" => Ok(SeriesCriterion::ReciprocalConcave),
            other => Err(Error::InvalidParameters(format!(
                "unknown series criterion `{other}`"
            ))),
        }
    }
}

fn require_positive_coeffs(s: &PowerSeries, horizon: usize) -> Result<()> {
    if let Some(idx) = s.first_nonpositive_coeff(horizon) {
        return Err(Error::NonPositiveCoefficient {
            name: s.name().to_string(),
            index: idx,
        });
    }
    Ok(())
}

fn exact_radius(s: &PowerSeries) -> Option<Q> {
    if s.radius().is_finite() {
        q_from_f64(s.radius())
    } else {
        None
    }
}

/// `T_n = (n+1) a_{n+1} / a_n` on `0..=horizon`.
pub fn derivative_ratio_sequence(s: &PowerSeries, horizon: usize) -> RatioSequence {
    let terms = (0..=horizon)
        .map(|n| match s.coeff_exact(n).zip(s.coeff_exact(n + 1)) {
            Some((a0, a1)) => Coeff::Exact(Q::from_integer((n as i64 + 1).into()) * a1 / a0),
            None => Coeff::Float((n as f64 + 1.0) * s.coeff_f64(n + 1) / s.coeff_f64(n)),
        })
        .collect();
    RatioSequence::from_terms(0, terms)
}

/// `T_n = R(n+1) a_{n+1}/a_n - n` on `0..=horizon` (finite `R`).
pub fn shifted_boundary_sequence(s: &PowerSeries, horizon: usize) -> RatioSequence {
    match exact_radius(s) {
        Some(r) => {
            let terms = (0..=horizon)
                .map(|n| {
                    let a1 = s.coeff_exact(n + 1).unwrap();
                    let a0 = s.coeff_exact(n).unwrap();
                    Coeff::Exact(&r * Q::from_integer((n as i64 + 1).into()) * a1 / a0
                        - Q::from_integer((n as i64).into()))
                })
                .collect();
            RatioSequence::from_terms(0, terms)
        }
        None => {
            let r = s.radius();
            let terms = (0..=horizon)
                .map(|n| {
                    Coeff::Float(
                        r * (n as f64 + 1.0) * s.coeff_f64(n + 1) / s.coeff_f64(n) - n as f64,
                    )
                })
                .collect();
            RatioSequence::from_terms(0, terms)
        }
    }
}

/// `T_n = n a_n R^n` on `0..=horizon` (finite `R`).
pub fn boundary_weighted_sequence(s: &PowerSeries, horizon: usize) -> RatioSequence {
    match exact_radius(s) {
        Some(r) => {
            let mut rp = Q::one();
            let mut terms = Vec::with_capacity(horizon + 1);
            for n in 0..=horizon {
                terms.push(Coeff::Exact(
                    Q::from_integer((n as i64).into()) * s.coeff_exact(n).unwrap() * rp.clone(),
                ));
                rp = rp * r.clone();
            }
            RatioSequence::from_terms(0, terms)
        }
        None => {
            let r = s.radius();
            let mut rp = 1.0;
            let mut terms = Vec::with_capacity(horizon + 1);
            for n in 0..=horizon {
                terms.push(Coeff::Float(n as f64 * s.coeff_f64(n) * rp));
                rp *= r;
            }
            RatioSequence::from_terms(0, terms)
        }
    }
}

/// `T_n = n! a_n R^n / (1/2, n)` on `0..=horizon` (finite `R`).
pub fn reciprocal_weight_sequence(s: &PowerSeries, horizon: usize) -> RatioSequence {
    match exact_radius(s) {
        Some(r) => {
            // weight_{n+1} = weight_n * R (n+1) / (1/2 + n)
            let mut w = Q::one();
            let mut terms = Vec::with_capacity(horizon + 1);
            for n in 0..=horizon {
                terms.push(Coeff::Exact(s.coeff_exact(n).unwrap() * w.clone()));
                w = w * r.clone() * Q::from_integer((n as i64 + 1).into())
                    / (q(1, 2) + Q::from_integer((n as i64).into()));
            }
            RatioSequence::from_terms(0, terms)
        }
        None => {
            let r = s.radius();
            let mut w = 1.0;
            let mut terms = Vec::with_capacity(horizon + 1);
            for n in 0..=horizon {
                terms.push(Coeff::Float(s.coeff_f64(n) * w));
                w *= r * (n as f64 + 1.0) / (0.5 + n as f64);
            }
            RatioSequence::from_terms(0, terms)
        }
    }
}

/// Cauchy-square-backed sequence. For exact series the horizon is clamped
/// to [`EXACT_CONVOLUTION_BUDGET`]: the convolution is quadratic in the
/// horizon on ever-growing rationals, and a float fallback would underflow
/// for factorial-decay coefficients. Returns the sequence and the horizon
/// actually inspected.
fn square_ratio_sequence(s: &PowerSeries, horizon: usize, scaled: bool) -> (RatioSequence, usize) {
    let exact = s.coeff(0).is_exact();
    let horizon = if exact {
        horizon.min(EXACT_CONVOLUTION_BUDGET)
    } else {
        horizon
    };
    let mut terms = Vec::with_capacity(horizon + 1);
    if exact {
        let sq = s.cauchy_square();
        for n in 0..=horizon {
            let b = sq.coeff_exact(n).unwrap();
            let num = if scaled {
                Q::from_integer((n as i64).into()) * s.coeff_exact(n).unwrap()
            } else {
                Q::from_integer((n as i64 + 1).into()) * s.coeff_exact(n + 1).unwrap()
            };
            terms.push(Coeff::Exact(num / b));
        }
    } else {
        let coeffs: Vec<f64> = (0..=horizon + 1).map(|n| s.coeff_f64(n)).collect();
        for n in 0..=horizon {
            let b: f64 = (0..=n).map(|k| coeffs[k] * coeffs[n - k]).sum();
            let num = if scaled {
                n as f64 * coeffs[n]
            } else {
                (n as f64 + 1.0) * coeffs[n + 1]
            };
            terms.push(Coeff::Float(num / b));
        }
    }
    (RatioSequence::from_terms(0, terms), horizon)
}

fn prefix_cert(
    subject: String,
    slug: &str,
    seq_desc: &str,
    conclusion_up: &str,
    conclusion_down: &str,
    seq: &RatioSequence,
    horizon: usize,
) -> Certificate {
    let verdict = monotone_verdict(seq);
    let (text, cert_verdict) = match &verdict {
        PrefixVerdict::Increasing => (
            format!("{slug} -> {conclusion_up}"),
            Verdict::PrefixChecked { horizon },
        ),
        PrefixVerdict::Decreasing => (
            format!("{slug} -> {conclusion_down}"),
            Verdict::PrefixChecked { horizon },
        ),
        PrefixVerdict::Constant => (
            format!("{slug} -> {conclusion_up}; {conclusion_down} (degenerate equality regime)"),
            Verdict::PrefixChecked { horizon },
        ),
        PrefixVerdict::NotMonotone { first_violation } => (
            slug.to_string(),
            Verdict::Inapplicable {
                reason: format!(
                    "{seq_desc} is not monotone on the checked prefix (first violation at index {first_violation})"
                ),
            },
        ),
    };
    let hyp = Hypothesis::new(
        format!("{seq_desc} is monotone on n <= {horizon}: {:?}", verdict),
        !matches!(verdict, PrefixVerdict::NotMonotone { .. }),
    );
    Certificate {
        subject,
        criterion: text,
        verdict: cert_verdict,
        hypotheses: vec![hyp],
        horizon: Some(horizon),
        start_index: Some(seq.start()),
    }
}

/// Run one coefficient criterion against a positive-coefficient series.
pub fn certify_series(
    s: &PowerSeries,
    which: SeriesCriterion,
    opts: &CertifyOptions,
) -> Result<Certificate> {
    let horizon = opts.horizon;
    require_positive_coeffs(s, horizon)?;
    let subject = s.name().to_string();
    let needs_finite = matches!(
        which,
        SeriesCriterion::ShiftedBoundaryRatio
            | SeriesCriterion::BoundaryWeighted
            | SeriesCriterion::ReciprocalConcave
    );
    if needs_finite && !s.radius().is_finite() {
        return Ok(Certificate {
            subject,
            criterion: which.slug().to_string(),
            verdict: Verdict::Inapplicable {
                reason: "criterion requires a finite radius (0 < R < inf); clamp the series first"
                    .into(),
            },
            hypotheses: vec![Hypothesis::new("0 < R < inf", false)],
            horizon: Some(horizon),
            start_index: None,
        });
    }

    Ok(match which {
        SeriesCriterion::PositiveCoefficients => Certificate {
            subject,
            criterion: format!(
                "{} -> AA-convex and GG-convex on (0,R)",
                which.slug()
            ),
            verdict: Verdict::ProvenByCriterion,
            hypotheses: vec![Hypothesis::new(
                format!("a_n > 0 for all n <= {horizon}"),
                true,
            )],
            horizon: Some(horizon),
            start_index: Some(0),
        },
        SeriesCriterion::DerivativeRatio => {
            let seq = derivative_ratio_sequence(s, horizon);
            prefix_cert(
                subject,
                which.slug(),
                "{(n+1)a_{n+1}/a_n}",
                "AG-convex on (0,R)",
                "AG-concave on (0,R)",
                &seq,
                horizon,
            )
        }
        SeriesCriterion::DerivativeSquareRatio => {
            let (seq, used) = square_ratio_sequence(s, horizon, false);
            let mut cert = prefix_cert(
                subject,
                which.slug(),
                "{(n+1)a_{n+1}/b_n}, b = Cauchy square",
                "AH-convex on (0,R)",
                "AH-concave on (0,R)",
                &seq,
                used,
            );
            if used < horizon {
                cert.hypotheses.push(Hypothesis::new(
                    format!("horizon clamped to {used} (exact-convolution budget)"),
                    true,
                ));
            }
            cert
        }
        SeriesCriterion::ScaledDerivativeSquareRatio => {
            let (seq, used) = square_ratio_sequence(s, horizon, true);
            let mut cert = prefix_cert(
                subject,
                which.slug(),
                "{n a_n/b_n}, b = Cauchy square",
                "GH-convex on (0,R) (hence HH-convex: multiplying the test ratio by x keeps it increasing)",
                "GH-concave on (0,R)",
                &seq,
                used,
            );
            cert.hypotheses.push(Hypothesis::new(
                "criterion is exposed for both GH and HH; the HH reading only transfers in the convex direction",
                true,
            ));
            if used < horizon {
                cert.hypotheses.push(Hypothesis::new(
                    format!("horizon clamped to {used} (exact-convolution budget)"),
                    true,
                ));
            }
            cert
        }
        SeriesCriterion::ShiftedBoundaryRatio => {
            let seq = shifted_boundary_sequence(s, horizon);
            prefix_cert(
                subject,
                which.slug(),
                "{R(n+1)a_{n+1}/a_n - n}",
                "log f(R(1-e^{-t})) convex: f(R-sqrt((R-x)(R-y))) >= sqrt(f(x)f(y))",
                "log f(R(1-e^{-t})) concave: f(R-sqrt((R-x)(R-y))) <= ... reversed",
                &seq,
                horizon,
            )
        }
        SeriesCriterion::BoundaryWeighted => {
            let seq = boundary_weighted_sequence(s, horizon);
            prefix_cert(
                subject,
                which.slug(),
                "{n a_n R^n}",
                "f(R(1-e^{-t})) convex: f(R-sqrt((R-x)(R-y))) <= (f(x)+f(y))/2",
                "f(R(1-e^{-t})) concave: (f(x)+f(y))/2 <= f(R-sqrt((R-x)(R-y)))",
                &seq,
                horizon,
            )
        }
        SeriesCriterion::ReciprocalConcave => {
            let up = boundary_weighted_sequence(s, horizon);
            let down = reciprocal_weight_sequence(s, horizon);
            let v_up = monotone_verdict(&up);
            let v_down = monotone_verdict(&down);
            let h1 = Hypothesis::new(
                format!("{{n a_n R^n}} weakly increasing: {:?}", v_up),
                v_up.weakly_increasing(),
            );
            let h2 = Hypothesis::new(
                format!("{{n! a_n R^n/(1/2,n)}} weakly decreasing: {:?}", v_down),
                v_down.weakly_decreasing(),
            );
            let ok = h1.held && h2.held;
            Certificate {
                subject,
                criterion: if ok {
                    format!("{} -> 1/f concave on (0,R)", which.slug())
                } else {
                    which.slug().to_string()
                },
                verdict: if ok {
                    Verdict::PrefixChecked { horizon }
                } else {
                    Verdict::Inapplicable {
                        reason: "one of the two sequence conditions failed".into(),
                    }
                },
                hypotheses: vec![h1, h2],
                horizon: Some(horizon),
                start_index: Some(0),
            }
        }
    })
}

// ---------------------------------------------------------------------------
// Bessel criteria
// ---------------------------------------------------------------------------

/// The four certificates for the generalized-normalized Bessel series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BesselCriterion {
    /// `log f(Re^{-t})` convex: `f(sqrt(xy)) <= sqrt(f(x)f(y))` on `(0,inf)`.
    GgConvex,
    /// `log f` concave: `sqrt(f(x)f(y)) <= f((x+y)/2)` on `(0,inf)`.
    AgConcave,
    /// `f` convex: `f((x+y)/2) <= (f(x)+f(y))/2` on `(0,inf)`.
    AaConvex,
    /// `k > -1 - cR/4`: `f(R(1-e^{-t}))` concave, so
    /// `(f(x)+f(y))/2 <= f(R - sqrt((R-x)(R-y)))` on `(0,R)`.
    TransformedConcave,
}

impl BesselCriterion {
    pub const ALL: [BesselCriterion; 4] = [
        BesselCriterion::GgConvex,
        BesselCriterion::AgConcave,
        BesselCriterion::AaConvex,
        BesselCriterion::TransformedConcave,
    ];

    pub fn part(&self) -> usize {
        match self {
            BesselCriterion::GgConvex => 1,
            BesselCriterion::AgConcave => 2,
            BesselCriterion::AaConvex => 3,
            BesselCriterion::TransformedConcave => 4,
        }
    }

    pub fn from_part(part: usize) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.part() == part)
            .ok_or_else(|| Error::InvalidParameters(format!("bessel part must be 1..=4, got {part}")))
    }

    pub fn slug(&self) -> &'static str {
        match self {
            BesselCriterion::GgConvex => "bessel/gg-convex",
            BesselCriterion::AgConcave => "bessel/ag-concave",
            BesselCriterion::AaConvex => "bessel/aa-convex",
            BesselCriterion::TransformedConcave => "bessel/transformed-concave",
        }
    }
}

/// All four certificates for the series with `c < 0`, `k > 0`, radius
/// parameter `R` (used by the fourth certificate only).
pub fn certify_bessel(p: &BesselParams, r: f64) -> Result<Vec<Certificate>> {
    p.validate()?;
    Ok(BesselCriterion::ALL
        .into_iter()
        .map(|which| certify_bessel_part(p, r, which))
        .collect())
}

/// One of the four Bessel certificates.
pub fn certify_bessel_part(p: &BesselParams, r: f64, which: BesselCriterion) -> Certificate {
    let subject = p.label();
    let k = p.k();
    let sign_hyps = vec![
        Hypothesis::new(format!("c = {} < 0", p.c()), p.c().is_negative()),
        Hypothesis::new(format!("k = p + (b+1)/2 = {} > 0", k), k.is_positive()),
    ];
    let signs_ok = sign_hyps.iter().all(|h| h.held);
    match which {
        BesselCriterion::GgConvex => {
            let mut hyps = sign_hyps;
            hyps.push(Hypothesis::new(
                "all coefficients (-c/4)^n/(n!(k,n)) are positive",
                signs_ok,
            ));
            finish_bessel(
                subject,
                which.slug(),
                "f(sqrt(xy)) <= sqrt(f(x)f(y)) on (0,inf)",
                hyps,
            )
        }
        BesselCriterion::AgConcave => {
            let mut hyps = sign_hyps;
            hyps.push(Hypothesis::new(
                "(n+1)b_{n+1}/b_n = (-c/4)/(k+n) is decreasing in n",
                signs_ok,
            ));
            finish_bessel(
                subject,
                which.slug(),
                "sqrt(f(x)f(y)) <= f((x+y)/2) on (0,inf)",
                hyps,
            )
        }
        BesselCriterion::AaConvex => {
            let mut hyps = sign_hyps;
            hyps.push(Hypothesis::new("b_n > 0 for all n", signs_ok));
            finish_bessel(
                subject,
                which.slug(),
                "f((x+y)/2) <= (f(x)+f(y))/2 on (0,inf)",
                hyps,
            )
        }
        BesselCriterion::TransformedConcave => {
            let mut hyps = sign_hyps;
            match q_from_f64(r).filter(|rq| rq.is_positive()) {
                Some(rq) => {
                    let bound = -Q::one() - p.c() * rq * q(1, 4);
                    let held = k > bound;
                    hyps.push(Hypothesis::new(
                        format!("k = {} > -1 - cR/4 = {}", k, bound),
                        held,
                    ));
                }
                None => {
                    hyps.push(Hypothesis::new(format!("R = {r} must be positive and finite"), false));
                }
            }
            finish_bessel(
                subject,
                which.slug(),
                "(f(x)+f(y))/2 <= f(R - sqrt((R-x)(R-y))) on (0,R)",
                hyps,
            )
        }
    }
}

fn finish_bessel(
    subject: String,
    slug: &str,
    conclusion: &str,
    hypotheses: Vec<Hypothesis>,
) -> Certificate {
    decide(subject, slug, conclusion, hypotheses)
}

// ---------------------------------------------------------------------------
// Generalized hypergeometric criteria
// ---------------------------------------------------------------------------

/// Case analysis on `(p, q)` and componentwise parameter comparison.
pub fn certify_pfq(p: &GeneralizedHypergeometricParams) -> Certificate {
    let subject = p.label();
    let (np, nq) = (p.p(), p.q());

    if np == 0 && nq == 0 {
        return Certificate {
            subject,
            criterion: "pfq/case-1 -> F = e^x, log-convex on (0,1)".into(),
            verdict: Verdict::ProvenByCriterion,
            hypotheses: vec![Hypothesis::new("p = q = 0", true)],
            horizon: None,
            start_index: None,
        };
    }
    if np == 0 {
        return Certificate {
            subject,
            criterion: "pfq/case-5 -> F log-concave on (0,1)".into(),
            verdict: Verdict::ProvenByCriterion,
            hypotheses: vec![Hypothesis::new(
                "p = 0, q >= 1: F'/F = 1/prod(b_k+n) is decreasing",
                true,
            )],
            horizon: None,
            start_index: None,
        };
    }

    // Componentwise comparison over the shared prefix of parameter lists.
    let shared = np.min(nq);
    let mut le_all = true;
    let mut ge_all = true;
    let mut strict_lt = false;
    let mut strict_gt = false;
    for k in 0..shared {
        let (a, b) = (&p.num()[k], &p.den()[k]);
        if a < b {
            strict_lt = true;
            ge_all = false;
        } else if a > b {
            strict_gt = true;
            le_all = false;
        }
    }
    let cmp_desc = format!(
        "componentwise a_k vs b_k over k = 1..{}: all<= {}, all>= {}, strict< {}, strict> {}",
        shared, le_all, ge_all, strict_lt, strict_gt
    );

    if np == nq {
        if le_all && strict_lt {
            return Certificate {
                subject,
                criterion: "pfq/case-2 -> F strictly log-convex on (0,1)".into(),
                verdict: Verdict::ProvenByCriterion,
                hypotheses: vec![Hypothesis::new(cmp_desc, true)],
                horizon: None,
                start_index: None,
            };
        }
        if ge_all && strict_gt {
            return Certificate {
                subject,
                criterion: "pfq/case-2 -> F strictly log-concave on (0,1)".into(),
                verdict: Verdict::ProvenByCriterion,
                hypotheses: vec![Hypothesis::new(cmp_desc, true)],
                horizon: None,
                start_index: None,
            };
        }
        let reason = if le_all && ge_all {
            "parameters equal componentwise: the series reduces to e^x (log-affine); no strict case applies"
                .to_string()
        } else {
            "mixed componentwise comparison (neither all <= nor all >=)".to_string()
        };
        return Certificate {
            subject,
            criterion: "pfq/case-2".into(),
            verdict: Verdict::Inapplicable { reason },
            hypotheses: vec![Hypothesis::new(cmp_desc, false)],
            horizon: None,
            start_index: None,
        };
    }

    if np > nq {
        // p = q + 1 (larger p cannot be constructed).
        if nq == 0 {
            return Certificate {
                subject,
                criterion: "pfq/case-3 -> F strictly log-convex on (0,1)".into(),
                verdict: Verdict::ProvenByCriterion,
                hypotheses: vec![Hypothesis::new(
                    "q = 0, p >= 1: F'/F = prod(a_k+n) is increasing",
                    true,
                )],
                horizon: None,
                start_index: None,
            };
        }
        if le_all && strict_lt {
            return Certificate {
                subject,
                criterion: "pfq/case-3 -> F strictly log-convex on (0,1)".into(),
                verdict: Verdict::ProvenByCriterion,
                hypotheses: vec![Hypothesis::new(cmp_desc, true)],
                horizon: None,
                start_index: None,
            };
        }
        return Certificate {
            subject,
            criterion: "pfq/case-3".into(),
            verdict: Verdict::Inapplicable {
                reason: "needs a_k <= b_k for k = 1..q with at least one strict inequality".into(),
            },
            hypotheses: vec![Hypothesis::new(cmp_desc, false)],
            horizon: None,
            start_index: None,
        };
    }

    // 1 <= p < q.
    if ge_all && strict_gt {
        return Certificate {
            subject,
            criterion: "pfq/case-4 -> F strictly log-concave on (0,1)".into(),
            verdict: Verdict::ProvenByCriterion,
            hypotheses: vec![Hypothesis::new(cmp_desc, true)],
            horizon: None,
            start_index: None,
        };
    }
    Certificate {
        subject,
        criterion: "pfq/case-4".into(),
        verdict: Verdict::Inapplicable {
            reason: "needs a_k >= b_k for k = 1..p with at least one strict inequality".into(),
        },
        hypotheses: vec![Hypothesis::new(cmp_desc, false)],
        horizon: None,
        start_index: None,
    }
}

// ---------------------------------------------------------------------------
// Mirror-ratio criterion
// ---------------------------------------------------------------------------

/// The sequence behind the mirror-ratio chain; same construction as
/// [`shifted_boundary_sequence`], exposed for inspection.
pub fn mf_sequence(s: &PowerSeries, horizon: usize) -> RatioSequence {
    shifted_boundary_sequence(s, horizon)
}

/// Certify the two-sided chain for `m(x) = f(R - x^2/R) / f(x^2/R)`:
/// `1/m(((R^2-x^2)(R^2-y^2))^{1/4}) <= sqrt(m(x)m(y)) <= m(sqrt(xy))`.
///
/// Granted when `{R(n+1)a_{n+1}/a_n - n}` is (weakly) decreasing on the
/// checked prefix; requires a finite radius.
pub fn certify_mf(s: &PowerSeries, opts: &CertifyOptions) -> Result<Certificate> {
    let horizon = opts.horizon;
    require_positive_coeffs(s, horizon)?;
    let subject = s.name().to_string();
    if !s.radius().is_finite() {
        return Ok(Certificate {
            subject,
            criterion: "mf/shifted-ratio-decreasing".into(),
            verdict: Verdict::Inapplicable {
                reason: "criterion requires a finite radius (0 < R < inf); clamp the series first"
                    .into(),
            },
            hypotheses: vec![Hypothesis::new("0 < R < inf", false)],
            horizon: Some(horizon),
            start_index: None,
        });
    }
    let seq = mf_sequence(s, horizon);
    let verdict = monotone_verdict(&seq);
    let held = verdict.weakly_decreasing();
    let degenerate = matches!(verdict, PrefixVerdict::Constant);
    let mut hypotheses = vec![Hypothesis::new(
        format!(
            "{{R(n+1)a_{{n+1}}/a_n - n}} weakly decreasing on n <= {horizon}: {:?}",
            verdict
        ),
        held,
    )];
    if degenerate {
        hypotheses.push(Hypothesis::new(
            "sequence is constant: the chain holds with equality throughout",
            true,
        ));
    }
    Ok(Certificate {
        subject,
        criterion: if held {
            "mf/shifted-ratio-decreasing -> 1/m(((R^2-x^2)(R^2-y^2))^{1/4}) <= sqrt(m(x)m(y)) <= m(sqrt(xy)) on (0,R)"
                .into()
        } else {
            "mf/shifted-ratio-decreasing".into()
        },
        verdict: if held {
            Verdict::PrefixChecked { horizon }
        } else {
            Verdict::Inapplicable {
                reason: format!("sequence verdict was {:?}", verdict),
            }
        },
        hypotheses,
        horizon: Some(horizon),
        start_index: Some(seq.start()),
    })
}
