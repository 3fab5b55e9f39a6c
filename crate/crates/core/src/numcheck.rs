//! Independent numeric verification.
//!
//! Everything here samples inequalities on finite grids: the defining
//! `f(M(x,y)) <= N(f(x),f(y))` inequality, the nine derivative-monotonicity
//! tests, change-of-variable midpoint tests, inequality chains, and
//! sharpness scans with local grid refinement. A refutation always carries
//! a concrete [`Witness`] whose gap exceeds ten times the evaluation
//! tolerance; evaluation failures surface as errors, never as refutations.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::powerseries::{eval_with, EvalParams, PowerSeries};
use crate::query::{BasicMean, ClosedFn, ConvexityQuery, MeanPair, Sense, Subject};
use crate::scalar::{q_to_f64, Q};
use crate::specialfn::legendre::log_deriv_nn;
use crate::specialfn::HypergeometricParams;

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

/// A concrete pair falsifying (or attaining) an inequality. `gap` is signed
/// so that negative means violated.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub x: f64,
    pub y: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub context: String,
}

/// Outcome of one grid verification.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum CheckOutcome {
    Pass,
    Refuted { witness: Witness },
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, CheckOutcome::Pass)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            CheckOutcome::Pass => None,
            CheckOutcome::Refuted { witness } => Some(witness),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GridSpacing {
    Uniform,
    Log,
}

/// Evaluation grid: an interval strictly inside the domain, a point count
/// per axis (at least 16), and the spacing law.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    pub spacing: GridSpacing,
}

impl GridSpec {
    pub fn new(lo: f64, hi: f64, points: usize, spacing: GridSpacing) -> Result<Self> {
        if !(lo > 0.0 && lo < hi) {
            return Err(Error::InvalidGrid(format!(
                "interval ({lo}, {hi}) must satisfy 0 < lo < hi"
            )));
        }
        if points < 16 {
            return Err(Error::InvalidGrid(format!(
                "need at least 16 points per axis, got {points}"
            )));
        }
        Ok(GridSpec {
            lo,
            hi,
            points,
            spacing,
        })
    }

    /// 64-point log-spaced grid, the default for pair scans.
    pub fn log(lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, 64, GridSpacing::Log)
    }

    pub fn uniform(lo: f64, hi: f64, points: usize) -> Result<Self> {
        Self::new(lo, hi, points, GridSpacing::Uniform)
    }

    pub fn with_points(mut self, points: usize) -> Result<Self> {
        if points < 16 {
            return Err(Error::InvalidGrid(format!(
                "need at least 16 points per axis, got {points}"
            )));
        }
        self.points = points;
        Ok(self)
    }

    /// Grid points, endpoints included.
    pub fn points_vec(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                match self.spacing {
                    GridSpacing::Uniform => self.lo + (self.hi - self.lo) * t,
                    GridSpacing::Log => self.lo * (self.hi / self.lo).powf(t),
                }
            })
            .collect()
    }
}

/// Tolerance policy for the numeric verifiers.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Series evaluation parameters; `eval.tol` is the evaluation tolerance
    /// the refutation threshold is anchored to.
    pub eval: EvalParams,
    /// Enforce strict inequality off the diagonal.
    pub check_strict: bool,
    /// A refuting gap must exceed `refute_factor * eval.tol` (relative to
    /// the magnitude of the compared sides).
    pub refute_factor: f64,
    /// Pairs closer than `diag_rel * (hi - lo)` count as diagonal.
    pub diag_rel: f64,
    /// Off-diagonal gaps must exceed `strict_rel * max(|lhs|, |rhs|)`.
    pub strict_rel: f64,
    /// On-diagonal relative equality tolerance.
    pub diag_tol_rel: f64,
    /// Tie tolerance for grid monotonicity checks.
    pub mono_tie_rel: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            eval: EvalParams::default(),
            check_strict: true,
            refute_factor: 10.0,
            diag_rel: 1e-3,
            strict_rel: 1e-12,
            diag_tol_rel: 1e-9,
            mono_tie_rel: 1e-12,
        }
    }
}

impl VerifyOptions {
    pub fn weak() -> Self {
        VerifyOptions {
            check_strict: false,
            ..VerifyOptions::default()
        }
    }
}

// ---------------------------------------------------------------------------
// Shared pair-scan machinery
// ---------------------------------------------------------------------------

struct PairScan {
    outcome: CheckOutcome,
    /// Most negative normalized gap seen anywhere (violation or not).
    min_norm_gap: f64,
    min_pair: (f64, f64),
}

struct Tracker<'a> {
    ctx: &'a str,
    o: &'a VerifyOptions,
    diag_abs: f64,
    hard: Option<(f64, Witness)>,
    strict: Option<Witness>,
    min_norm_gap: f64,
    min_pair: (f64, f64),
}

impl<'a> Tracker<'a> {
    fn new(ctx: &'a str, o: &'a VerifyOptions, span: f64) -> Self {
        Tracker {
            ctx,
            o,
            diag_abs: o.diag_rel * span,
            hard: None,
            strict: None,
            min_norm_gap: f64::INFINITY,
            min_pair: (f64::NAN, f64::NAN),
        }
    }

    /// Record `lhs <= rhs` at the pair `(x, y)`.
    fn record(&mut self, x: f64, y: f64, lhs: f64, rhs: f64) -> Result<()> {
        let scale = lhs.abs().max(rhs.abs()).max(1.0);
        let gap = rhs - lhs;
        let norm = gap / scale;
        let on_diagonal = (x - y).abs() < self.diag_abs;

        if x == y {
            if gap.abs() > self.o.diag_tol_rel * scale {
                return Err(Error::Eval(format!(
                    "{}: diagonal equality failed at x = {x}: lhs = {lhs}, rhs = {rhs}",
                    self.ctx
                )));
            }
            return Ok(());
        }
        if norm < self.min_norm_gap {
            self.min_norm_gap = norm;
            self.min_pair = (x, y);
        }
        let refute_thresh = self.o.refute_factor * self.o.eval.tol;
        if norm < -refute_thresh {
            let better = self.hard.as_ref().map_or(true, |(g, _)| norm < *g);
            if better {
                self.hard = Some((
                    norm,
                    Witness {
                        x,
                        y,
                        lhs,
                        rhs,
                        gap,
                        context: self.ctx.to_string(),
                    },
                ));
            }
        } else if self.o.check_strict && !on_diagonal && norm <= self.o.strict_rel && self.strict.is_none()
        {
            self.strict = Some(Witness {
                x,
                y,
                lhs,
                rhs,
                gap,
                context: format!("{} (strictness: equality off the diagonal)", self.ctx),
            });
        }
        Ok(())
    }

    fn finish(self) -> PairScan {
        let outcome = if let Some((_, w)) = self.hard {
            CheckOutcome::Refuted { witness: w }
        } else if let Some(w) = self.strict {
            CheckOutcome::Refuted { witness: w }
        } else {
            CheckOutcome::Pass
        };
        PairScan {
            outcome,
            min_norm_gap: self.min_norm_gap,
            min_pair: self.min_pair,
        }
    }
}

/// Check `lhs(x,y) <= rhs(x,y)` over unordered pairs from one axis.
fn check_pairs_sym(
    xs: &[f64],
    mut lhs: impl FnMut(f64, f64) -> Result<f64>,
    mut rhs: impl FnMut(f64, f64) -> Result<f64>,
    ctx: &str,
    o: &VerifyOptions,
) -> Result<PairScan> {
    let span = xs[xs.len() - 1] - xs[0];
    let mut t = Tracker::new(ctx, o, span);
    for (i, &x) in xs.iter().enumerate() {
        for &y in &xs[i..] {
            t.record(x, y, lhs(x, y)?, rhs(x, y)?)?;
        }
    }
    Ok(t.finish())
}

/// Check `lhs(x,y) <= rhs(x,y)` over the full rectangle `xs` x `ys`.
fn check_pairs_rect(
    xs: &[f64],
    ys: &[f64],
    mut lhs: impl FnMut(f64, f64) -> Result<f64>,
    mut rhs: impl FnMut(f64, f64) -> Result<f64>,
    ctx: &str,
    o: &VerifyOptions,
) -> Result<PairScan> {
    let span = (xs[xs.len() - 1] - xs[0]).max(ys[ys.len() - 1] - ys[0]).max(1e-12);
    let mut t = Tracker::new(ctx, o, span);
    for &x in xs {
        for &y in ys {
            t.record(x, y, lhs(x, y)?, rhs(x, y)?)?;
        }
    }
    Ok(t.finish())
}

fn require_subgrid(g: &GridSpec, lo: f64, hi: f64) -> Result<()> {
    if g.lo < lo || g.hi > hi {
        return Err(Error::InvalidGrid(format!(
            "grid ({}, {}) must sit inside ({lo}, {hi})",
            g.lo, g.hi
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Definition-level verification
// ---------------------------------------------------------------------------

/// Sample the defining inequality `f(M(x,y)) <= (>=) N(f(x), f(y))` on all
/// grid pairs. Equality-iff-diagonal is enforced per the strictness policy.
pub fn verify_mn(q: &ConvexityQuery, g: &GridSpec, o: &VerifyOptions) -> Result<CheckOutcome> {
    require_subgrid(g, q.lo, q.hi)?;
    let xs = g.points_vec();
    let fv: Vec<f64> = xs
        .iter()
        .map(|&x| q.subject.eval(x, &o.eval))
        .collect::<Result<_>>()?;
    let idx = |x: f64| xs.iter().position(|&v| v == x).expect("grid point");
    let ctx = format!("{} {} of {}", q.pair, q.sense.word(), q.subject.name());

    let f_of_mean = |x: f64, y: f64| -> Result<f64> {
        let m = q.pair.arg.eval(x, y)?;
        q.subject.eval(m, &o.eval)
    };
    let mean_of_f = |x: f64, y: f64| -> Result<f64> {
        let (fx, fy) = (fv[idx(x)], fv[idx(y)]);
        if !(fx > 0.0) || !(fy > 0.0) {
            return Err(Error::Eval(format!(
                "subject must stay positive for mean comparison; f({x}) = {fx}, f({y}) = {fy}"
            )));
        }
        q.pair.val.eval(fx, fy)
    };

    let scan = match q.sense {
        Sense::Convex => check_pairs_sym(&xs, f_of_mean, mean_of_f, &ctx, o)?,
        Sense::Concave => check_pairs_sym(&xs, mean_of_f, f_of_mean, &ctx, o)?,
    };
    Ok(scan.outcome)
}

/// The nine derivative-monotonicity tests: builds the test function for the
/// `(M, N)` pair from `{1, x, x^2} * f' / {1, f, f^2}` and asserts the
/// sense-appropriate monotonicity on a 1-D grid.
pub fn verify_derivative_monotone(
    q: &ConvexityQuery,
    g: &GridSpec,
    o: &VerifyOptions,
) -> Result<CheckOutcome> {
    require_subgrid(g, q.lo, q.hi)?;
    let xs = g.points_vec();
    let ctx = format!(
        "{} {} of {} via derivative test",
        q.pair,
        q.sense.word(),
        q.subject.name()
    );
    let mut vals = Vec::with_capacity(xs.len());
    for &x in &xs {
        let d = q.subject.deriv(x, &o.eval)?;
        let f = q.subject.eval(x, &o.eval)?;
        let num = match q.pair.arg {
            BasicMean::Arithmetic => d,
            BasicMean::Geometric => x * d,
            BasicMean::Harmonic => x * x * d,
        };
        let den = match q.pair.val {
            BasicMean::Arithmetic => 1.0,
            BasicMean::Geometric => f,
            BasicMean::Harmonic => f * f,
        };
        vals.push(num / den);
    }
    let want_increasing = q.sense == Sense::Convex;
    for i in 0..vals.len() - 1 {
        let (a, b) = (vals[i], vals[i + 1]);
        let tie = o.mono_tie_rel * a.abs().max(b.abs());
        let violated = if want_increasing {
            b < a - tie
        } else {
            b > a + tie
        };
        if violated {
            return Ok(CheckOutcome::Refuted {
                witness: Witness {
                    x: xs[i],
                    y: xs[i + 1],
                    lhs: a,
                    rhs: b,
                    gap: if want_increasing { b - a } else { a - b },
                    context: ctx,
                },
            });
        }
    }
    Ok(CheckOutcome::Pass)
}

/// Generic midpoint convexity test of `g` on a coordinate grid:
/// `g((s+t)/2) <= (g(s)+g(t))/2` for convex, reversed for concave.
fn midpoint_pairs(
    ts: &[f64],
    mut gfun: impl FnMut(f64) -> Result<f64>,
    want_convex: bool,
    ctx: &str,
    o: &VerifyOptions,
) -> Result<PairScan> {
    let gv: Vec<f64> = ts.iter().map(|&t| gfun(t)).collect::<Result<_>>()?;
    let span = ts[ts.len() - 1] - ts[0];
    let mut tr = Tracker::new(ctx, o, span);
    for i in 0..ts.len() {
        for j in i..ts.len() {
            let mid = gfun(0.5 * (ts[i] + ts[j]))?;
            let avg = 0.5 * (gv[i] + gv[j]);
            let (lhs, rhs) = if want_convex { (mid, avg) } else { (avg, mid) };
            tr.record(ts[i], ts[j], lhs, rhs)?;
        }
    }
    Ok(tr.finish())
}

/// Change-of-variable route: apply the reduction for the `(M, N)` pair and
/// run a midpoint convexity test on the transformed function. Agrees with
/// [`verify_mn`] by construction on matching grids.
pub fn verify_by_transform(
    q: &ConvexityQuery,
    g: &GridSpec,
    o: &VerifyOptions,
) -> Result<CheckOutcome> {
    require_subgrid(g, q.lo, q.hi)?;
    let xs = g.points_vec();
    let b = g.hi;
    // Transformed coordinate: pairs of transformed points correspond to
    // M-means of the original points.
    let mut ts: Vec<f64> = match q.pair.arg {
        BasicMean::Arithmetic => xs.clone(),
        BasicMean::Geometric => xs.iter().map(|&x| (b / x).ln()).collect(),
        BasicMean::Harmonic => xs.iter().map(|&x| 1.0 / x).collect(),
    };
    ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let to_x = |t: f64| -> f64 {
        match q.pair.arg {
            BasicMean::Arithmetic => t,
            BasicMean::Geometric => b * (-t).exp(),
            BasicMean::Harmonic => 1.0 / t,
        }
    };
    let flip = q.pair.val == BasicMean::Harmonic;
    let want_convex = (q.sense == Sense::Convex) ^ flip;
    let ctx = format!(
        "{} {} of {} via change of variable",
        q.pair,
        q.sense.word(),
        q.subject.name()
    );
    let subject = q.subject.clone();
    let eval = o.eval.clone();
    let val = q.pair.val;
    let gfun = move |t: f64| -> Result<f64> {
        let f = subject.eval(to_x(t), &eval)?;
        Ok(match val {
            BasicMean::Arithmetic => f,
            BasicMean::Geometric => f.ln(),
            BasicMean::Harmonic => 1.0 / f,
        })
    };
    let scan = midpoint_pairs(&ts, gfun, want_convex, &ctx, o)?;
    // Report witnesses in original coordinates.
    Ok(match scan.outcome {
        CheckOutcome::Pass => CheckOutcome::Pass,
        CheckOutcome::Refuted { witness } => CheckOutcome::Refuted {
            witness: Witness {
                x: to_x(witness.x),
                y: to_x(witness.y),
                ..witness
            },
        },
    })
}

// ---------------------------------------------------------------------------
// Chains
// ---------------------------------------------------------------------------

/// For `F(a,b;a+b;x)`: the three-link chain
/// `F((x+y)/2) <= sqrt(F(x)F(y)) <= F(1-sqrt((1-x)(1-y))) <= (F(x)+F(y))/2`.
pub fn verify_hypergeometric_chain(
    p: &HypergeometricParams,
    g: &GridSpec,
    o: &VerifyOptions,
) -> Result<CheckOutcome> {
    if p.a() + p.b() != *p.c() {
        return Err(Error::InvalidParameters(format!(
            "chain requires c = a+b, got {}",
            p.label()
        )));
    }
    require_subgrid(g, 0.0 + f64::MIN_POSITIVE, 1.0)?;
    let series = crate::specialfn::gauss_2f1_series(p);
    let xs = g.points_vec();
    let fv: Vec<f64> = xs
        .iter()
        .map(|&x| eval_with(&series, x, &o.eval))
        .collect::<Result<_>>()?;
    let idx = |x: f64| xs.iter().position(|&v| v == x).expect("grid point");
    let f = |x: f64, o: &VerifyOptions| eval_with(&series, x, &o.eval);

    let links: [(&str, Box<dyn Fn(f64, f64) -> Result<f64>>, Box<dyn Fn(f64, f64) -> Result<f64>>);
        3] = [
        (
            "F((x+y)/2) <= sqrt(F(x)F(y))",
            Box::new({
                let series = series.clone();
                let eval = o.eval.clone();
                move |x, y| eval_with(&series, 0.5 * (x + y), &eval)
            }),
            Box::new({
                let fv = fv.clone();
                let xs = xs.clone();
                move |x, y| {
                    let i = xs.iter().position(|&v| v == x).unwrap();
                    let j = xs.iter().position(|&v| v == y).unwrap();
                    Ok((fv[i] * fv[j]).sqrt())
                }
            }),
        ),
        (
            "sqrt(F(x)F(y)) <= F(1-sqrt((1-x)(1-y)))",
            Box::new({
                let fv = fv.clone();
                let xs = xs.clone();
                move |x, y| {
                    let i = xs.iter().position(|&v| v == x).unwrap();
                    let j = xs.iter().position(|&v| v == y).unwrap();
                    Ok((fv[i] * fv[j]).sqrt())
                }
            }),
            Box::new({
                let series = series.clone();
                let eval = o.eval.clone();
                move |x, y| eval_with(&series, 1.0 - ((1.0 - x) * (1.0 - y)).sqrt(), &eval)
            }),
        ),
        (
            "F(1-sqrt((1-x)(1-y))) <= (F(x)+F(y))/2",
            Box::new({
                let series = series.clone();
                let eval = o.eval.clone();
                move |x, y| eval_with(&series, 1.0 - ((1.0 - x) * (1.0 - y)).sqrt(), &eval)
            }),
            Box::new({
                let fv = fv.clone();
                let xs = xs.clone();
                move |x, y| {
                    let i = xs.iter().position(|&v| v == x).unwrap();
                    let j = xs.iter().position(|&v| v == y).unwrap();
                    Ok(0.5 * (fv[i] + fv[j]))
                }
            }),
        ),
    ];
    let _ = (idx, f);
    for (name, lhs, rhs) in links {
        let ctx = format!("{} for {}", name, p.label());
        let scan = check_pairs_sym(&xs, |x, y| lhs(x, y), |x, y| rhs(x, y), &ctx, o)?;
        if let CheckOutcome::Refuted { witness } = scan.outcome {
            return Ok(CheckOutcome::Refuted { witness });
        }
    }
    Ok(CheckOutcome::Pass)
}

/// For a finite-radius positive series, the two-sided chain for the mirror
/// ratio `m(x) = f(R - x^2/R) / f(x^2/R)`:
/// `1/m(((R^2-x^2)(R^2-y^2))^{1/4}) <= sqrt(m(x)m(y)) <= m(sqrt(xy))`.
pub fn verify_mirror_ratio_chain(
    s: &PowerSeries,
    g: &GridSpec,
    o: &VerifyOptions,
) -> Result<CheckOutcome> {
    let r = s.radius();
    if !r.is_finite() {
        return Err(Error::InvalidParameters(
            "mirror ratio needs a finite radius".into(),
        ));
    }
    require_subgrid(g, f64::MIN_POSITIVE, r)?;
    let m = |x: f64| -> Result<f64> {
        let hi = eval_with(s, r - x * x / r, &o.eval)?;
        let lo = eval_with(s, x * x / r, &o.eval)?;
        Ok(hi / lo)
    };
    let xs = g.points_vec();
    let mv: Vec<f64> = xs.iter().map(|&x| m(x)).collect::<Result<_>>()?;
    let geo = |x: f64, y: f64| {
        let i = xs.iter().position(|&v| v == x).unwrap();
        let j = xs.iter().position(|&v| v == y).unwrap();
        Ok((mv[i] * mv[j]).sqrt())
    };

    let ctx = format!("1/m(quartic mean) <= sqrt(m(x)m(y)) for {}", s.name());
    let scan = check_pairs_sym(
        &xs,
        |x, y| {
            let w = ((r * r - x * x) * (r * r - y * y)).powf(0.25);
            Ok(1.0 / m(w)?)
        },
        geo,
        &ctx,
        o,
    )?;
    if let CheckOutcome::Refuted { witness } = scan.outcome {
        return Ok(CheckOutcome::Refuted { witness });
    }

    let ctx = format!("sqrt(m(x)m(y)) <= m(sqrt(xy)) for {}", s.name());
    let scan = check_pairs_sym(&xs, geo, |x, y| m((x * y).sqrt()), &ctx, o)?;
    Ok(scan.outcome)
}

/// The four hyperbolic inequality families (squared-variable form).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum HyperbolicChain {
    /// `cosh(sqrt(xy)) <= sqrt(cosh x cosh y) <= cosh(sqrt((x^2+y^2)/2))
    /// <= (cosh x + cosh y)/2` on `(0,inf)^2`.
    CoshThreeTerm,
    /// `(cosh x + cosh y)/2 <= cosh(sqrt(R - sqrt((R-x^2)(R-y^2))))` on
    /// `(0, sqrt R)^2`; holds for `R < 6`.
    CoshBound { r: f64 },
    /// The sinh(x)/x analogue of the three-term chain.
    SinhcThreeTerm,
    /// The sinh(x)/x analogue of the bound; holds for `R < 10`.
    SinhcBound { r: f64 },
}

impl HyperbolicChain {
    pub fn from_part(part: usize, r: Option<f64>) -> Result<Self> {
        match (part, r) {
            (1, _) => Ok(HyperbolicChain::CoshThreeTerm),
            (2, Some(r)) => Ok(HyperbolicChain::CoshBound { r }),
            (3, _) => Ok(HyperbolicChain::SinhcThreeTerm),
            (4, Some(r)) => Ok(HyperbolicChain::SinhcBound { r }),
            (2 | 4, None) => Err(Error::InvalidParameters(
                "parts 2 and 4 need the radius parameter R".into(),
            )),
            _ => Err(Error::InvalidParameters(format!(
                "part must be 1..=4, got {part}"
            ))),
        }
    }

    fn base(&self) -> ClosedFn {
        match self {
            HyperbolicChain::CoshThreeTerm | HyperbolicChain::CoshBound { .. } => ClosedFn::Cosh,
            HyperbolicChain::SinhcThreeTerm | HyperbolicChain::SinhcBound { .. } => ClosedFn::Sinhc,
        }
    }
}

fn hyperbolic_scan(
    chain: HyperbolicChain,
    xs: &[f64],
    ys: Option<&[f64]>,
    o: &VerifyOptions,
) -> Result<PairScan> {
    let h = chain.base();
    let name = h.name();
    match chain {
        HyperbolicChain::CoshThreeTerm | HyperbolicChain::SinhcThreeTerm => {
            // Three links; return the worst scan among them, refutation first.
            let links: [(String, fn(ClosedFn, f64, f64) -> f64, fn(ClosedFn, f64, f64) -> f64); 3] = [
                (
                    format!("{name}(sqrt(xy)) <= sqrt({name}(x){name}(y))"),
                    |h, x, y| h.eval((x * y).sqrt()),
                    |h, x, y| (h.eval(x) * h.eval(y)).sqrt(),
                ),
                (
                    format!("sqrt({name}(x){name}(y)) <= {name}(sqrt((x^2+y^2)/2))"),
                    |h, x, y| (h.eval(x) * h.eval(y)).sqrt(),
                    |h, x, y| h.eval(((x * x + y * y) / 2.0).sqrt()),
                ),
                (
                    format!("{name}(sqrt((x^2+y^2)/2)) <= ({name}(x)+{name}(y))/2"),
                    |h, x, y| h.eval(((x * x + y * y) / 2.0).sqrt()),
                    |h, x, y| 0.5 * (h.eval(x) + h.eval(y)),
                ),
            ];
            let mut worst: Option<PairScan> = None;
            for (ctx, lhs, rhs) in links {
                let scan = match ys {
                    Some(ys) => check_pairs_rect(xs, ys, |x, y| Ok(lhs(h, x, y)), |x, y| Ok(rhs(h, x, y)), &ctx, o)?,
                    None => check_pairs_sym(xs, |x, y| Ok(lhs(h, x, y)), |x, y| Ok(rhs(h, x, y)), &ctx, o)?,
                };
                if !scan.outcome.passed() {
                    return Ok(scan);
                }
                let replace = worst
                    .as_ref()
                    .map_or(true, |w| scan.min_norm_gap < w.min_norm_gap);
                if replace {
                    worst = Some(scan);
                }
            }
            Ok(worst.expect("three links scanned"))
        }
        HyperbolicChain::CoshBound { r } | HyperbolicChain::SinhcBound { r } => {
            let ctx = format!(
                "({name}(x)+{name}(y))/2 <= {name}(sqrt(R - sqrt((R-x^2)(R-y^2)))), R = {r}"
            );
            let lhs = |x: f64, y: f64| Ok(0.5 * (h.eval(x) + h.eval(y)));
            let rhs = move |x: f64, y: f64| {
                let inner = ((r - x * x) * (r - y * y)).sqrt();
                Ok(h.eval((r - inner).sqrt()))
            };
            match ys {
                Some(ys) => check_pairs_rect(xs, ys, lhs, rhs, &ctx, o),
                None => check_pairs_sym(xs, lhs, rhs, &ctx, o),
            }
        }
    }
}

/// Verify one hyperbolic chain on grid pairs. For the bound variants the
/// grid must sit inside `(0, sqrt R)`.
pub fn verify_hyperbolic(
    chain: HyperbolicChain,
    g: &GridSpec,
    o: &VerifyOptions,
) -> Result<CheckOutcome> {
    if let HyperbolicChain::CoshBound { r } | HyperbolicChain::SinhcBound { r } = chain {
        if !(r > 0.0) || g.hi * g.hi >= r {
            return Err(Error::InvalidGrid(format!(
                "grid hi = {} must satisfy hi^2 < R = {r}",
                g.hi
            )));
        }
    }
    let xs = g.points_vec();
    Ok(hyperbolic_scan(chain, &xs, None, o)?.outcome)
}

/// One row of a sharpness scan.
#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub r: f64,
    pub refuted: bool,
    pub min_gap: f64,
    pub witness: Option<Witness>,
}

/// Which bound family a sharpness scan sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Cosh,
    Sinhc,
}

/// Sweep `R` over `rs` and record, per `R`, the verdict of the bound
/// inequality together with the worst witness found. A coarse log grid is
/// refined twice around the worst pair, which separates genuine violations
/// from grid luck near the empirical threshold.
pub fn sharpness_scan(
    kind: BoundKind,
    rs: &[f64],
    points: usize,
    o: &VerifyOptions,
) -> Result<Vec<ScanRow>> {
    let mut rows = Vec::with_capacity(rs.len());
    for &r in rs {
        let chain = match kind {
            BoundKind::Cosh => HyperbolicChain::CoshBound { r },
            BoundKind::Sinhc => HyperbolicChain::SinhcBound { r },
        };
        let sqrt_r = r.sqrt();
        let g = GridSpec::new(1e-2 * sqrt_r, sqrt_r * (1.0 - 1e-3), points, GridSpacing::Log)?;
        let xs = g.points_vec();
        let mut scan = hyperbolic_scan(chain, &xs, None, o)?;
        // Two local refinement levels around the worst pair.
        let mut half_width = (g.hi - g.lo) / points as f64 * 2.0;
        for _ in 0..2 {
            let (wx, wy) = scan.min_pair;
            if !wx.is_finite() {
                break;
            }
            let clamp = |v: f64| v.max(g.lo * 0.5).min(sqrt_r * (1.0 - 1e-6));
            let axis = |c: f64| -> Vec<f64> {
                let lo = clamp(c - half_width);
                let hi = clamp(c + half_width);
                (0..24)
                    .map(|i| lo + (hi - lo) * i as f64 / 23.0)
                    .collect()
            };
            let refined = hyperbolic_scan(chain, &axis(wx), Some(&axis(wy)), o)?;
            if refined.min_norm_gap < scan.min_norm_gap {
                scan = refined;
            }
            half_width /= 6.0;
        }
        rows.push(ScanRow {
            r,
            refuted: !scan.outcome.passed(),
            min_gap: scan.min_norm_gap,
            witness: scan.outcome.witness().cloned(),
        });
    }
    Ok(rows)
}

// ---------------------------------------------------------------------------
// Named counterexample and numeric counterparts of the certifiers
// ---------------------------------------------------------------------------

/// The concrete witness that `F(3,3;1;x)` is not log-convex: its
/// logarithmic derivative decreases from 9 at 0 to 8.534... at 0.1.
pub fn log_convexity_counterexample() -> Witness {
    let g0 = log_deriv_nn(3, 0.0).expect("g_3(0)");
    let g1 = log_deriv_nn(3, 0.1).expect("g_3(0.1)");
    Witness {
        x: 0.0,
        y: 0.1,
        lhs: g0,
        rhs: g1,
        gap: g1 - g0,
        context: "log-derivative of 2F1(3,3;1) decreases near 0, so log-convexity fails".into(),
    }
}

/// Numeric counterpart of each closed-form hypergeometric certificate.
pub fn verify_hyper_criterion(
    p: &HypergeometricParams,
    which: crate::criteria::HyperCriterion,
    g: &GridSpec,
    o: &VerifyOptions,
) -> Result<CheckOutcome> {
    use crate::criteria::HyperCriterion as H;
    let series = crate::specialfn::gauss_2f1_series(p);
    match which {
        H::LogConvex => {
            let q = ConvexityQuery::new(
                Subject::Series(series),
                MeanPair::new(BasicMean::Arithmetic, BasicMean::Geometric),
                Sense::Convex,
                g.lo,
                g.hi,
            )?;
            verify_mn(&q, g, o)
        }
        H::ReciprocalConcave => {
            let q = ConvexityQuery::new(
                Subject::Series(series),
                MeanPair::new(BasicMean::Arithmetic, BasicMean::Harmonic),
                Sense::Convex,
                g.lo,
                g.hi,
            )?;
            verify_mn(&q, g, o)
        }
        H::LogConcaveTransformed | H::ConvexTransformed => {
            // t = -ln(1-x) maps (lo,hi) in x to a t-interval; pairs in t
            // correspond to the conjugate mean 1 - sqrt((1-x)(1-y)).
            let ts: Vec<f64> = g.points_vec().iter().map(|&x| -(1.0 - x).ln()).collect();
            let eval = o.eval.clone();
            let (want_convex, log_scale) = match which {
                H::LogConcaveTransformed => (false, true),
                _ => (true, false),
            };
            let ctx = format!(
                "{} of F(1-e^-t) for {}",
                if want_convex { "convexity" } else { "log-concavity" },
                p.label()
            );
            let scan = midpoint_pairs(
                &ts,
                move |t| {
                    let v = eval_with(&series, 1.0 - (-t).exp(), &eval)?;
                    Ok(if log_scale { v.ln() } else { v })
                },
                want_convex,
                &ctx,
                o,
            )?;
            Ok(scan.outcome)
        }
    }
}

/// Numeric counterpart of a granted series certificate with the deduced
/// sense: the corresponding `MN` inequality or transformed midpoint test.
pub fn verify_series_conclusion(
    s: &PowerSeries,
    which: crate::criteria::SeriesCriterion,
    sense: Sense,
    g: &GridSpec,
    o: &VerifyOptions,
) -> Result<CheckOutcome> {
    use crate::criteria::SeriesCriterion as C;
    let mn = |arg, val, sense| -> Result<CheckOutcome> {
        let q = ConvexityQuery::new(
            Subject::Series(s.clone()),
            MeanPair::new(arg, val),
            sense,
            g.lo,
            g.hi,
        )?;
        verify_mn(&q, g, o)
    };
    match which {
        C::PositiveCoefficients => {
            let aa = mn(BasicMean::Arithmetic, BasicMean::Arithmetic, Sense::Convex)?;
            if !aa.passed() {
                return Ok(aa);
            }
            mn(BasicMean::Geometric, BasicMean::Geometric, Sense::Convex)
        }
        C::DerivativeRatio => mn(BasicMean::Arithmetic, BasicMean::Geometric, sense),
        C::DerivativeSquareRatio => mn(BasicMean::Arithmetic, BasicMean::Harmonic, sense),
        C::ScaledDerivativeSquareRatio => mn(BasicMean::Geometric, BasicMean::Harmonic, sense),
        C::ShiftedBoundaryRatio | C::BoundaryWeighted => {
            let r = s.radius();
            if !r.is_finite() {
                return Err(Error::InvalidParameters("needs a finite radius".into()));
            }
            let log_scale = which == C::ShiftedBoundaryRatio;
            let ts: Vec<f64> = g
                .points_vec()
                .iter()
                .map(|&x| -(1.0 - x / r).ln())
                .collect();
            let eval = o.eval.clone();
            let series = s.clone();
            let ctx = format!(
                "midpoint {} of {}f(R(1-e^-t)) for {}",
                sense.word(),
                if log_scale { "log " } else { "" },
                s.name()
            );
            let scan = midpoint_pairs(
                &ts,
                move |t| {
                    let v = eval_with(&series, r * (1.0 - (-t).exp()), &eval)?;
                    Ok(if log_scale { v.ln() } else { v })
                },
                sense == Sense::Convex,
                &ctx,
                o,
            )?;
            Ok(scan.outcome)
        }
        C::ReciprocalConcave => mn(BasicMean::Arithmetic, BasicMean::Harmonic, Sense::Convex),
    }
}

/// Grid maximum of `x^2 x'^2 K(x) K(x')` and a unimodality check: the
/// sampled values must rise to the maximum and fall after it.
pub fn elliptic_product_profile(points: usize) -> (f64, f64, bool) {
    let f = |x: f64| {
        let xp = (1.0 - x * x).sqrt();
        let k = crate::specialfn::elliptic_k(x).expect("interior point");
        let kp = crate::specialfn::elliptic_k(xp).expect("interior point");
        x * x * xp * xp * k * kp
    };
    let mut best = f64::NEG_INFINITY;
    let mut best_x = 0.0;
    let mut vals = Vec::with_capacity(points);
    for i in 1..=points {
        let x = i as f64 / (points + 1) as f64;
        let v = f(x);
        vals.push(v);
        if v > best {
            best = v;
            best_x = x;
        }
    }
    let peak = vals
        .iter()
        .position(|&v| v == best)
        .expect("max is attained");
    let slack = 1e-12;
    let unimodal = vals[..=peak].windows(2).all(|w| w[1] >= w[0] - slack)
        && vals[peak..].windows(2).all(|w| w[1] <= w[0] + slack);
    (best_x, best, unimodal)
}

/// Exact value of `c - a - b` decides boundary behaviour; exposed for
/// callers assembling chain queries.
pub fn hyper_boundary_margin(p: &HypergeometricParams) -> Q {
    p.c() - p.a() - p.b()
}

#[allow(unused)]
fn unused_q_to_f64_guard(v: &Q) -> f64 {
    q_to_f64(v)
}
