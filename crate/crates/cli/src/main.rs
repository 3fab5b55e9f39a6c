//! Command-line surface: evaluate the function corpus, run the coefficient
//! certifiers and the numeric verifiers, sweep sharpness scans, and execute
//! the reproduction suite.
//!
//! Exit codes: 0 pass/proven, 1 inapplicable or failed repro case,
//! 2 parse error or unknown case, 3 domain error, 4 refuted (with witness).

mod config;
mod parse;

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::Config;
use mnconvex::criteria::{
    certify_bessel_part, certify_hypergeometric, certify_mf, certify_pfq, certify_series,
    BesselCriterion, Certificate, CertifyOptions, HyperCriterion, SeriesCriterion, Verdict,
};
use mnconvex::jsonfmt;
use mnconvex::numcheck::{
    sharpness_scan, verify_by_transform, verify_derivative_monotone, verify_hyper_criterion,
    verify_mn, verify_series_conclusion, BoundKind, CheckOutcome, GridSpec, GridSpacing, ScanRow,
    VerifyOptions, Witness,
};
use mnconvex::powerseries::eval_with;
use mnconvex::query::{ConvexityQuery, MeanPair, Sense};
use mnconvex::repro;
use mnconvex::specialfn::{
    bessel_series, elliptic_k, gauss_2f1_series, generalized_pfq_series, legendre, BesselParams,
    GeneralizedHypergeometricParams, HypergeometricParams,
};
use mnconvex::EvalParams;
use parse::{parse_spec, FunctionSpec};

#[derive(Parser)]
#[command(
    name = "mnconvex",
    about = "Mean-convexity certificates and numeric verification for Maclaurin series",
    version
)]
struct Cli {
    /// Evaluation tolerance (absolute) for series summation.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Prefix horizon for coefficient sequence checks.
    #[arg(long, global = true)]
    horizon: Option<usize>,
    /// Points per grid axis for numeric verification.
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write witness rows (x,y,lhs,rhs,gap) to this CSV file.
    #[arg(long, global = true, value_name = "FILE")]
    csv: Option<PathBuf>,
    /// key=value config file; flags override config values.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a function spec at a point, e.g. `eval "2F1(0.5,0.5;1;0.25)"`.
    Eval {
        spec: String,
        /// Evaluation point (alternative to embedding it in the spec).
        x: Option<f64>,
        /// Write x,f(x) columns over a range to this file.
        #[arg(long, value_name = "FILE")]
        emit_plot: Option<PathBuf>,
        #[arg(long)]
        lo: Option<f64>,
        #[arg(long)]
        hi: Option<f64>,
        /// Sample count for --emit-plot.
        #[arg(long)]
        points: Option<usize>,
    },
    /// Run a coefficient criterion and print the certificate.
    Certify {
        spec: String,
        /// Criterion name; for 2F1: log-convex, log-concave-transformed,
        /// convex-transformed, reciprocal-concave; for series files:
        /// positive-coefficients, derivative-ratio, ..., or mf.
        #[arg(long)]
        which: Option<String>,
        /// Bessel certificate part (1..=4); all four when omitted.
        #[arg(long)]
        part: Option<usize>,
        /// Radius parameter for criteria that need one.
        #[arg(long = "R", alias = "r")]
        r: Option<f64>,
        /// On an inapplicable verdict, hunt for a numeric refutation.
        #[arg(long)]
        refute: bool,
    },
    /// Sample the defining MN-inequality (or a derivative/transform route).
    Verify {
        spec: String,
        /// Mean pair, two of A/G/H, e.g. AG.
        #[arg(long)]
        pair: String,
        /// convex or concave.
        #[arg(long)]
        sense: String,
        #[arg(long)]
        lo: Option<f64>,
        #[arg(long)]
        hi: Option<f64>,
        /// mn (defining inequality), derivative, or transform.
        #[arg(long, default_value = "mn")]
        route: String,
        /// Grid spacing: log or uniform.
        #[arg(long)]
        spacing: Option<String>,
        /// Skip the off-diagonal strictness check.
        #[arg(long)]
        weak: bool,
    },
    /// Sweep the sharpness of a bound over a range of R values.
    Scan {
        /// cosh-bound or sinhc-bound.
        target: String,
        #[arg(long)]
        r_from: f64,
        #[arg(long)]
        r_to: f64,
        #[arg(long, default_value_t = 9)]
        r_steps: usize,
    },
    /// Run a reproduction case by id, or `all`.
    Repro { case: String },
}

struct CliError {
    code: u8,
    msg: String,
}

impl CliError {
    fn parse(msg: impl Into<String>) -> Self {
        CliError {
            code: 2,
            msg: msg.into(),
        }
    }
}

impl From<parse::ParseError> for CliError {
    fn from(e: parse::ParseError) -> Self {
        CliError::parse(e.0)
    }
}

impl From<mnconvex::Error> for CliError {
    fn from(e: mnconvex::Error) -> Self {
        use mnconvex::Error::*;
        let code = match e {
            OutOfDomain { .. } | NoConvergenceDetected { .. } | NonPositiveInput(_) | Eval(_) => 3,
            _ => 2,
        };
        CliError {
            code,
            msg: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}

/// Flag/config/default resolution for the numeric knobs.
struct Knobs {
    tol: f64,
    horizon: usize,
    grid_points: usize,
    spacing: GridSpacing,
    lo: Option<f64>,
    hi: Option<f64>,
}

impl Knobs {
    fn assemble(cli: &Cli) -> Result<Self, CliError> {
        let cfg = match &cli.config {
            Some(path) => Config::load(path).map_err(CliError::parse)?,
            None => Config::default(),
        };
        let spacing = match cfg.spacing.as_deref() {
            Some("uniform") => GridSpacing::Uniform,
            _ => GridSpacing::Log,
        };
        Ok(Knobs {
            tol: cli.tol.or(cfg.tol).unwrap_or(1e-12),
            horizon: cli.horizon.or(cfg.horizon).unwrap_or(1000),
            grid_points: cli.grid.or(cfg.grid_points).unwrap_or(64),
            spacing,
            lo: cfg.lo,
            hi: cfg.hi,
        })
    }

    fn verify_options(&self, weak: bool) -> VerifyOptions {
        let mut o = VerifyOptions::default();
        o.eval.tol = self.tol;
        o.check_strict = !weak;
        o
    }

    /// Interval resolution: explicit flags beat config beats defaults
    /// derived from the subject's domain.
    fn interval(&self, lo: Option<f64>, hi: Option<f64>, radius: f64) -> (f64, f64) {
        let hi = hi
            .or(self.hi)
            .unwrap_or_else(|| if radius.is_finite() { 0.9 * radius } else { 3.0 });
        let lo = lo.or(self.lo).unwrap_or(hi / 300.0);
        (lo, hi)
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let knobs = Knobs::assemble(&cli)?;
    match &cli.cmd {
        Cmd::Eval {
            spec,
            x,
            emit_plot,
            lo,
            hi,
            points,
        } => cmd_eval(&cli, &knobs, spec, *x, emit_plot.clone(), *lo, *hi, *points),
        Cmd::Certify {
            spec,
            which,
            part,
            r,
            refute,
        } => cmd_certify(&cli, &knobs, spec, which.as_deref(), *part, *r, *refute),
        Cmd::Verify {
            spec,
            pair,
            sense,
            lo,
            hi,
            route,
            spacing,
            weak,
        } => cmd_verify(
            &cli,
            &knobs,
            spec,
            pair,
            sense,
            *lo,
            *hi,
            route,
            spacing.as_deref(),
            *weak,
        ),
        Cmd::Scan {
            target,
            r_from,
            r_to,
            r_steps,
        } => cmd_scan(&cli, &knobs, target, *r_from, *r_to, *r_steps),
        Cmd::Repro { case } => cmd_repro(&cli, case),
    }
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

fn eval_point(spec: &FunctionSpec, x: f64, tol: f64) -> Result<(f64, &'static str), CliError> {
    let params = EvalParams {
        tol,
        ..EvalParams::default()
    };
    Ok(match spec {
        FunctionSpec::TwoF1 { a, b, c, .. } => {
            let p = HypergeometricParams::new(a.clone(), b.clone(), c.clone())?;
            (eval_with(&gauss_2f1_series(&p), x, &params)?, "series")
        }
        FunctionSpec::PFq { num, den, .. } => {
            let p = GeneralizedHypergeometricParams::new(num.clone(), den.clone())?;
            (eval_with(&generalized_pfq_series(&p), x, &params)?, "series")
        }
        FunctionSpec::Bessel { b, c, p, .. } => {
            let params_b = BesselParams::new(b.clone(), c.clone(), p.clone());
            (eval_with(&bessel_series(&params_b)?, x, &params)?, "series")
        }
        FunctionSpec::EllipticK { .. } => (elliptic_k(x)?, "agm"),
        FunctionSpec::Legendre { n, .. } => (legendre(*n).eval_f64(x), "closed-form"),
        FunctionSpec::Closed { f, .. } => (f.eval(x), "closed-form"),
        FunctionSpec::SeriesFile { path, .. } => {
            let s = parse::load_series_file(path)?;
            (eval_with(&s, x, &params)?, "series")
        }
    })
}

#[derive(serde::Serialize)]
struct EvalReport<'a> {
    spec: &'a str,
    x: f64,
    value: f64,
    route: &'static str,
}

#[allow(clippy::too_many_arguments)]
fn cmd_eval(
    cli: &Cli,
    knobs: &Knobs,
    raw: &str,
    x_arg: Option<f64>,
    emit_plot: Option<PathBuf>,
    lo: Option<f64>,
    hi: Option<f64>,
    points: Option<usize>,
) -> Result<u8, CliError> {
    let spec = parse_spec(raw)?;
    if let Some(plot) = emit_plot {
        let radius = match &spec {
            FunctionSpec::EllipticK { .. } => 1.0,
            FunctionSpec::Legendre { .. } => f64::INFINITY,
            other => other
                .to_subject()
                .map(|s| s.radius())
                .unwrap_or(f64::INFINITY),
        };
        let (lo, hi) = knobs.interval(lo, hi, radius);
        let n = points.unwrap_or(256).max(2);
        let mut out = String::from("x,fx\n");
        for i in 0..n {
            let x = lo + (hi - lo) * i as f64 / (n - 1) as f64;
            let (v, _) = eval_point(&spec, x, knobs.tol)?;
            out.push_str(&format!("{:.16e},{:.16e}\n", x, v));
        }
        fs::write(&plot, out).map_err(|e| CliError::parse(format!("cannot write plot: {e}")))?;
        println!("wrote {} samples to {}", n, plot.display());
        return Ok(0);
    }

    let x = spec.embedded_point().or(x_arg).ok_or_else(|| {
        CliError::parse("eval needs an evaluation point (in the spec or as an argument)")
    })?;
    let (value, route) = eval_point(&spec, x, knobs.tol)?;
    if cli.json {
        let label = spec.label();
        println!(
            "{}",
            jsonfmt::to_string(&EvalReport {
                spec: &label,
                x,
                value,
                route,
            })
        );
    } else {
        println!("{}({}) = {}  [route: {}]", spec.label(), x, value, route);
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// certify
// ---------------------------------------------------------------------------

fn certificate_exit(cert: &Certificate) -> u8 {
    match cert.verdict {
        Verdict::ProvenByCriterion | Verdict::PrefixChecked { .. } => 0,
        Verdict::Inapplicable { .. } => 1,
        Verdict::Refuted { .. } => 4,
    }
}

fn print_certificate(cli: &Cli, cert: &Certificate) {
    if cli.json {
        println!("{}", jsonfmt::to_string(cert));
    } else {
        println!("subject:   {}", cert.subject);
        println!("criterion: {}", cert.criterion);
        println!("verdict:   {:?}", cert.verdict);
        for h in &cert.hypotheses {
            println!("  [{}] {}", if h.held { "ok" } else { "--" }, h.condition);
        }
        if let Some(h) = cert.horizon {
            println!("horizon:   {h}");
        }
    }
}

fn escalate_to_refutation(cert: &mut Certificate, outcome: CheckOutcome) {
    if let CheckOutcome::Refuted { witness } = outcome {
        cert.verdict = Verdict::Refuted { witness };
    }
}

fn cmd_certify(
    cli: &Cli,
    knobs: &Knobs,
    raw: &str,
    which: Option<&str>,
    part: Option<usize>,
    r: Option<f64>,
    refute: bool,
) -> Result<u8, CliError> {
    let spec = parse_spec(raw)?;
    let opts = CertifyOptions {
        horizon: knobs.horizon,
    };
    let o = knobs.verify_options(true);

    match &spec {
        FunctionSpec::TwoF1 { a, b, c, .. } => {
            let p = HypergeometricParams::new(a.clone(), b.clone(), c.clone())?;
            let criterion = HyperCriterion::parse(which.unwrap_or("log-convex"))?;
            let mut cert = certify_hypergeometric(&p, criterion);
            if refute && matches!(cert.verdict, Verdict::Inapplicable { .. }) {
                let g = GridSpec::new(0.01, 0.95, knobs.grid_points, knobs.spacing)?;
                escalate_to_refutation(&mut cert, verify_hyper_criterion(&p, criterion, &g, &o)?);
            }
            print_certificate(cli, &cert);
            maybe_write_witness_csv(cli, &cert)?;
            Ok(certificate_exit(&cert))
        }
        FunctionSpec::Bessel { b, c, p, .. } => {
            let params = BesselParams::new(b.clone(), c.clone(), p.clone());
            params.validate()?;
            let parts: Vec<BesselCriterion> = match part {
                Some(n) => vec![BesselCriterion::from_part(n)?],
                None => BesselCriterion::ALL.to_vec(),
            };
            let needs_r = parts.contains(&BesselCriterion::TransformedConcave);
            if needs_r && r.is_none() {
                return Err(CliError::parse(
                    "the transformed-concave certificate needs --R <radius>",
                ));
            }
            let r = r.unwrap_or(1.0);
            let mut certs: Vec<Certificate> = parts
                .iter()
                .map(|&w| certify_bessel_part(&params, r, w))
                .collect();
            if refute {
                for (cert, &w) in certs.iter_mut().zip(parts.iter()) {
                    if w == BesselCriterion::TransformedConcave
                        && matches!(cert.verdict, Verdict::Inapplicable { .. })
                    {
                        let series = bessel_series(&params)?.with_radius(r)?;
                        let g =
                            GridSpec::new(0.01 * r, 0.95 * r, knobs.grid_points, knobs.spacing)?;
                        escalate_to_refutation(
                            cert,
                            verify_series_conclusion(
                                &series,
                                SeriesCriterion::BoundaryWeighted,
                                Sense::Concave,
                                &g,
                                &o,
                            )?,
                        );
                    }
                }
            }
            if cli.json && certs.len() > 1 {
                println!("{}", jsonfmt::to_string(&certs));
            } else {
                for cert in &certs {
                    print_certificate(cli, cert);
                }
            }
            for cert in &certs {
                maybe_write_witness_csv(cli, cert)?;
            }
            Ok(certs.iter().map(certificate_exit).max().unwrap_or(0))
        }
        FunctionSpec::PFq { num, den, .. } => {
            let p = GeneralizedHypergeometricParams::new(num.clone(), den.clone())?;
            let cert = certify_pfq(&p);
            print_certificate(cli, &cert);
            Ok(certificate_exit(&cert))
        }
        FunctionSpec::SeriesFile { path, .. } => {
            let series = parse::load_series_file(path)?;
            let cert = match which.unwrap_or("derivative-ratio") {
                "mf" => certify_mf(&series, &opts)?,
                name => certify_series(&series, SeriesCriterion::parse(name)?, &opts)?,
            };
            print_certificate(cli, &cert);
            Ok(certificate_exit(&cert))
        }
        FunctionSpec::EllipticK { .. }
        | FunctionSpec::Legendre { .. }
        | FunctionSpec::Closed { .. } => Err(CliError::parse(format!(
            "`{}` has no coefficient criterion; certify needs a series subject",
            spec.label()
        ))),
    }
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

#[derive(serde::Serialize)]
struct VerifyReport<'a> {
    subject: String,
    pair: String,
    sense: &'a str,
    lo: f64,
    hi: f64,
    grid: usize,
    route: &'a str,
    #[serde(flatten)]
    outcome: CheckOutcome,
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    cli: &Cli,
    knobs: &Knobs,
    raw: &str,
    pair: &str,
    sense: &str,
    lo: Option<f64>,
    hi: Option<f64>,
    route: &str,
    spacing: Option<&str>,
    weak: bool,
) -> Result<u8, CliError> {
    let spec = parse_spec(raw)?;
    let subject = spec.to_subject()?;
    let pair: MeanPair = pair.parse()?;
    let sense: Sense = sense.parse()?;
    let radius = subject.radius();
    let guard = if radius.is_finite() {
        radius * 0.999
    } else {
        radius
    };
    let (lo, hi) = knobs.interval(lo, hi, radius);
    if hi >= guard {
        return Err(CliError::from(mnconvex::Error::InvalidParameters(format!(
            "interval hi = {hi} must stay below the guarded radius {guard}"
        ))));
    }
    let spacing = match spacing {
        Some("uniform") => GridSpacing::Uniform,
        Some("log") | None => knobs.spacing,
        Some(other) => return Err(CliError::parse(format!("unknown spacing `{other}`"))),
    };
    let g = GridSpec::new(lo, hi, knobs.grid_points, spacing)?;
    let o = knobs.verify_options(weak);
    let query = ConvexityQuery::new(subject, pair, sense, lo, hi)?;
    let outcome = match route {
        "mn" => verify_mn(&query, &g, &o)?,
        "derivative" => verify_derivative_monotone(&query, &g, &o)?,
        "transform" => verify_by_transform(&query, &g, &o)?,
        other => return Err(CliError::parse(format!("unknown route `{other}`"))),
    };

    if cli.json {
        println!(
            "{}",
            jsonfmt::to_string(&VerifyReport {
                subject: query.subject.name(),
                pair: pair.to_string(),
                sense: sense.word(),
                lo,
                hi,
                grid: g.points,
                route,
                outcome: outcome.clone(),
            })
        );
    } else {
        match &outcome {
            CheckOutcome::Pass => println!(
                "{} is {}-{} on ({}, {}): Pass [{} route, {} points]",
                query.subject.name(),
                pair,
                sense.word(),
                lo,
                hi,
                route,
                g.points
            ),
            CheckOutcome::Refuted { witness } => {
                println!(
                    "{} is {}-{} on ({}, {}): REFUTED",
                    query.subject.name(),
                    pair,
                    sense.word(),
                    lo,
                    hi
                );
                print_witness(witness);
            }
        }
    }
    if let Some(w) = outcome.witness() {
        write_witness_csv(cli, std::slice::from_ref(w))?;
    }
    Ok(if outcome.passed() { 0 } else { 4 })
}

fn print_witness(w: &Witness) {
    println!(
        "witness: x = {}, y = {}, lhs = {}, rhs = {}, gap = {}",
        w.x, w.y, w.lhs, w.rhs, w.gap
    );
    println!("context: {}", w.context);
}

fn maybe_write_witness_csv(cli: &Cli, cert: &Certificate) -> Result<(), CliError> {
    if let Verdict::Refuted { witness } = &cert.verdict {
        write_witness_csv(cli, std::slice::from_ref(witness))?;
    }
    Ok(())
}

fn write_witness_csv(cli: &Cli, witnesses: &[Witness]) -> Result<(), CliError> {
    let Some(path) = &cli.csv else {
        return Ok(());
    };
    let mut f = fs::File::create(path)
        .map_err(|e| CliError::parse(format!("cannot write {}: {e}", path.display())))?;
    writeln!(f, "x,y,lhs,rhs,gap").ok();
    for w in witnesses {
        writeln!(
            f,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            w.x, w.y, w.lhs, w.rhs, w.gap
        )
        .ok();
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

fn cmd_scan(
    cli: &Cli,
    knobs: &Knobs,
    target: &str,
    r_from: f64,
    r_to: f64,
    r_steps: usize,
) -> Result<u8, CliError> {
    let kind = match target {
        "cosh-bound" => BoundKind::Cosh,
        "sinhc-bound" => BoundKind::Sinhc,
        other => {
            return Err(CliError::parse(format!(
                "unknown scan target `{other}` (cosh-bound | sinhc-bound)"
            )))
        }
    };
    if !(r_from > 0.0 && r_from <= r_to && r_steps >= 1) {
        return Err(CliError::parse(
            "need 0 < --r-from <= --r-to and --r-steps >= 1",
        ));
    }
    let rs: Vec<f64> = (0..r_steps)
        .map(|i| {
            if r_steps == 1 {
                r_from
            } else {
                r_from + (r_to - r_from) * i as f64 / (r_steps - 1) as f64
            }
        })
        .collect();
    let o = knobs.verify_options(true);
    let rows: Vec<ScanRow> = sharpness_scan(kind, &rs, knobs.grid_points.max(32), &o)?;
    if cli.json {
        println!("{}", jsonfmt::to_string(&rows));
    } else {
        for row in &rows {
            match &row.witness {
                Some(w) => println!(
                    "R = {:>8}: REFUTED  (worst gap {:.3e} at x = {:.4}, y = {:.4})",
                    row.r, w.gap, w.x, w.y
                ),
                None => println!(
                    "R = {:>8}: pass     (min normalized gap {:.3e})",
                    row.r, row.min_gap
                ),
            }
        }
    }
    let witnesses: Vec<Witness> = rows.iter().filter_map(|r| r.witness.clone()).collect();
    write_witness_csv(cli, &witnesses)?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// repro
// ---------------------------------------------------------------------------

fn print_case(report: &repro::CaseReport) {
    println!(
        "case {}: {}",
        report.id,
        if report.pass { "PASS" } else { "FAIL" }
    );
    for c in &report.checks {
        let status = if c.pass { "ok" } else { "FAIL" };
        match (c.expected, c.computed, c.tolerance) {
            (Some(e), Some(v), Some(t)) => println!(
                "  [{status}] {}: expected {e} got {v} (tol {t}, {})",
                c.name, c.source
            ),
            _ => {
                let detail = c.detail.as_deref().unwrap_or("");
                println!("  [{status}] {}: {} ({})", c.name, detail, c.source)
            }
        }
    }
}

fn cmd_repro(cli: &Cli, case: &str) -> Result<u8, CliError> {
    if case == "all" {
        let suite = repro::run_all()?;
        if cli.json {
            println!("{}", jsonfmt::to_string(&suite));
        } else {
            for c in &suite.cases {
                print_case(c);
            }
            println!("suite: {}", if suite.pass { "PASS" } else { "FAIL" });
        }
        return Ok(if suite.pass { 0 } else { 1 });
    }
    let report = repro::run(case)?;
    if cli.json {
        println!("{}", jsonfmt::to_string(&report));
    } else {
        print_case(&report);
    }
    Ok(if report.pass { 0 } else { 1 })
}
