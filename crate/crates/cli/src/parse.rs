//! Function-spec mini-grammar:
//!
//! ```text
//! 2F1(a,b;c)  2F1(a,b;c;x)         Gauss hypergeometric
//! pFq(a1,..;b1,..)  pFq(..;..;x)   generalized hypergeometric
//! bessel(b=1,c=-1,p=-0.5)          Bessel-type series (optionally ;x)
//! K(x)                             complete elliptic integral, modulus x
//! legendre(n)  legendre(n; x)      Legendre polynomial
//! cosh sinh sinhc exp log1p arctan closed-form corpus (optionally (x))
//! series:FILE                      coefficient file
//! ```
//!
//! Parameters parse as exact rationals (`0.5`, `1/2`, `3`); the trailing
//! evaluation point parses as a float.

use std::fs;

use mnconvex::query::{ClosedFn, Subject};
use mnconvex::scalar::{parse_q, q_to_f64, Q};
use mnconvex::specialfn::{
    bessel_series, gauss_2f1_series, generalized_pfq_series, BesselParams,
    GeneralizedHypergeometricParams, HypergeometricParams,
};
use mnconvex::PowerSeries;

#[derive(Debug)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

type PResult<T> = Result<T, ParseError>;

fn perr<T>(msg: impl Into<String>) -> PResult<T> {
    Err(ParseError(msg.into()))
}

/// A parsed function spec, with the optional trailing evaluation point.
#[derive(Debug, Clone)]
pub enum FunctionSpec {
    TwoF1 { a: Q, b: Q, c: Q, x: Option<f64> },
    PFq { num: Vec<Q>, den: Vec<Q>, x: Option<f64> },
    Bessel { b: Q, c: Q, p: Q, x: Option<f64> },
    EllipticK { x: Option<f64> },
    Legendre { n: usize, x: Option<f64> },
    Closed { f: ClosedFn, x: Option<f64> },
    SeriesFile { path: String, x: Option<f64> },
}

fn parse_param(s: &str) -> PResult<Q> {
    parse_q(s).ok_or_else(|| ParseError(format!("cannot parse `{s}` as a rational parameter")))
}

fn parse_point(s: &str) -> PResult<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| ParseError(format!("cannot parse `{s}` as an evaluation point")))
}

fn split_args(spec: &str, name: &str) -> PResult<Option<String>> {
    let rest = &spec[name.len()..];
    if rest.is_empty() {
        return Ok(None);
    }
    if !(rest.starts_with('(') && rest.ends_with(')')) {
        return perr(format!("malformed argument list in `{spec}`"));
    }
    Ok(Some(rest[1..rest.len() - 1].to_string()))
}

pub fn parse_spec(input: &str) -> PResult<FunctionSpec> {
    let spec = input.trim();
    if let Some(path) = spec.strip_prefix("series:") {
        if path.is_empty() {
            return perr("series: needs a file path");
        }
        return Ok(FunctionSpec::SeriesFile {
            path: path.to_string(),
            x: None,
        });
    }

    let lower = spec.to_ascii_lowercase();
    let head = spec
        .find('(')
        .map(|i| lower[..i].to_string())
        .unwrap_or(lower.clone());

    match head.as_str() {
        "2f1" => {
            let args = split_args(spec, "2F1")
                .or_else(|_| split_args(spec, "2f1"))?
                .ok_or_else(|| ParseError("2F1 needs arguments: 2F1(a,b;c)".into()))?;
            let groups: Vec<&str> = args.split(';').collect();
            if !(groups.len() == 2 || groups.len() == 3) {
                return perr("2F1 takes 2F1(a,b;c) or 2F1(a,b;c;x)");
            }
            let ab: Vec<&str> = groups[0].split(',').collect();
            if ab.len() != 2 {
                return perr("2F1 needs exactly two numerator parameters");
            }
            Ok(FunctionSpec::TwoF1 {
                a: parse_param(ab[0])?,
                b: parse_param(ab[1])?,
                c: parse_param(groups[1])?,
                x: groups.get(2).map(|s| parse_point(s)).transpose()?,
            })
        }
        "pfq" => {
            let args = split_args(spec, &spec[..3])?
                .ok_or_else(|| ParseError("pFq needs arguments: pFq(a1,..;b1,..)".into()))?;
            let groups: Vec<&str> = args.split(';').collect();
            if !(groups.len() == 2 || groups.len() == 3) {
                return perr("pFq takes pFq(a1,..;b1,..) or pFq(a1,..;b1,..;x)");
            }
            let list = |s: &str| -> PResult<Vec<Q>> {
                s.split(',')
                    .map(str::trim)
                    .filter(|t| !t.is_empty())
                    .map(parse_param)
                    .collect()
            };
            Ok(FunctionSpec::PFq {
                num: list(groups[0])?,
                den: list(groups[1])?,
                x: groups.get(2).map(|s| parse_point(s)).transpose()?,
            })
        }
        "bessel" => {
            let args = split_args(spec, "bessel")?
                .ok_or_else(|| ParseError("bessel needs arguments: bessel(b=..,c=..,p=..)".into()))?;
            let groups: Vec<&str> = args.split(';').collect();
            if groups.len() > 2 {
                return perr("bessel takes bessel(b=..,c=..,p=..) or bessel(..;x)");
            }
            let (mut b, mut c, mut p) = (None, None, None);
            for kv in groups[0].split(',') {
                let Some((k, v)) = kv.split_once('=') else {
                    return perr(format!("bessel arguments are key=value, got `{kv}`"));
                };
                let v = parse_param(v)?;
                match k.trim() {
                    "b" => b = Some(v),
                    "c" => c = Some(v),
                    "p" => p = Some(v),
                    other => return perr(format!("unknown bessel parameter `{other}`")),
                }
            }
            match (b, c, p) {
                (Some(b), Some(c), Some(p)) => Ok(FunctionSpec::Bessel {
                    b,
                    c,
                    p,
                    x: groups.get(1).map(|s| parse_point(s)).transpose()?,
                }),
                _ => perr("bessel needs all three of b=, c=, p="),
            }
        }
        "k" => {
            let args = split_args(spec, &spec[..1])?;
            Ok(FunctionSpec::EllipticK {
                x: args.map(|s| parse_point(&s)).transpose()?,
            })
        }
        "legendre" => {
            let args = split_args(spec, "legendre")?
                .ok_or_else(|| ParseError("legendre needs a degree: legendre(n)".into()))?;
            let groups: Vec<&str> = args.split(';').collect();
            if groups.len() > 2 {
                return perr("legendre takes legendre(n) or legendre(n; x)");
            }
            let n: usize = groups[0]
                .trim()
                .parse()
                .map_err(|_| ParseError(format!("cannot parse degree `{}`", groups[0])))?;
            Ok(FunctionSpec::Legendre {
                n,
                x: groups.get(1).map(|s| parse_point(s)).transpose()?,
            })
        }
        "cosh" | "sinh" | "sinhc" | "exp" | "log1p" | "arctan" => {
            let f = match head.as_str() {
                "cosh" => ClosedFn::Cosh,
                "sinh" => ClosedFn::Sinh,
                "sinhc" => ClosedFn::Sinhc,
                "exp" => ClosedFn::Exp,
                "log1p" => ClosedFn::Log1p,
                _ => ClosedFn::Arctan,
            };
            let args = split_args(spec, &spec[..head.len()])?;
            Ok(FunctionSpec::Closed {
                f,
                x: args.map(|s| parse_point(&s)).transpose()?,
            })
        }
        other => perr(format!("unknown function `{other}`")),
    }
}

/// Load a coefficient file: header `radius=<value>`, then one coefficient
/// per line, decimal (float mode) or `p/q` / integer (exact mode). Blank
/// lines and `#` comments are ignored. Indices beyond the file are zero.
pub fn load_series_file(path: &str) -> PResult<PowerSeries> {
    let text = fs::read_to_string(path)
        .map_err(|e| ParseError(format!("cannot read `{path}`: {e}")))?;
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| ParseError(format!("`{path}` is empty")))?;
    let Some(rtext) = header.strip_prefix("radius=") else {
        return perr(format!("`{path}` must start with radius=<value>, got `{header}`"));
    };
    let radius = match rtext.trim() {
        "inf" | "infinity" => f64::INFINITY,
        v => v
            .parse::<f64>()
            .map_err(|_| ParseError(format!("bad radius `{v}`")))?,
    };
    if !(radius > 0.0) {
        return perr(format!("radius must be positive, got {radius}"));
    }

    let body: Vec<&str> = lines.collect();
    if body.is_empty() {
        return perr(format!("`{path}` has no coefficients"));
    }
    let exact_mode = body.iter().all(|l| !l.contains('.'));
    let name = format!("series:{path}");
    if exact_mode {
        let coeffs: Vec<Q> = body
            .iter()
            .map(|l| parse_param(l))
            .collect::<PResult<_>>()?;
        Ok(PowerSeries::from_exact_fn(name, radius, move |n| {
            coeffs.get(n).cloned().unwrap_or_else(|| Q::new(0.into(), 1.into()))
        }))
    } else {
        let coeffs: Vec<f64> = body
            .iter()
            .map(|l| {
                l.parse::<f64>()
                    .or_else(|_| parse_param(l).map(|q| q_to_f64(&q)))
                    .map_err(|_| ParseError(format!("bad coefficient `{l}`")))
            })
            .collect::<PResult<_>>()?;
        Ok(PowerSeries::from_float_fn(name, radius, move |n| {
            coeffs.get(n).copied().unwrap_or(0.0)
        }))
    }
}

impl FunctionSpec {
    pub fn embedded_point(&self) -> Option<f64> {
        match self {
            FunctionSpec::TwoF1 { x, .. }
            | FunctionSpec::PFq { x, .. }
            | FunctionSpec::Bessel { x, .. }
            | FunctionSpec::EllipticK { x }
            | FunctionSpec::Legendre { x, .. }
            | FunctionSpec::Closed { x, .. }
            | FunctionSpec::SeriesFile { x, .. } => *x,
        }
    }

    pub fn label(&self) -> String {
        match self {
            FunctionSpec::TwoF1 { a, b, c, .. } => format!("2F1({a},{b};{c})"),
            FunctionSpec::PFq { num, den, .. } => {
                let join = |v: &[Q]| {
                    v.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                };
                format!("pFq({};{})", join(num), join(den))
            }
            FunctionSpec::Bessel { b, c, p, .. } => format!("bessel(b={b},c={c},p={p})"),
            FunctionSpec::EllipticK { .. } => "K".into(),
            FunctionSpec::Legendre { n, .. } => format!("legendre({n})"),
            FunctionSpec::Closed { f, .. } => f.name().into(),
            FunctionSpec::SeriesFile { path, .. } => format!("series:{path}"),
        }
    }

    /// Convert to a verifiable subject. `K` and `legendre` are eval-only.
    pub fn to_subject(&self) -> PResult<Subject> {
        match self {
            FunctionSpec::TwoF1 { a, b, c, .. } => {
                let p = HypergeometricParams::new(a.clone(), b.clone(), c.clone())
                    .map_err(|e| ParseError(e.to_string()))?;
                Ok(Subject::Series(gauss_2f1_series(&p)))
            }
            FunctionSpec::PFq { num, den, .. } => {
                let p = GeneralizedHypergeometricParams::new(num.clone(), den.clone())
                    .map_err(|e| ParseError(e.to_string()))?;
                Ok(Subject::Series(generalized_pfq_series(&p)))
            }
            FunctionSpec::Bessel { b, c, p, .. } => {
                let params = BesselParams::new(b.clone(), c.clone(), p.clone());
                let s = bessel_series(&params).map_err(|e| ParseError(e.to_string()))?;
                Ok(Subject::Series(s))
            }
            FunctionSpec::Closed { f, .. } => Ok(Subject::Closed(*f)),
            FunctionSpec::SeriesFile { path, .. } => {
                Ok(Subject::Series(load_series_file(path)?))
            }
            FunctionSpec::EllipticK { .. } | FunctionSpec::Legendre { .. } => perr(format!(
                "`{}` is evaluation-only; certify/verify need a series or closed-form subject",
                self.label()
            )),
        }
    }
}
