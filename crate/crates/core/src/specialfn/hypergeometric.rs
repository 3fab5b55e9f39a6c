//! Gauss hypergeometric series `F(a,b;c;x)` and the generalized `pFq`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::powerseries::{eval, PowerSeries};
use crate::scalar::{q_to_f64, Q};

/// Positive parameter triple for `F(a,b;c;x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HypergeometricParams {
    a: Q,
    b: Q,
    c: Q,
}

impl HypergeometricParams {
    pub fn new(a: Q, b: Q, c: Q) -> Result<Self> {
        for (name, v) in [("a", &a), ("b", &b), ("c", &c)] {
            if !v.is_positive() {
                return Err(Error::InvalidParameters(format!(
                    "hypergeometric parameter {name} = {v} must be positive"
                )));
            }
        }
        Ok(HypergeometricParams { a, b, c })
    }

    /// Exact conversion from floats (every finite float is rational).
    pub fn from_f64(a: f64, b: f64, c: f64) -> Result<Self> {
        let conv = |x: f64, name: &str| {
            Q::from_float(x).ok_or_else(|| {
                Error::InvalidParameters(format!("parameter {name} = {x} is not finite"))
            })
        };
        Self::new(conv(a, "a")?, conv(b, "b")?, conv(c, "c")?)
    }

    pub fn a(&self) -> &Q {
        &self.a
    }
    pub fn b(&self) -> &Q {
        &self.b
    }
    pub fn c(&self) -> &Q {
        &self.c
    }

    pub fn a_f64(&self) -> f64 {
        q_to_f64(&self.a)
    }
    pub fn b_f64(&self) -> f64 {
        q_to_f64(&self.b)
    }
    pub fn c_f64(&self) -> f64 {
        q_to_f64(&self.c)
    }

    pub fn label(&self) -> String {
        format!("2F1({},{};{})", self.a, self.b, self.c)
    }
}

/// Series for `F(a,b;c;x)` with coefficient recurrence
/// `a_{n+1} = a_n (a+n)(b+n) / ((c+n)(n+1))`, radius 1. The series is
/// flagged divergent at the boundary when `c <= a+b`.
pub fn gauss_2f1_series(p: &HypergeometricParams) -> PowerSeries {
    let s = hyp2f1_series_any(p.a.clone(), p.b.clone(), p.c.clone());
    if p.c <= &p.a + &p.b {
        s.with_boundary_divergence()
    } else {
        s
    }
}

/// Internal builder that admits non-positive `a`, `b` (still `c > 0`),
/// needed for contiguous-parameter shifts like `F(a-1,b;c;x)`.
pub(crate) fn hyp2f1_series_any(a: Q, b: Q, c: Q) -> PowerSeries {
    assert!(c.is_positive(), "denominator parameter must stay positive");
    let name = format!("2F1({},{};{})", a, b, c);
    let (af, bf, cf) = (q_to_f64(&a), q_to_f64(&b), q_to_f64(&c));
    PowerSeries::from_dual_recurrence(
        name,
        1.0,
        Q::one(),
        move |n, t| {
            let nq = Q::from_integer(n.into());
            t * (&a + &nq) * (&b + &nq) / ((&c + &nq) * (nq + Q::one()))
        },
        move |n, t| {
            let nf = n as f64;
            t * (af + nf) * (bf + nf) / ((cf + nf) * (nf + 1.0))
        },
    )
}

/// Positive parameter lists for `pFq(a_1..a_p; b_1..b_q; x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralizedHypergeometricParams {
    num: Vec<Q>,
    den: Vec<Q>,
}

impl GeneralizedHypergeometricParams {
    pub fn new(num: Vec<Q>, den: Vec<Q>) -> Result<Self> {
        for v in num.iter().chain(den.iter()) {
            if !v.is_positive() {
                return Err(Error::InvalidParameters(format!(
                    "pFq parameter {v} must be positive"
                )));
            }
        }
        if num.len() > den.len() + 1 {
            return Err(Error::InvalidParameters(format!(
                "p = {} > q + 1 = {}: the series has zero radius of convergence",
                num.len(),
                den.len() + 1
            )));
        }
        Ok(GeneralizedHypergeometricParams { num, den })
    }

    pub fn num(&self) -> &[Q] {
        &self.num
    }
    pub fn den(&self) -> &[Q] {
        &self.den
    }
    pub fn p(&self) -> usize {
        self.num.len()
    }
    pub fn q(&self) -> usize {
        self.den.len()
    }

    pub fn label(&self) -> String {
        let join = |v: &[Q]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("pFq({};{})", join(&self.num), join(&self.den))
    }
}

/// Series `1 + sum_n prod(a_k,n)/prod(b_k,n) x^n/n!`.
///
/// Radius 1 when `p = q+1` (flagged divergent at the boundary when
/// `sum b - sum a <= 0`), infinite when `p <= q` (the term-ratio limit is 0).
pub fn generalized_pfq_series(p: &GeneralizedHypergeometricParams) -> PowerSeries {
    let name = p.label();
    let num = p.num.clone();
    let den = p.den.clone();
    let numf: Vec<f64> = num.iter().map(q_to_f64).collect();
    let denf: Vec<f64> = den.iter().map(q_to_f64).collect();
    let radius = if p.p() == p.q() + 1 { 1.0 } else { f64::INFINITY };

    let s = PowerSeries::from_dual_recurrence(
        name,
        radius,
        Q::one(),
        move |n, t| {
            let nq = Q::from_integer(n.into());
            let mut v = t.clone();
            for a in &num {
                v = v * (a + &nq);
            }
            for b in &den {
                v = v / (b + &nq);
            }
            v / (nq + Q::one())
        },
        move |n, t| {
            let nf = n as f64;
            let mut v = t;
            for a in &numf {
                v *= a + nf;
            }
            for b in &denf {
                v /= b + nf;
            }
            v / (nf + 1.0)
        },
    );

    if p.p() == p.q() + 1 {
        let sum_num: Q = p.num.iter().cloned().fold(Q::zero(), |acc, x| acc + x);
        let sum_den: Q = p.den.iter().cloned().fold(Q::zero(), |acc, x| acc + x);
        if sum_den - sum_num <= Q::zero() {
            return s.with_boundary_divergence();
        }
    }
    s
}

/// `x(1-x) F'(x)` computed through the contiguous relation
/// `x(1-x)F'(x) = (c-a) F(a-1,b;c;x) + (a-c+bx) F(a,b;c;x)`.
pub fn contiguous_derivative(p: &HypergeometricParams, x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::OutOfDomain {
            x,
            domain: "(0, 1)".into(),
        });
    }
    let f = gauss_2f1_series(p);
    let f_am = hyp2f1_series_any(&p.a - Q::one(), p.b.clone(), p.c.clone());
    let (a, b, c) = (p.a_f64(), p.b_f64(), p.c_f64());
    let tol = 1e-13;
    let fx = eval(&f, x, tol)?;
    let fax = eval(&f_am, x, tol)?;
    Ok((c - a) * fax + (a - c + b * x) * fx)
}

/// The symmetric product `x(1-x) F(x) F(1-x)` for a conjugate
/// hypergeometric pair; increasing on `(0, 1/2]` and decreasing on
/// `[1/2, 1)` when `a, b` lie in `(0,1)` with `a < c`, `b < c`.
#[derive(Clone, Debug)]
pub struct ConjugatePair {
    series: PowerSeries,
}

impl ConjugatePair {
    pub fn new(p: &HypergeometricParams) -> Result<Self> {
        let one = Q::one();
        if !(p.a < one && p.b < one && p.a < p.c && p.b < p.c) {
            return Err(Error::InvalidParameters(format!(
                "conjugate product needs a, b in (0,1) with a < c and b < c; got {}",
                p.label()
            )));
        }
        Ok(ConjugatePair {
            series: gauss_2f1_series(p),
        })
    }

    /// `x(1-x) F(x) F(1-x)`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(x > 0.0 && x < 1.0) {
            return Err(Error::OutOfDomain {
                x,
                domain: "(0, 1)".into(),
            });
        }
        let tol = 1e-13;
        let fx = eval(&self.series, x, tol)?;
        let f1x = eval(&self.series, 1.0 - x, tol)?;
        Ok(x * (1.0 - x) * fx * f1x)
    }
}

/// One-shot form of [`ConjugatePair::eval`].
pub fn conjugate_product(p: &HypergeometricParams, x: f64) -> Result<f64> {
    ConjugatePair::new(p)?.eval(x)
}
