//! Generalized-normalized Bessel series of the first kind:
//! `f(x) = sum (-c/4)^n / (n! (k,n)) x^n` with `k = p + (b+1)/2`.
//!
//! For `c < 0`, `k > 0` all coefficients are positive and the radius is
//! infinite (the term ratio `(-c/4)/((n+1)(k+n))` tends to 0).

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::powerseries::PowerSeries;
use crate::scalar::{q, q_to_f64, Q};

#[derive(Clone, Debug, PartialEq)]
pub struct BesselParams {
    b: Q,
    c: Q,
    p: Q,
}

impl BesselParams {
    pub fn new(b: Q, c: Q, p: Q) -> Self {
        BesselParams { b, c, p }
    }

    pub fn from_f64(b: f64, c: f64, p: f64) -> Result<Self> {
        let conv = |x: f64, name: &str| {
            BigRational::from_float(x).ok_or_else(|| {
                Error::InvalidParameters(format!("parameter {name} = {x} is not finite"))
            })
        };
        Ok(BesselParams {
            b: conv(b, "b")?,
            c: conv(c, "c")?,
            p: conv(p, "p")?,
        })
    }

    pub fn b(&self) -> &Q {
        &self.b
    }
    pub fn c(&self) -> &Q {
        &self.c
    }
    pub fn p(&self) -> &Q {
        &self.p
    }

    /// Derived order `k = p + (b+1)/2`.
    pub fn k(&self) -> Q {
        &self.p + (&self.b + Q::one()) * q(1, 2)
    }

    /// The sign conditions `c < 0`, `k > 0` required by every certificate.
    pub fn validate(&self) -> Result<()> {
        if !self.c.is_negative() {
            return Err(Error::InvalidParameters(format!(
                "bessel parameter c = {} must be negative",
                self.c
            )));
        }
        if !self.k().is_positive() {
            return Err(Error::InvalidParameters(format!(
                "derived order k = {} must be positive",
                self.k()
            )));
        }
        Ok(())
    }

    pub fn label(&self) -> String {
        format!("bessel(b={},c={},p={})", self.b, self.c, self.p)
    }
}

/// Build the series; errors unless `c < 0` and `k > 0`.
pub fn bessel_series(params: &BesselParams) -> Result<PowerSeries> {
    params.validate()?;
    let k = params.k();
    let kf = q_to_f64(&k);
    let m = -&params.c * q(1, 4); // -c/4 > 0
    let mf = q_to_f64(&m);
    Ok(PowerSeries::from_dual_recurrence(
        params.label(),
        f64::INFINITY,
        Q::one(),
        move |n, t| {
            let nq = Q::from_integer(n.into());
            t * &m / ((&nq + Q::one()) * (&k + &nq))
        },
        move |n, t| {
            let nf = n as f64;
            t * mf / ((nf + 1.0) * (kf + nf))
        },
    ))
}
