//! Legendre polynomials with exact rational coefficients, and the closed
//! forms they give for `F(n,n;1;x)` and its logarithmic derivative.
//!
//! `F(n,n;1;x) = P_{n-1}(y) / (1-x)^n` with `y = (1+x)/(1-x)`, valid for
//! `-1 < x < 1/2` (which maps `y` into `(0,3)`, inside polynomial
//! exactness).

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{q, q_from_f64, q_to_f64, qi, Q};

/// Dense polynomial with exact rational coefficients, `coeffs[i]` on `x^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalPoly {
    coeffs: Vec<Q>,
}

impl RationalPoly {
    pub fn new(coeffs: Vec<Q>) -> Self {
        let mut p = RationalPoly { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        RationalPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        RationalPoly {
            coeffs: vec![Q::one()],
        }
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        RationalPoly {
            coeffs: vec![Q::zero(), Q::one()],
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn eval_exact(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + q_to_f64(c);
        }
        acc
    }

    pub fn derivative(&self) -> RationalPoly {
        if self.coeffs.len() <= 1 {
            return RationalPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| qi(i as i64) * c.clone())
            .collect();
        RationalPoly::new(coeffs)
    }

    pub fn scale(&self, s: &Q) -> RationalPoly {
        RationalPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul_x(&self) -> RationalPoly {
        if self.is_zero() {
            return RationalPoly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Q::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        RationalPoly::new(coeffs)
    }

    pub fn add(&self, other: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        RationalPoly::new(coeffs)
    }

    pub fn sub(&self, other: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        RationalPoly::new(coeffs)
    }
}

/// Legendre polynomial of degree `n`, exact coefficients via the
/// three-term recursion `(n+1) P_{n+1} = (2n+1) x P_n - n P_{n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LegendrePoly {
    n: usize,
    poly: RationalPoly,
}

impl LegendrePoly {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn poly(&self) -> &RationalPoly {
        &self.poly
    }

    pub fn eval_exact(&self, x: &Q) -> Q {
        self.poly.eval_exact(x)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.poly.eval_f64(x)
    }

    pub fn derivative(&self) -> RationalPoly {
        self.poly.derivative()
    }
}

/// Build `P_n` exactly.
pub fn legendre(n: usize) -> LegendrePoly {
    let mut prev = RationalPoly::one(); // P_0
    if n == 0 {
        return LegendrePoly { n, poly: prev };
    }
    let mut cur = RationalPoly::x(); // P_1
    for k in 1..n {
        let k = k as i64;
        // P_{k+1} = ((2k+1) x P_k - k P_{k-1}) / (k+1)
        let next = cur
            .mul_x()
            .scale(&qi(2 * k + 1))
            .sub(&prev.scale(&qi(k)))
            .scale(&(Q::one() / qi(k + 1)));
        prev = cur;
        cur = next;
    }
    LegendrePoly { n, poly: cur }
}

fn check_nn_domain(x: f64) -> Result<()> {
    if !(x > -1.0 && x < 0.5) {
        return Err(Error::OutOfDomain {
            x,
            domain: "(-1, 1/2)".into(),
        });
    }
    Ok(())
}

/// `F(n,n;1;x)` through the Legendre closed form, exact arithmetic.
pub fn hyp2f1_nn_exact(n: usize, x: &Q) -> Result<Q> {
    if n == 0 {
        return Err(Error::InvalidParameters("n must be at least 1".into()));
    }
    check_nn_domain(q_to_f64(x))?;
    let y = (Q::one() + x.clone()) / (Q::one() - x.clone());
    let p = legendre(n - 1).eval_exact(&y);
    let mut denom = Q::one();
    for _ in 0..n {
        denom = denom * (Q::one() - x.clone());
    }
    Ok(p / denom)
}

/// `F(n,n;1;x)` through the Legendre closed form (float entry point; the
/// input is converted exactly and evaluated rationally).
pub fn hyp2f1_nn(n: usize, x: f64) -> Result<f64> {
    let xq = q_from_f64(x)
        .ok_or_else(|| Error::InvalidParameters(format!("x = {x} is not finite")))?;
    Ok(q_to_f64(&hyp2f1_nn_exact(n, &xq)?))
}

/// Logarithmic derivative `g_n(x) = (d/dx) log F(n,n;1;x)` via
/// `g_n(x) = n/(1-x) + 2/(1-x)^2 * P'_{n-1}(y)/P_{n-1}(y)`, exact arithmetic.
pub fn log_deriv_nn_exact(n: usize, x: &Q) -> Result<Q> {
    if n < 2 {
        return Err(Error::InvalidParameters("n must be at least 2".into()));
    }
    check_nn_domain(q_to_f64(x))?;
    let one = Q::one();
    let y = (&one + x) / (&one - x);
    let p = legendre(n - 1);
    let pv = p.eval_exact(&y);
    if pv.is_zero() {
        return Err(Error::Eval(format!(
            "log derivative has a pole: P_{}({}) = 0",
            n - 1,
            y
        )));
    }
    let dv = p.derivative().eval_exact(&y);
    let om = &one - x;
    Ok(qi(n as i64) / om.clone() + qi(2) / (om.clone() * om) * dv / pv)
}

/// Float entry point for [`log_deriv_nn_exact`].
pub fn log_deriv_nn(n: usize, x: f64) -> Result<f64> {
    let xq = q_from_f64(x)
        .ok_or_else(|| Error::InvalidParameters(format!("x = {x} is not finite")))?;
    Ok(q_to_f64(&log_deriv_nn_exact(n, &xq)?))
}

/// Closed value of `g_n'(0)`: `-n^4/2 + n^3 + n^2/2`, negative for `n >= 3`.
pub fn log_deriv_nn_slope_at_zero(n: usize) -> Q {
    let n = qi(n as i64);
    let n2 = &n * &n;
    let n3 = &n2 * &n;
    let n4 = &n2 * &n2;
    -n4 * q(1, 2) + n3 + n2 * q(1, 2)
}
