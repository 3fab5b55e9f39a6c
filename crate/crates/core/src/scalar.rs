//! Exact rational scalars and the dual exact/float coefficient value.
//!
//! Coefficients are exact rationals whenever the generating parameters are
//! rational, and plain `f64` otherwise. [`Coeff`] carries one value of either
//! kind; mixed-kind arithmetic promotes to float.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number.
pub type Q = BigRational;

/// Build a rational from an integer pair.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Build a rational from an integer.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Exact conversion of a finite `f64` (every finite float is rational).
pub fn q_from_f64(x: f64) -> Option<Q> {
    Q::from_float(x)
}

/// Nearest `f64` to a rational, robust to numerators/denominators far
/// beyond the float range.
pub fn q_to_f64(r: &Q) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let nbits = r.numer().magnitude().bits() as i64;
    let dbits = r.denom().magnitude().bits() as i64;
    if nbits < 512 && dbits < 512 {
        // Both halves fit comfortably in f64 range.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        return n / d;
    }
    // Scale so the integer quotient carries ~96 significant bits, then
    // undo the scaling in the exponent.
    let k = 96 - (nbits - dbits);
    let scaled: BigInt = if k >= 0 {
        r.numer() << (k as usize)
    } else {
        r.numer() >> ((-k) as usize)
    };
    let quot = scaled / r.denom();
    let mantissa = quot.to_f64().unwrap_or(f64::NAN);
    if k > 2000 {
        // Value underflows f64 entirely.
        return if r.is_negative() { -0.0 } else { 0.0 };
    }
    if k < -2000 {
        return if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        };
    }
    // 2^-k may itself overflow/underflow; split the exponent.
    let half = (-k / 2) as i32;
    mantissa * 2f64.powi(half) * 2f64.powi(-k as i32 - half)
}

/// Parse `"3"`, `"-3/4"`, `"0.25"`, `"-1.5"` into an exact rational.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Q::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let neg = int_part.trim_start().starts_with('-');
        let i: BigInt = if int_part == "-" || int_part.is_empty() {
            BigInt::zero()
        } else {
            int_part.parse().ok()?
        };
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let f: BigInt = frac_part.parse().ok()?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let frac = Q::new(f, scale.clone());
        let int = Q::from_integer(i);
        return Some(if neg { int - frac } else { int + frac });
    }
    let n: BigInt = s.parse().ok()?;
    Some(Q::from_integer(n))
}

/// One series coefficient: exact rational or floating point.
#[derive(Clone, Debug, PartialEq)]
pub enum Coeff {
    Exact(Q),
    Float(f64),
}

impl Coeff {
    pub fn zero_exact() -> Self {
        Coeff::Exact(Q::zero())
    }

    pub fn one_exact() -> Self {
        Coeff::Exact(Q::one())
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Coeff::Exact(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Coeff::Exact(r) => q_to_f64(r),
            Coeff::Float(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&Q> {
        match self {
            Coeff::Exact(r) => Some(r),
            Coeff::Float(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Exact(r) => r.is_zero(),
            Coeff::Float(x) => *x == 0.0,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Coeff::Exact(r) => r.is_positive(),
            Coeff::Float(x) => *x > 0.0,
        }
    }

    /// Sign of `self - other` with kind-appropriate tie handling:
    /// exact pairs compare exactly, anything involving a float ties within
    /// `rel_tol` relative to the larger magnitude.
    pub fn cmp_with_tol(&self, other: &Coeff, rel_tol: f64) -> Ordering {
        match (self, other) {
            (Coeff::Exact(a), Coeff::Exact(b)) => a.cmp(b),
            _ => {
                let a = self.to_f64();
                let b = other.to_f64();
                let scale = a.abs().max(b.abs());
                if (a - b).abs() <= rel_tol * scale {
                    Ordering::Equal
                } else if a < b {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Exact(r) => write!(f, "{}", r),
            Coeff::Float(x) => write!(f, "{}", x),
        }
    }
}

macro_rules! coeff_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Coeff {
            type Output = Coeff;
            fn $method(self, rhs: Coeff) -> Coeff {
                match (self, rhs) {
                    (Coeff::Exact(a), Coeff::Exact(b)) => Coeff::Exact(a.$method(b)),
                    (a, b) => Coeff::Float(a.to_f64().$method(b.to_f64())),
                }
            }
        }
        impl<'a> $trait<&'a Coeff> for &'a Coeff {
            type Output = Coeff;
            fn $method(self, rhs: &'a Coeff) -> Coeff {
                self.clone().$method(rhs.clone())
            }
        }
    };
}

coeff_binop!(Add, add);
coeff_binop!(Sub, sub);
coeff_binop!(Mul, mul);
coeff_binop!(Div, div);

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Exact(r) => Coeff::Exact(-r),
            Coeff::Float(x) => Coeff::Float(-x),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_q("3").unwrap(), qi(3));
        assert_eq!(parse_q("-3/4").unwrap(), q(-3, 4));
        assert_eq!(parse_q("0.25").unwrap(), q(1, 4));
        assert_eq!(parse_q("-1.5").unwrap(), q(-3, 2));
        assert_eq!(parse_q("1/3").unwrap(), q(1, 3));
        assert!(parse_q("").is_none());
        assert!(parse_q("1/0").is_none());
        assert!(parse_q("a.b").is_none());
    }

    #[test]
    fn to_f64_small() {
        assert_eq!(q_to_f64(&q(1, 2)), 0.5);
        assert_eq!(q_to_f64(&q(-7, 4)), -1.75);
        assert_eq!(q_to_f64(&Q::zero()), 0.0);
    }

    #[test]
    fn to_f64_huge() {
        // (2n)! style denominators far beyond f64 range.
        let mut fac = Q::one();
        for k in 1..=400i64 {
            fac = fac * qi(k);
        }
        let tiny = Q::one() / fac.clone();
        let v = q_to_f64(&tiny);
        // 400! ~ 10^868, far below f64 range => 0
        assert_eq!(v, 0.0);

        // Ratio of two huge numbers of comparable size stays accurate.
        let r = fac.clone() * qi(3) / (fac * qi(7));
        let v = q_to_f64(&r);
        assert!((v - 3.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn coeff_arithmetic_promotes() {
        let a = Coeff::Exact(q(1, 2));
        let b = Coeff::Float(0.25);
        match a.clone() + b {
            Coeff::Float(v) => assert_eq!(v, 0.75),
            _ => panic!("expected float"),
        }
        match a.clone() * Coeff::Exact(q(2, 3)) {
            Coeff::Exact(r) => assert_eq!(r, q(1, 3)),
            _ => panic!("expected exact"),
        }
    }

    #[test]
    fn cmp_with_tol_ties() {
        let a = Coeff::Float(1.0);
        let b = Coeff::Float(1.0 + 1e-16);
        assert_eq!(a.cmp_with_tol(&b, 1e-15), Ordering::Equal);
        let c = Coeff::Float(1.0 + 1e-12);
        assert_eq!(a.cmp_with_tol(&c, 1e-15), Ordering::Less);
        // Exact mode has zero tie tolerance.
        let d = Coeff::Exact(q(1, 1));
        let e = Coeff::Exact(Q::one() + Q::new(BigInt::one(), BigInt::from(10u64).pow(30)));
        assert_eq!(d.cmp_with_tol(&e, 1e-15), Ordering::Less);
    }
}
