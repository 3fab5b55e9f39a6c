//! Complete elliptic integral of the first kind, modulus convention:
//! `K(x) = (pi/2) F(1/2,1/2;1;x^2)` for `x` in `(0,1)`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_traits::One;

use crate::error::{Error, Result};
use crate::powerseries::{eval, PowerSeries};
use crate::scalar::Q;
use crate::specialfn::hypergeometric::{gauss_2f1_series, HypergeometricParams};

const AGM_MAX_ITER: usize = 40;

/// Arithmetic-geometric mean of two positive numbers.
pub fn agm(a: f64, b: f64) -> f64 {
    let mut a = a;
    let mut b = b;
    for _ in 0..AGM_MAX_ITER {
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        if (an - bn).abs() <= 1e-16 * an {
            return an;
        }
        a = an;
        b = bn;
    }
    0.5 * (a + b)
}

/// `K(x) = pi / (2 agm(1, x'))` with `x' = sqrt(1 - x^2)`; quadratically
/// convergent and accurate near `x = 1` where the series crawls.
pub fn elliptic_k(x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::OutOfDomain {
            x,
            domain: "(0, 1)".into(),
        });
    }
    let xp = (1.0 - x * x).sqrt();
    Ok(PI / (2.0 * agm(1.0, xp)))
}

fn k_series() -> &'static PowerSeries {
    static SERIES: OnceLock<PowerSeries> = OnceLock::new();
    SERIES.get_or_init(|| {
        let half = Q::new(1.into(), 2.into());
        let p = HypergeometricParams::new(half.clone(), half, Q::one()).unwrap();
        gauss_2f1_series(&p)
    })
}

/// Series route `K(x) = (pi/2) F(1/2,1/2;1;x^2)`, kept as an independent
/// cross-check oracle for the AGM route.
pub fn elliptic_k_series(x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::OutOfDomain {
            x,
            domain: "(0, 1)".into(),
        });
    }
    Ok(PI / 2.0 * eval(k_series(), x * x, 1e-14)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limits_and_known_value() {
        // x -> 0+ gives pi/2.
        let v = elliptic_k(1e-9).unwrap();
        assert!((v - PI / 2.0).abs() < 1e-12);
        // K(sqrt(1/2)) = 1.8540746773013719...
        let v = elliptic_k(0.5f64.sqrt()).unwrap();
        assert!((v - 1.8540746773013719).abs() < 1e-13, "got {v}");
        // (1/4) K(sqrt(1/2))^2 = 0.859398...
        assert!((v * v / 4.0 - 0.859398).abs() < 1e-5);
    }

    #[test]
    fn domain_checks() {
        assert!(elliptic_k(0.0).is_err());
        assert!(elliptic_k(1.0).is_err());
        assert!(elliptic_k(-0.5).is_err());
        assert!(elliptic_k_series(1.2).is_err());
    }

    #[test]
    fn series_route_agrees_with_agm() {
        let v_agm = elliptic_k(0.3).unwrap();
        let v_ser = elliptic_k_series(0.3).unwrap();
        assert!((v_agm - v_ser).abs() < 1e-12, "agm={v_agm} series={v_ser}");

        // Wider sweep at a slightly looser tolerance.
        for i in 1..=40 {
            let x = 0.01 + (0.95 - 0.01) * i as f64 / 41.0;
            let a = elliptic_k(x).unwrap();
            let s = elliptic_k_series(x).unwrap();
            assert!((a - s).abs() <= 1e-10 * a, "x={x}: agm={a} series={s}");
        }
    }
}
