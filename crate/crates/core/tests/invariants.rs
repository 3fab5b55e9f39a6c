//! Cross-module invariants: every granted certificate must survive its
//! independent numeric counterpart, verdicts must respect the mean-ordering
//! implication chains, and series derivatives must agree with finite
//! differences across the named corpus.

use mnconvex::criteria::{
    certify_bessel, certify_hypergeometric, certify_mf, certify_pfq, certify_series,
    CertifyOptions, HyperCriterion, SeriesCriterion, Verdict,
};
use mnconvex::numcheck::{
    verify_hyper_criterion, verify_mirror_ratio_chain, verify_mn, verify_series_conclusion,
    GridSpec, VerifyOptions,
};
use mnconvex::powerseries::{eval, eval_with};
use mnconvex::query::{ClosedFn, ConvexityQuery, MeanPair, Sense, Subject};
use mnconvex::scalar::{q, qi, Q};
use mnconvex::specialfn::{
    bessel_series, gauss_2f1_series, generalized_pfq_series, BesselParams,
    GeneralizedHypergeometricParams, HypergeometricParams,
};
use mnconvex::{EvalParams, PowerSeries};
use num_traits::One;

fn hp(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> HypergeometricParams {
    HypergeometricParams::new(q(a.0, a.1), q(b.0, b.1), q(c.0, c.1)).unwrap()
}

fn cosh_sqrt_series() -> PowerSeries {
    PowerSeries::from_dual_recurrence(
        "cosh(sqrt t)",
        f64::INFINITY,
        Q::one(),
        |n, a| {
            let m = 2 * n as i64;
            a / (qi(m + 1) * qi(m + 2))
        },
        |n, a| {
            let m = 2.0 * n as f64;
            a / ((m + 1.0) * (m + 2.0))
        },
    )
}

fn geometric_series() -> PowerSeries {
    PowerSeries::from_dual_recurrence("1/(1-x)", 1.0, Q::one(), |_, a| a.clone(), |_, a| a)
        .with_boundary_divergence()
}

/// Granted hypergeometric certificates never contradict the sampled
/// inequality they stand for.
#[test]
fn hypergeometric_certificates_are_sound() {
    let corpus = [
        hp((1, 2), (1, 2), (1, 1)),
        hp((1, 4), (3, 4), (3, 2)),
        hp((1, 1), (1, 1), (2, 1)),
        hp((1, 3), (1, 4), (3, 4)),
        hp((3, 1), (3, 1), (1, 1)),
    ];
    let g = GridSpec::new(0.05, 0.9, 24, mnconvex::numcheck::GridSpacing::Log).unwrap();
    let o = VerifyOptions::weak();
    for p in &corpus {
        for which in HyperCriterion::ALL {
            let cert = certify_hypergeometric(p, which);
            if cert.verdict.granted() {
                let outcome = verify_hyper_criterion(p, which, &g, &o).unwrap();
                assert!(
                    outcome.passed(),
                    "{} granted {:?} but the numeric check refutes it: {:?}",
                    p.label(),
                    which,
                    outcome
                );
            }
        }
    }
}

#[test]
fn bessel_certificates_are_sound() {
    let cosh_p = BesselParams::new(qi(1), qi(-1), q(-1, 2));
    let sinh_p = BesselParams::new(qi(1), qi(-1), q(1, 2));
    let o = VerifyOptions::weak();
    for (p, r) in [(cosh_p, 5.0f64), (sinh_p, 9.0)] {
        let series = bessel_series(&p).unwrap();
        let certs = certify_bessel(&p, r).unwrap();
        let g = GridSpec::new(0.05, 0.9 * r, 24, mnconvex::numcheck::GridSpacing::Log).unwrap();
        for cert in certs.iter().filter(|c| c.verdict.granted()) {
            let outcome = if cert.criterion.contains("gg-convex") {
                let q = ConvexityQuery::new(
                    Subject::Series(series.clone()),
                    "GG".parse().unwrap(),
                    Sense::Convex,
                    g.lo,
                    g.hi,
                )
                .unwrap();
                verify_mn(&q, &g, &o).unwrap()
            } else if cert.criterion.contains("ag-concave") {
                let q = ConvexityQuery::new(
                    Subject::Series(series.clone()),
                    "AG".parse().unwrap(),
                    Sense::Concave,
                    g.lo,
                    g.hi,
                )
                .unwrap();
                verify_mn(&q, &g, &o).unwrap()
            } else if cert.criterion.contains("aa-convex") {
                let q = ConvexityQuery::new(
                    Subject::Series(series.clone()),
                    "AA".parse().unwrap(),
                    Sense::Convex,
                    g.lo,
                    g.hi,
                )
                .unwrap();
                verify_mn(&q, &g, &o).unwrap()
            } else {
                let clamped = series.with_radius(r).unwrap();
                verify_series_conclusion(
                    &clamped,
                    SeriesCriterion::BoundaryWeighted,
                    Sense::Concave,
                    &g,
                    &o,
                )
                .unwrap()
            };
            assert!(outcome.passed(), "{}: {:?}", cert.criterion, outcome);
        }
    }
}

#[test]
fn pfq_certificates_are_sound() {
    let sets = [
        GeneralizedHypergeometricParams::new(vec![], vec![]).unwrap(),
        GeneralizedHypergeometricParams::new(vec![q(1, 2)], vec![Q::one()]).unwrap(),
        GeneralizedHypergeometricParams::new(vec![q(3, 4)], vec![]).unwrap(),
        GeneralizedHypergeometricParams::new(vec![qi(2)], vec![Q::one(), Q::one()]).unwrap(),
        GeneralizedHypergeometricParams::new(vec![], vec![Q::one()]).unwrap(),
    ];
    let o = VerifyOptions::weak();
    for p in &sets {
        let cert = certify_pfq(p);
        if !cert.verdict.granted() {
            continue;
        }
        let sense = if cert.criterion.contains("log-convex") {
            Sense::Convex
        } else {
            Sense::Concave
        };
        let series = generalized_pfq_series(p);
        let g = GridSpec::new(0.02, 0.93, 24, mnconvex::numcheck::GridSpacing::Log).unwrap();
        let query = ConvexityQuery::new(
            Subject::Series(series),
            "AG".parse().unwrap(),
            sense,
            g.lo,
            g.hi,
        )
        .unwrap();
        let outcome =
            mnconvex::numcheck::verify_derivative_monotone(&query, &g, &o).unwrap();
        assert!(outcome.passed(), "{}: {:?}", cert.criterion, outcome);
    }
}

#[test]
fn series_certificates_are_sound() {
    let o = VerifyOptions::weak();
    let opts = CertifyOptions { horizon: 200 };

    // cosh(sqrt t) clamped to (0,10): derivative ratio decreasing.
    let cosh10 = cosh_sqrt_series().with_radius(10.0).unwrap();
    let g = GridSpec::new(0.05, 9.0, 24, mnconvex::numcheck::GridSpacing::Log).unwrap();
    for which in [
        SeriesCriterion::PositiveCoefficients,
        SeriesCriterion::DerivativeRatio,
        SeriesCriterion::ShiftedBoundaryRatio,
        SeriesCriterion::BoundaryWeighted,
    ] {
        let cert = certify_series(&cosh10, which, &opts).unwrap();
        if !cert.verdict.granted() {
            continue;
        }
        let sense = if cert.criterion.contains("concave") {
            Sense::Concave
        } else {
            Sense::Convex
        };
        let outcome = verify_series_conclusion(&cosh10, which, sense, &g, &o).unwrap();
        assert!(outcome.passed(), "{} -> {:?}", cert.criterion, outcome);
    }

    // Geometric series: every certificate lands in the degenerate regime.
    let geo = geometric_series();
    let g = GridSpec::new(0.05, 0.9, 24, mnconvex::numcheck::GridSpacing::Log).unwrap();
    for which in [
        SeriesCriterion::PositiveCoefficients,
        SeriesCriterion::DerivativeRatio,
        SeriesCriterion::DerivativeSquareRatio,
        SeriesCriterion::ShiftedBoundaryRatio,
    ] {
        let cert = certify_series(&geo, which, &opts).unwrap();
        if !cert.verdict.granted() {
            continue;
        }
        // Constant sequences certify both weak senses; check the convex one.
        let sense = if cert.criterion.contains("-concave") && !cert.criterion.contains("convex") {
            Sense::Concave
        } else {
            Sense::Convex
        };
        let outcome = verify_series_conclusion(&geo, which, sense, &g, &o).unwrap();
        assert!(outcome.passed(), "{} -> {:?}", cert.criterion, outcome);
    }

    // 2F1(1/2,1/2;1): reciprocal concavity and the mirror chain.
    let f = gauss_2f1_series(&hp((1, 2), (1, 2), (1, 1)));
    let cert = certify_series(&f, SeriesCriterion::ReciprocalConcave, &opts).unwrap();
    assert!(cert.verdict.granted());
    let g = GridSpec::new(0.05, 0.9, 24, mnconvex::numcheck::GridSpacing::Log).unwrap();
    let outcome =
        verify_series_conclusion(&f, SeriesCriterion::ReciprocalConcave, Sense::Convex, &g, &o)
            .unwrap();
    assert!(outcome.passed());

    let cert = certify_mf(&f, &opts).unwrap();
    assert!(cert.verdict.granted());
    let g = GridSpec::new(0.15, 0.85, 16, mnconvex::numcheck::GridSpacing::Log).unwrap();
    let outcome = verify_mirror_ratio_chain(&f, &g, &o).unwrap();
    assert!(outcome.passed(), "{outcome:?}");
}

/// The nine verdicts respect H <= G <= A: convexity with a harder value
/// mean implies it with an easier one, arguments reversed, and for
/// increasing subjects a harder argument mean implies an easier one.
#[test]
fn verdicts_respect_mean_ordering() {
    let corpus = [
        ClosedFn::Cosh,
        ClosedFn::Sinh,
        ClosedFn::Exp,
        ClosedFn::Log1p,
        ClosedFn::Arctan,
    ];
    let g = GridSpec::new(0.05, 3.5, 24, mnconvex::numcheck::GridSpacing::Log).unwrap();
    let o = VerifyOptions::weak();
    let means = ["A", "G", "H"];
    for f in corpus {
        for sense in [Sense::Convex, Sense::Concave] {
            let mut pass = std::collections::HashMap::new();
            for arg in means {
                for val in means {
                    let pair: MeanPair = format!("{arg}{val}").parse().unwrap();
                    let q =
                        ConvexityQuery::new(Subject::Closed(f), pair, sense, g.lo, g.hi).unwrap();
                    pass.insert((arg, val), verify_mn(&q, &g, &o).unwrap().passed());
                }
            }
            // Value-mean chains: convex H => G => A, concave A => G => H.
            let val_chain = match sense {
                Sense::Convex => [("H", "G"), ("G", "A")],
                Sense::Concave => [("A", "G"), ("G", "H")],
            };
            for arg in means {
                for (stronger, weaker) in val_chain {
                    assert!(
                        !pass[&(arg, stronger)] || pass[&(arg, weaker)],
                        "{}: {arg}{stronger} {:?} passed but {arg}{weaker} failed",
                        f.name(),
                        sense
                    );
                }
            }
            // All corpus functions are increasing: AN => GN => HN (convex).
            if sense == Sense::Convex {
                for val in means {
                    for (stronger, weaker) in [("A", "G"), ("G", "H")] {
                        assert!(
                            !pass[&(stronger, val)] || pass[&(weaker, val)],
                            "{}: {stronger}{val} passed but {weaker}{val} failed",
                            f.name()
                        );
                    }
                }
            }
        }
    }
}

/// Series derivatives agree with centered finite differences of the sum.
#[test]
fn derivative_matches_finite_differences_across_corpus() {
    let named: Vec<PowerSeries> = vec![
        gauss_2f1_series(&hp((1, 2), (1, 2), (1, 1))),
        gauss_2f1_series(&hp((1, 4), (3, 4), (3, 2))),
        gauss_2f1_series(&hp((3, 1), (3, 1), (1, 1))),
        generalized_pfq_series(&GeneralizedHypergeometricParams::new(vec![], vec![Q::one()]).unwrap()),
        bessel_series(&BesselParams::new(qi(1), qi(-1), q(-1, 2))).unwrap(),
        mnconvex::means::mean_ratio_series().0,
        mnconvex::means::mean_ratio_series().1,
    ];
    for s in &named {
        let r = if s.radius().is_finite() { s.radius() } else { 10.0 };
        let h = 1e-5 * r;
        let d = s.derivative();
        for i in 1..=16 {
            let x = 0.8 * r * i as f64 / 17.0;
            let fd = (eval(s, x + h, 1e-13).unwrap() - eval(s, x - h, 1e-13).unwrap()) / (2.0 * h);
            let dv = eval(&d, x, 1e-13).unwrap();
            assert!(
                (fd - dv).abs() <= 1e-6 * dv.abs().max(1e-12),
                "{} at x={x}: fd={fd} deriv={dv}",
                s.name()
            );
        }
    }
}

/// Ratio monotonicity forces function monotonicity: the certified AG
/// reading of the derivative-over-function ratio shows up in the sampled
/// log-derivative of 2F1(1/2,1/2;1).
#[test]
fn ratio_lemma_on_hypergeometric_log_derivative() {
    let f = gauss_2f1_series(&hp((1, 2), (1, 2), (1, 1)));
    let d = f.derivative();
    let mut prev = -f64::INFINITY;
    for i in 1..=64 {
        let x = 0.9 * i as f64 / 65.0;
        let ratio = eval(&d, x, 1e-13).unwrap() / eval(&f, x, 1e-13).unwrap();
        assert!(ratio >= prev * (1.0 - 1e-9) || ratio >= prev, "x={x}");
        prev = ratio;
    }
}

/// The symmetric conjugate product rises to x = 1/2 and falls after it.
#[test]
fn conjugate_product_is_unimodal() {
    use mnconvex::specialfn::ConjugatePair;
    for p in [hp((1, 2), (1, 2), (1, 1)), hp((1, 3), (1, 4), (3, 4))] {
        let cp = ConjugatePair::new(&p).unwrap();
        let n = 64usize;
        let mut vals = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let x = 0.001 + (0.999 - 0.001) * i as f64 / n as f64;
            vals.push(cp.eval(x).unwrap());
        }
        let mid = n / 2;
        for i in 0..mid {
            assert!(
                vals[i + 1] >= vals[i] - 1e-12 * vals[i].abs(),
                "{}: not increasing at grid index {i}",
                p.label()
            );
        }
        for i in mid..n {
            assert!(
                vals[i + 1] <= vals[i] + 1e-12 * vals[i].abs(),
                "{}: not decreasing at grid index {i}",
                p.label()
            );
        }
    }
}

/// Evaluation through the boundary guard: the flagged series refuses the
/// guarded zone, the unflagged one does not.
#[test]
fn boundary_guard_only_engages_for_divergent_series() {
    let guarded = gauss_2f1_series(&hp((1, 2), (1, 2), (1, 1)));
    assert!(guarded.diverges_at_boundary());
    assert!(eval_with(&guarded, 0.9995, &EvalParams::default()).is_err());

    let open = gauss_2f1_series(&hp((1, 4), (3, 4), (3, 2)));
    assert!(!open.diverges_at_boundary());
    let v = eval_with(&open, 0.998, &EvalParams::default()).unwrap();
    let closed = (2.0 / (1.0 + (1.0f64 - 0.998).sqrt())).sqrt();
    assert!((v - closed).abs() < 1e-9, "v={v} closed={closed}");
}
