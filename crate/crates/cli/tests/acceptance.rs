//! Acceptance suite: one test per ship criterion, each printing a PASS line
//! with the measured numbers (run with `--nocapture` to see them).

use std::time::Instant;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mnconvex::criteria::{certify_mf, certify_pfq, CertifyOptions, Verdict};
use mnconvex::numcheck::{
    elliptic_product_profile, verify_derivative_monotone, verify_hyperbolic,
    verify_hypergeometric_chain, verify_mirror_ratio_chain, verify_mn, CheckOutcome, GridSpec,
    GridSpacing, HyperbolicChain, VerifyOptions,
};
use mnconvex::powerseries::{eval, monotone_verdict, ratio_sequence, PrefixVerdict};
use mnconvex::query::{ClosedFn, ConvexityQuery, MeanPair, Sense, Subject};
use mnconvex::scalar::{q, q_to_f64, qi, Q};
use mnconvex::specialfn::{
    gauss_2f1_series, generalized_pfq_series, hyp2f1_nn, legendre, log_deriv_nn,
    log_deriv_nn_exact, log_deriv_nn_slope_at_zero, GeneralizedHypergeometricParams,
    HypergeometricParams,
};
use mnconvex::PowerSeries;

fn hp(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> HypergeometricParams {
    HypergeometricParams::new(q(a.0, a.1), q(b.0, b.1), q(c.0, c.1)).unwrap()
}

/// Criterion 1: the grid maximum of `x^2 x'^2 K(x) K(x')` over 2048 points
/// equals 0.859398 within 1e-5, the argmax sits within 1e-3 of sqrt(1/2),
/// and the whole thing takes under a second.
#[test]
fn c01_elliptic_maximum() {
    let start = Instant::now();
    let (argmax, max, unimodal) = elliptic_product_profile(2048);
    let elapsed = start.elapsed();
    assert!((max - 0.859398).abs() < 1e-5, "max = {max}");
    assert!(
        (argmax - 0.5f64.sqrt()).abs() < 1e-3,
        "argmax = {argmax}"
    );
    assert!(unimodal, "profile must rise to the peak and fall after it");
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!(
        "criterion 01 (elliptic maximum): PASS  max = {max}, argmax = {argmax}, {elapsed:?}"
    );
}

/// Criterion 2: the counterexample suite around F(n,n;1;x).
#[test]
fn c02_counterexample_suite() {
    // g_3(0) = 9 exactly in rational arithmetic.
    assert_eq!(log_deriv_nn_exact(3, &Q::new(0.into(), 1.into())).unwrap(), qi(9));
    // g_3(0.1) = 8.534 within 5e-4.
    let g1 = log_deriv_nn(3, 0.1).unwrap();
    assert!((g1 - 8.534).abs() < 5e-4, "g_3(0.1) = {g1}");
    // g_n'(0) closed form vs centered finite differences, n = 3..8.
    for n in 3..=8usize {
        let h = 1e-5;
        let fd = (log_deriv_nn(n, h).unwrap() - log_deriv_nn(n, -h).unwrap()) / (2.0 * h);
        let closed = q_to_f64(&log_deriv_nn_slope_at_zero(n));
        assert!(
            (fd - closed).abs() <= 1e-4 * closed.abs(),
            "n = {n}: fd = {fd}, closed = {closed}"
        );
    }
    // P_n'(1) = n(n+1)/2 exactly for n <= 20.
    for n in 1..=20i64 {
        let d = legendre(n as usize).derivative().eval_exact(&qi(1));
        assert_eq!(d, q(n * (n + 1), 2), "P_{n}'(1)");
    }
    println!("criterion 02 (counterexample suite): PASS  g_3(0.1) = {g1}");
}

/// Criterion 3: the three closed-form identities at their stated tolerances.
#[test]
fn c03_closed_form_identities() {
    // F(3,3;1;x) = (1+4x+x^2)/(1-x)^5, relative 1e-10 on (0, 0.9).
    let f33 = gauss_2f1_series(&hp((3, 1), (3, 1), (1, 1)));
    let mut worst_a = 0.0f64;
    for i in 1..=180 {
        let x = 0.9 * i as f64 / 181.0;
        let closed = (1.0 + 4.0 * x + x * x) / (1.0 - x).powi(5);
        let v = eval(&f33, x, 1e-12).unwrap();
        worst_a = worst_a.max(((v - closed) / closed).abs());
    }
    assert!(worst_a <= 1e-10, "worst rel err {worst_a}");

    // F(1/4,3/4;3/2;x) = [2/(1+sqrt(1-x))]^{1/2}, 1e-10 on (0, 0.99).
    let f65 = gauss_2f1_series(&hp((1, 4), (3, 4), (3, 2)));
    let mut worst_b = 0.0f64;
    for i in 1..=198 {
        let x = 0.99 * i as f64 / 199.0;
        let closed = (2.0 / (1.0 + (1.0 - x).sqrt())).sqrt();
        let v = eval(&f65, x, 1e-13).unwrap();
        worst_b = worst_b.max(((v - closed) / closed).abs());
    }
    assert!(worst_b <= 1e-10, "worst rel err {worst_b}");

    // F(n,n;1;x)(1-x)^n = P_{n-1}((1+x)/(1-x)), 1e-9 for n = 2..8 on (-0.8, 0.45).
    let mut worst_c = 0.0f64;
    for n in 2..=8usize {
        let series = gauss_2f1_series(&hp((n as i64, 1), (n as i64, 1), (1, 1)));
        for i in 0..=50 {
            let x = -0.8 + (0.45 + 0.8) * i as f64 / 50.0;
            let lhs = eval(&series, x, 1e-12).unwrap() * (1.0 - x).powi(n as i32);
            let rhs = hyp2f1_nn(n, x).unwrap() * (1.0 - x).powi(n as i32);
            worst_c = worst_c.max(((lhs - rhs) / rhs).abs());
        }
    }
    assert!(worst_c <= 1e-9, "worst rel err {worst_c}");
    println!(
        "criterion 03 (closed-form identities): PASS  worst rel errs {worst_a:.2e}, {worst_b:.2e}, {worst_c:.2e}"
    );
}

/// Criterion 4: the four-term chain for c = a+b on a 64x64 grid, three
/// parameter sets, with off-diagonal strictness, in under ten seconds.
#[test]
fn c04_hypergeometric_chain() {
    let start = Instant::now();
    let g = GridSpec::log(0.05, 0.95).unwrap();
    let o = VerifyOptions::default();
    for (a, b) in [((1, 2), (1, 2)), ((1, 1), (1, 1)), ((1, 4), (3, 4))] {
        let c = (a.0 * b.1 + b.0 * a.1, a.1 * b.1);
        let p = hp(a, b, c);
        let outcome = verify_hypergeometric_chain(&p, &g, &o).unwrap();
        assert!(outcome.passed(), "{}: {outcome:?}", p.label());
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!("criterion 04 (c = a+b chain): PASS  3 parameter sets, {elapsed:?}");
}

/// Criterion 5: the hyperbolic chains and the sharpness of their bounds.
#[test]
fn c05_hyperbolic_chains_and_sharpness() {
    let o = VerifyOptions::default();
    let g3 = GridSpec::log(0.005, 2.995).unwrap();
    assert!(verify_hyperbolic(HyperbolicChain::CoshThreeTerm, &g3, &o)
        .unwrap()
        .passed());
    assert!(verify_hyperbolic(HyperbolicChain::SinhcThreeTerm, &g3, &o)
        .unwrap()
        .passed());

    let bound_grid = |r: f64| {
        GridSpec::new(0.01 * r.sqrt(), r.sqrt() * 0.999, 64, GridSpacing::Log).unwrap()
    };
    assert!(verify_hyperbolic(
        HyperbolicChain::CoshBound { r: 5.9 },
        &bound_grid(5.9),
        &o
    )
    .unwrap()
    .passed());
    let refuted = verify_hyperbolic(HyperbolicChain::CoshBound { r: 7.0 }, &bound_grid(7.0), &o)
        .unwrap();
    let w = refuted.witness().expect("R = 7 must be refuted").clone();
    assert!(
        w.gap < -(o.refute_factor * o.eval.tol) * w.lhs.abs().max(w.rhs.abs()).max(1.0),
        "gap {} too small",
        w.gap
    );

    assert!(verify_hyperbolic(
        HyperbolicChain::SinhcBound { r: 9.9 },
        &bound_grid(9.9),
        &o
    )
    .unwrap()
    .passed());
    let refuted4 =
        verify_hyperbolic(HyperbolicChain::SinhcBound { r: 11.0 }, &bound_grid(11.0), &o).unwrap();
    let w4 = refuted4.witness().expect("R = 11 must be refuted").clone();
    assert!(w4.gap < -1e-8, "gap {}", w4.gap);
    println!(
        "criterion 05 (hyperbolic chains): PASS  cosh gap at R=7: {:.3e}, sinhc gap at R=11: {:.3e}",
        w.gap, w4.gap
    );
}

/// Criterion 6: the five-function verdict matrix through both routes, and
/// pairwise route agreement on all 5 x 9 x 2 combinations.
#[test]
fn c06_verdict_matrix() {
    let corpus = [
        ClosedFn::Cosh,
        ClosedFn::Sinh,
        ClosedFn::Exp,
        ClosedFn::Log1p,
        ClosedFn::Arctan,
    ];
    let g = GridSpec::new(0.05, 4.0, 40, GridSpacing::Log).unwrap();
    let o = VerifyOptions::weak();
    let both = |f: ClosedFn, pair: &str, sense: Sense| -> (bool, bool) {
        let q = ConvexityQuery::new(
            Subject::Closed(f),
            pair.parse().unwrap(),
            sense,
            g.lo,
            g.hi,
        )
        .unwrap();
        (
            verify_mn(&q, &g, &o).unwrap().passed(),
            verify_derivative_monotone(&q, &g, &o).unwrap().passed(),
        )
    };

    // Stated verdicts, each via both routes.
    let stated: [(ClosedFn, &str, Sense, bool); 10] = [
        (ClosedFn::Cosh, "AG", Sense::Convex, true),
        (ClosedFn::Cosh, "AH", Sense::Convex, false),
        (ClosedFn::Sinh, "AA", Sense::Convex, true),
        (ClosedFn::Sinh, "AG", Sense::Concave, true),
        (ClosedFn::Exp, "GG", Sense::Convex, true),
        (ClosedFn::Exp, "GH", Sense::Convex, false),
        (ClosedFn::Log1p, "GA", Sense::Convex, true),
        (ClosedFn::Log1p, "GG", Sense::Concave, true),
        (ClosedFn::Arctan, "HA", Sense::Convex, true),
        (ClosedFn::Arctan, "HG", Sense::Convex, false),
    ];
    for (f, pair, sense, expect) in stated {
        let (mn, dv) = both(f, pair, sense);
        assert_eq!(mn, expect, "{} {pair} {:?} via defining inequality", f.name(), sense);
        assert_eq!(dv, expect, "{} {pair} {:?} via derivative test", f.name(), sense);
    }

    // Full pairwise agreement across the matrix.
    let mut combos = 0;
    for f in corpus {
        for pair in MeanPair::all() {
            for sense in [Sense::Convex, Sense::Concave] {
                let (mn, dv) = both(f, &pair.to_string(), sense);
                assert_eq!(
                    mn, dv,
                    "route disagreement: {} {pair} {:?} (mn = {mn}, derivative = {dv})",
                    f.name(),
                    sense
                );
                combos += 1;
            }
        }
    }
    assert_eq!(combos, 90);
    println!("criterion 06 (verdict matrix): PASS  10 stated verdicts, 90/90 route agreements");
}

/// Criterion 7: the mirror-ratio pipeline for 2F1(1/2,1/2;1).
#[test]
fn c07_mirror_ratio_pipeline() {
    let series = gauss_2f1_series(&hp((1, 2), (1, 2), (1, 1)));
    let cert = certify_mf(&series, &CertifyOptions::default()).unwrap();
    assert!(
        matches!(cert.verdict, Verdict::PrefixChecked { horizon: 1000 }),
        "{cert:?}"
    );
    let g = GridSpec::new(0.1, 0.9, 32, GridSpacing::Log).unwrap();
    let o = VerifyOptions::default();
    let outcome = verify_mirror_ratio_chain(&series, &g, &o).unwrap();
    assert!(outcome.passed(), "{outcome:?}");
    // m(sqrt(1/2)) = 1 within 1e-12.
    let x = 0.5f64.sqrt();
    let m = eval(&series, 1.0 - x * x, 1e-14).unwrap() / eval(&series, x * x, 1e-14).unwrap();
    assert!((m - 1.0).abs() < 1e-12, "m(sqrt(1/2)) = {m}");
    println!("criterion 07 (mirror-ratio pipeline): PASS  m(sqrt(1/2)) = {m}");
}

/// Criterion 8: randomized ratio-monotonicity suite plus a non-monotone
/// control with a pinned first-violation index.
#[test]
fn c08_ratio_lemma_randomized() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_cafe);
    let len = 2048usize;
    for trial in 0..20 {
        // Denominator series: positive coefficients with gentle ratio drift
        // so the radius is 1; numerator a_n = T_n b_n with T_n strictly
        // increasing.
        let mut b = Vec::with_capacity(len);
        let mut cur = 1.0f64;
        for _ in 0..len {
            b.push(cur);
            cur *= (rng.gen_range(-0.05..0.05f64)).exp();
        }
        let mut t = Vec::with_capacity(len);
        let mut tv = 1.0f64;
        for _ in 0..len {
            t.push(tv);
            tv += rng.gen_range(0.001..0.1f64);
        }
        let a: Vec<f64> = b.iter().zip(&t).map(|(bn, tn)| bn * tn).collect();
        let bs = b.clone();
        let g = PowerSeries::from_float_fn(format!("g{trial}"), 1.0, move |n| {
            bs.get(n).copied().unwrap_or(0.0)
        });
        let f = PowerSeries::from_float_fn(format!("f{trial}"), 1.0, move |n| {
            a.get(n).copied().unwrap_or(0.0)
        });

        let seq = ratio_sequence(&f, &g, 200).unwrap();
        assert_eq!(
            monotone_verdict(&seq),
            PrefixVerdict::Increasing,
            "trial {trial}"
        );

        // The sampled ratio is non-decreasing on a 64-point grid in (0, 0.9).
        let mut prev = f64::NEG_INFINITY;
        for i in 1..=64 {
            let x = 0.9 * i as f64 / 65.0;
            let h = eval(&f, x, 1e-11).unwrap() / eval(&g, x, 1e-11).unwrap();
            assert!(
                h >= prev - 1e-9 * h.abs(),
                "trial {trial}: ratio decreased at x = {x}"
            );
            prev = h;
        }
    }

    // Control: T_n = n except T_7 = 100; the trend breaks at index 8.
    let control: Vec<_> = (0..20i64)
        .map(|n| {
            mnconvex::Coeff::Exact(if n == 7 { qi(100) } else { qi(n) })
        })
        .collect();
    let seq = mnconvex::RatioSequence::from_terms(0, control);
    assert_eq!(
        monotone_verdict(&seq),
        PrefixVerdict::NotMonotone { first_violation: 8 }
    );
    println!("criterion 08 (ratio lemma randomized): PASS  20 trials + control index 8");
}

/// Criterion 9: the five generalized-hypergeometric cases return the
/// expected verdicts and the numeric log-convexity check concurs.
#[test]
fn c09_pfq_cases() {
    let cases: [(Vec<Q>, Vec<Q>, &str); 5] = [
        (vec![], vec![], "log-convex"),
        (vec![q(1, 2)], vec![qi(1)], "log-convex"),
        (vec![q(3, 4)], vec![], "log-convex"),
        (vec![qi(2)], vec![qi(1), qi(1)], "log-concave"),
        (vec![], vec![qi(1)], "log-concave"),
    ];
    let o = VerifyOptions::weak();
    let g = GridSpec::new(0.02, 0.93, 32, GridSpacing::Log).unwrap();
    for (i, (num, den, expect)) in cases.into_iter().enumerate() {
        let p = GeneralizedHypergeometricParams::new(num, den).unwrap();
        let cert = certify_pfq(&p);
        assert!(
            matches!(cert.verdict, Verdict::ProvenByCriterion),
            "case {}: {cert:?}",
            i + 1
        );
        assert!(
            cert.criterion.contains(expect),
            "case {}: criterion `{}` should conclude {expect}",
            i + 1,
            cert.criterion
        );
        let sense = if expect == "log-convex" {
            Sense::Convex
        } else {
            Sense::Concave
        };
        let query = ConvexityQuery::new(
            Subject::Series(generalized_pfq_series(&p)),
            "AG".parse().unwrap(),
            sense,
            g.lo,
            g.hi,
        )
        .unwrap();
        let outcome = verify_derivative_monotone(&query, &g, &o).unwrap();
        assert!(outcome.passed(), "case {}: {outcome:?}", i + 1);
    }
    println!("criterion 09 (pFq cases): PASS  5/5 verdicts with numeric concurrence");
}

/// Criterion 10: `repro all --json` is byte-identical across runs.
#[test]
fn c10_repro_determinism() {
    let start = Instant::now();
    let run = || {
        std::process::Command::new(env!("CARGO_BIN_EXE_mnconvex"))
            .args(["repro", "all", "--json"])
            .output()
            .expect("binary runs")
    };
    let first = run();
    let second = run();
    let elapsed = start.elapsed();
    assert!(
        first.status.success(),
        "repro all failed: {}",
        String::from_utf8_lossy(&first.stdout)
    );
    assert!(second.status.success());
    assert_eq!(
        first.stdout, second.stdout,
        "repro all must be byte-identical across runs"
    );
    assert!(!first.stdout.is_empty());
    assert!(
        elapsed.as_secs_f64() < 300.0,
        "two repro runs took {elapsed:?}"
    );
    println!(
        "criterion 10 (determinism): PASS  {} bytes, two runs in {elapsed:?}",
        first.stdout.len()
    );
}
