use std::time::Duration;

use super::*;
use crate::groebner::FreeElement;
use crate::modpres::{present_submodule, SubmoduleSpec};
use crate::poly::PolyRing;

fn plane(p: u64) -> (RingSpec, IdealSpec) {
    let s = PolyRing::with_vars(p, &["x", "y"]).unwrap();
    let m = IdealSpec::maximal(&s);
    (RingSpec::polynomial_ring(s).unwrap(), m)
}

fn monsky(p: u64) -> (RingSpec, IdealSpec) {
    let s = PolyRing::with_vars(p, &["x", "y"]).unwrap();
    let f = s.parse("x^5 - y^5").unwrap();
    let m = IdealSpec::maximal(&s);
    (RingSpec::new(s, vec![f], None).unwrap(), m)
}

fn determinantal(p: u64) -> (RingSpec, IdealSpec) {
    let s = PolyRing::with_vars(p, &["x1", "x2", "x3", "x4", "x5", "x6"]).unwrap();
    let minors = ["x1*x5 - x2*x4", "x1*x6 - x3*x4", "x2*x6 - x3*x5"]
        .iter()
        .map(|t| s.parse(t).unwrap())
        .collect();
    let m = IdealSpec::maximal(&s);
    (RingSpec::new(s, minors, None).unwrap(), m)
}

fn sample(ring: &RingSpec, ideal: &IdealSpec, module: &ModulePresentation, a: u32, b: u32) -> HkSeries {
    sample_hk(ring, ideal, module, a, b, &SampleOptions::default())
        .unwrap()
        .series
}

fn lengths(series: &HkSeries) -> Vec<u64> {
    series
        .lengths()
        .iter()
        .map(|l| u64::try_from(l).unwrap())
        .collect()
}

fn watanabe(q: i64) -> i64 {
    (13 * q.pow(4) - 2 * q.pow(3) - q * q - 2 * q) / 8
}

fn han_monsky(n: u32) -> u64 {
    let q = 5i128.pow(n);
    ((168 * q * q * q - 107 * 3i128.pow(n)) / 61) as u64
}

#[test]
fn regular_ring_samples() {
    let (r, m) = plane(3);
    let series = sample(&r, &m, &ModulePresentation::free(&r, 1), 1, 4);
    assert_eq!(lengths(&series), vec![9, 81, 729, 6561]);
    let a = estimate_alpha(&series).unwrap();
    assert!(a.raw.iter().all(|(_, v)| *v == rational(1, 1)));
    assert!(a.refined.iter().all(|(_, v)| *v == rational(1, 1)));
    let fit = fit_polynomial(&series).unwrap().unwrap();
    assert_eq!(fit.coefficients, vec![rational(1, 1), rational(0, 1), rational(0, 1)]);
    let b = estimate_beta(&series, &rational(1, 1)).unwrap();
    assert!(b.sequence.iter().all(|(_, v)| *v == rational(0, 1)));
}

#[test]
fn series_validation() {
    let bad = vec![
        HkSample { n: 1, q: 2, length: 4u32.into() },
        HkSample { n: 3, q: 8, length: 64u32.into() },
    ];
    assert!(matches!(HkSeries::new(2, 2, bad), Err(Error::SampleMismatch(_))));
    let wrong_q = vec![HkSample { n: 2, q: 5, length: 1u32.into() }];
    assert!(HkSeries::new(2, 2, wrong_q).is_err());
    let one = HkSeries::from_lengths(2, 2, 1, &[4]).unwrap();
    assert!(matches!(estimate_alpha(&one), Err(Error::InsufficientSamples { needed: 2, have: 1 })));
    assert!(fit_polynomial(&one).is_err());
}

#[test]
fn determinantal_fit() {
    let (r, m) = determinantal(2);
    let series = sample(&r, &m, &ModulePresentation::free(&r, 1), 0, 5);
    let expect: Vec<u64> = (0..6).map(|n| watanabe(1 << n) as u64).collect();
    assert_eq!(lengths(&series), expect);
    let fit = fit_polynomial(&series).unwrap().unwrap();
    assert_eq!(
        fit.coefficients,
        vec![rational(13, 8), rational(-1, 4), rational(-1, 8), rational(-1, 4), rational(0, 1)]
    );
    let report = analyze(&series, 4).unwrap();
    assert_eq!(report.alpha.method, AlphaMethod::PolynomialFit);
    assert_eq!(report.alpha.extrapolated, rational(13, 8));
    assert_eq!(report.beta.unwrap().extrapolated, rational(-1, 4));
    // lower-order terms keep the refined sequence from being constant
    let refined = &report.alpha.refined;
    assert_ne!(refined[0].1, refined[1].1);
}

#[test]
fn fit_requires_enough_samples() {
    let series = HkSeries::from_lengths(2, 4, 1, &[23, 397, 6518, 105436, 1695608]).unwrap();
    assert!(matches!(
        fit_polynomial(&series),
        Err(Error::InsufficientSamples { needed: 6, have: 5 })
    ));
    let report = analyze(&series, 2).unwrap();
    assert!(!report.warnings.is_empty());
}

#[test]
fn han_monsky_tail() {
    let s = PolyRing::with_vars(5, &["x1", "x2", "x3", "x4"]).unwrap();
    let f = s.parse("x1^4 + x2^4 + x3^4 + x4^4").unwrap();
    let m = IdealSpec::maximal(&s);
    let r = RingSpec::new(s, vec![f], None).unwrap();
    let computed = sample(&r, &m, &ModulePresentation::free(&r, 1), 1, 2);
    assert_eq!(lengths(&computed), vec![339, 43017]);

    let closed: Vec<u64> = (0..5).map(han_monsky).collect();
    let series = HkSeries::from_lengths(5, 3, 0, &closed).unwrap();
    assert_eq!(fit_polynomial(&series).unwrap(), None);
    let tail = fit_geometric_tail(&series.skip(1)).unwrap().unwrap();
    assert_eq!(tail.ratio, 3);
    assert_eq!(tail.leading, rational(168, 61));
    assert_eq!(tail.coefficient, rational(-107, 61));
    let report = analyze(&series, 2).unwrap();
    assert_eq!(report.alpha.method, AlphaMethod::GeometricTail);
    assert!(!report.unclassified_residual);
}

#[test]
fn monsky_period_two_at_p2() {
    let (r, m) = monsky(2);
    let series = sample(&r, &m, &ModulePresentation::free(&r, 1), 1, 6);
    assert_eq!(lengths(&series), vec![4, 16, 34, 76, 154, 316]);
    let report = analyze(&series, 4).unwrap();
    assert_eq!(report.alpha.method, AlphaMethod::StableRefinedTwoStep);
    assert_eq!(report.alpha.extrapolated, rational(5, 1));
    let tail = report.periodic_tail.unwrap();
    assert_eq!(tail.period, 2);
    assert_eq!(tail.start_n, 1);
    assert_eq!(tail.residues, vec![(0, rational(-4, 1)), (1, rational(-6, 1))]);
}

#[test]
fn periodic_detection_on_synthetic_data() {
    let constant = HkSeries::from_lengths(3, 0, 0, &[7, 7, 7, 7]).unwrap();
    let tail = detect_periodic_tail(&constant, &[], 3).unwrap().unwrap();
    assert_eq!((tail.period, tail.start_n), (1, 0));
    assert_eq!(tail.residues, vec![(0, rational(7, 1))]);

    // 2q + t_n with a transient at n = 0 and period three afterwards
    let t = [9i64, 1, 2, 3, 1, 2, 3];
    let lens: Vec<u64> = t
        .iter()
        .enumerate()
        .map(|(n, x)| (2 * 2i64.pow(n as u32) + x) as u64)
        .collect();
    let s = HkSeries::from_lengths(2, 1, 0, &lens).unwrap();
    let tail = detect_periodic_tail(&s, &[rational(2, 1)], 4).unwrap().unwrap();
    assert_eq!((tail.period, tail.start_n), (3, 1));
    assert!(detect_periodic_tail(&s, &[rational(2, 1)], 2).unwrap().is_none());
}

#[test]
fn deltas_of_free_modules_vanish() {
    let (r, m) = monsky(3);
    let one = sample(&r, &m, &ModulePresentation::free(&r, 1), 1, 4);
    let two = sample(&r, &m, &ModulePresentation::free(&r, 2), 1, 4);
    let d1 = delta_sequence(&one, &one, 1).unwrap();
    let d2 = delta_sequence(&two, &one, 2).unwrap();
    assert!(d1.iter().chain(&d2).all(|(_, v)| v.is_zero()));
    let check = check_delta_recursion(&d2, 3, 1).unwrap();
    assert!(check.pass);
    let tau = estimate_tau(&d2, 3, 1).unwrap();
    assert!(tau.extrapolated.is_zero());
    assert!(matches!(
        delta_sequence(&one, &one.skip(1), 1),
        Err(Error::SampleMismatch(_))
    ));
}

#[test]
fn corrupted_sample_fails_recursion() {
    let base = HkSeries::from_lengths(2, 2, 1, &[4, 16, 64, 256, 1024, 4096]).unwrap();
    let corrupt = HkSeries::from_lengths(2, 2, 1, &[4, 16, 64, 256, 1025, 4096]).unwrap();
    let deltas = delta_sequence(&corrupt, &base, 1).unwrap();
    let check = check_delta_recursion(&deltas, 2, 2).unwrap();
    assert!(!check.pass);
    // ρ_4 = δ_5 − 2δ_4 and ρ_5 = δ_6 − 2δ_5 both see the corrupted value
    assert_eq!(check.offending, vec![4, 5]);
}

#[test]
fn canonical_module_tau() {
    let (r, m) = determinantal(2);
    let s = r.ring().clone();
    let omega = SubmoduleSpec::ideal_of_ring(&r, vec![s.var(0), s.var(3)]).unwrap();
    let w = present_submodule(&r, &omega, &Default::default()).unwrap();
    let sw = sample(&r, &m, &w, 0, 3);
    let sr = sample(&r, &m, &ModulePresentation::free(&r, 1), 0, 3);
    assert_eq!(lengths(&sw), vec![2, 28, 431, 6778]);
    let report = tau_analysis(&sw, &sr, 1).unwrap();
    let deltas: Vec<i64> = report.deltas.iter().map(|(_, v)| i64::try_from(v).unwrap()).collect();
    assert_eq!(deltas, vec![1, 5, 34, 260]);
    assert!((to_f64(&report.tau.extrapolated) - 0.5).abs() < 0.05);
    assert!(report.recursion.pass);
}

#[test]
fn additive_error_on_determinantal_ring() {
    let (r, m) = determinantal(2);
    let s = r.ring().clone();
    let j = SubmoduleSpec::ideal_of_ring(&r, vec![s.var(0), s.var(1), s.var(2)]).unwrap();
    let seq = ExactSequenceSpec {
        submodule: j,
        ranks: [Some(1), Some(1), Some(0)],
        leading: Some(rational(1, 2)),
    };
    let rep = additive_error(&r, &seq, &m, 1, 3, &SampleOptions::default()).unwrap();
    let e: Vec<i64> = rep.errors.iter().map(|(_, v)| i64::try_from(v).unwrap()).collect();
    assert_eq!(e, vec![12, 60, 360]);
    assert_eq!(lengths(&rep.runs[2].series), vec![8, 64, 512]);
    assert!(rep.bound.pass);
    assert!(rep.leading_check.pass);
    assert_eq!(rep.leading_check.constant, rational(2, 1));
}

#[test]
fn split_sequence_has_no_error() {
    let (r, m) = monsky(2);
    // R ⊕ R with the first summand as submodule
    let ambient = ModulePresentation::free(&r, 2);
    let s = r.ring();
    let gen = FreeElement::new(vec![s.one(), s.zero()]).unwrap();
    let seq = ExactSequenceSpec {
        submodule: SubmoduleSpec::new(ambient, vec![gen]).unwrap(),
        ranks: [Some(1), Some(2), Some(1)],
        leading: None,
    };
    let rep = additive_error(&r, &seq, &m, 1, 4, &SampleOptions::default()).unwrap();
    assert!(rep.errors.iter().all(|(_, v)| v.is_zero()));
    assert!(rep.bound.pass);
}

#[test]
fn principal_ideal_sequence() {
    let (r, m) = plane(5);
    let s = r.ring().clone();
    let x = SubmoduleSpec::ideal_of_ring(&r, vec![s.var(0)]).unwrap();
    let seq = ExactSequenceSpec {
        submodule: x,
        ranks: [Some(1), Some(1), Some(0)],
        leading: None,
    };
    let rep = additive_error(&r, &seq, &m, 1, 3, &SampleOptions::default()).unwrap();
    // (x) is free: q^2 − q^2 + q
    let e: Vec<i64> = rep.errors.iter().map(|(_, v)| i64::try_from(v).unwrap()).collect();
    assert_eq!(e, vec![5, 25, 125]);
    assert!(rep.bound.pass);
    assert_eq!(rep.leading, rational(1, 1));
}

#[test]
fn direct_sum_series_adds() {
    let (r, m) = monsky(3);
    let s = r.ring().clone();
    let a = ModulePresentation::free(&r, 1);
    let b = present_submodule(
        &r,
        &SubmoduleSpec::ideal_of_ring(&r, vec![s.var(0), s.var(1)]).unwrap(),
        &Default::default(),
    )
    .unwrap();
    let sa = sample(&r, &m, &a, 0, 3);
    let sb = sample(&r, &m, &b, 0, 3);
    let sum = sample(&r, &m, &a.direct_sum(&r, &b), 0, 3);
    let expect: Vec<BigInt> = sa.lengths().iter().zip(sb.lengths()).map(|(x, y)| x + y).collect();
    assert_eq!(sum.lengths(), expect);
}

#[test]
fn geometric_extrapolation_cancels_first_order() {
    // a_n = 3 + 5/q for p = 2
    let seq: Vec<(u32, BigRational)> = (1..4)
        .map(|n| (n, rational(3, 1) + rational(5, 1 << n)))
        .collect();
    let acc = geometric_extrapolation(&seq, 2);
    assert!(acc.iter().all(|(_, v)| *v == rational(3, 1)));
}

#[test]
fn threads_do_not_change_results() {
    let (r, m) = monsky(2);
    let module = ModulePresentation::free(&r, 1);
    let serial = SampleOptions {
        threads: 1,
        ..SampleOptions::default()
    };
    let wide = SampleOptions {
        threads: 4,
        ..SampleOptions::default()
    };
    let a = sample_hk(&r, &m, &module, 0, 6, &serial).unwrap();
    let b = sample_hk(&r, &m, &module, 0, 6, &wide).unwrap();
    assert_eq!(a.series, b.series);
}

#[test]
fn deadline_skips_and_truncates() {
    let s = PolyRing::with_vars(5, &["x1", "x2", "x3", "x4"]).unwrap();
    let f = s.parse("x1^4 + x2^4 + x3^4 + x4^4").unwrap();
    let m = IdealSpec::maximal(&s);
    let r = RingSpec::new(s, vec![f], None).unwrap();
    let opts = SampleOptions {
        per_sample: Some(Duration::ZERO),
        ..SampleOptions::default()
    };
    let run = sample_hk(&r, &m, &ModulePresentation::free(&r, 1), 0, 3, &opts).unwrap();
    assert!(run.series.len() < 4);
    assert!(run.series.samples().iter().enumerate().all(|(i, x)| x.n == i as u32));
    assert!(run.warnings.iter().any(|w| w.contains("skipped")));
    assert_eq!(run.timings.len(), 4);
}

#[test]
fn declared_dimension_is_honored_with_warning() {
    let s = PolyRing::with_vars(2, &["x", "y"]).unwrap();
    let f = s.parse("x^5 - y^5").unwrap();
    let m = IdealSpec::maximal(&s);
    let r = RingSpec::new(s, vec![f], Some(2)).unwrap();
    let run = sample_hk(&r, &m, &ModulePresentation::free(&r, 1), 1, 2, &SampleOptions::default()).unwrap();
    assert_eq!(run.series.dim(), 2);
    assert!(run.warnings.iter().any(|w| w.contains("declared dim")));
}

#[test]
fn non_primary_ideal_is_rejected() {
    let (r, _) = plane(3);
    let x = IdealSpec::new(vec![r.ring().var(0)]);
    assert!(matches!(
        sample_hk(&r, &x, &ModulePresentation::free(&r, 1), 1, 2, &SampleOptions::default()),
        Err(Error::NotZeroDimensional)
    ));
}

#[test]
fn rational_text_round_trip() {
    for r in [rational(-107, 61), rational(13, 8), rational(0, 1), rational(-4, 1)] {
        assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }
    assert_eq!(format_rational(&rational(6, 4)), "3/2");
    assert!(parse_rational("1/0").is_none());
    assert!(parse_rational("x").is_none());
}
