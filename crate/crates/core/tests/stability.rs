use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sepstab::group::{cyclic_reduce, GroupSpec};
use sepstab::hyperbolic::{H3Point, MoebiusMap, Representation};
use sepstab::ingest::{pinched_a, s2_times_z, schottky2, SchottkyFamily};
use sepstab::stability::{
    orbit_path, qg_constants, recheck_fail, stability_margin, sweep, write_sweep_csv, FailCause, StabilityParams,
    StabilityVerdict,
};

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn params(depth: usize) -> StabilityParams {
    StabilityParams { depth, ..StabilityParams::default() }
}

#[test]
fn diagonal_orbit_heights() {
    let g = GroupSpec::free(2).unwrap();
    let a = MoebiusMap::new(cx(2.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0), cx(0.5, 0.0)).unwrap();
    let rep = Representation::new(g.clone(), vec![a, MoebiusMap::identity()]).unwrap();
    let (form, _) = cyclic_reduce(&g, &g.parse_word("a").unwrap()).unwrap();
    let path = orbit_path(&rep, &form, 3, &H3Point::origin()).unwrap();
    let heights: Vec<f64> = path.iter().map(|p| p.h).collect();
    assert_eq!(heights, vec![1.0, 4.0, 16.0, 64.0]);
    let one = orbit_path(&rep, &form, 1, &H3Point::origin()).unwrap();
    assert_eq!(one.len(), 2);
    assert!((one[0].dist(&one[1]) - H3Point::origin().dist(&a.apply(&H3Point::origin()))).abs() < 1e-12);
}

#[test]
fn orbit_path_equivariance() {
    // conjugating the representation by h moves the path of g from x to
    // the h-image of the path from x
    let e = schottky2();
    let g = e.rep.group();
    let h = MoebiusMap::new(cx(1.2, 0.0), cx(0.3, 0.1), cx(0.0, 0.0), cx(1.0 / 1.2, 0.0)).unwrap();
    let images = e.rep.images().iter().map(|m| m.conjugate_by(&h)).collect();
    let conj = Representation::new(g.clone(), images).unwrap();
    let x = H3Point::new(cx(0.2, -0.1), 0.7).unwrap();
    for s in ["a b", "a B a", "b b A"] {
        let (form, _) = cyclic_reduce(g, &g.parse_word(s).unwrap()).unwrap();
        let p = orbit_path(&e.rep, &form, 1, &x).unwrap();
        let q = orbit_path(&conj, &form, 1, &h.apply(&x)).unwrap();
        assert_eq!(p.len(), form.len() + 1);
        for (u, v) in p.iter().zip(&q) {
            let hu = h.apply(u);
            assert!(hu.dist(v) < 1e-9, "{s} {}", hu.dist(v));
        }
    }
}

#[test]
fn schottky_pass_and_pinned_qg() {
    let e = schottky2();
    let g = e.rep.group();
    let (form, _) = cyclic_reduce(g, &g.parse_word("a b").unwrap()).unwrap();
    let path = orbit_path(&e.rep, &form, 8, &H3Point::origin()).unwrap();
    let fit = qg_constants(&path, 24).unwrap();
    assert!(fit.worst_ratio > 0.0);
    assert!((fit.worst_ratio - 4.866523648201377).abs() < 1e-6, "{}", fit.worst_ratio);

    let p = StabilityParams { depth: 6, margin: 0.05, ..StabilityParams::default() };
    let report = stability_margin(&e.rep, &p).unwrap();
    assert_eq!(report.verdict, StabilityVerdict::Pass, "{report}");
    assert!(report.margin >= 0.05);
}

#[test]
fn schottky_pass_at_default_depth() {
    let start = Instant::now();
    let report = stability_margin(&schottky2().rep, &params(8)).unwrap();
    assert_eq!(report.verdict, StabilityVerdict::Pass);
    assert!(report.margin >= 0.02);
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn pinched_fails_with_witness_a() {
    let e = pinched_a();
    let report = stability_margin(&e.rep, &params(4)).unwrap();
    let StabilityVerdict::Fail { witness, cause } = &report.verdict else { panic!("{report}") };
    assert_eq!(witness, "a");
    assert!(matches!(cause, FailCause::Drift { .. }));
    let w = e.rep.group().parse_word(witness).unwrap();
    let t2 = e.rep.evaluate(&w).unwrap().trace_sq();
    assert!((t2 - cx(4.0, 0.0)).norm() < 1e-12);
    assert!(recheck_fail(&e.rep, &w, &report.params));
    // a loxodromic element is not a valid witness
    assert!(!recheck_fail(&e.rep, &e.rep.group().parse_word("b").unwrap(), &report.params));
}

#[test]
fn elliptic_and_identity_fail() {
    let g = GroupSpec::free(2).unwrap();
    let b = *schottky2().rep.image(1);
    let rot = MoebiusMap::diagonal(Complex64::from_polar(1.0, 0.3)).unwrap();
    let rep = Representation::new(g.clone(), vec![rot, b]).unwrap();
    let r = stability_margin(&rep, &params(2)).unwrap();
    assert!(matches!(r.verdict, StabilityVerdict::Fail { cause: FailCause::NotLoxodromic { .. }, .. }));
    let rep = Representation::new(g.clone(), vec![MoebiusMap::identity(), b]).unwrap();
    let r = stability_margin(&rep, &params(2)).unwrap();
    let StabilityVerdict::Fail { witness, cause } = &r.verdict else { panic!() };
    assert_eq!(*cause, FailCause::Identity);
    assert!(recheck_fail(&rep, &g.parse_word(witness).unwrap(), &r.params));
}

#[test]
fn basepoint_does_not_change_verdicts() {
    let far = H3Point::new(cx(5.0, 2.0), 3.0).unwrap();
    for e in [schottky2(), pinched_a()] {
        let p = params(5);
        let moved = StabilityParams { basepoint: far, ..p.clone() };
        let a = stability_margin(&e.rep, &p).unwrap();
        let b = stability_margin(&e.rep, &moved).unwrap();
        assert_eq!(a.verdict.label(), b.verdict.label());
        assert!((a.margin - b.margin).abs() < 1e-9);
    }
}

#[test]
fn conjugation_invariance() {
    let e = schottky2();
    let p = params(5);
    let base = stability_margin(&e.rep, &p).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let h = loop {
            let mut r = || cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            if let Ok(m) = MoebiusMap::new(r(), r(), r(), r()) {
                break m;
            }
        };
        let images = e.rep.images().iter().map(|m| m.conjugate_by(&h)).collect();
        let rep = Representation::new(e.rep.group().clone(), images).unwrap();
        let r = stability_margin(&rep, &p).unwrap();
        assert_eq!(r.verdict, base.verdict);
        assert_eq!(r.records.len(), base.records.len());
        for (x, y) in r.records.iter().zip(&base.records) {
            assert_eq!(x.name, y.name);
            assert!((x.ratio - y.ratio).abs() < 1e-9, "{} {} {}", x.name, x.ratio, y.ratio);
        }
    }
}

#[test]
fn monotone_in_depth() {
    let e = schottky2();
    let deep = stability_margin(&e.rep, &params(6)).unwrap();
    assert_eq!(deep.verdict, StabilityVerdict::Pass);
    for l in 1..6 {
        let r = stability_margin(&e.rep, &params(l)).unwrap();
        assert!(r.records.iter().all(|x| x.ratio >= deep.params.margin));
        assert!(r.margin >= deep.margin);
        let names: std::collections::HashSet<_> = deep.records.iter().map(|x| &x.name).collect();
        assert!(r.records.iter().all(|x| names.contains(&x.name)));
    }
}

#[test]
fn mixed_group_report() {
    let e = s2_times_z();
    let r = stability_margin(&e.rep, &params(3)).unwrap();
    assert!(!r.records.is_empty());
    assert!(r.records.iter().all(|x| x.ratio.is_finite()));
}

#[test]
fn schottky_sweep() {
    let grid: Vec<f64> = (1..=10).map(f64::from).collect();
    let rows = sweep(&SchottkyFamily, &grid, &params(4));
    assert_eq!(rows.len(), 10);
    assert!(rows[0].outcome.is_err());
    assert!(rows[1..].iter().all(|r| r.outcome.is_ok()));
    let margins: Vec<f64> = rows[1..].iter().map(|r| r.outcome.as_ref().unwrap().margin).collect();
    let mut out = Vec::new();
    write_sweep_csv("lambda", &rows, &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    assert!(text.starts_with("lambda,margin,k_est,a_est,verdict,error\n1,,,,error,"));
    assert!(text.contains("1,,,,error,generator 0 is mapped to the identity\n"));
    // margins grow with the multiplier once the group is discrete
    assert!(margins[1..].windows(2).all(|w| w[0] <= w[1]), "{margins:?}");
    assert!((margins[8] - 3.422220182938874).abs() < 1e-6);

    let mut empty = Vec::new();
    write_sweep_csv("lambda", &sweep(&SchottkyFamily, &[], &params(4)), &mut empty).unwrap();
    assert_eq!(String::from_utf8(empty).unwrap(), "lambda,margin,k_est,a_est,verdict,error\n");
}

#[test]
fn report_csv_columns() {
    let r = stability_margin(&schottky2().rep, &params(2)).unwrap();
    let mut out = Vec::new();
    r.write_csv(&mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "element,length,separable,trace_re,trace_im,trans_len,ratio,worst_qg,verdict_flags");
    assert_eq!(lines.count(), r.records.len());
}
