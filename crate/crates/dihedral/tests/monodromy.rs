use cas_kernel::ratio;
use dihedral::monodromy::*;
use dihedral::ParameterPoint;
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

fn line() -> LineRestriction {
    let p = ParameterPoint::rational(ratio(1, 3), ratio(1, 5));
    line_restriction(&p, &ratio(2, 1), &ratio(1, 3)).unwrap()
}

#[test]
fn system_is_trace_free_with_expected_poles() {
    let lr = line();
    assert!(lr.system.exact.trace().is_zero());
    // simple poles at 0, 1, t1, t2 only
    for e in lr.system.exact.entries() {
        assert!(cas_kernel::divides_exactly(e.den(), &lr.pole_polynomial).is_some(), "{e}");
        assert!(e.num().degree_in(0) < e.den().degree_in(0));
    }
}

#[test]
fn generic_line_monodromy() {
    let lr = line();
    let recs = monodromy_representation(&lr, Some(C64::new(0.5, 2.0)), 1e-10).unwrap();
    assert_eq!(recs.len(), 5);
    for r in &recs {
        assert!((r.det - 1.0).norm() < 1e-9, "{} det {}", r.label, r.det);
        assert!(r.error_estimate < 1e-7, "{} err {}", r.label, r.error_estimate);
    }
    let d = verify_dihedral(&recs);
    assert!(d.anti_diagonal_traces.iter().all(|t| *t < 1e-8), "{d:?}");
    assert!(d.commutator_residual < 1e-7, "{d:?}");
    assert!(d.product_residual < 1e-6, "{d:?}");
    let cmp = compare_traces(&recs, 1.0 / 3.0, 1.0 / 5.0);
    // agrees with the residue eigenvalues at every puncture
    assert!(trace_deviation(&cmp, false) < 1e-8, "{cmp:?}");
    // at infinity the computed trace is 2cos(π(λ0+λ1)), not 2cos(π(λ0-λ1))
    let inf = cmp.iter().find(|c| c.label == "inf").unwrap();
    assert!((inf.computed.0 - 2.0 * (PI * 8.0 / 15.0).cos()).abs() < 1e-8);
    assert!((inf.computed.0 - inf.printed).abs() > 1.0);
}

#[test]
fn homotopic_loops_agree() {
    let lr = line();
    let base = C64::new(0.5, 2.0);
    let loops = lr.loops(base).unwrap();
    let lp = loops.iter().find(|l| l.label == "0").unwrap();
    let a = transport(&lr.system, lp, 1e-10).unwrap();
    let b = transport(&lr.system, &lp.refined(4), 1e-10).unwrap();
    assert!(a.matrix.dist(&b.matrix) < 1e-7);
    // a lasso with a larger circle is homotopic
    let big = Loop::lasso("0", base, C64::new(0.0, 0.0), 0.3, 1.0);
    let c = transport(&lr.system, &big, 1e-10).unwrap();
    assert!(a.matrix.dist(&c.matrix) < 1e-7);
}

fn small(lo: i64, hi: i64, den: i64) -> impl proptest::strategy::Strategy<Value = cas_kernel::Rational> {
    use proptest::prelude::*;
    (lo..hi, 1..den).prop_map(|(n, d)| ratio(n, d))
}

proptest::proptest! {
    #![proptest_config(proptest::prelude::ProptestConfig::with_cases(48))]

    // local traces follow the residue eigenvalues on any generic line; large
    // exponents make transport ill-conditioned, so |λ| ≤ 2
    #[test]
    fn traces_follow_residues(l0 in small(-12, 13, 7), l1 in small(-12, 13, 7), a in small(-7, 8, 4), b in small(-7, 8, 4)) {
        let six = ratio(6, 1);
        let p = ParameterPoint::rational(l0 / &six, l1 / &six);
        let Ok(lr) = line_restriction(&p, &a, &b) else { return Ok(()) };
        proptest::prop_assume!(lr.min_distance() > 0.05);
        let Ok(recs) = monodromy_representation(&lr, None, 1e-10) else { return Ok(()) };
        let (x0, x1) = p.as_f64().unwrap();
        let cmp = compare_traces(&recs, x0, x1);
        proptest::prop_assert!(trace_deviation(&cmp, false) < 1e-6, "{:?}", cmp);
        let d = verify_dihedral(&recs);
        proptest::prop_assert!(d.max_det_error < 1e-8, "{:?}", d);
        proptest::prop_assert!(d.passes(1e-6), "{:?}", d);
    }
}
