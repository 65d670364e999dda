use cas_kernel::{rat, ratio, rf};
use dihedral::isomonodromy::*;
use dihedral::ParameterPoint;

fn sym() -> ParameterPoint {
    ParameterPoint::symbolic()
}

#[test]
fn pvi_symbolic() {
    let d = pvi_data(&sym());
    assert!(pvi_residual(&d).is_zero());
}

#[test]
fn pvi_solution_is_the_apparent_singularity() {
    let h = q_from_residues(&sym()).unwrap();
    let d = pvi_data(&sym());
    assert_eq!(h.q, d.q);
    let ctx = pvi_ctx();
    assert_eq!(h.w0.det(), rf(&ctx, "-l1^2/4"));
    assert_eq!(h.w1.det(), rf(&ctx, "-1/16"));
    assert_eq!(h.wu.det(), rf(&ctx, "-1/16"));
    assert_eq!(h.w_inf.det(), rf(&ctx, "-(2*l0+l1-1)^2/4"));
    assert!(h.w0.add(&h.w1).add(&h.wu).add(&h.w_inf).is_zero());
}

#[test]
fn line_coefficients_against_published() {
    let d = line_restriction_data(&sym(), &ChartPoint::symbolic()).unwrap();
    let [a2, a1, a0] = printed_line_coefficients(&sym());
    assert!(d.coeffs.a2.is_polynomial() && d.coeffs.a1.is_polynomial() && d.coeffs.a0.is_polynomial());
    assert_eq!(d.coeffs.a2, a2);
    assert_eq!(d.coeffs.a0, a0);
    // the published a1 does not match
    assert_ne!(d.coeffs.a1, a1);
}

#[test]
fn line_residues_symbolic() {
    let r = verify_line_residues(&sym(), &ChartPoint::symbolic()).unwrap();
    for e in &r.residues {
        assert_eq!(e.det, e.expected_det, "{}", e.puncture);
    }
    assert!(r.all_match());
}

#[test]
fn line_residues_at_rational_chart_point() {
    let p = ParameterPoint::rational(ratio(1, 3), ratio(1, 5));
    let r = verify_line_residues(&p, &ChartPoint::new(rat(2), ratio(1, 3))).unwrap();
    assert!(r.all_match());
}

#[test]
fn sq_pq_come_from_the_connection() {
    let (s, p) = sq_pq_from_line(&sym()).unwrap();
    assert_eq!(relabel(&s), sq_formula(&sym()));
    assert_eq!(relabel(&p), pq_formula(&sym()));
    assert_ne!(relabel(&s), printed_sq_formula(&sym()));
}

#[test]
fn relation_signs() {
    let l = relation_ledger(&sym(), &sq_formula(&sym()));
    assert_eq!(l[0].convention, SignConvention::Printed);
    assert_eq!(l[1].convention, SignConvention::Flipped);
    let l = relation_ledger(&sym(), &printed_sq_formula(&sym()));
    assert_eq!(l[0].convention, SignConvention::Neither);
}

#[test]
fn garnier_symbolic() {
    let rep = verify_garnier_relations(&sym()).unwrap();
    let r = &rep.residuals;
    assert!(r.conjugate_momenta);
    assert_eq!(r.symmetrized.len(), 8);
    assert!(r.all_zero(), "{:?}", r.nonzero());
    // the published γ equation, with + in both brackets, fails
    assert_eq!(rep.printed_gamma_equation, ["dgamma/dt1", "dgamma/dt2"]);
    assert!(!rep.flipped_h1.is_empty());
    assert!(!rep.printed_gamma_matches);
    assert!(!rep.printed_sp_matches);
    assert!(!rep.printed_hamiltonians.is_empty());
    assert_eq!(rep.ledger[0].convention, SignConvention::Printed);
    assert_eq!(rep.ledger[1].convention, SignConvention::Flipped);
}

#[test]
fn printed_hamiltonians_do_not_fit() {
    let bad = printed_hamiltonian_check(&ParameterPoint::ints(2, 3)).unwrap();
    eprintln!("{bad:?}");
    assert!(!bad.is_empty());
}

#[test]
fn garnier_chart_point_two_three() {
    // γ and Sp frozen from an independent sympy computation with explicit
    // square roots
    let p = ParameterPoint::ints(2, 3);
    let g = garnier_parametrization(&p, &ChartPoint::new(rat(2), rat(3))).unwrap();
    let r: Vec<String> = [&g.t1, &g.t2, &g.sq, &g.pq, &g.sp, &g.gamma].iter().map(|e| e.render()).collect();
    assert_eq!(r, ["32/7", "8/7", "-3/28", "-4/7", "-929/160", "-77/40"]);
    assert!(garnier_parametrization(&p, &ChartPoint::new(rat(3), rat(3))).is_err());
}

#[test]
fn garnier_parity_in_z() {
    let p = ParameterPoint::ints(2, 3);
    let g = garnier_residuals(&p, HamiltonianChoice::garnier(), &sq_formula(&p), &pq_formula(&p)).unwrap().point;
    for f in [g.st(), g.pt(), g.sq.clone(), g.pq.clone()] {
        assert_eq!(z_parity(&f), Parity::Even);
    }
    // recorded, not assumed: both come out even
    assert_eq!(z_parity(&g.gamma), Parity::Even);
    assert_eq!(z_parity(&g.sp), Parity::Even);
    let ctx = chart_ctx();
    let flip = cas_kernel::Substitution::by_name(&ctx, &ctx, &[("z", rf(&ctx, "-z"))]);
    assert_eq!(flip.apply(&g.t1).unwrap(), g.t2);
}

#[test]
fn printed_hamiltonian_values() {
    // frozen from an independent sympy transcription
    let p = ParameterPoint::ints(2, 3);
    let a = [rat(2), rat(3), rat(1), rat(1), rat(1), rat(-1)];
    let [h, h1, h2] = hamiltonian_eval(&p, a).unwrap();
    assert_eq!((h, h1, h2), (rat(-126), ratio(-125, 4), ratio(61, 6)));
    let [h, _, _] = hamiltonian_eval(&p, [rat(2), rat(3), rat(0), rat(1), rat(1), rat(-1)]).unwrap();
    assert_eq!(h, rat(0));
    let [h, _, _] = hamiltonian_eval(&p, [rat(2), rat(3), rat(1), rat(1), rat(1), rat(2)]).unwrap();
    assert_eq!(h, rat(0));
    assert!(hamiltonian_eval(&p, [rat(2), rat(3), rat(1), rat(1), rat(1), rat(1)]).is_err());
    assert!(hamiltonian_eval(&p, [rat(1), rat(3), rat(1), rat(1), rat(1), rat(2)]).is_err());
}

#[test]
fn generic_and_symbolic_hamiltonians_agree() {
    let p = ParameterPoint::ints(2, 3);
    let [h1, h2] = printed_hamiltonians(&p);
    let pt = [rat(1), rat(-1), rat(1), rat(1), rat(2), rat(3), rat(0), rat(0)];
    assert_eq!(h1.eval(&pt).unwrap(), ratio(-125, 4));
    assert_eq!(h2.eval(&pt).unwrap(), ratio(61, 6));
}

fn two_three_quartic() -> cas_kernel::Polynomial {
    let p = ParameterPoint::ints(2, 3);
    specialize_quartic(&p, &elimination_quartic(&p).unwrap())
}

#[test]
fn quartic_symbolic() {
    let q = elimination_quartic(&sym()).unwrap();
    assert_eq!(q.degree_in(q.ctx().var("X")), 4);
    assert!(quartic_vanishes_on_parametrization(&sym(), &q).unwrap());
}

#[test]
fn quartic_at_two_three() {
    // resultant computed independently with sympy, divided by 65536
    let q = two_three_quartic();
    let ctx = q.ctx().clone();
    let want = cas_kernel::parse_poly(
        &ctx,
        "(65536*X^4 - 262144*X^3 + (-81920*T1*T2 + 73728*T1 + 73728*T2 + 319488)*X^2 \
         + (163840*T1*T2 - 147456*T1 - 147456*T2 - 114688)*X + 16384*T1^2*T2^2 - 36864*T1^2*T2 \
         + 20736*T1^2 - 36864*T1*T2^2 - 3584*T1*T2 + 32256*T1 + 20736*T2^2 + 32256*T2 + 12544)/65536",
    )
    .unwrap();
    assert_eq!(q, want);
    assert!(quartic_vanishes_on_parametrization(&ParameterPoint::ints(2, 3), &q).unwrap());
}

#[test]
fn quartic_root_patterns() {
    let q = two_three_quartic();
    let tol = 1e-6;
    assert_eq!(quartic_probe(&q, Locus::Diagonal(1.0 / 3.0), 1.0 / 3.0, tol).pattern, [1, 1, 1, 1]);
    assert_eq!(quartic_probe(&q, Locus::T1To(0.0), 7.0, tol).pattern, [2, 2]);
    assert_eq!(quartic_probe(&q, Locus::T1To(1.0), 7.0, tol).pattern, [2, 2]);
    assert_eq!(quartic_probe(&q, Locus::T1ToInfinity, 7.0, tol).pattern, [4]);
    // a single point at distance 1e-6 separates the double roots by about 1e-3
    let far = quartic_probe_at(&q, 1e-6, 7.0);
    assert!(far.min_separation > tol);
}

