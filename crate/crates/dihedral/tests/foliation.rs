use cas_kernel::{rat, ratio, Rational};
use dihedral::foliation::*;
use dihedral::ParameterPoint;
use proptest::prelude::*;

#[test]
fn seven_singular_points_symbolic() {
    let f = FoliationForm::new(&ParameterPoint::symbolic());
    let pts = singular_points(&f).unwrap();
    assert_eq!(pts.len(), 7);
    let shown: Vec<String> = pts.iter().map(|p| p.render()).collect();
    assert_eq!(shown[..3], ["[0:0:1]", "[0:1:1]", "[1:0:1]"]);
    assert_eq!(shown[4..], ["[1:1:0]", "[0:1:0]", "[1:0:0]"]);
    for p in &pts {
        assert!(p.vanishes, "{}", p.render());
    }
}

#[test]
fn lotka_volterra_symbolic() {
    let r = lv_equivalence(&ParameterPoint::symbolic()).unwrap();
    assert!(r.wedge.is_zero());
    assert!(r.contractions_vanish && r.abc_product_is_one);
    assert!(r.fourth_point_matches && r.b_parametrization_matches);
    assert_eq!(r.flipped, [true; 3]);
    assert!(r.converse_matches);
    assert!(r.passes());
}

#[test]
fn converse_at_two_three() {
    // (γ1, γ2) = (3, 2) against λ = (2, 3)
    let f = FoliationForm::new(&ParameterPoint::ints(2, 3));
    let ctx = f.ctx().clone();
    let g = converse_family(&ctx, &cas_kernel::RF::from_int(&ctx, 3), &cas_kernel::RF::from_int(&ctx, 2));
    assert!(g.sub(&f.omega).is_zero());
    let swapped = converse_family(&ctx, &cas_kernel::RF::from_int(&ctx, 2), &cas_kernel::RF::from_int(&ctx, 3));
    assert!(!swapped.sub(&f.omega).is_zero());
}

#[test]
fn j_orbit() {
    assert!(j_orbit_check(&ParameterPoint::symbolic()));
    assert!(j_orbit_check(&ParameterPoint::ints(1, 2)));
}

#[test]
fn scaling_of_parameters() {
    assert!(quotient_dependence_check());
    let a = FoliationForm::new(&ParameterPoint::ints(1, 2));
    let b = FoliationForm::new(&ParameterPoint::ints(2, 4));
    let two = cas_kernel::RF::from_int(a.ctx(), 2);
    assert!(a.omega.scale(&two).sub(&b.omega).is_zero());
}

#[test]
fn invariant_curves_one_to_six() {
    let certs = invariant_curves(&[1, 2, 3, 4, 5, 6]);
    for (n, c) in (1..=6).zip(certs) {
        let c = c.unwrap();
        assert!(c.invariant && c.reverified, "n = {n}");
        assert_eq!(c.curve_degree, n + 1);
        assert_eq!(c.quotient_degree, Some(c.wedge_degree - c.curve_degree));
        assert!(!c.generalized);
    }
}

#[test]
fn generalized_curves() {
    for (p, q, c) in [(2, 3, ratio(5, 2)), (1, 4, rat(-3)), (3, 2, ratio(1, 7))] {
        let cert = invariant_curve_check(p, q, &c).unwrap();
        assert!(cert.invariant && cert.reverified && cert.generalized);
    }
    // the exponents must match the parameters
    let f = curve_polynomial(2, 1, &Rational::from_integer(1.into()));
    assert!(!certify_curve(&f, &rat(3), &rat(1)).0);
}

#[test]
fn quintic_components_are_invariant() {
    let f = FoliationForm::new(&ParameterPoint::symbolic());
    for c in quintic_invariance(&f).unwrap() {
        assert!(c.invariant, "{}", c.component);
    }
}

fn nonzero_small() -> impl Strategy<Value = Rational> {
    (1i64..12, 1i64..6, any::<bool>()).prop_map(|(n, d, s)| ratio(if s { n } else { -n }, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(5))]

    #[test]
    fn affine_singularities_are_the_listed_ones(a in nonzero_small(), b in nonzero_small()) {
        prop_assume!(a.clone() + b.clone() != rat(0));
        let f = FoliationForm::new(&ParameterPoint::rational(a, b));
        let r = affine_resultant_check(&f).unwrap();
        prop_assert!(!r.resultant.is_zero());
        prop_assert!(r.only_listed_roots);
    }
}
