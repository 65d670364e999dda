use cas_kernel::forms::{Mat2, MatrixOneForm, OneForm};
use cas_kernel::{ratio, resultant, Context, CurveParametrization, Polynomial, QuadExt, Substitution, RF};
use proptest::prelude::*;

fn ctx() -> Context {
    Context::new(&["x", "y"])
}

prop_compose! {
    fn small_poly()(terms in prop::collection::vec((0u16..3, 0u16..3, -4i64..5, 1i64..4), 1..5)) -> Polynomial {
        let c = ctx();
        terms.into_iter().fold(Polynomial::zero(&c), |acc, (a, b, n, d)| {
            acc + Polynomial::monomial(&c, ratio(n, d), &[a, b])
        })
    }
}

prop_compose! {
    fn nonzero_poly()(p in small_poly().prop_filter("nonzero", |p| !p.is_zero())) -> Polynomial { p }
}

prop_compose! {
    fn small_rf()(n in small_poly(), d in nonzero_poly()) -> RF { RF::new(n, d) }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(a in small_rf(), b in small_rf(), c in small_rf()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        if !a.is_zero() {
            prop_assert!(a.div(&a).is_one());
        }
    }

    #[test]
    fn leibniz(a in small_rf(), b in small_rf()) {
        for v in 0..2 {
            let lhs = a.mul(&b).derivative(v);
            let rhs = a.derivative(v).mul(&b).add(&a.mul(&b.derivative(v)));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn d_squared_vanishes(a in small_rf()) {
        prop_assert!(OneForm::exact(&a, &[0, 1]).d().is_zero());
    }

    #[test]
    fn gcd_divides_both(a in nonzero_poly(), b in nonzero_poly(), c in nonzero_poly()) {
        let f = a.mul(&c);
        let g = b.mul(&c);
        let h = cas_kernel::gcd::gcd(&f, &g);
        prop_assert!(f.div_exact(&h).is_some());
        prop_assert!(g.div_exact(&h).is_some());
        // the common factor is recovered up to a scalar
        prop_assert!(h.div_exact(&c).is_some() || c.is_constant());
    }

    #[test]
    fn resultant_is_product_over_roots(r1 in -5i64..6, r2 in -5i64..6, s in -5i64..6) {
        let c = Context::new(&["t"]);
        let t = Polynomial::var(&c, 0);
        let k = |n| Polynomial::from_int(&c, n);
        let p = (&t - &k(r1)) * (&t - &k(r2));
        let q = &t - &k(s);
        let r = resultant(&p, &q, 0).unwrap();
        prop_assert_eq!(r, k((s - r1) * (s - r2)));
    }

    #[test]
    fn norm_is_multiplicative(a in small_rf(), b in small_rf(), c in small_rf(), d in small_rf(), e in nonzero_poly()) {
        let disc = QuadExt::field(RF::from_poly(e));
        let u = QuadExt::new(a, b, &disc);
        let v = QuadExt::new(c, d, &disc);
        prop_assert_eq!(u.mul(&v).norm(), u.norm().mul(&v.norm()));
    }

    #[test]
    fn residue_scales_linearly(k in -6i64..7, m in -3i64..4) {
        // Ω = k·M·d(x - y)/(x - y) with M = [[1, m], [0, -1]]
        let c = ctx();
        let h = RF::var(&c, 0).sub(&RF::var(&c, 1)).inv();
        let mm = Mat2::new(RF::one(&c), RF::from_int(&c, m), RF::zero(&c), RF::from_int(&c, -1));
        let kk = RF::from_int(&c, k);
        let om = MatrixOneForm::from_components(
            &[0, 1],
            &[mm.map(|e| e.mul(&h).mul(&kk)), mm.map(|e| e.mul(&h).mul(&kk).neg())],
        );
        let u = Context::new(&["u"]);
        let uu = RF::var(&u, 0);
        let curve = CurveParametrization::new("u", Substitution::new(&c, &u, vec![uu.clone(), uu]));
        let f = Polynomial::var(&c, 0) - Polynomial::var(&c, 1);
        let r = cas_kernel::residue_along(&om, &f, &curve).unwrap();
        prop_assert_eq!(r.det(), RF::from_int(&u, -k * k));
        prop_assert!(r.trace().is_zero());
    }
}
