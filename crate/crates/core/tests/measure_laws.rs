use proptest::prelude::*;
use tame_measure::measures::{check_product_property, eta, eta_family, evaluate, pi_outer, rho_cld, xi, MeasureId};
use tame_measure::oracle::{GenConfig, RectCase, TameGen};
use tame_measure::{ext_add, ext_mul, ExtReal, Rational, Set1D, Set2D};

fn pair(seed: u64) -> (Set2D, Set2D) {
    let mut g = TameGen::new(GenConfig::new(seed)).unwrap();
    (g.set2d(), g.set2d())
}

const ADDITIVE: [MeasureId; 4] = [MeasureId::Pi, MeasureId::Rho, MeasureId::Xi, MeasureId::Eta];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn eta_splits_into_rho_and_xi(seed in any::<u64>(), n in 0i64..20, d in 1i64..5) {
        let (e, _) = pair(seed);
        let t = Rational::new(n, d);
        prop_assert_eq!(eta(&e), ext_add(&rho_cld(&e), &xi(&e)));
        let weighted = ext_mul(&ExtReal::finite(t.clone()).unwrap(), &xi(&e));
        prop_assert_eq!(eta_family(&t, &e).unwrap(), ext_add(&rho_cld(&e), &weighted));
        prop_assert!(xi(&e) <= ExtReal::one());
        prop_assert!(rho_cld(&e) <= pi_outer(&e));
        if e.graphs().is_empty() {
            prop_assert_eq!(pi_outer(&e), rho_cld(&e));
        }
    }

    #[test]
    fn split_by_second_set_is_additive(seed in any::<u64>()) {
        let (a, b) = pair(seed);
        let (inside, outside) = (a.intersect(&b), a.difference(&b));
        prop_assert!(inside.intersect(&outside).is_empty());
        prop_assert!(inside.union(&outside).set_eq(&a));
        for m in ADDITIVE {
            prop_assert_eq!(evaluate(&m, &a), ext_add(&evaluate(&m, &inside), &evaluate(&m, &outside)), "{}", m);
        }
    }

    #[test]
    fn union_is_subadditive_and_monotone(seed in any::<u64>()) {
        let (a, b) = pair(seed);
        let u = a.union(&b);
        for m in ADDITIVE {
            let (va, vb, vu) = (evaluate(&m, &a), evaluate(&m, &b), evaluate(&m, &u));
            prop_assert!(va <= vu && vb <= vu);
            prop_assert!(vu <= ext_add(&va, &vb));
        }
    }

    #[test]
    fn pi_and_rho_ignore_vertical_shifts(seed in any::<u64>(), n in -12i64..12, d in 1i64..7) {
        let (e, _) = pair(seed);
        let c = Rational::new(n, d);
        let moved = e.vshift(&c);
        prop_assert_eq!(pi_outer(&moved), pi_outer(&e));
        prop_assert_eq!(rho_cld(&moved), rho_cld(&e));
        prop_assert_eq!(moved.vshift(&-c), e);
    }

    #[test]
    fn rectangles_have_product_measure(seed in any::<u64>(), which in 0usize..3) {
        let mut g = TameGen::new(GenConfig::new(seed)).unwrap();
        let (a, b) = g.rect_factors_for(RectCase::ALL[which]);
        for m in [MeasureId::Pi, MeasureId::Rho, MeasureId::Eta, MeasureId::eta_t(Rational::new(5, 3)).unwrap()] {
            let check = check_product_property(&m, &a, &b).unwrap();
            prop_assert!(check.holds(), "{} on rect({}, {}): {:?}", m, a, b, check);
        }
    }

    #[test]
    fn set_algebra_laws(seed in any::<u64>()) {
        let mut g = TameGen::new(GenConfig::new(seed)).unwrap();
        let (a, b, c) = (g.set2d(), g.set2d(), g.set2d());
        let universe = Set2D::rect(Set1D::unit(), Set1D::reals()).unwrap();
        prop_assert!(a.union(&b).set_eq(&b.union(&a)));
        prop_assert!(a.intersect(&b).set_eq(&b.intersect(&a)));
        prop_assert!(a.difference(&a).is_empty());
        prop_assert!(a.intersect(&b.union(&c)).set_eq(&a.intersect(&b).union(&a.intersect(&c))));
        let lhs = universe.difference(&a.union(&b));
        let rhs = universe.difference(&a).intersect(&universe.difference(&b));
        prop_assert!(lhs.set_eq(&rhs));
        for s in [a.union(&b), a.intersect(&c), b.difference(&c), lhs] {
            prop_assert!(s.is_normalized(), "{}", s);
        }
    }
}

#[test]
fn diagonal_shift_changes_every_positive_weight() {
    let diag = Set2D::diagonal();
    for c in [Rational::new(-1, 2), Rational::new(1, 7), Rational::from_integer(3)] {
        let moved = diag.vshift(&c);
        for t in [Rational::new(1, 100), Rational::one(), Rational::from_integer(9)] {
            assert_eq!(eta_family(&t, &diag).unwrap(), ExtReal::finite(t.clone()).unwrap());
            assert_eq!(eta_family(&t, &moved).unwrap(), ExtReal::zero());
        }
        assert_eq!(eta_family(&Rational::zero(), &moved).unwrap(), eta_family(&Rational::zero(), &diag).unwrap());
    }
}
