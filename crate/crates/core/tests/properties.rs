//! Property tests over randomly generated algebraic elements and surfaces.

use proptest::prelude::*;
use tsqft_core::group_ring::{GroupRingElement, HomologyLattice, RingMap};

fn lattice() -> HomologyLattice {
    HomologyLattice::new(vec!["q1", "q2"]).unwrap()
}

fn arb_element() -> impl Strategy<Value = GroupRingElement> {
    prop::collection::vec(((-3i64..=3, -3i64..=3), -4i64..=4), 0..5).prop_map(|terms| {
        let l = lattice();
        let mut out = GroupRingElement::zero(&l);
        for ((e1, e2), c) in terms {
            out = out
                .add(&GroupRingElement::monomial(&l, vec![e1, e2], c))
                .unwrap();
        }
        out
    })
}

fn arb_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, 2), 2)
}

proptest! {
    #[test]
    fn addition_commutes(a in arb_element(), b in arb_element()) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
    }

    #[test]
    fn multiplication_associates(a in arb_element(), b in arb_element(), c in arb_element()) {
        prop_assert_eq!(
            a.mul(&b).unwrap().mul(&c).unwrap(),
            a.mul(&b.mul(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn multiplication_distributes(a in arb_element(), b in arb_element(), c in arb_element()) {
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn one_is_neutral(a in arb_element()) {
        let one = GroupRingElement::one(a.lattice());
        prop_assert_eq!(a.mul(&one).unwrap(), a);
    }

    #[test]
    fn unit_iff_invertible(a in arb_element()) {
        match a.unit_inverse() {
            Some(inv) => {
                prop_assert!(a.is_unit());
                prop_assert_eq!(a.mul(&inv).unwrap(), GroupRingElement::one(a.lattice()));
            }
            None => prop_assert!(!a.is_unit()),
        }
    }

    #[test]
    fn reduce_mod2_multiplicative(a in arb_element(), b in arb_element()) {
        prop_assert_eq!(
            a.mul(&b).unwrap().reduce_mod2(),
            a.reduce_mod2() * b.reduce_mod2()
        );
    }

    #[test]
    fn pushforward_is_ring_map(a in arb_element(), b in arb_element(), m in arb_matrix()) {
        let f = RingMap::new(lattice(), lattice(), m).unwrap();
        prop_assert_eq!(
            f.apply(&a.mul(&b).unwrap()).unwrap(),
            f.apply(&a).unwrap().mul(&f.apply(&b).unwrap()).unwrap()
        );
        prop_assert_eq!(
            f.apply(&a.add(&b).unwrap()).unwrap(),
            f.apply(&a).unwrap().add(&f.apply(&b).unwrap()).unwrap()
        );
        if a.is_unit() {
            prop_assert!(f.apply(&a).unwrap().is_unit());
        }
    }

    #[test]
    fn unit_orbit_equivalence(a in arb_element(), e1 in -2i64..=2, e2 in -2i64..=2, s in prop::bool::ANY) {
        // reflexive and stable under multiplying by any unit
        prop_assert!(a.unit_orbit_eq(&a).unwrap());
        let u = GroupRingElement::monomial(&lattice(), vec![e1, e2], if s { 1 } else { -1 });
        let ua = a.mul(&u).unwrap();
        prop_assert!(a.unit_orbit_eq(&ua).unwrap());
        prop_assert!(ua.unit_orbit_eq(&a).unwrap());
    }

    #[test]
    fn serialization_round_trips(a in arb_element()) {
        let js = serde_json::to_string(&a).unwrap();
        let back: GroupRingElement = serde_json::from_str(&js).unwrap();
        prop_assert_eq!(a, back);
    }
}

mod surfaces {
    use proptest::prelude::*;
    use tsqft_core::corpus::random_surface;
    use tsqft_core::rng::SplitMix64;
    use tsqft_core::surface::QuadSurface;

    proptest! {
        #[test]
        fn random_surface_invariants(seed in 0u64..5000) {
            let mut rng = SplitMix64::new(seed);
            let qs = random_surface(&mut rng, 5);
            prop_assert!(qs.validate().is_ok());
            let st = qs.stats().unwrap();
            prop_assert_eq!(st.index, st.vertex_pairs - st.euler_char);
            // round trip through the spine
            let (spine, _) = qs.spine(true).unwrap();
            prop_assert!(spine.spine_check().unwrap().is_spine());
            let rebuilt = QuadSurface::reconstruct(&spine).unwrap();
            let st2 = rebuilt.stats().unwrap();
            prop_assert_eq!(st.euler_char, st2.euler_char);
            prop_assert_eq!(st.vertex_pairs, st2.vertex_pairs);
        }

        #[test]
        fn json_round_trip(seed in 0u64..2000) {
            let mut rng = SplitMix64::new(seed);
            let qs = random_surface(&mut rng, 5);
            let js = serde_json::to_string(&qs).unwrap();
            let back: QuadSurface = serde_json::from_str(&js).unwrap();
            prop_assert_eq!(qs, back);
        }
    }
}
