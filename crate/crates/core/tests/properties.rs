use num_traits::Zero;
use proptest::prelude::*;

use topfan_core::charts::{check_cocycle, check_conjugation_equivariant, kernel_presentation, kernel_residual};
use topfan_core::equivalence::{equivalent, EquivMode};
use topfan_core::invariants::{betti_numbers, graded_ranks, todd_genus_seeded};
use topfan_core::io::{fan_to_json, parse_fan};
use topfan_core::linalg::mat_mul;
use topfan_core::random::random_valid_fan_seeded;
use topfan_core::rational::ratio;
use topfan_core::realize::surgery::{stellar_subdivide_fan, suspend_fan};
use topfan_core::ring::{pairing, RElem, RVec};
use topfan_core::TopologicalFan;

fn relem() -> impl Strategy<Value = RElem> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4, -3i64..=3).prop_map(|(bn, bd, cn, cd, v)| RElem::new(ratio(bn, bd), ratio(cn, cd), v))
}

fn s_elem() -> impl Strategy<Value = RElem> {
    (1i64..=6, 1i64..=4, -6i64..=6, 1i64..=4, prop::bool::ANY)
        .prop_map(|(bn, bd, cn, cd, pos)| RElem::new(ratio(bn, bd), ratio(cn, cd), if pos { 1 } else { -1 }))
}

fn fan() -> impl Strategy<Value = TopologicalFan> {
    any::<u64>().prop_map(|seed| random_valid_fan_seeded(seed, 3, 8))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in relem(), b in relem(), c in relem()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &RElem::one(), a.clone());
        prop_assert_eq!(&RElem::one() * &a, a.clone());
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        prop_assert_eq!((&a * &b).as_matrix(), mat_mul(&a.as_matrix(), &b.as_matrix()));
    }

    #[test]
    fn s_is_closed_under_products(a in s_elem(), b in s_elem()) {
        prop_assert!((&a * &b).in_s());
    }

    #[test]
    fn dual_bases_are_dual(f in fan()) {
        for facet in f.complex.facets() {
            let db = f.dual_basis(facet).unwrap();
            let betas: Vec<RVec> = f.rvecs(facet);
            for (i, a) in db.alphas.iter().enumerate() {
                for (j, b) in betas.iter().enumerate() {
                    let p = pairing(a, b).unwrap();
                    let ok = if i == j { p.is_one() } else { p.is_zero() };
                    prop_assert!(ok);
                }
            }
        }
    }

    #[test]
    fn h_canonical_form_is_idempotent_and_equivalent(f in fan()) {
        let h = f.h_canonical_form();
        prop_assert_eq!(h.h_canonical_form(), h.clone());
        prop_assert!(equivalent(&f, &h, EquivMode::H).is_some());
    }

    #[test]
    fn right_multiplication_by_s_preserves_validity(f in fan(), mus in prop::collection::vec(s_elem(), 8)) {
        let g = f.right_multiply(&mus[..f.m()]);
        prop_assert!(g.validate().is_valid());
        prop_assert!(equivalent(&f, &g, EquivMode::H).is_some());
    }

    #[test]
    fn kernel_generators_vanish(f in fan()) {
        for facet in f.complex.facets() {
            let p = kernel_presentation(&f, facet).unwrap();
            for g in &p.generators {
                let r = kernel_residual(&f, g);
                prop_assert!(r.b.iter().all(Zero::is_zero) && r.c.iter().all(Zero::is_zero) && r.v.iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn cocycle_holds(f in fan()) {
        prop_assert_eq!(check_cocycle(&f).unwrap(), None);
    }

    #[test]
    fn involutive_fans_are_conjugation_equivariant(f in fan()) {
        let mut g = f.clone();
        for r in &mut g.rays {
            r.c.iter_mut().for_each(|x| *x = Zero::zero());
        }
        prop_assert!(g.check_involutive());
        prop_assert!(check_conjugation_equivariant(&g).unwrap());
    }

    #[test]
    fn betti_equals_graded_rank(f in fan()) {
        let h = betti_numbers(&f);
        let g: Vec<i64> = graded_ranks(&f).into_iter().map(|x| x as i64).collect();
        prop_assert_eq!(h, g);
    }

    #[test]
    fn todd_genus_is_direction_independent(f in fan(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let (t1, _) = todd_genus_seeded(&f, s1).unwrap();
        let (t2, _) = todd_genus_seeded(&f, s2).unwrap();
        prop_assert_eq!(t1, t2);
    }

    #[test]
    fn surgeries_preserve_validity(f in fan(), pick in any::<prop::sample::Index>()) {
        let s = suspend_fan(&f).unwrap();
        prop_assert!(s.validate().is_valid());
        if f.n >= 2 {
            let facet = pick.get(f.complex.facets()).clone();
            let t = stellar_subdivide_fan(&f, &facet).unwrap();
            prop_assert!(t.validate().is_valid());
        }
    }

    #[test]
    fn fan_json_round_trips(f in fan()) {
        prop_assert_eq!(parse_fan(&fan_to_json(&f)).unwrap(), f);
    }
}
