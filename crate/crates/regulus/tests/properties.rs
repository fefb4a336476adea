//! Randomized invariant checks over small generated instances.

use std::sync::Arc;

use proptest::prelude::*;

use regulus::cofinality::{cofinal_via_colimit, is_cofinal, CofinalityLevel};
use regulus::completion::{closure_search, eval_recipe, membership_via_elements, ShapeClass};
use regulus::fincat::{self, FiniteCategory, FunctorData};
use regulus::homotopy::{homology, nerve, smith_invariant_factors};
use regulus::presheaf::{are_isomorphic, set_colimit, terminal_presheaf, SetDiagram};
use regulus::verdict::{Bounds, VerdictStatus};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// A random poset on `n` points: an upper-triangular relation, transitively
/// closed. Antisymmetry is automatic because the order refines the numeric
/// one.
fn poset_strategy(max_n: usize) -> impl Strategy<Value = Arc<FiniteCategory>> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let mut le = vec![false; n * n];
            for a in 0..n {
                le[a * n + a] = true;
                for b in a + 1..n {
                    le[a * n + b] = bits[a * n + b];
                }
            }
            for k in 0..n {
                for a in 0..n {
                    for b in 0..n {
                        if le[a * n + k] && le[k * n + b] {
                            le[a * n + b] = true;
                        }
                    }
                }
            }
            fincat::poset(n, |a, b| le[a * n + b])
        })
    })
}

/// A random set diagram over a composite-free shape, so any choice of edge
/// functions is functorial.
fn set_diagram_strategy() -> impl Strategy<Value = SetDiagram> {
    (0usize..5).prop_flat_map(|which| {
        let shape = match which {
            0 => fincat::terminal_category(),
            1 => fincat::discrete(2),
            2 => fincat::chain(1),
            3 => fincat::parallel_pair(),
            _ => fincat::span(),
        };
        let n = shape.n_objects();
        proptest::collection::vec(1usize..=4, n).prop_flat_map(move |sets| {
            let shape = shape.clone();
            let m = shape.n_morphisms();
            let ranges: Vec<_> = (0..m)
                .map(|u| {
                    let (s, t) = (sets[shape.src(u)], sets[shape.tgt(u)]);
                    proptest::collection::vec(0..t, s)
                })
                .collect();
            let sets2 = sets.clone();
            ranges.prop_map(move |mut maps| {
                for o in 0..shape.n_objects() {
                    maps[shape.identity[o]] = (0..sets2[o]).collect();
                }
                SetDiagram { shape: shape.clone(), sets: sets2.clone(), maps }
            })
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn set_colimit_is_a_compatible_surjective_quotient(d in set_diagram_strategy()) {
        prop_assert!(d.validate().is_ok());
        let (size, cocones) = set_colimit(&d);
        let total: usize = d.sets.iter().sum();
        prop_assert!(size <= total);
        let mut hit = vec![false; size];
        for (o, co) in cocones.iter().enumerate() {
            prop_assert_eq!(co.len(), d.sets[o]);
            for &c in co {
                prop_assert!(c < size);
                hit[c] = true;
            }
        }
        prop_assert!(hit.iter().all(|&h| h) || total == 0);
        let j = &d.shape;
        for u in 0..j.n_morphisms() {
            let (a, b) = (j.src(u), j.tgt(u));
            for x in 0..d.sets[a] {
                prop_assert_eq!(cocones[a][x], cocones[b][d.maps[u][x]]);
            }
        }
    }

    #[test]
    fn opposite_is_an_involution(c in poset_strategy(4)) {
        prop_assert!(c.is_valid());
        prop_assert_eq!(&c.opposite().opposite(), &*c);
    }

    #[test]
    fn nerve_is_a_chain_complex_with_consistent_euler(c in poset_strategy(4)) {
        let n = nerve(&c, 4);
        prop_assert!(n.boundary_squares_to_zero());
        // a poset on at most 4 points has no nondegenerate 4-chains
        prop_assert_eq!(n.simplex_count(4), 0);
        let h = homology(&n, false);
        if h.torsion.iter().all(|t| t.is_empty()) {
            prop_assert_eq!(n.euler_characteristic(), h.euler_from_betti());
        }
    }

    #[test]
    fn closure_criteria_never_contradict_on_posets(c in poset_strategy(3)) {
        let class = ShapeClass::new("pairs", vec![fincat::discrete(2)]);
        let bounds = Bounds { max_stage: 2, max_objects_per_stage: 12, max_diagrams: 200 };
        let target = terminal_presheaf(&c);
        let direct = closure_search(&c, &class, &target, bounds);
        let via = membership_via_elements(&c, &class, &target, bounds);
        let contradiction = matches!(
            (direct.status, via.status),
            (VerdictStatus::Member, VerdictStatus::NonMember)
                | (VerdictStatus::NonMember, VerdictStatus::Member)
        );
        prop_assert!(!contradiction);
        if let Some(cert) = &direct.certificate {
            let value = eval_recipe(&c, &class, cert).unwrap();
            prop_assert!(are_isomorphic(&value, &target).is_some());
        }
    }

    #[test]
    fn identity_functor_is_cofinal_both_ways(c in poset_strategy(4)) {
        let id = FunctorData::identity(&c);
        let v = is_cofinal(&id, CofinalityLevel::Connected);
        prop_assert!(v.is_cofinal());
        prop_assert!(cofinal_via_colimit(&id));
    }

    #[test]
    fn smith_invariant_factors_form_a_divisibility_chain(
        entries in proptest::collection::vec(-4i64..=4, 9)
    ) {
        let matrix: Vec<Vec<BigInt>> =
            entries.chunks(3).map(|row| row.iter().map(|&e| BigInt::from(e)).collect()).collect();
        let factors = smith_invariant_factors(&matrix);
        for f in &factors {
            prop_assert!(!f.is_zero());
            prop_assert!(f.is_positive());
        }
        for w in factors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero(), "{} does not divide {}", w[0], w[1]);
        }
    }
}
