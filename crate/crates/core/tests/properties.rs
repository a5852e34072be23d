//! Randomized algebraic laws, driven by proptest over generator seeds and
//! catalog indices. Shrinking lands on the smallest seed that breaks a law.

use lgroup_core::conjugacy::{conjugate_by_point, pointwise_compare};
use lgroup_core::lsubset::LPoint;
use lgroup_core::verify::{gen_instance, Bounds, Instance, LatticeKind};
use proptest::prelude::*;

fn small_bounds() -> Bounds {
    Bounds {
        max_group_order: 12,
        max_lattice_size: 7,
        lattice_kind: LatticeKind::Any,
    }
}

fn instance(seed: u64) -> Instance {
    gen_instance(seed, &small_bounds()).expect("bounded seeds always generate")
}

proptest! {
    #[test]
    fn lattice_laws_hold(seed in 0u64..2000, i in 0usize..64, j in 0usize..64, k in 0usize..64) {
        let inst = instance(seed);
        let l = &inst.lattice;
        let pick = |n: usize| {
            let elts: Vec<_> = l.elements().collect();
            elts[n % elts.len()]
        };
        let (a, b, c) = (pick(i), pick(j), pick(k));
        // Commutativity, associativity, idempotence, absorption.
        prop_assert_eq!(l.meet(a, b), l.meet(b, a));
        prop_assert_eq!(l.join(a, b), l.join(b, a));
        prop_assert_eq!(l.meet(a, l.meet(b, c)), l.meet(l.meet(a, b), c));
        prop_assert_eq!(l.join(a, l.join(b, c)), l.join(l.join(a, b), c));
        prop_assert_eq!(l.meet(a, a), a);
        prop_assert_eq!(l.join(a, a), a);
        prop_assert_eq!(l.meet(a, l.join(a, b)), a);
        prop_assert_eq!(l.join(a, l.meet(a, b)), a);
        // Order compatibility.
        prop_assert_eq!(l.leq(a, b), l.meet(a, b) == a);
        prop_assert_eq!(l.leq(a, b), l.join(a, b) == b);
        prop_assert!(l.leq(l.bottom(), a));
        prop_assert!(l.leq(a, l.top()));
    }

    #[test]
    fn group_laws_hold(seed in 0u64..2000, i in 0usize..64, j in 0usize..64, k in 0usize..64) {
        let inst = instance(seed);
        let g = &inst.group;
        let pick = |n: usize| {
            let elts: Vec<_> = g.elements().collect();
            elts[n % elts.len()]
        };
        let (x, y, z) = (pick(i), pick(j), pick(k));
        let e = g.identity();
        prop_assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
        prop_assert_eq!(g.mul(x, e), x);
        prop_assert_eq!(g.mul(e, x), x);
        prop_assert_eq!(g.mul(x, g.inv(x)), e);
        // Conjugation by a fixed element is an automorphism.
        prop_assert_eq!(
            g.conj(z, g.mul(x, y)),
            g.mul(g.conj(z, x), g.conj(z, y))
        );
        prop_assert_eq!(g.conj(z, g.inv(x)), g.inv(g.conj(z, x)));
    }

    #[test]
    fn levels_shrink_as_the_threshold_rises(seed in 0u64..500) {
        let inst = instance(seed);
        let l = &inst.lattice;
        for a in l.elements() {
            for b in l.elements() {
                if l.leq(a, b) {
                    let wide = inst.mu.level_set(a);
                    let narrow = inst.mu.level_set(b);
                    prop_assert!(
                        narrow.is_subset(&wide),
                        "level at {} not inside level at {}",
                        l.label(b),
                        l.label(a)
                    );
                }
            }
        }
    }

    #[test]
    fn conjugate_tip_is_the_meet(seed in 0u64..500) {
        let inst = instance(seed);
        for p in &inst.points {
            let conj = conjugate_by_point(&inst.eta, p);
            prop_assert_eq!(
                conj.tip(),
                inst.lattice.meet(p.value, inst.eta.tip())
            );
        }
    }

    #[test]
    fn double_conjugation_returns_to_the_meet(seed in 0u64..500) {
        let inst = instance(seed);
        let l = &inst.lattice;
        for p in &inst.points {
            let there = conjugate_by_point(&inst.eta, p);
            let back = conjugate_by_point(&there, &LPoint::new(p.value, inst.group.inv(p.at)));
            for x in inst.group.elements() {
                prop_assert_eq!(back.eval(x), l.meet(p.value, inst.eta.eval(x)));
            }
        }
    }

    #[test]
    fn generation_is_reproducible(seed in 0u64..1000) {
        let a = instance(seed);
        let b = instance(seed);
        prop_assert_eq!(&a.descriptor, &b.descriptor);
        prop_assert!(pointwise_compare(&a.mu, &b.mu).unwrap().equal);
        prop_assert!(pointwise_compare(&a.eta, &b.eta).unwrap().equal);
        prop_assert_eq!(a.points, b.points);
        prop_assert_eq!(a.nu.is_some(), b.nu.is_some());
        prop_assert_eq!(a.hom.is_some(), b.hom.is_some());
    }

    #[test]
    fn constructed_subjects_satisfy_both_membership_routes(seed in 0u64..500) {
        let inst = instance(seed);
        prop_assert!(inst.mu.is_l_subgroup());
        prop_assert!(inst.mu.is_l_subgroup_levelwise());
        prop_assert!(inst.eta.is_l_subgroup_of(&inst.mu).unwrap());
        prop_assert!(inst.eta.is_l_subgroup_of_levelwise(&inst.mu).unwrap());
        for p in &inst.points {
            prop_assert!(inst.mu.has_point(p));
        }
    }
}
