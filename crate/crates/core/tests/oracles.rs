//! Brute-force re-implementations of every core operation, compared against
//! the engine on fixed samples and on seeded generated instances.
//!
//! Each oracle is written as the most naive possible double (or triple) loop
//! so that a reader can audit it line by line against the definitions.

use lgroup_core::conjugacy::{conjugate_by_point, conjugate_by_subset, generated};
use lgroup_core::fixtures;
use lgroup_core::group::{FiniteGroup, GroupHom};
use lgroup_core::lattice::{Lattice, LatticeElt};
use lgroup_core::lsubset::{image, preimage, LPoint, LSubset};
use lgroup_core::normality::{coset, normalizer_setproduct, CosetSide};
use lgroup_core::verify::{gen_instance, Bounds, Instance, LatticeKind};
use std::sync::Arc;

fn instances(count: u64, bounds: &Bounds) -> Vec<Instance> {
    (0..count)
        .map(|seed| gen_instance(seed, bounds).expect("seeded instance"))
        .collect()
}

fn set_product_oracle(eta: &LSubset, nu: &LSubset) -> LSubset {
    let g = eta.group().clone();
    let l = eta.lattice().clone();
    let values: Vec<LatticeElt> = g
        .elements()
        .map(|x| {
            let mut best = l.bottom();
            for y in g.elements() {
                for z in g.elements() {
                    if g.mul(y, z) == x {
                        best = l.join(best, l.meet(eta.eval(y), nu.eval(z)));
                    }
                }
            }
            best
        })
        .collect();
    LSubset::new(g, l, values).unwrap()
}

fn conjugate_by_subset_oracle(theta: &LSubset, eta: &LSubset) -> LSubset {
    let g = theta.group().clone();
    let l = theta.lattice().clone();
    let values: Vec<LatticeElt> = g
        .elements()
        .map(|x| {
            let mut best = l.bottom();
            for z in g.elements() {
                best = l.join(best, l.meet(theta.eval(z), eta.eval(g.conj(z, x))));
            }
            best
        })
        .collect();
    LSubset::new(g, l, values).unwrap()
}

fn image_oracle(f: &GroupHom, s: &LSubset) -> LSubset {
    let codomain = f.codomain().clone();
    let l = s.lattice().clone();
    let values: Vec<LatticeElt> = codomain
        .elements()
        .map(|y| {
            let mut best = l.bottom();
            for x in f.domain().elements() {
                if f.apply(x) == y {
                    best = l.join(best, s.eval(x));
                }
            }
            best
        })
        .collect();
    LSubset::new(codomain, l, values).unwrap()
}

fn preimage_oracle(f: &GroupHom, t: &LSubset) -> LSubset {
    let domain = f.domain().clone();
    let l = t.lattice().clone();
    let values: Vec<LatticeElt> = domain.elements().map(|x| t.eval(f.apply(x))).collect();
    LSubset::new(domain, l, values).unwrap()
}

/// Every L-subset sigma with eta ≤ sigma ≤ mu pointwise, enumerated by a
/// mixed-radix counter over the per-element candidate lists.
fn all_between(eta: &LSubset, mu: &LSubset) -> Vec<LSubset> {
    let g = eta.group().clone();
    let l = eta.lattice().clone();
    let slots: Vec<Vec<LatticeElt>> = g
        .elements()
        .map(|x| {
            l.elements()
                .filter(|t| l.leq(eta.eval(x), *t) && l.leq(*t, mu.eval(x)))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut digits = vec![0usize; slots.len()];
    loop {
        let values: Vec<LatticeElt> = digits
            .iter()
            .zip(&slots)
            .map(|(&d, slot)| slot[d])
            .collect();
        out.push(LSubset::new(g.clone(), l.clone(), values).unwrap());
        let mut i = 0;
        loop {
            if i == digits.len() {
                return out;
            }
            digits[i] += 1;
            if digits[i] < slots[i].len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn set_product_matches_the_double_loop() {
    let bounds = Bounds {
        max_group_order: 10,
        max_lattice_size: 6,
        lattice_kind: LatticeKind::Any,
    };
    for inst in instances(30, &bounds) {
        let nu = inst.nu.as_ref().unwrap_or(&inst.eta);
        let engine = inst.eta.set_product(nu).unwrap();
        assert_eq!(engine, set_product_oracle(&inst.eta, nu), "{}", inst.descriptor);
        let swapped = nu.set_product(&inst.eta).unwrap();
        assert_eq!(swapped, set_product_oracle(nu, &inst.eta), "{}", inst.descriptor);
    }
    let s = fixtures::s4_over_m();
    assert_eq!(
        s.mu.set_product(&s.eta).unwrap(),
        set_product_oracle(&s.mu, &s.eta)
    );
}

#[test]
fn subset_conjugation_matches_the_double_loop() {
    let bounds = Bounds {
        max_group_order: 10,
        max_lattice_size: 6,
        lattice_kind: LatticeKind::Any,
    };
    for inst in instances(30, &bounds) {
        let theta = inst.nu.as_ref().unwrap_or(&inst.mu);
        let engine = conjugate_by_subset(theta, &inst.eta).unwrap();
        assert_eq!(
            engine,
            conjugate_by_subset_oracle(theta, &inst.eta),
            "{}",
            inst.descriptor
        );
    }
    let d = fixtures::d16_over_chain();
    assert_eq!(
        conjugate_by_subset(&d.mu, &d.eta).unwrap(),
        conjugate_by_subset_oracle(&d.mu, &d.eta)
    );
}

#[test]
fn point_conjugation_agrees_with_its_subset_form() {
    let bounds = Bounds {
        max_group_order: 12,
        max_lattice_size: 7,
        lattice_kind: LatticeKind::Any,
    };
    for inst in instances(40, &bounds) {
        for p in &inst.points {
            let as_subset =
                LSubset::from_point(inst.group.clone(), inst.lattice.clone(), *p);
            assert_eq!(
                conjugate_by_point(&inst.eta, p),
                conjugate_by_subset_oracle(&as_subset, &inst.eta),
                "{}",
                inst.descriptor
            );
        }
    }
}

#[test]
fn cosets_agree_with_the_generic_product() {
    let bounds = Bounds {
        max_group_order: 10,
        max_lattice_size: 6,
        lattice_kind: LatticeKind::Any,
    };
    for inst in instances(25, &bounds) {
        for p in &inst.points {
            let point =
                LSubset::from_point(inst.group.clone(), inst.lattice.clone(), *p);
            assert_eq!(
                coset(CosetSide::Left, p, &inst.eta),
                set_product_oracle(&point, &inst.eta),
                "{}",
                inst.descriptor
            );
            assert_eq!(
                coset(CosetSide::Right, p, &inst.eta),
                set_product_oracle(&inst.eta, &point),
                "{}",
                inst.descriptor
            );
        }
    }
}

#[test]
fn image_and_preimage_match_the_fiber_loops() {
    let bounds = Bounds {
        max_group_order: 16,
        max_lattice_size: 8,
        lattice_kind: LatticeKind::Any,
    };
    let mut seen_hom = 0;
    for inst in instances(60, &bounds) {
        let Some(f) = &inst.hom else { continue };
        seen_hom += 1;
        for s in [&inst.mu, &inst.eta] {
            let img = image(f, s).unwrap();
            assert_eq!(img, image_oracle(f, s), "{}", inst.descriptor);
            let back = preimage(f, &img).unwrap();
            assert_eq!(back, preimage_oracle(f, &img), "{}", inst.descriptor);
        }
    }
    assert!(seen_hom >= 10, "only {seen_hom} instances carried a homomorphism");
}

#[test]
fn normalizer_matches_a_product_based_reimplementation() {
    let bounds = Bounds {
        max_group_order: 8,
        max_lattice_size: 5,
        lattice_kind: LatticeKind::Any,
    };
    for inst in instances(15, &bounds) {
        let engine = normalizer_setproduct(&inst.eta, &inst.mu).unwrap();
        let g = inst.group.clone();
        let l = inst.lattice.clone();
        let oracle_values: Vec<LatticeElt> = g
            .elements()
            .map(|x| {
                let mut best = l.bottom();
                for a in l.elements() {
                    if !l.leq(a, inst.mu.eval(x)) {
                        continue;
                    }
                    let point =
                        LSubset::from_point(g.clone(), l.clone(), LPoint::new(a, x));
                    let left = set_product_oracle(&point, &inst.eta);
                    let right = set_product_oracle(&inst.eta, &point);
                    if left == right {
                        best = l.join(best, a);
                    }
                }
                best
            })
            .collect();
        let oracle = LSubset::new(g, l, oracle_values).unwrap();
        assert_eq!(engine, oracle, "{}", inst.descriptor);
    }
}

#[test]
fn generated_is_the_least_l_subgroup_over_the_seed() {
    // Tiny carriers keep the full enumeration of intermediate subsets honest.
    let lattice = Arc::new(Lattice::chain(&["0", "1", "2"]).unwrap());
    let groups = [
        Arc::new(FiniteGroup::cyclic(6).unwrap()),
        Arc::new(FiniteGroup::symmetric(3).unwrap()),
    ];
    for group in groups {
        let mu = LSubset::constant(group.clone(), lattice.clone(), lattice.top());
        let mid = lattice.elt("1").unwrap();
        for x in group.elements() {
            for value in [mid, lattice.top()] {
                let seed = LSubset::from_point(
                    group.clone(),
                    lattice.clone(),
                    LPoint::new(value, x),
                );
                let gen = generated(&seed, &mu).unwrap();
                assert!(gen.is_l_subgroup(), "generated result must be an L-subgroup");
                assert!(gen.contains(&seed).unwrap());
                let mut least = true;
                for candidate in all_between(&seed, &mu) {
                    if candidate.is_l_subgroup() && !candidate.contains(&gen).unwrap() {
                        least = false;
                        break;
                    }
                }
                assert!(
                    least,
                    "a smaller L-subgroup above the seed exists for {} at {}",
                    group.label(x),
                    lattice.label(value)
                );
            }
        }
    }
}

#[test]
fn level_sets_match_their_definition() {
    let bounds = Bounds {
        max_group_order: 16,
        max_lattice_size: 8,
        lattice_kind: LatticeKind::Any,
    };
    for inst in instances(40, &bounds) {
        for a in inst.lattice.elements() {
            let level = inst.mu.level_set(a);
            for x in inst.group.elements() {
                assert_eq!(
                    level.contains(&x),
                    inst.lattice.leq(a, inst.mu.eval(x)),
                    "{}",
                    inst.descriptor
                );
            }
        }
    }
}
