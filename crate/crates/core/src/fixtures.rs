//! Ready-made sample carriers shared by tests, benchmarks, and docs.
//!
//! Two hand-built workspaces: the symmetric group on four points over a
//! seven-element non-distributive lattice, and the dihedral group of order
//! sixteen over an eight-element chain. Both ship with an ambient L-subgroup
//! `mu`, a contained L-subgroup `eta`, and a distinguished L-point.

use crate::group::FiniteGroup;
use crate::lattice::{Lattice, LatticeElt};
use crate::lsubset::{LPoint, LSubset};
use std::sync::Arc;

pub struct Sample {
    pub group: Arc<FiniteGroup>,
    pub lattice: Arc<Lattice>,
    pub mu: LSubset,
    pub eta: LSubset,
    pub point: LPoint,
}

/// S4 over the bounded lattice with an antichain `f, a, b, c` between
/// bottom `l` and the coatom `d` under top `u`.
pub fn s4_over_m() -> Sample {
    let lattice = Arc::new(
        Lattice::from_covers(
            &["l", "f", "a", "b", "c", "d", "u"],
            &[
                ("l", "f"),
                ("l", "a"),
                ("l", "b"),
                ("l", "c"),
                ("f", "d"),
                ("a", "d"),
                ("b", "d"),
                ("c", "d"),
                ("d", "u"),
            ],
        )
        .unwrap(),
    );
    let group = Arc::new(FiniteGroup::symmetric(4).unwrap());
    let gen = |labels: [&str; 2]| {
        group.subgroup_generated(labels.iter().map(|l| group.resolve(l).unwrap()))
    };
    let v4 = gen(["(1 2)(3 4)", "(1 3)(2 4)"]);
    let d4_1 = gen(["(2 4)", "(1 2 3 4)"]);
    let d4_2 = gen(["(1 2)", "(1 3 2 4)"]);
    let d4_3 = gen(["(2 3)", "(1 3 4 2)"]);
    let at = |label: &str| lattice.elt(label).unwrap();

    let mu_values: Vec<LatticeElt> = group
        .elements()
        .map(|x| if v4.contains(&x) { at("u") } else { at("d") })
        .collect();
    let eta_values: Vec<LatticeElt> = group
        .elements()
        .map(|x| {
            if x == group.identity() {
                at("u")
            } else if v4.contains(&x) {
                at("d")
            } else if d4_1.contains(&x) {
                at("a")
            } else if d4_2.contains(&x) {
                at("b")
            } else if d4_3.contains(&x) {
                at("c")
            } else {
                at("l")
            }
        })
        .collect();

    let mu = LSubset::new(group.clone(), lattice.clone(), mu_values).unwrap();
    let eta = LSubset::new(group.clone(), lattice.clone(), eta_values).unwrap();
    let point = LPoint::new(at("d"), group.resolve("(1 2 3)").unwrap());
    Sample {
        group,
        lattice,
        mu,
        eta,
        point,
    }
}

/// D16 over the chain `0 < 1/32 < 1/16 < 1/12 < 1/8 < 1/4 < 1/2 < 1`.
pub fn d16_over_chain() -> Sample {
    let lattice = Arc::new(
        Lattice::chain(&["0", "1/32", "1/16", "1/12", "1/8", "1/4", "1/2", "1"]).unwrap(),
    );
    let group = Arc::new(FiniteGroup::dihedral(16).unwrap());
    let d8 = group.subgroup_generated([group.elt("r^2").unwrap(), group.elt("s").unwrap()]);
    let s2 = group.subgroup_generated([group.elt("s").unwrap()]);
    let at = |label: &str| lattice.elt(label).unwrap();

    let mu_values: Vec<LatticeElt> = group
        .elements()
        .map(|x| if d8.contains(&x) { at("1/2") } else { at("1/8") })
        .collect();
    let eta_values: Vec<LatticeElt> = group
        .elements()
        .map(|x| {
            if s2.contains(&x) {
                at("1/4")
            } else if d8.contains(&x) {
                at("1/16")
            } else {
                at("1/32")
            }
        })
        .collect();

    let mu = LSubset::new(group.clone(), lattice.clone(), mu_values).unwrap();
    let eta = LSubset::new(group.clone(), lattice.clone(), eta_values).unwrap();
    let point = LPoint::new(at("1/12"), group.elt("r").unwrap());
    Sample {
        group,
        lattice,
        mu,
        eta,
        point,
    }
}

/// Crisp membership helper used in tests: elements of `set` as labels.
pub fn labels_of(group: &FiniteGroup, set: &crate::group::EltSet) -> Vec<String> {
    set.iter().map(|&x| group.label(x).to_string()).collect()
}
