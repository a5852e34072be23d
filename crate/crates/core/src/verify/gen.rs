//! Deterministic random instances within declared bounds.
//!
//! L-subgroups are built from an ascending chain of subgroups paired with a
//! descending chain of lattice values; every level subset of such a map is
//! one of the chain's subgroups, so the construction is sound on any
//! bounded lattice and never needs rejection sampling.

use super::Instance;
use crate::error::{Error, Result};
use crate::group::{EltSet, FiniteGroup, GElt, GroupHom};
use crate::lattice::{Lattice, LatticeElt};
use crate::lsubset::{LPoint, LSubset};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// Hard cap on `max_group_order`.
pub const GROUP_ORDER_CAP: usize = 24;
/// Hard cap on `max_lattice_size`.
pub const LATTICE_SIZE_CAP: usize = 10;

/// Which lattices the generator may draw.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LatticeKind {
    Chain,
    Any,
}

/// Size limits for generated instances.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Bounds {
    pub max_group_order: usize,
    pub max_lattice_size: usize,
    pub lattice_kind: LatticeKind,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds {
            max_group_order: 16,
            max_lattice_size: 8,
            lattice_kind: LatticeKind::Any,
        }
    }
}

impl Bounds {
    fn validate(&self) -> Result<()> {
        if self.max_group_order == 0 || self.max_group_order > GROUP_ORDER_CAP {
            return Err(Error::BoundsExceeded(format!(
                "max_group_order must be between 1 and {GROUP_ORDER_CAP}, got {}",
                self.max_group_order
            )));
        }
        if self.max_lattice_size == 0 || self.max_lattice_size > LATTICE_SIZE_CAP {
            return Err(Error::BoundsExceeded(format!(
                "max_lattice_size must be between 1 and {LATTICE_SIZE_CAP}, got {}",
                self.max_lattice_size
            )));
        }
        Ok(())
    }

    fn tag(&self) -> String {
        let kind = match self.lattice_kind {
            LatticeKind::Chain => "chain",
            LatticeKind::Any => "any",
        };
        format!("{}x{}:{}", self.max_group_order, self.max_lattice_size, kind)
    }
}

/// Ascending chain `v0 < v1 < …` of the given size.
pub fn chain_of(size: usize) -> Lattice {
    let labels: Vec<String> = (0..size).map(|i| format!("v{i}")).collect();
    Lattice::chain(&labels).expect("generated chains are valid")
}

/// `0` below `atoms` pairwise-incomparable elements below `1`
/// (non-distributive for three or more atoms).
pub fn diamond(atoms: usize) -> Lattice {
    let mut labels = vec!["0".to_string()];
    labels.extend((0..atoms).map(|i| format!("a{i}")));
    labels.push("1".to_string());
    let mut covers = Vec::new();
    for i in 0..atoms {
        covers.push(("0".to_string(), format!("a{i}")));
        covers.push((format!("a{i}"), "1".to_string()));
    }
    Lattice::from_covers(&labels, &covers).expect("generated diamonds are valid")
}

/// The five-element pentagon (non-distributive, non-modular).
pub fn pentagon() -> Lattice {
    let labels = ["0", "p", "q", "r", "1"].map(str::to_string);
    let covers = [
        ("0", "p"),
        ("p", "q"),
        ("q", "1"),
        ("0", "r"),
        ("r", "1"),
    ]
    .map(|(a, b)| (a.to_string(), b.to_string()));
    Lattice::from_covers(&labels, &covers).expect("pentagon is valid")
}

/// Boolean lattice of subsets of an `n`-element set, labelled by bitstrings.
pub fn boolean(n: usize) -> Lattice {
    let size = 1usize << n;
    let labels: Vec<String> = (0..size).map(|m| format!("b{m:0>width$b}", width = n)).collect();
    let rows: Vec<Vec<bool>> = (0..size)
        .map(|i| (0..size).map(|j| i & j == i).collect())
        .collect();
    Lattice::from_leq(&labels, &rows).expect("boolean lattices are valid")
}

/// Product of two chains (distributive), labelled `g<i><j>`.
pub fn grid(rows_n: usize, cols_n: usize) -> Lattice {
    let labels: Vec<String> = (0..rows_n)
        .flat_map(|i| (0..cols_n).map(move |j| format!("g{i}{j}")))
        .collect();
    let size = rows_n * cols_n;
    let rows: Vec<Vec<bool>> = (0..size)
        .map(|p| {
            (0..size)
                .map(|q| p / cols_n <= q / cols_n && p % cols_n <= q % cols_n)
                .collect()
        })
        .collect();
    Lattice::from_leq(&labels, &rows).expect("grid lattices are valid")
}

fn pick<'a, T>(rng: &mut ChaCha8Rng, items: &'a [T]) -> &'a T {
    &items[rng.random_range(0..items.len())]
}

fn pick_group(rng: &mut ChaCha8Rng, max_order: usize) -> (Arc<FiniteGroup>, String) {
    #[derive(Clone, Copy)]
    enum Kind {
        Cyclic,
        Dihedral,
        Symmetric,
        Quaternion,
    }
    let mut kinds = vec![Kind::Cyclic];
    if max_order >= 2 {
        kinds.push(Kind::Dihedral);
        kinds.push(Kind::Symmetric);
    }
    if max_order >= 8 {
        kinds.push(Kind::Quaternion);
    }
    match *pick(rng, &kinds) {
        Kind::Cyclic => {
            let n = rng.random_range(1..=max_order);
            (
                Arc::new(FiniteGroup::cyclic(n).expect("catalog order")),
                format!("C{n}"),
            )
        }
        Kind::Dihedral => {
            let half = rng.random_range(1..=max_order / 2);
            (
                Arc::new(FiniteGroup::dihedral(2 * half).expect("catalog order")),
                format!("D{}", 2 * half),
            )
        }
        Kind::Symmetric => {
            let degrees: Vec<usize> = (1..=4).filter(|k| factorial(*k) <= max_order).collect();
            let k = *pick(rng, &degrees);
            (
                Arc::new(FiniteGroup::symmetric(k).expect("catalog degree")),
                format!("S{k}"),
            )
        }
        Kind::Quaternion => (Arc::new(FiniteGroup::quaternion()), "Q8".to_string()),
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn pick_lattice(rng: &mut ChaCha8Rng, bounds: &Bounds) -> (Arc<Lattice>, String) {
    let max = bounds.max_lattice_size;
    let chain_sizes: Vec<usize> = (1..=max).collect();
    if bounds.lattice_kind == LatticeKind::Chain {
        let k = *pick(rng, &chain_sizes);
        return (Arc::new(chain_of(k)), format!("chain{k}"));
    }
    #[derive(Clone, Copy)]
    enum Shape {
        Chain(usize),
        Diamond(usize),
        Pentagon,
        Boolean(usize),
        Grid(usize, usize),
    }
    let mut shapes: Vec<Shape> = chain_sizes.iter().map(|&k| Shape::Chain(k)).collect();
    for atoms in 2..=max.saturating_sub(2) {
        shapes.push(Shape::Diamond(atoms));
    }
    if max >= 5 {
        shapes.push(Shape::Pentagon);
    }
    for n in 2..=3 {
        if 1usize << n <= max {
            shapes.push(Shape::Boolean(n));
        }
    }
    for (r, c) in [(2, 3), (2, 4), (3, 3), (2, 5)] {
        if r * c <= max {
            shapes.push(Shape::Grid(r, c));
        }
    }
    match *pick(rng, &shapes) {
        Shape::Chain(k) => (Arc::new(chain_of(k)), format!("chain{k}")),
        Shape::Diamond(a) => (Arc::new(diamond(a)), format!("M{a}")),
        Shape::Pentagon => (Arc::new(pentagon()), "N5".to_string()),
        Shape::Boolean(n) => (Arc::new(boolean(n)), format!("B{n}")),
        Shape::Grid(r, c) => (Arc::new(grid(r, c)), format!("grid{r}x{c}")),
    }
}

fn random_element(rng: &mut ChaCha8Rng, group: &FiniteGroup) -> GElt {
    GElt(rng.random_range(0..group.order()))
}

fn random_value(rng: &mut ChaCha8Rng, lattice: &Lattice) -> LatticeElt {
    LatticeElt(rng.random_range(0..lattice.size()))
}

/// Random L-subgroup from an ascending subgroup chain matched with a
/// descending value chain; elements beyond the last subgroup get bottom.
fn random_l_subgroup(
    rng: &mut ChaCha8Rng,
    group: &Arc<FiniteGroup>,
    lattice: &Arc<Lattice>,
) -> LSubset {
    let layer_count = rng.random_range(1..=3usize);
    let mut layers: Vec<EltSet> = Vec::with_capacity(layer_count);
    let mut current: EltSet = [group.identity()].into();
    for _ in 0..layer_count {
        let extra = rng.random_range(0..=2usize);
        let gens: Vec<GElt> = current
            .iter()
            .copied()
            .chain((0..extra).map(|_| random_element(rng, group)))
            .collect();
        current = group.subgroup_generated(gens);
        layers.push(current.clone());
    }
    let mut value = random_value(rng, lattice);
    let mut values = vec![lattice.bottom(); group.order()];
    let mut assigned = vec![false; group.order()];
    for layer in &layers {
        for &x in layer {
            if !assigned[x.0] {
                assigned[x.0] = true;
                values[x.0] = value;
            }
        }
        value = lattice.meet(value, random_value(rng, lattice));
    }
    LSubset::new(group.clone(), lattice.clone(), values).expect("constructed within carriers")
}

fn random_point(rng: &mut ChaCha8Rng, mu: &LSubset) -> LPoint {
    let at = random_element(rng, mu.group());
    let value = mu
        .lattice()
        .meet(random_value(rng, mu.lattice()), mu.eval(at));
    LPoint::new(value, at)
}

/// Natural surjection picked to match the group, if one applies.
fn pick_hom(
    rng: &mut ChaCha8Rng,
    group: &Arc<FiniteGroup>,
    name: &str,
) -> Option<(GroupHom, String)> {
    let parity_to_c2 = |split: &dyn Fn(usize) -> bool| -> GroupHom {
        let c2 = Arc::new(FiniteGroup::cyclic(2).expect("order two"));
        let pairs: Vec<(GElt, GElt)> = (0..group.order())
            .map(|i| (GElt(i), GElt(usize::from(split(i)))))
            .collect();
        GroupHom::from_map(group.clone(), c2, &pairs).expect("catalog parity map")
    };
    match name {
        "S2" | "S3" | "S4" => {
            let odd: Vec<bool> = (0..group.order())
                .map(|i| !group.perm_of(GElt(i)).expect("permutation flavor").is_even())
                .collect();
            Some((parity_to_c2(&|i| odd[i]), "sign".to_string()))
        }
        "Q8" => Some((parity_to_c2(&|i| i >= 4), "mod-center".to_string())),
        _ if name.starts_with('D') => {
            let half = group.order() / 2;
            Some((parity_to_c2(&|i| i >= half), "orientation".to_string()))
        }
        _ if name.starts_with('C') => {
            let n = group.order();
            let divisors: Vec<usize> = (1..n).filter(|d| n % d == 0).collect();
            if divisors.is_empty() {
                return None;
            }
            let d = *pick(rng, &divisors);
            let cd = Arc::new(FiniteGroup::cyclic(d).expect("divisor order"));
            let pairs: Vec<(GElt, GElt)> =
                (0..n).map(|i| (GElt(i), GElt(i % d))).collect();
            let hom = GroupHom::from_map(group.clone(), cd, &pairs).expect("catalog reduction");
            Some((hom, format!("mod{d}")))
        }
        _ => None,
    }
}

/// Deterministically generate an instance from a seed within bounds.
pub fn gen_instance(seed: u64, bounds: &Bounds) -> Result<Instance> {
    bounds.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (group, group_name) = pick_group(&mut rng, bounds.max_group_order);
    let (lattice, lattice_name) = pick_lattice(&mut rng, bounds);

    let mu = random_l_subgroup(&mut rng, &group, &lattice);
    let eta = random_l_subgroup(&mut rng, &group, &lattice).intersect(&mu)?;
    let nu = if rng.random_bool(0.5) {
        Some(random_l_subgroup(&mut rng, &group, &lattice).intersect(&mu)?)
    } else {
        None
    };
    let points: Vec<LPoint> = (0..rng.random_range(1..=3usize))
        .map(|_| random_point(&mut rng, &mu))
        .collect();
    let hom = if rng.random_bool(0.5) {
        pick_hom(&mut rng, &group, &group_name)
    } else {
        None
    };

    // Generator validity: constructed subjects must pass the levelwise
    // checkers and every point must lie in the ambient.
    assert!(mu.is_l_subgroup_levelwise());
    assert!(eta.is_l_subgroup_of_levelwise(&mu)?);
    if let Some(nu) = &nu {
        assert!(nu.is_l_subgroup_of_levelwise(&mu)?);
    }
    assert!(points.iter().all(|p| mu.has_point(p)));

    let descriptor = format!(
        "seed={seed} bounds={} group={group_name} lattice={lattice_name} points={} nu={} hom={}",
        bounds.tag(),
        points.len(),
        if nu.is_some() { "yes" } else { "no" },
        hom.as_ref().map(|(_, n)| n.as_str()).unwrap_or("none"),
    );
    Ok(Instance {
        seed,
        descriptor,
        lattice,
        group,
        mu,
        eta,
        nu,
        points,
        hom: hom.map(|(h, _)| h),
    })
}

/// Chain-lattice instance whose `eta` is maximal in `mu` by construction:
/// both agree on a maximal subgroup `M` of the group and differ outside it
/// by exactly one chain step.
pub fn maximal_chain_instance(seed: u64, max_group_order: usize) -> Result<Instance> {
    if max_group_order < 2 {
        return Err(Error::BoundsExceeded(
            "maximal-subject instances need max_group_order of at least 2".into(),
        ));
    }
    let bounds = Bounds {
        max_group_order,
        max_lattice_size: LATTICE_SIZE_CAP.min(3 + (seed as usize % 5)),
        lattice_kind: LatticeKind::Chain,
    };
    bounds.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (group, group_name) = loop {
        let candidate = pick_group(&mut rng, max_group_order);
        if candidate.0.order() >= 2 {
            break candidate;
        }
    };
    let size = rng.random_range(3..=bounds.max_lattice_size.max(3));
    let lattice = Arc::new(chain_of(size));

    let maximal = group.maximal_subgroups();
    let m = pick(&mut rng, &maximal).clone();
    // Chain indices: value on M, then two adjacent values off M.
    let on_m = rng.random_range(2..size);
    let mu_off = rng.random_range(1..on_m);
    let eta_off = mu_off - 1;
    let build = |off: usize| -> LSubset {
        let values = group
            .elements()
            .map(|x| LatticeElt(if m.contains(&x) { on_m } else { off }))
            .collect();
        LSubset::new(group.clone(), lattice.clone(), values).expect("chain values")
    };
    let mu = build(mu_off);
    let eta = build(eta_off);
    let points: Vec<LPoint> = (0..rng.random_range(1..=3usize))
        .map(|_| random_point(&mut rng, &mu))
        .collect();

    assert!(eta.is_l_subgroup_of_levelwise(&mu)?);
    let descriptor = format!(
        "seed={seed} bounds={} group={group_name} lattice=chain{size} points={} nu=no hom=none maximal=yes",
        bounds.tag(),
        points.len(),
    );
    Ok(Instance {
        seed,
        descriptor,
        lattice,
        group,
        mu,
        eta,
        nu: None,
        points,
        hom: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conjugacy;

    #[test]
    fn catalog_lattices_are_wellformed() {
        assert!(chain_of(4).is_chain());
        assert!(chain_of(4).is_distributive());
        let m3 = diamond(3);
        assert_eq!(m3.size(), 5);
        assert!(!m3.is_distributive());
        assert!(diamond(2).is_distributive());
        assert!(!pentagon().is_distributive());
        let b3 = boolean(3);
        assert_eq!(b3.size(), 8);
        assert!(b3.is_distributive());
        assert!(!b3.is_chain());
        let g = grid(2, 3);
        assert_eq!(g.size(), 6);
        assert!(g.is_distributive());
        assert_eq!(
            g.label(g.meet(g.elt("g11").unwrap(), g.elt("g02").unwrap())),
            "g01"
        );
        assert_eq!(
            g.label(g.join(g.elt("g11").unwrap(), g.elt("g02").unwrap())),
            "g12"
        );
    }

    #[test]
    fn generation_is_deterministic() {
        let bounds = Bounds::default();
        for seed in [0u64, 1, 7, 42, 99] {
            let a = gen_instance(seed, &bounds).unwrap();
            let b = gen_instance(seed, &bounds).unwrap();
            assert_eq!(a.descriptor, b.descriptor);
            assert_eq!(a.mu, b.mu);
            assert_eq!(a.eta, b.eta);
            assert_eq!(a.nu, b.nu);
            assert_eq!(a.points, b.points);
            assert_eq!(a.hom, b.hom);
        }
    }

    #[test]
    fn generated_instances_are_valid_in_bulk() {
        let bounds = Bounds::default();
        for seed in 0..60 {
            let inst = gen_instance(seed, &bounds).unwrap();
            assert!(inst.eta.is_l_subgroup_of(&inst.mu).unwrap());
            assert!(inst.mu.is_l_subgroup());
            assert!(!inst.points.is_empty());
            if let Some(hom) = &inst.hom {
                assert!(Arc::ptr_eq(hom.domain(), &inst.group));
            }
        }
    }

    #[test]
    fn chain_kind_generates_only_chains() {
        let bounds = Bounds {
            lattice_kind: LatticeKind::Chain,
            ..Bounds::default()
        };
        for seed in 0..20 {
            let inst = gen_instance(seed, &bounds).unwrap();
            assert!(inst.lattice.is_chain());
        }
    }

    #[test]
    fn bounds_are_enforced() {
        let too_big = Bounds {
            max_group_order: 25,
            ..Bounds::default()
        };
        assert!(matches!(
            gen_instance(0, &too_big),
            Err(Error::BoundsExceeded(_))
        ));
        let too_wide = Bounds {
            max_lattice_size: 11,
            ..Bounds::default()
        };
        assert!(matches!(
            gen_instance(0, &too_wide),
            Err(Error::BoundsExceeded(_))
        ));
    }

    #[test]
    fn tiny_bounds_yield_constant_subjects() {
        let bounds = Bounds {
            max_group_order: 1,
            max_lattice_size: 1,
            lattice_kind: LatticeKind::Chain,
        };
        let inst = gen_instance(3, &bounds).unwrap();
        assert_eq!(inst.group.order(), 1);
        assert_eq!(inst.mu, inst.eta);
        assert_eq!(inst.mu.tip(), inst.mu.tail());
    }

    #[test]
    fn maximal_instances_really_are_maximal() {
        for seed in 0..8 {
            let inst = maximal_chain_instance(seed, 12).unwrap();
            assert!(inst.lattice.is_chain());
            assert!(
                conjugacy::is_maximal(&inst.eta, &inst.mu, None).unwrap(),
                "{}",
                inst.descriptor
            );
        }
    }
}
