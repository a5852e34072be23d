//! Finite groups as dense Cayley tables, plus homomorphisms between them.
//!
//! Constructors cover symmetric groups (degree at most 6), dihedral groups
//! of even order `2n` with the convention `r*s = s*r^(n-1)`, cyclic groups,
//! permutation groups given by generators (closed under a size cap), and
//! explicit multiplication tables. Conjugation is oriented as
//! `conj(z, x) = z*x*z^(-1)` everywhere; the opposite orientation is obtained
//! by passing `inv(z)`.

use crate::error::{Error, Result};
use crate::perm::Perm;
use serde::{Deserialize, Serialize};
use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::hash::{Hash, Hasher};
use std::sync::Arc;

pub const DEFAULT_CLOSURE_CAP: usize = 10080;

/// Index of an element within a [`FiniteGroup`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct GElt(pub usize);

/// A set of group elements (used for level subsets and crisp subgroups).
pub type EltSet = BTreeSet<GElt>;

#[derive(Clone, PartialEq, Eq, Debug)]
enum Flavor {
    Generic,
    Cyclic { n: usize },
    Dihedral { half: usize },
    Permutation { perms: Vec<Perm> },
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    labels: Vec<String>,
    by_label: HashMap<String, usize>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    identity: GElt,
    flavor: Flavor,
    fingerprint: u64,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.mul == other.mul
    }
}
impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Symmetric group on `{1, …, n}` for `1 <= n <= 6`, elements labelled in
    /// cycle notation and ordered lexicographically by image sequence.
    pub fn symmetric(n: usize) -> Result<FiniteGroup> {
        if n == 0 || n > 6 {
            return Err(Error::Invalid(format!(
                "symmetric group degree must be between 1 and 6, got {n}"
            )));
        }
        let perms = Perm::all(n);
        Self::from_perm_list(perms)
    }

    /// Dihedral group of the given even order `2n`, generated by a rotation
    /// `r` of order `n` and a reflection `s` with `r*s = s*r^(n-1)`.
    /// Labels: `e, r, r^2, …` then `s, sr, sr^2, …`.
    pub fn dihedral(order: usize) -> Result<FiniteGroup> {
        if order < 2 || order % 2 != 0 {
            return Err(Error::Invalid(format!(
                "dihedral order must be even and at least 2, got {order}"
            )));
        }
        let n = order / 2;
        let rot = |k: usize| -> String {
            match k {
                0 => "e".to_string(),
                1 => "r".to_string(),
                k => format!("r^{k}"),
            }
        };
        let refl = |k: usize| -> String {
            match k {
                0 => "s".to_string(),
                1 => "sr".to_string(),
                k => format!("sr^{k}"),
            }
        };
        let mut labels = Vec::with_capacity(order);
        for k in 0..n {
            labels.push(rot(k));
        }
        for k in 0..n {
            labels.push(refl(k));
        }
        // Index encoding: k is r^k, n + k is s*r^k.
        let mut mul = vec![0u32; order * order];
        for i in 0..order {
            for j in 0..order {
                let prod = match (i < n, j < n) {
                    (true, true) => (i + j) % n,
                    // r^i * (s r^j) = s r^(j - i)
                    (true, false) => n + ((j - n) + n - i % n) % n,
                    // (s r^i) * r^j = s r^(i + j)
                    (false, true) => n + ((i - n) + j) % n,
                    // (s r^i) * (s r^j) = r^(j - i)
                    (false, false) => ((j - n) + n - (i - n) % n) % n,
                };
                mul[i * order + j] = prod as u32;
            }
        }
        Self::finish(labels, mul, Flavor::Dihedral { half: n }, false)
    }

    /// Cyclic group of order `n`, labelled `e, g, g^2, …`.
    pub fn cyclic(n: usize) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(Error::EmptyCarrier("cyclic group order must be positive"));
        }
        let labels: Vec<String> = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                k => format!("g^{k}"),
            })
            .collect();
        let mut mul = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                mul[i * n + j] = ((i + j) % n) as u32;
            }
        }
        Self::finish(labels, mul, Flavor::Cyclic { n }, false)
    }

    /// Group generated by permutations in cycle notation on `{1, …, degree}`.
    /// Fails with [`Error::ClosureTooLarge`] if the closure exceeds `cap`
    /// (default [`DEFAULT_CLOSURE_CAP`]).
    pub fn from_permutations(degree: usize, generators: &[&str], cap: Option<usize>) -> Result<FiniteGroup> {
        let cap = cap.unwrap_or(DEFAULT_CLOSURE_CAP);
        let gens: Vec<Perm> = generators
            .iter()
            .map(|s| Perm::parse(degree, s))
            .collect::<Result<_>>()?;
        let mut perms = vec![Perm::identity(degree)];
        let mut seen: HashMap<Perm, usize> = HashMap::new();
        seen.insert(perms[0].clone(), 0);
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let next = perms[i].compose(g);
                if !seen.contains_key(&next) {
                    if perms.len() >= cap {
                        return Err(Error::ClosureTooLarge {
                            reached: perms.len() + 1,
                            cap,
                        });
                    }
                    seen.insert(next.clone(), perms.len());
                    perms.push(next);
                    queue.push_back(perms.len() - 1);
                }
            }
        }
        Self::from_perm_list(perms)
    }

    fn from_perm_list(perms: Vec<Perm>) -> Result<FiniteGroup> {
        let n = perms.len();
        let index: HashMap<Perm, usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let labels: Vec<String> = perms.iter().map(|p| p.to_cycles()).collect();
        let mut mul = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                mul[i * n + j] = index[&perms[i].compose(&perms[j])] as u32;
            }
        }
        Self::finish(labels, mul, Flavor::Permutation { perms }, false)
    }

    /// Explicit Cayley table; `rows[i][j]` is the label of `labels[i] * labels[j]`.
    /// Validates all group axioms including associativity.
    pub fn from_table<S: AsRef<str>>(labels: &[S], rows: &[Vec<S>]) -> Result<FiniteGroup> {
        let n = labels.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidTable(format!(
                "multiplication table must be {n}x{n} to match the label list"
            )));
        }
        let idx = {
            let mut map = HashMap::new();
            for (i, l) in labels.iter().enumerate() {
                if map.insert(l.as_ref().to_string(), i).is_some() {
                    return Err(Error::DuplicateLabel(l.as_ref().to_string()));
                }
            }
            map
        };
        let mut mul = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let lbl = rows[i][j].as_ref();
                let k = *idx
                    .get(lbl)
                    .ok_or_else(|| Error::UnknownGroupElement(lbl.to_string()))?;
                mul[i * n + j] = k as u32;
            }
        }
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        Self::finish(labels, mul, Flavor::Generic, true)
    }

    /// The quaternion group of order 8 with labels `1, -1, i, -i, j, -j, k, -k`.
    pub fn quaternion() -> FiniteGroup {
        // Basis products: axis 0 is the scalar unit, then i, j, k.
        let basis_mul = |a: usize, b: usize| -> (bool, usize) {
            match (a, b) {
                (0, x) => (false, x),
                (x, 0) => (false, x),
                (x, y) if x == y => (true, 0),
                (1, 2) => (false, 3),
                (2, 1) => (true, 3),
                (2, 3) => (false, 1),
                (3, 2) => (true, 1),
                (3, 1) => (false, 2),
                (1, 3) => (true, 2),
                _ => unreachable!(),
            }
        };
        let name = |axis: usize, neg: bool| -> String {
            let base = ["1", "i", "j", "k"][axis];
            if neg {
                format!("-{base}")
            } else {
                base.to_string()
            }
        };
        let labels: Vec<String> = (0..8).map(|i| name(i / 2, i % 2 == 1)).collect();
        let rows: Vec<Vec<String>> = (0..8)
            .map(|i| {
                (0..8)
                    .map(|j| {
                        let (sa, aa, sb, ab) = (i % 2 == 1, i / 2, j % 2 == 1, j / 2);
                        let (flip, axis) = basis_mul(aa, ab);
                        name(axis, sa ^ sb ^ flip)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(&labels, &rows).expect("quaternion table is a group")
    }

    fn finish(labels: Vec<String>, mul: Vec<u32>, flavor: Flavor, check_assoc: bool) -> Result<FiniteGroup> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyCarrier("group requires at least one element"));
        }
        let by_label: HashMap<String, usize> =
            labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        if by_label.len() != n {
            let dup = labels
                .iter()
                .enumerate()
                .find(|(i, l)| labels[..*i].contains(l))
                .map(|(_, l)| l.clone())
                .unwrap_or_default();
            return Err(Error::DuplicateLabel(dup));
        }

        // Cancellation: each row and column is a permutation.
        for i in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for j in 0..n {
                let r = mul[i * n + j] as usize;
                let c = mul[j * n + i] as usize;
                if r >= n || c >= n || row[r] || col[c] {
                    return Err(Error::InvalidTable(format!(
                        "row or column of `{}` is not a permutation",
                        labels[i]
                    )));
                }
                row[r] = true;
                col[c] = true;
            }
        }
        // Two-sided identity.
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul[e * n + x] as usize == x && mul[x * n + e] as usize == x))
            .ok_or_else(|| Error::InvalidTable("no two-sided identity".into()))?;
        // Two-sided inverses.
        let mut inv = vec![0u32; n];
        for x in 0..n {
            let xi = (0..n)
                .find(|&y| mul[x * n + y] as usize == identity && mul[y * n + x] as usize == identity)
                .ok_or_else(|| {
                    Error::InvalidTable(format!("`{}` has no two-sided inverse", labels[x]))
                })?;
            inv[x] = xi as u32;
        }
        if check_assoc {
            for a in 0..n {
                for b in 0..n {
                    let ab = mul[a * n + b] as usize;
                    for c in 0..n {
                        let bc = mul[b * n + c] as usize;
                        if mul[ab * n + c] != mul[a * n + bc] {
                            return Err(Error::InvalidTable(format!(
                                "associativity fails on `{}`, `{}`, `{}`",
                                labels[a], labels[b], labels[c]
                            )));
                        }
                    }
                }
            }
        }

        let mut h = DefaultHasher::new();
        labels.hash(&mut h);
        mul.hash(&mut h);
        Ok(FiniteGroup {
            labels,
            by_label,
            mul,
            inv,
            identity: GElt(identity),
            flavor,
            fingerprint: h.finish(),
        })
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = GElt> {
        (0..self.order()).map(GElt)
    }

    pub fn label(&self, x: GElt) -> &str {
        &self.labels[x.0]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Exact label lookup.
    pub fn elt(&self, label: &str) -> Result<GElt> {
        self.by_label
            .get(label)
            .map(|&i| GElt(i))
            .ok_or_else(|| Error::UnknownGroupElement(label.to_string()))
    }

    /// Label lookup with normalization: dihedral groups accept spaced words
    /// and right-side reflections (`"s r^2"`, `"r^3 s"`), permutation groups
    /// accept any cycle spelling of the element.
    pub fn resolve(&self, label: &str) -> Result<GElt> {
        if let Some(&i) = self.by_label.get(label) {
            return Ok(GElt(i));
        }
        match &self.flavor {
            Flavor::Dihedral { half } => self.resolve_dihedral(label, *half),
            Flavor::Permutation { perms } => {
                let degree = perms[0].degree();
                let p = Perm::parse(degree, label)
                    .map_err(|_| Error::UnknownGroupElement(label.to_string()))?;
                self.elt(&p.to_cycles())
            }
            _ => Err(Error::UnknownGroupElement(label.to_string())),
        }
    }

    fn resolve_dihedral(&self, label: &str, n: usize) -> Result<GElt> {
        let unknown = || Error::UnknownGroupElement(label.to_string());
        let t: String = label.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "e" {
            return Ok(GElt(0));
        }
        let parse_pow = |s: &str| -> Option<usize> {
            if s == "r" {
                Some(1)
            } else {
                s.strip_prefix("r^")?.parse::<usize>().ok().map(|k| k % n)
            }
        };
        if let Some(rest) = t.strip_prefix('s') {
            // s r^k
            if rest.is_empty() {
                return Ok(GElt(n));
            }
            let k = parse_pow(rest).ok_or_else(unknown)?;
            return Ok(GElt(n + k));
        }
        if let Some(rest) = t.strip_suffix('s') {
            // r^k s = s r^(n-k)
            let k = parse_pow(rest).ok_or_else(unknown)?;
            return Ok(GElt(n + (n - k) % n));
        }
        let k = parse_pow(&t).ok_or_else(unknown)?;
        Ok(GElt(k))
    }

    pub fn identity(&self) -> GElt {
        self.identity
    }

    pub fn mul(&self, x: GElt, y: GElt) -> GElt {
        GElt(self.mul[x.0 * self.order() + y.0] as usize)
    }

    pub fn inv(&self, x: GElt) -> GElt {
        GElt(self.inv[x.0] as usize)
    }

    pub fn pow(&self, x: GElt, k: usize) -> GElt {
        let mut acc = self.identity;
        for _ in 0..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    /// `z * x * z^(-1)`.
    pub fn conj(&self, z: GElt, x: GElt) -> GElt {
        self.mul(self.mul(z, x), self.inv(z))
    }

    /// `{z * h * z^(-1) : h in set}`.
    pub fn conj_set(&self, set: &EltSet, z: GElt) -> EltSet {
        set.iter().map(|&h| self.conj(z, h)).collect()
    }

    pub fn is_subgroup(&self, set: &EltSet) -> bool {
        if !set.contains(&self.identity) {
            return false;
        }
        for &x in set {
            if !set.contains(&self.inv(x)) {
                return false;
            }
            for &y in set {
                if !set.contains(&self.mul(x, y)) {
                    return false;
                }
            }
        }
        true
    }

    /// Subgroup generated by the given elements; the empty set generates `{e}`.
    pub fn subgroup_generated<I: IntoIterator<Item = GElt>>(&self, gens: I) -> EltSet {
        let mut set: EltSet = EltSet::new();
        set.insert(self.identity);
        let gens: Vec<GElt> = gens.into_iter().collect();
        let mut queue: VecDeque<GElt> = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set
    }

    /// Every subgroup, found by closing each known subgroup under one extra
    /// element until no new subgroups appear. Sorted by (order, elements).
    pub fn all_subgroups(&self) -> Vec<EltSet> {
        let mut seen: BTreeSet<EltSet> = BTreeSet::new();
        let trivial: EltSet = [self.identity].into();
        let mut queue: VecDeque<EltSet> = VecDeque::from([trivial.clone()]);
        seen.insert(trivial);
        while let Some(h) = queue.pop_front() {
            for x in self.elements() {
                if h.contains(&x) {
                    continue;
                }
                let bigger = self.subgroup_generated(h.iter().copied().chain([x]));
                if seen.insert(bigger.clone()) {
                    queue.push_back(bigger);
                }
            }
        }
        let mut out: Vec<EltSet> = seen.into_iter().collect();
        out.sort_by_key(|h| (h.len(), h.iter().copied().collect::<Vec<_>>()));
        out
    }

    /// Proper subgroups not contained in any other proper subgroup.
    pub fn maximal_subgroups(&self) -> Vec<EltSet> {
        let all = self.all_subgroups();
        let proper: Vec<&EltSet> = all.iter().filter(|h| h.len() < self.order()).collect();
        proper
            .iter()
            .filter(|h| {
                !proper
                    .iter()
                    .any(|k| k.len() > h.len() && h.is_subset(k))
            })
            .map(|h| (*h).clone())
            .collect()
    }

    /// `{x : x H x^(-1) = H}` for a crisp subgroup `H`.
    pub fn classical_normalizer(&self, h: &EltSet) -> Result<EltSet> {
        if !self.is_subgroup(h) {
            return Err(Error::NotASubgroup(format!(
                "{:?} is not closed",
                h.iter().map(|&x| self.label(x)).collect::<Vec<_>>()
            )));
        }
        Ok(self
            .elements()
            .filter(|&x| &self.conj_set(h, x) == h)
            .collect())
    }

    /// Stable structural hash used for cache keys.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Underlying permutation, when the group was built from permutations.
    pub fn perm_of(&self, x: GElt) -> Option<&Perm> {
        match &self.flavor {
            Flavor::Permutation { perms } => Some(&perms[x.0]),
            _ => None,
        }
    }
}

/// A homomorphism between two finite groups, stored as a full element map.
#[derive(Clone, Debug)]
pub struct GroupHom {
    domain: Arc<FiniteGroup>,
    codomain: Arc<FiniteGroup>,
    map: Vec<u32>,
    surjective: bool,
}

impl PartialEq for GroupHom {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.codomain == other.codomain && self.map == other.map
    }
}
impl Eq for GroupHom {}

impl GroupHom {
    /// Build from a total element map, validating `f(x*y) = f(x)*f(y)` on all pairs.
    pub fn from_map(
        domain: Arc<FiniteGroup>,
        codomain: Arc<FiniteGroup>,
        map: &[(GElt, GElt)],
    ) -> Result<GroupHom> {
        let n = domain.order();
        let mut table = vec![None; n];
        for &(x, fx) in map {
            if x.0 >= n || fx.0 >= codomain.order() {
                return Err(Error::Invalid("map entry out of range".into()));
            }
            if table[x.0].replace(fx).is_some() {
                return Err(Error::Invalid(format!(
                    "element `{}` mapped twice",
                    domain.label(x)
                )));
            }
        }
        let table: Vec<u32> = table
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.map(|g| g.0 as u32).ok_or_else(|| {
                    Error::Invalid(format!("element `{}` has no image", domain.label(GElt(i))))
                })
            })
            .collect::<Result<_>>()?;
        Self::finish(domain, codomain, table)
    }

    /// Extend images of generators along words. Fails with
    /// [`Error::IllDefinedOnGenerators`] when the generators do not generate
    /// the whole domain, and with [`Error::NotAHomomorphism`] when word
    /// extension conflicts or the extended map breaks multiplicativity.
    pub fn from_generator_images(
        domain: Arc<FiniteGroup>,
        codomain: Arc<FiniteGroup>,
        images: &[(GElt, GElt)],
    ) -> Result<GroupHom> {
        let n = domain.order();
        let mut table: Vec<Option<u32>> = vec![None; n];
        table[domain.identity().0] = Some(codomain.identity().0 as u32);
        let mut queue = VecDeque::from([domain.identity()]);
        while let Some(x) = queue.pop_front() {
            let fx = GElt(table[x.0].expect("queued elements have images") as usize);
            for &(g, fg) in images {
                let y = domain.mul(x, g);
                let fy = codomain.mul(fx, fg);
                match table[y.0] {
                    None => {
                        table[y.0] = Some(fy.0 as u32);
                        queue.push_back(y);
                    }
                    Some(prev) if prev as usize != fy.0 => {
                        return Err(Error::NotAHomomorphism(format!(
                            "word extension assigns both `{}` and `{}` to `{}`",
                            codomain.label(GElt(prev as usize)),
                            codomain.label(fy),
                            domain.label(y)
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        let reached = table.iter().filter(|v| v.is_some()).count();
        if reached != n {
            return Err(Error::IllDefinedOnGenerators(format!(
                "generators reach only {reached} of {n} elements"
            )));
        }
        let table: Vec<u32> = table.into_iter().map(|v| v.unwrap()).collect();
        Self::finish(domain, codomain, table)
    }

    pub fn identity_hom(group: Arc<FiniteGroup>) -> GroupHom {
        let map: Vec<u32> = (0..group.order() as u32).collect();
        GroupHom {
            domain: group.clone(),
            codomain: group,
            map,
            surjective: true,
        }
    }

    fn finish(
        domain: Arc<FiniteGroup>,
        codomain: Arc<FiniteGroup>,
        map: Vec<u32>,
    ) -> Result<GroupHom> {
        let n = domain.order();
        for x in 0..n {
            for y in 0..n {
                let xy = domain.mul(GElt(x), GElt(y));
                let lhs = map[xy.0] as usize;
                let rhs = codomain.mul(GElt(map[x] as usize), GElt(map[y] as usize));
                if lhs != rhs.0 {
                    return Err(Error::NotAHomomorphism(format!(
                        "f(`{}`*`{}`) != f(`{}`)*f(`{}`)",
                        domain.label(GElt(x)),
                        domain.label(GElt(y)),
                        domain.label(GElt(x)),
                        domain.label(GElt(y))
                    )));
                }
            }
        }
        let image: BTreeSet<u32> = map.iter().copied().collect();
        let surjective = image.len() == codomain.order();
        Ok(GroupHom {
            domain,
            codomain,
            map,
            surjective,
        })
    }

    pub fn domain(&self) -> &Arc<FiniteGroup> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteGroup> {
        &self.codomain
    }

    pub fn apply(&self, x: GElt) -> GElt {
        GElt(self.map[x.0] as usize)
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    /// All domain elements mapping to `y`.
    pub fn fiber(&self, y: GElt) -> Vec<GElt> {
        (0..self.domain.order())
            .filter(|&x| self.map[x] as usize == y.0)
            .map(GElt)
            .collect()
    }
}
