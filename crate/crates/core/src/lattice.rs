//! Finite bounded lattices with explicit order, meet, and join tables.
//!
//! A lattice is built from one of three declarations: a chain (total order
//! given by list position), a cover relation (Hasse diagram edges), or a full
//! `leq` matrix. Construction validates the partial order, computes meet and
//! join tables by exhaustive greatest-lower/least-upper bound search, and
//! locates the bottom and top elements. All later operations are table
//! lookups; labels are opaque strings and carry no numeric meaning.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

/// Index of an element within a [`Lattice`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct LatticeElt(pub usize);

/// A finite bounded lattice.
#[derive(Clone, Debug)]
pub struct Lattice {
    labels: Vec<String>,
    by_label: HashMap<String, usize>,
    leq: Vec<bool>,
    meet: Vec<u32>,
    join: Vec<u32>,
    bottom: LatticeElt,
    top: LatticeElt,
    fingerprint: u64,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.leq == other.leq
    }
}
impl Eq for Lattice {}

impl Lattice {
    /// Total order given by list position: `labels[0]` is the bottom.
    pub fn chain<S: AsRef<str>>(labels: &[S]) -> Result<Lattice> {
        let n = labels.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in i..n {
                leq[i * n + j] = true;
            }
        }
        Self::from_parts(labels, leq)
    }

    /// Partial order generated by cover edges `(lower, upper)`.
    pub fn from_covers<S: AsRef<str>>(labels: &[S], covers: &[(S, S)]) -> Result<Lattice> {
        let n = labels.len();
        let idx = label_index(labels)?;
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (lo, hi) in covers {
            let i = *idx
                .get(lo.as_ref())
                .ok_or_else(|| Error::UnknownLatticeElement(lo.as_ref().to_string()))?;
            let j = *idx
                .get(hi.as_ref())
                .ok_or_else(|| Error::UnknownLatticeElement(hi.as_ref().to_string()))?;
            leq[i * n + j] = true;
        }
        // Reflexive-transitive closure (Warshall).
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::NotAPartialOrder(format!(
                        "cycle through `{}` and `{}`",
                        labels[i].as_ref(),
                        labels[j].as_ref()
                    )));
                }
            }
        }
        Self::from_parts(labels, leq)
    }

    /// Full order matrix: `rows[i][j]` holds iff element `i` is below `j`.
    pub fn from_leq<S: AsRef<str>>(labels: &[S], rows: &[Vec<bool>]) -> Result<Lattice> {
        let n = labels.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid(format!(
                "leq matrix must be {n}x{n} to match the label list"
            )));
        }
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = rows[i][j];
            }
        }
        for i in 0..n {
            if !leq[i * n + i] {
                return Err(Error::NotAPartialOrder(format!(
                    "`{}` is not below itself",
                    labels[i].as_ref()
                )));
            }
            for j in 0..n {
                if i != j && leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::NotAPartialOrder(format!(
                        "antisymmetry fails on `{}` and `{}`",
                        labels[i].as_ref(),
                        labels[j].as_ref()
                    )));
                }
                for k in 0..n {
                    if leq[i * n + j] && leq[j * n + k] && !leq[i * n + k] {
                        return Err(Error::NotAPartialOrder(format!(
                            "transitivity fails on `{}` <= `{}` <= `{}`",
                            labels[i].as_ref(),
                            labels[j].as_ref(),
                            labels[k].as_ref()
                        )));
                    }
                }
            }
        }
        Self::from_parts(labels, leq)
    }

    fn from_parts<S: AsRef<str>>(labels: &[S], leq: Vec<bool>) -> Result<Lattice> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyCarrier("lattice requires at least one element"));
        }
        let by_label = label_index(labels)?;
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();

        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let m = bound(&leq, n, a, b, true).ok_or_else(|| Error::NotALattice {
                    a: labels[a].clone(),
                    b: labels[b].clone(),
                    which: "meet",
                })?;
                let j = bound(&leq, n, a, b, false).ok_or_else(|| Error::NotALattice {
                    a: labels[a].clone(),
                    b: labels[b].clone(),
                    which: "join",
                })?;
                meet[a * n + b] = m as u32;
                meet[b * n + a] = m as u32;
                join[a * n + b] = j as u32;
                join[b * n + a] = j as u32;
            }
        }

        let mut bot = 0usize;
        let mut top = 0usize;
        for x in 1..n {
            bot = meet[bot * n + x] as usize;
            top = join[top * n + x] as usize;
        }

        let mut h = DefaultHasher::new();
        labels.hash(&mut h);
        leq.hash(&mut h);
        Ok(Lattice {
            labels,
            by_label,
            leq,
            meet,
            join,
            bottom: LatticeElt(bot),
            top: LatticeElt(top),
            fingerprint: h.finish(),
        })
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = LatticeElt> {
        (0..self.size()).map(LatticeElt)
    }

    pub fn label(&self, e: LatticeElt) -> &str {
        &self.labels[e.0]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn elt(&self, label: &str) -> Result<LatticeElt> {
        self.by_label
            .get(label)
            .map(|&i| LatticeElt(i))
            .ok_or_else(|| Error::UnknownLatticeElement(label.to_string()))
    }

    pub fn leq(&self, a: LatticeElt, b: LatticeElt) -> bool {
        self.leq[a.0 * self.size() + b.0]
    }

    pub fn meet(&self, a: LatticeElt, b: LatticeElt) -> LatticeElt {
        LatticeElt(self.meet[a.0 * self.size() + b.0] as usize)
    }

    pub fn join(&self, a: LatticeElt, b: LatticeElt) -> LatticeElt {
        LatticeElt(self.join[a.0 * self.size() + b.0] as usize)
    }

    pub fn bottom(&self) -> LatticeElt {
        self.bottom
    }

    pub fn top(&self) -> LatticeElt {
        self.top
    }

    /// Join of a finite family; the empty family yields the bottom element.
    pub fn sup_over<I: IntoIterator<Item = LatticeElt>>(&self, items: I) -> LatticeElt {
        items
            .into_iter()
            .fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Meet of a finite family; the empty family yields the top element.
    pub fn inf_over<I: IntoIterator<Item = LatticeElt>>(&self, items: I) -> LatticeElt {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// All elements `v` with `lo <= v <= hi`.
    pub fn interval(&self, lo: LatticeElt, hi: LatticeElt) -> Vec<LatticeElt> {
        self.elements()
            .filter(|&v| self.leq(lo, v) && self.leq(v, hi))
            .collect()
    }

    pub fn is_chain(&self) -> bool {
        for a in self.elements() {
            for b in self.elements() {
                if !self.leq(a, b) && !self.leq(b, a) {
                    return false;
                }
            }
        }
        true
    }

    /// `None` when distributive, otherwise a triple `(x, y, z)` with
    /// `x /\ (y \/ z) != (x /\ y) \/ (x /\ z)`.
    pub fn check_distributive(&self) -> Option<(LatticeElt, LatticeElt, LatticeElt)> {
        for x in self.elements() {
            for y in self.elements() {
                for z in self.elements() {
                    let lhs = self.meet(x, self.join(y, z));
                    let rhs = self.join(self.meet(x, y), self.meet(x, z));
                    if lhs != rhs {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.check_distributive().is_none()
    }

    /// Stable structural hash used for cache keys.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }
}

fn label_index<S: AsRef<str>>(labels: &[S]) -> Result<HashMap<String, usize>> {
    let mut map = HashMap::new();
    for (i, l) in labels.iter().enumerate() {
        if map.insert(l.as_ref().to_string(), i).is_some() {
            return Err(Error::DuplicateLabel(l.as_ref().to_string()));
        }
    }
    Ok(map)
}

/// Unique greatest lower bound (`glb = true`) or least upper bound of `a, b`.
fn bound(leq: &[bool], n: usize, a: usize, b: usize, glb: bool) -> Option<usize> {
    let below = |x: usize, y: usize| leq[x * n + y];
    let candidates: Vec<usize> = (0..n)
        .filter(|&c| {
            if glb {
                below(c, a) && below(c, b)
            } else {
                below(a, c) && below(b, c)
            }
        })
        .collect();
    candidates
        .iter()
        .copied()
        .find(|&m| candidates.iter().all(|&c| if glb { below(c, m) } else { below(m, c) }))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Seven elements: bottom `l`, an antichain `f, a, b, c`, then `d`, top `u`.
    pub fn lattice_m() -> Lattice {
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
        .unwrap()
    }

    fn m3() -> Lattice {
        Lattice::from_covers(
            &["0", "p", "q", "r", "1"],
            &[("0", "p"), ("0", "q"), ("0", "r"), ("p", "1"), ("q", "1"), ("r", "1")],
        )
        .unwrap()
    }

    #[test]
    fn two_point_chain() {
        let l = Lattice::chain(&["0", "1"]).unwrap();
        let zero = l.elt("0").unwrap();
        let one = l.elt("1").unwrap();
        assert_eq!(l.bottom(), zero);
        assert_eq!(l.top(), one);
        assert_eq!(l.meet(zero, one), zero);
        assert_eq!(l.join(zero, one), one);
        assert!(l.is_chain());
        assert!(l.is_distributive());
    }

    #[test]
    fn singleton_chain() {
        let l = Lattice::chain(&["x"]).unwrap();
        assert_eq!(l.bottom(), l.top());
        assert!(l.is_chain());
    }

    #[test]
    fn seven_element_bounded_lattice() {
        let l = lattice_m();
        let (a, b, c) = (l.elt("a").unwrap(), l.elt("b").unwrap(), l.elt("c").unwrap());
        let (f, d, u, bot) = (
            l.elt("f").unwrap(),
            l.elt("d").unwrap(),
            l.elt("u").unwrap(),
            l.elt("l").unwrap(),
        );
        assert_eq!(l.bottom(), bot);
        assert_eq!(l.top(), u);
        for x in [f, a, b, c, bot] {
            assert_eq!(l.meet(d, x), x);
        }
        assert_eq!(l.meet(d, u), d);
        assert_eq!(l.meet(a, b), bot);
        assert_eq!(l.join(a, b), d);
        assert_eq!(l.join(a, f), d);
        assert_eq!(l.sup_over([a, b, c]), d);
        assert!(!l.is_chain());
    }

    #[test]
    fn seven_element_lattice_is_not_distributive() {
        let l = lattice_m();
        let w = l.check_distributive().expect("expected a violating triple");
        let (x, y, z) = w;
        let lhs = l.meet(x, l.join(y, z));
        let rhs = l.join(l.meet(x, y), l.meet(x, z));
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn diamond_m3_is_a_lattice_but_not_distributive() {
        let l = m3();
        assert_eq!(l.size(), 5);
        let w = l.check_distributive().expect("M3 must fail distributivity");
        let (x, y, z) = w;
        assert_ne!(
            l.meet(x, l.join(y, z)),
            l.join(l.meet(x, y), l.meet(x, z))
        );
        assert!(!l.is_chain());
    }

    #[test]
    fn eighths_chain_meets_by_position() {
        let l = Lattice::chain(&["0", "1/32", "1/16", "1/12", "1/8", "1/4", "1/2", "1"]).unwrap();
        let a = l.elt("1/12").unwrap();
        let b = l.elt("1/16").unwrap();
        // Position decides the order, not numeric parsing.
        assert_eq!(l.meet(a, b), b);
        assert_eq!(l.join(a, b), a);
        assert!(l.is_chain() && l.is_distributive());
    }

    #[test]
    fn meet_with_top_is_identity() {
        let l = lattice_m();
        for x in l.elements() {
            assert_eq!(l.meet(x, l.top()), x);
            assert_eq!(l.join(x, l.bottom()), x);
        }
    }

    #[test]
    fn sup_over_edge_cases() {
        let l = lattice_m();
        assert_eq!(l.sup_over([]), l.bottom());
        let a = l.elt("a").unwrap();
        assert_eq!(l.sup_over([a]), a);
        assert_eq!(l.sup_over(l.elements()), l.top());
        assert_eq!(l.inf_over([]), l.top());
        assert_eq!(l.inf_over(l.elements()), l.bottom());
    }

    #[test]
    fn duplicate_labels_rejected() {
        let err = Lattice::chain(&["a", "a"]).unwrap_err();
        assert_eq!(err, Error::DuplicateLabel("a".into()));
    }

    #[test]
    fn cycles_rejected() {
        let err = Lattice::from_covers(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(err, Error::NotAPartialOrder(_)));
    }

    #[test]
    fn poset_without_joins_rejected() {
        // Two maximal elements: the pair (a, b) has no least upper bound.
        let err = Lattice::from_covers(&["0", "a", "b"], &[("0", "a"), ("0", "b")]).unwrap_err();
        assert!(matches!(err, Error::NotALattice { which: "join", .. }));
    }

    #[test]
    fn bowtie_rejected() {
        // a, b below both c, d: upper bounds of (a, b) have no least element.
        let err = Lattice::from_covers(
            &["a", "b", "c", "d"],
            &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotALattice { .. }));
    }

    #[test]
    fn from_leq_roundtrip_and_validation() {
        let rows = vec![
            vec![true, true, true],
            vec![false, true, true],
            vec![false, false, true],
        ];
        let l = Lattice::from_leq(&["x", "y", "z"], &rows).unwrap();
        assert!(l.is_chain());
        assert_eq!(l.label(l.top()), "z");

        let bad = vec![
            vec![true, true, false],
            vec![true, true, false],
            vec![false, false, true],
        ];
        let err = Lattice::from_leq(&["x", "y", "z"], &bad).unwrap_err();
        assert!(matches!(err, Error::NotAPartialOrder(_)));
    }

    #[test]
    fn empty_lattice_rejected() {
        let labels: [&str; 0] = [];
        assert!(matches!(
            Lattice::chain(&labels).unwrap_err(),
            Error::EmptyCarrier(_)
        ));
    }

    #[test]
    fn interval_enumeration() {
        let l = lattice_m();
        let (a, d, u) = (l.elt("a").unwrap(), l.elt("d").unwrap(), l.elt("u").unwrap());
        assert_eq!(l.interval(a, u), vec![a, d, u]);
        assert_eq!(l.interval(u, a), vec![]);
        assert_eq!(l.interval(d, d), vec![d]);
    }
}
