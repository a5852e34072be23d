//! Conjugation of lattice-valued subsets, generated L-subgroups, and
//! maximality under conjugation.
//!
//! Conjugation is oriented as `z*x*z^(-1)` throughout. The conjugate of
//! `eta` by a subset `theta` weights each conjugator `z` by `theta(z)`:
//!
//! ```text
//! (theta eta theta^-1)(x) = sup { theta(z) /\ eta(z*x*z^-1) : z in G }
//! ```
//!
//! so that plugging in the single L-point `a_z` for `theta` yields exactly
//! the point conjugate `eta^(a_z)(x) = a /\ eta(z*x*z^-1)`.

use crate::error::{Error, Result};
use crate::group::{EltSet, FiniteGroup, GElt};
use crate::lattice::{Lattice, LatticeElt};
use crate::lsubset::{LPoint, LSubset};
use std::sync::Arc;

/// Default cap on candidate enumerations (interval products).
pub const DEFAULT_SEARCH_CAP: u128 = 20_000_000;

/// Outcome of comparing two L-subsets pointwise.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PointwiseCheck {
    pub equal: bool,
    /// First differing element with both values, when not equal.
    pub witness: Option<(GElt, LatticeElt, LatticeElt)>,
}

/// Compare two L-subsets on shared carriers, reporting the first mismatch.
pub fn pointwise_compare(a: &LSubset, b: &LSubset) -> Result<PointwiseCheck> {
    if !a.same_carriers(b) {
        return Err(Error::MixedCarriers("pointwise comparison across carriers"));
    }
    for x in a.group().elements() {
        if a.eval(x) != b.eval(x) {
            return Ok(PointwiseCheck {
                equal: false,
                witness: Some((x, a.eval(x), b.eval(x))),
            });
        }
    }
    Ok(PointwiseCheck {
        equal: true,
        witness: None,
    })
}

/// Conjugate of `eta` by the L-subset `theta`.
pub fn conjugate_by_subset(theta: &LSubset, eta: &LSubset) -> Result<LSubset> {
    if !theta.same_carriers(eta) {
        return Err(Error::MixedCarriers("conjugator and subject disagree"));
    }
    let g = eta.group().clone();
    let l = eta.lattice().clone();
    let values = g
        .elements()
        .map(|x| {
            l.sup_over(
                g.elements()
                    .map(|z| l.meet(theta.eval(z), eta.eval(g.conj(z, x)))),
            )
        })
        .collect();
    Ok(LSubset::new(g, l, values).expect("carrier sizes preserved"))
}

/// Conjugate of `eta` by the L-point `p = a_z`:
/// `eta^(a_z)(x) = a /\ eta(z*x*z^-1)`.
pub fn conjugate_by_point(eta: &LSubset, p: &LPoint) -> LSubset {
    let g = eta.group().clone();
    let l = eta.lattice().clone();
    let values = g
        .elements()
        .map(|x| l.meet(p.value, eta.eval(g.conj(p.at, x))))
        .collect();
    LSubset::new(g, l, values).expect("carrier sizes preserved")
}

/// Point conjugate with the ambient guarantee: requires `p` to be an L-point
/// of `mu` and `eta` to live on the same carriers as `mu`.
pub fn conjugate_by_point_in(eta: &LSubset, p: &LPoint, mu: &LSubset) -> Result<LSubset> {
    if !eta.same_carriers(mu) {
        return Err(Error::MixedCarriers("subject and ambient disagree"));
    }
    if !mu.has_point(p) {
        let (value, at) = mu.point_labels(p);
        return Err(Error::PointNotInAmbient { value, at });
    }
    Ok(conjugate_by_point(eta, p))
}

/// Checks `(eta o nu)^(a_z) = eta^(a_z) o nu^(a_z)` by computing both sides
/// independently.
pub fn check_conjugate_product(eta: &LSubset, nu: &LSubset, p: &LPoint) -> Result<PointwiseCheck> {
    let lhs = conjugate_by_point(&eta.set_product(nu)?, p);
    let rhs = conjugate_by_point(eta, p).set_product(&conjugate_by_point(nu, p))?;
    pointwise_compare(&lhs, &rhs)
}

/// The L-subgroup of `mu` generated by an arbitrary L-subset `eta <= mu`:
///
/// ```text
/// gen(eta)(x) = sup { a <= tip(eta) : x in <level_a(eta)> }
/// ```
pub fn generated(eta: &LSubset, mu: &LSubset) -> Result<LSubset> {
    if !mu.contains(eta)? {
        return Err(Error::NotContained(
            "subject must lie inside the ambient to generate within it".into(),
        ));
    }
    let g = eta.group().clone();
    let l = eta.lattice().clone();
    let tip = eta.tip();
    let mut values = vec![l.bottom(); g.order()];
    for a in l.elements().filter(|&a| l.leq(a, tip)) {
        let closure = g.subgroup_generated(eta.level_set(a));
        for x in closure {
            values[x.0] = l.join(values[x.0], a);
        }
    }
    LSubset::new(g, l, values)
}

/// Result of the two-route level/transport equivalence check.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LevelConjugacyCheck {
    /// `nu` equals the point conjugate of `eta` (value tables match).
    pub pointwise: bool,
    /// Every level of `nu` below its tip equals the conjugated level of `eta`.
    pub levelwise: bool,
}

impl LevelConjugacyCheck {
    pub fn agrees(&self) -> bool {
        self.pointwise == self.levelwise
    }
}

/// For `p = a_z`, decides both (i) `nu = eta^(a_z)` and (ii)
/// `level_t(nu) = { z^-1 g z : g in level_t(eta) }` for all `t <= tip(nu)`;
/// the two verdicts must coincide. Requires `tip(nu) = a /\ tip(eta)`.
pub fn level_conjugate_equiv(
    eta: &LSubset,
    nu: &LSubset,
    p: &LPoint,
) -> Result<LevelConjugacyCheck> {
    if !eta.same_carriers(nu) {
        return Err(Error::MixedCarriers("subject and candidate disagree"));
    }
    let l = eta.lattice();
    let g = eta.group();
    let expected = l.meet(p.value, eta.tip());
    if nu.tip() != expected {
        return Err(Error::TipMismatch {
            expected: l.label(expected).to_string(),
            got: l.label(nu.tip()).to_string(),
        });
    }
    let pointwise = pointwise_compare(nu, &conjugate_by_point(eta, p))?.equal;
    let z_inv = g.inv(p.at);
    let levelwise = l
        .elements()
        .filter(|&t| l.leq(t, nu.tip()))
        .all(|t| nu.level_set(t) == g.conj_set(&eta.level_set(t), z_inv));
    Ok(LevelConjugacyCheck {
        pointwise,
        levelwise,
    })
}

/// Crisp subgroups `H`, `K` are conjugate iff some `z` has `K = z^-1 H z`.
pub fn crisp_bridge(group: &FiniteGroup, h: &EltSet, k: &EltSet) -> Result<bool> {
    for (name, set) in [("first", h), ("second", k)] {
        if !group.is_subgroup(set) {
            return Err(Error::NotASubgroup(format!("{name} argument")));
        }
    }
    Ok(group
        .elements()
        .any(|z| &group.conj_set(h, group.inv(z)) == k))
}

/// Same decision through the L-point route: over the two-element chain,
/// some point conjugate of the characteristic subset of `H` equals the
/// characteristic subset of `K`.
pub fn crisp_bridge_via_lpoints(group: Arc<FiniteGroup>, h: &EltSet, k: &EltSet) -> Result<bool> {
    for (name, set) in [("first", h), ("second", k)] {
        if !group.is_subgroup(set) {
            return Err(Error::NotASubgroup(format!("{name} argument")));
        }
    }
    let two = Arc::new(Lattice::chain(&["0", "1"]).expect("two-element chain"));
    let chi_h = LSubset::characteristic(group.clone(), two.clone(), h);
    let chi_k = LSubset::characteristic(group.clone(), two.clone(), k);
    for w in group.elements() {
        for b in two.elements() {
            let p = LPoint::new(b, w);
            if conjugate_by_point(&chi_h, &p) == chi_k {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Enumerate every L-subset `theta` with `lo <= theta <= hi` pointwise.
/// The callback returns `false` to stop early. Errors when the candidate
/// count exceeds `cap`.
fn for_each_between(
    lo: &LSubset,
    hi: &LSubset,
    cap: u128,
    mut f: impl FnMut(&LSubset) -> bool,
) -> Result<()> {
    let g = lo.group().clone();
    let l = lo.lattice().clone();
    let intervals: Vec<Vec<LatticeElt>> = g
        .elements()
        .map(|x| l.interval(lo.eval(x), hi.eval(x)))
        .collect();
    let mut size: u128 = 1;
    for iv in &intervals {
        size = size.saturating_mul(iv.len() as u128);
        if size > cap {
            return Err(Error::SearchSpaceTooLarge { size, cap });
        }
    }
    let mut counter = vec![0usize; intervals.len()];
    loop {
        let values: Vec<LatticeElt> = counter
            .iter()
            .zip(&intervals)
            .map(|(&c, iv)| iv[c])
            .collect();
        let candidate = LSubset::new(g.clone(), l.clone(), values).expect("interval values");
        if !f(&candidate) {
            return Ok(());
        }
        // Mixed-radix increment.
        let mut i = 0;
        loop {
            if i == counter.len() {
                return Ok(());
            }
            counter[i] += 1;
            if counter[i] < intervals[i].len() {
                break;
            }
            counter[i] = 0;
            i += 1;
        }
    }
}

/// Whether `eta` is a maximal proper L-subgroup of `mu`: no L-subgroup of
/// `mu` lies strictly between them. Decided by exhausting the pointwise
/// interval between `eta` and `mu`.
pub fn is_maximal(eta: &LSubset, mu: &LSubset, cap: Option<u128>) -> Result<bool> {
    let cap = cap.unwrap_or(DEFAULT_SEARCH_CAP);
    if !mu.is_l_subgroup() || !eta.is_l_subgroup_of(mu)? {
        return Err(Error::NotAnLSubgroup(
            "maximality requires an L-subgroup of the ambient".into(),
        ));
    }
    if eta.tip() == eta.tail() {
        return Err(Error::ProperityViolated("subject is constant".into()));
    }
    if eta == mu {
        return Err(Error::ProperityViolated("subject equals the ambient".into()));
    }
    let mut maximal = true;
    for_each_between(eta, mu, cap, |candidate| {
        if candidate != eta && candidate != mu && candidate.is_l_subgroup() {
            maximal = false;
            return false;
        }
        true
    })?;
    Ok(maximal)
}

/// Outcome of conjugating a maximal pair by a point.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MaximalConjugateOutcome {
    /// The two conjugates coincide.
    Collapsed,
    /// The conjugate of the subject stays maximal in the conjugate ambient.
    MaximalInConjugate,
    /// Neither holds: a genuine law violation.
    NotMaximal,
}

/// On chain lattices, conjugating a maximal L-subgroup of `mu` by a point of
/// `mu` either collapses (both conjugates equal) or preserves maximality.
pub fn maximal_conjugate_check(
    eta: &LSubset,
    mu: &LSubset,
    p: &LPoint,
    cap: Option<u128>,
) -> Result<MaximalConjugateOutcome> {
    if !eta.lattice().is_chain() {
        return Err(Error::NotAChain);
    }
    if !mu.has_point(p) {
        let (value, at) = mu.point_labels(p);
        return Err(Error::PointNotInAmbient { value, at });
    }
    if !is_maximal(eta, mu, cap)? {
        return Err(Error::ProperityViolated(
            "subject is not maximal in the ambient".into(),
        ));
    }
    let eta_c = conjugate_by_point(eta, p);
    let mu_c = conjugate_by_point(mu, p);
    if eta_c == mu_c {
        return Ok(MaximalConjugateOutcome::Collapsed);
    }
    match is_maximal(&eta_c, &mu_c, cap) {
        Ok(true) => Ok(MaximalConjugateOutcome::MaximalInConjugate),
        Ok(false) => Ok(MaximalConjugateOutcome::NotMaximal),
        Err(e) => Err(e),
    }
}
