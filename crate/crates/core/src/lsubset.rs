//! Lattice-valued subsets of a finite group, and L-points.
//!
//! An `LSubset` assigns every group element a value in a bounded lattice.
//! It is an L-subgroup when `f(x*y) >= f(x) /\ f(y)` and `f(x^-1) = f(x)`
//! hold everywhere; equivalently, when every non-empty level subset
//! `{x : f(x) >= a}` is a subgroup. Both characterizations are implemented
//! as independent code paths so they can be checked against each other.
//!
//! Binary operations require both operands to share the same group and the
//! same lattice; mixing carriers is a hard error, never a coercion.

use crate::error::{Error, Result};
use crate::group::{EltSet, FiniteGroup, GElt, GroupHom};
use crate::lattice::{Lattice, LatticeElt};
use std::sync::Arc;

/// An L-point: the single value `value` at the element `at`, bottom elsewhere.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LPoint {
    pub value: LatticeElt,
    pub at: GElt,
}

impl LPoint {
    pub fn new(value: LatticeElt, at: GElt) -> LPoint {
        LPoint { value, at }
    }
}

/// A total map from a finite group into a bounded lattice.
#[derive(Clone, PartialEq, Debug)]
pub struct LSubset {
    group: Arc<FiniteGroup>,
    lattice: Arc<Lattice>,
    values: Vec<LatticeElt>,
}

impl LSubset {
    pub fn new(
        group: Arc<FiniteGroup>,
        lattice: Arc<Lattice>,
        values: Vec<LatticeElt>,
    ) -> Result<LSubset> {
        if values.len() != group.order() {
            return Err(Error::Invalid(format!(
                "value table has {} entries for a group of order {}",
                values.len(),
                group.order()
            )));
        }
        if let Some(v) = values.iter().find(|v| v.0 >= lattice.size()) {
            return Err(Error::Invalid(format!(
                "value index {} outside the lattice",
                v.0
            )));
        }
        Ok(LSubset {
            group,
            lattice,
            values,
        })
    }

    pub fn constant(group: Arc<FiniteGroup>, lattice: Arc<Lattice>, v: LatticeElt) -> LSubset {
        let values = vec![v; group.order()];
        LSubset {
            group,
            lattice,
            values,
        }
    }

    /// Top on `set`, bottom elsewhere.
    pub fn characteristic(
        group: Arc<FiniteGroup>,
        lattice: Arc<Lattice>,
        set: &EltSet,
    ) -> LSubset {
        let values = (0..group.order())
            .map(|i| {
                if set.contains(&GElt(i)) {
                    lattice.top()
                } else {
                    lattice.bottom()
                }
            })
            .collect();
        LSubset {
            group,
            lattice,
            values,
        }
    }

    /// The L-point `p` viewed as an L-subset.
    pub fn from_point(group: Arc<FiniteGroup>, lattice: Arc<Lattice>, p: LPoint) -> LSubset {
        let mut values = vec![lattice.bottom(); group.order()];
        values[p.at.0] = p.value;
        LSubset {
            group,
            lattice,
            values,
        }
    }

    /// Same carriers as `self`, different value table.
    pub(crate) fn like(&self, values: Vec<LatticeElt>) -> LSubset {
        debug_assert_eq!(values.len(), self.group.order());
        LSubset {
            group: self.group.clone(),
            lattice: self.lattice.clone(),
            values,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn values(&self) -> &[LatticeElt] {
        &self.values
    }

    pub fn eval(&self, x: GElt) -> LatticeElt {
        self.values[x.0]
    }

    /// Supremum of all attained values.
    pub fn tip(&self) -> LatticeElt {
        self.lattice.sup_over(self.values.iter().copied())
    }

    /// Infimum of all attained values.
    pub fn tail(&self) -> LatticeElt {
        self.lattice.inf_over(self.values.iter().copied())
    }

    /// `{x : self(x) >= a}`.
    pub fn level_set(&self, a: LatticeElt) -> EltSet {
        self.group
            .elements()
            .filter(|&x| self.lattice.leq(a, self.eval(x)))
            .collect()
    }

    pub fn same_carriers(&self, other: &LSubset) -> bool {
        (Arc::ptr_eq(&self.group, &other.group) || self.group == other.group)
            && (Arc::ptr_eq(&self.lattice, &other.lattice) || self.lattice == other.lattice)
    }

    fn ensure_same_carriers(&self, other: &LSubset) -> Result<()> {
        if self.same_carriers(other) {
            Ok(())
        } else {
            Err(Error::MixedCarriers(
                "operands live on different groups or lattices",
            ))
        }
    }

    /// Pointwise containment: `other(x) <= self(x)` for every `x`.
    pub fn contains(&self, other: &LSubset) -> Result<bool> {
        self.ensure_same_carriers(other)?;
        Ok(self
            .group
            .elements()
            .all(|x| self.lattice.leq(other.eval(x), self.eval(x))))
    }

    /// Containment via level subsets: `other_t` is inside `self_t` for every
    /// `t` below the tip of `other`. Exact on finite lattices; used as an
    /// independent path against [`LSubset::contains`].
    pub fn contains_levelwise(&self, other: &LSubset) -> Result<bool> {
        self.ensure_same_carriers(other)?;
        let tip = other.tip();
        Ok(self
            .lattice
            .elements()
            .filter(|&t| self.lattice.leq(t, tip))
            .all(|t| other.level_set(t).is_subset(&self.level_set(t))))
    }

    /// First element witnessing failure of containment, if any.
    pub fn containment_witness(&self, other: &LSubset) -> Result<Option<GElt>> {
        self.ensure_same_carriers(other)?;
        Ok(self
            .group
            .elements()
            .find(|&x| !self.lattice.leq(other.eval(x), self.eval(x))))
    }

    /// Direct check of the two defining inequalities.
    pub fn is_l_subgroup(&self) -> bool {
        let (g, l) = (&self.group, &self.lattice);
        for x in g.elements() {
            if self.eval(g.inv(x)) != self.eval(x) {
                return false;
            }
            for y in g.elements() {
                let bound = l.meet(self.eval(x), self.eval(y));
                if !l.leq(bound, self.eval(g.mul(x, y))) {
                    return false;
                }
            }
        }
        true
    }

    /// Level-subset characterization: every non-empty level is a subgroup.
    /// Independent path against [`LSubset::is_l_subgroup`].
    pub fn is_l_subgroup_levelwise(&self) -> bool {
        self.lattice.elements().all(|a| {
            let level = self.level_set(a);
            level.is_empty() || self.group.is_subgroup(&level)
        })
    }

    /// Membership in `L(mu)`: an L-subgroup contained in `mu`.
    pub fn is_l_subgroup_of(&self, mu: &LSubset) -> Result<bool> {
        Ok(mu.contains(self)? && self.is_l_subgroup())
    }

    /// Level path for `L(mu)` membership: every non-empty level of `self` is
    /// a subgroup contained in the matching level of `mu`.
    pub fn is_l_subgroup_of_levelwise(&self, mu: &LSubset) -> Result<bool> {
        self.ensure_same_carriers(mu)?;
        Ok(self.lattice.elements().all(|a| {
            let level = self.level_set(a);
            level.is_empty()
                || (self.group.is_subgroup(&level) && level.is_subset(&mu.level_set(a)))
        }))
    }

    /// Normality of `self` in `mu`: `self(y*x*y^-1) >= self(x) /\ mu(y)`.
    /// Requires `self` to be an L-subgroup of `mu` (and `mu` an L-subgroup).
    pub fn is_normal_in(&self, mu: &LSubset) -> Result<bool> {
        if !mu.is_l_subgroup() {
            return Err(Error::NotAnLSubgroup("ambient is not an L-subgroup".into()));
        }
        if !self.is_l_subgroup_of(mu)? {
            return Err(Error::NotAnLSubgroup(
                "subject is not an L-subgroup of the ambient".into(),
            ));
        }
        let (g, l) = (&self.group, &self.lattice);
        for y in g.elements() {
            for x in g.elements() {
                let bound = l.meet(self.eval(x), mu.eval(y));
                if !l.leq(bound, self.eval(g.conj(y, x))) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Level path for normality: every non-empty level of `self` is fixed by
    /// conjugation under the matching level of `mu`.
    pub fn is_normal_in_levelwise(&self, mu: &LSubset) -> Result<bool> {
        if !mu.is_l_subgroup() || !self.is_l_subgroup_of(mu)? {
            return Err(Error::NotAnLSubgroup(
                "normality requires an L-subgroup of the ambient".into(),
            ));
        }
        Ok(self.lattice.elements().all(|a| {
            let level = self.level_set(a);
            level.is_empty()
                || mu
                    .level_set(a)
                    .iter()
                    .all(|&y| self.group.conj_set(&level, y) == level)
        }))
    }

    /// Set product: `(self o other)(x) = sup { self(y) /\ other(z) : x = y*z }`.
    pub fn set_product(&self, other: &LSubset) -> Result<LSubset> {
        self.ensure_same_carriers(other)?;
        let (g, l) = (&self.group, &self.lattice);
        let values = g
            .elements()
            .map(|x| {
                l.sup_over(
                    g.elements()
                        .map(|y| l.meet(self.eval(y), other.eval(g.mul(g.inv(y), x)))),
                )
            })
            .collect();
        Ok(self.like(values))
    }

    /// Pointwise meet.
    pub fn intersect(&self, other: &LSubset) -> Result<LSubset> {
        self.ensure_same_carriers(other)?;
        let values = (0..self.values.len())
            .map(|i| self.lattice.meet(self.values[i], other.values[i]))
            .collect();
        Ok(self.like(values))
    }

    /// Pointwise join.
    pub fn union_with(&self, other: &LSubset) -> Result<LSubset> {
        self.ensure_same_carriers(other)?;
        let values = (0..self.values.len())
            .map(|i| self.lattice.join(self.values[i], other.values[i]))
            .collect();
        Ok(self.like(values))
    }

    /// L-point membership: `p` belongs to `self` iff `self(p.at) >= p.value`.
    pub fn has_point(&self, p: &LPoint) -> bool {
        self.lattice.leq(p.value, self.eval(p.at))
    }

    /// The trivial L-subgroup of `self`: tip at the identity, tail elsewhere.
    pub fn trivial(&self) -> LSubset {
        let tip = self.tip();
        let tail = self.tail();
        let values = self
            .group
            .elements()
            .map(|x| if x == self.group.identity() { tip } else { tail })
            .collect();
        self.like(values)
    }

    /// Render `p` as labels, for error reporting.
    pub fn point_labels(&self, p: &LPoint) -> (String, String) {
        (
            self.lattice.label(p.value).to_string(),
            self.group.label(p.at).to_string(),
        )
    }
}

/// Image under a homomorphism: `f(s)(y) = sup { s(x) : f(x) = y }`.
pub fn image(f: &GroupHom, s: &LSubset) -> Result<LSubset> {
    if f.domain().as_ref() != s.group().as_ref() {
        return Err(Error::MixedCarriers("subset does not live on the domain"));
    }
    let lattice = s.lattice().clone();
    let values = f
        .codomain()
        .elements()
        .map(|y| lattice.sup_over(f.fiber(y).into_iter().map(|x| s.eval(x))))
        .collect();
    LSubset::new(f.codomain().clone(), lattice, values)
}

/// Preimage under a homomorphism: `(f^-1 t)(x) = t(f(x))`.
pub fn preimage(f: &GroupHom, t: &LSubset) -> Result<LSubset> {
    if f.codomain().as_ref() != t.group().as_ref() {
        return Err(Error::MixedCarriers("subset does not live on the codomain"));
    }
    let values = f.domain().elements().map(|x| t.eval(f.apply(x))).collect();
    LSubset::new(f.domain().clone(), t.lattice().clone(), values)
}
