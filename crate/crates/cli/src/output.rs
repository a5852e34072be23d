//! Rendering: human tables group elements by value (highest lattice index
//! first); JSON emits compact documents with a fixed field order so golden
//! files stay byte-stable.

use lgroup_core::group::{EltSet, FiniteGroup};
use lgroup_core::lsubset::LSubset;
use lgroup_core::lattice::LatticeElt;
use serde::Serialize;

/// One row of the machine-readable value table.
#[derive(Serialize)]
pub struct Pair {
    pub element: String,
    pub value: String,
}

/// `(element, value)` pairs for every group element, in element-index order.
pub fn pairs_of(s: &LSubset) -> Vec<Pair> {
    let (g, l) = (s.group(), s.lattice());
    g.elements()
        .map(|x| Pair {
            element: g.label(x).to_string(),
            value: l.label(s.eval(x)).to_string(),
        })
        .collect()
}

/// Grouped table: one `value : members` line per attained value, highest
/// lattice index first; members keep group-element order.
pub fn table_of(s: &LSubset) -> String {
    let (g, l) = (s.group(), s.lattice());
    let order: Vec<LatticeElt> = l.elements().collect();
    let mut lines = Vec::new();
    for &v in order.iter().rev() {
        let members: Vec<&str> = g
            .elements()
            .filter(|&x| s.eval(x) == v)
            .map(|x| g.label(x))
            .collect();
        if !members.is_empty() {
            lines.push(format!("{} : {}", l.label(v), members.join(", ")));
        }
    }
    lines.join("\n")
}

/// Members of a crisp element set, in group-element order.
pub fn members_of(group: &FiniteGroup, set: &EltSet) -> String {
    if set.is_empty() {
        return "(empty)".to_string();
    }
    let labels: Vec<&str> = group
        .elements()
        .filter(|x| set.contains(x))
        .map(|x| group.label(x))
        .collect();
    labels.join(", ")
}

pub fn member_labels(group: &FiniteGroup, set: &EltSet) -> Vec<String> {
    group
        .elements()
        .filter(|x| set.contains(x))
        .map(|x| group.label(x).to_string())
        .collect()
}
