//! Polygons of the Davis complex as cosets `g⟨s_i, s_j⟩`, generated on demand.

use std::collections::HashMap;
use std::fmt;

use serde::{Serialize, Serializer};

use cxdim_core::{CoxeterGroup, GroupElement};

/// A 2-cell: the pair `(i, j)`, `i < j`, and the shortest element of its coset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PolyId {
    #[serde(serialize_with = "one_based")]
    pub pair: (usize, usize),
    pub coset: GroupElement,
}

fn one_based<S: Serializer>(p: &(usize, usize), s: S) -> Result<S::Ok, S::Error> {
    [p.0 + 1, p.1 + 1].serialize(s)
}

impl fmt::Display for PolyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}<{},{}>", self.coset, self.pair.0 + 1, self.pair.1 + 1)
    }
}

/// The whole (infinite) polygon complex, with a memo of polygon neighbourhoods.
pub struct PolygonComplex<'g> {
    group: &'g CoxeterGroup,
    meets: HashMap<PolyId, Vec<PolyId>>,
}

impl<'g> PolygonComplex<'g> {
    pub fn new(group: &'g CoxeterGroup) -> Self {
        Self { group, meets: HashMap::new() }
    }

    pub fn group(&self) -> &CoxeterGroup {
        self.group
    }

    /// The polygon of type `(i, j)` through `v`.
    pub fn polygon(&self, v: &GroupElement, i: usize, j: usize) -> PolyId {
        let pair = (i.min(j), i.max(j));
        PolyId { pair, coset: self.group.min_coset_rep(v, &[pair.0, pair.1]) }
    }

    /// Boundary vertices in cyclic order, starting at the coset representative.
    pub fn vertices(&self, p: &PolyId) -> Vec<GroupElement> {
        let n = 2 * self.group.graph().label(p.pair.0, p.pair.1) as usize;
        let mut out = Vec::with_capacity(n);
        let mut cur = p.coset.clone();
        for k in 0..n {
            let s = if k % 2 == 0 { p.pair.0 } else { p.pair.1 };
            let next = self.group.mul_gen(&cur, s);
            out.push(cur);
            cur = next;
        }
        debug_assert_eq!(cur, p.coset);
        out
    }

    /// Every polygon containing the vertex `v`.
    pub fn polygons_at(&self, v: &GroupElement) -> Vec<PolyId> {
        self.group.graph().pairs().map(|(i, j)| self.polygon(v, i, j)).collect()
    }

    /// Polygons other than `p` sharing at least a vertex with it, sorted.
    pub fn meeting(&mut self, p: &PolyId) -> &[PolyId] {
        if !self.meets.contains_key(p) {
            let mut out: Vec<PolyId> = self
                .vertices(p)
                .iter()
                .flat_map(|v| self.polygons_at(v))
                .filter(|q| q != p)
                .collect();
            out.sort();
            out.dedup();
            self.meets.insert(p.clone(), out);
        }
        &self.meets[p]
    }

    /// Largest word length among the vertices of `p`.
    pub fn reach(&self, p: &PolyId) -> usize {
        self.vertices(p).iter().map(GroupElement::len).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cxdim_core::DefiningGraph;

    #[test]
    fn vertices_close_up_and_share_the_coset() {
        let g = CoxeterGroup::new(DefiningGraph::uniform(4, 3).unwrap());
        let cx = PolygonComplex::new(&g);
        let v = g.reduce_letters(&[2, 0, 3, 1]);
        for (i, j) in g.graph().pairs() {
            let p = cx.polygon(&v, i, j);
            let vs = cx.vertices(&p);
            assert_eq!(vs.len(), 6);
            assert!(vs.contains(&v));
            for w in &vs {
                assert_eq!(cx.polygon(w, j, i), p);
            }
            assert_eq!(cx.reach(&p), p.coset.len() + 3);
        }
    }

    #[test]
    fn display_is_one_based() {
        let g = CoxeterGroup::new(DefiningGraph::uniform(4, 3).unwrap());
        let cx = PolygonComplex::new(&g);
        assert_eq!(cx.polygon(&GroupElement::identity(), 0, 2).to_string(), "e<1,3>");
    }
}
