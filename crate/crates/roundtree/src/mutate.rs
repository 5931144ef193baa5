//! Deliberate corruptions of a built tree, for checking that the audits
//! notice.

use serde::Serialize;

use cxdim_census::{PolyId, PolygonComplex};

use crate::RoundTree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutation {
    /// Give one polygon of the last strips a pair inside the forbidden triple.
    RelabelIntoTriple,
    /// Remove one polygon from the first strips.
    DeletePolygon,
    /// Put a polygon of one strip into its sibling as well.
    ShareStripPolygon,
}

impl Mutation {
    pub const ALL: [Mutation; 3] = [Mutation::RelabelIntoTriple, Mutation::DeletePolygon, Mutation::ShareStripPolygon];
}

/// Swap or drop a polygon in every piece that contains it.
fn replace_everywhere(tree: &mut RoundTree, from: &PolyId, to: Option<&PolyId>) {
    for st in &mut tree.stages {
        for b in &mut st.branches {
            if let Some(i) = b.polygons.iter().position(|p| p == from) {
                match to {
                    Some(q) => b.polygons[i] = q.clone(),
                    None => {
                        b.polygons.remove(i);
                    }
                }
            }
        }
    }
}

impl RoundTree {
    /// A copy with one fault injected, plus the polygon involved. Needs at
    /// least one built stage.
    pub fn mutated(&self, mutation: Mutation) -> (RoundTree, PolyId) {
        let mut t = self.clone();
        let last = t.stages.len() - 1;
        assert!(last >= 1, "mutations need a stage with strips");
        match mutation {
            Mutation::RelabelIntoTriple => {
                let k = last - 1;
                let tri = t.forbidden_triple(k);
                let cx = PolygonComplex::new(&self.group);
                let sp = &mut t.stages[last].strips[0].polygons[1];
                let old = sp.poly.clone();
                let new = cx.polygon(&sp.apex, tri[0], tri[1]);
                sp.poly = new.clone();
                replace_everywhere(&mut t, &old, Some(&new));
                (t, new)
            }
            Mutation::DeletePolygon => {
                let old = t.stages[1].strips[0].polygons.remove(1).poly;
                replace_everywhere(&mut t, &old, None);
                (t, old)
            }
            Mutation::ShareStripPolygon => {
                let strips = &mut t.stages[last].strips;
                let mid = strips[0].polygons.len() / 2;
                let p = strips[0].polygons[mid].clone();
                strips[1].polygons.push(p.clone());
                let sibling = strips[1].parent.iter().copied().chain([strips[1].index]).collect::<Vec<_>>();
                for b in &mut t.stages[last].branches {
                    if b.address == sibling {
                        b.polygons.push(p.poly.clone());
                    }
                }
                (t, p.poly)
            }
        }
    }
}
