//! Cell-complex bookkeeping for finite unions of polygons.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use cxdim_census::{PolyId, PolygonComplex};
use cxdim_core::GroupElement;

pub type EdgeKey = (GroupElement, GroupElement);

pub fn edge_key(a: &GroupElement, b: &GroupElement) -> EdgeKey {
    if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

pub fn path_edges(path: &[GroupElement]) -> Vec<EdgeKey> {
    path.windows(2).map(|w| edge_key(&w[0], &w[1])).collect()
}

/// Boundary cycles of the polygons as edge lists.
pub fn polygon_edges(cx: &PolygonComplex, p: &PolyId) -> Vec<EdgeKey> {
    let vs = cx.vertices(p);
    (0..vs.len()).map(|i| edge_key(&vs[i], &vs[(i + 1) % vs.len()])).collect()
}

/// Vertices, edges with their polygon multiplicity, and faces of a union.
pub struct CellCount {
    pub vertices: BTreeSet<GroupElement>,
    pub edges: BTreeMap<EdgeKey, usize>,
    pub faces: usize,
}

pub fn cells(cx: &PolygonComplex, polys: &[PolyId]) -> CellCount {
    let mut vertices = BTreeSet::new();
    let mut edges = BTreeMap::new();
    let distinct: BTreeSet<&PolyId> = polys.iter().collect();
    for p in &distinct {
        vertices.extend(cx.vertices(p));
        for e in polygon_edges(cx, p) {
            *edges.entry(e).or_insert(0) += 1;
        }
    }
    CellCount { vertices, edges, faces: distinct.len() }
}

/// `Ok` when the union is a closed disk: a connected surface with one
/// boundary circle and Euler characteristic 1. With `boundary` given, the
/// boundary circle must consist of exactly those edges.
pub fn disk_check(cx: &PolygonComplex, polys: &[PolyId], boundary: Option<&[EdgeKey]>) -> Result<(), String> {
    let distinct: BTreeSet<&PolyId> = polys.iter().collect();
    if distinct.len() != polys.len() {
        return Err("a polygon is listed twice".into());
    }
    let c = cells(cx, polys);
    if let Some((e, n)) = c.edges.iter().find(|(_, n)| **n > 2) {
        return Err(format!("edge {}-{} lies in {n} polygons", e.0, e.1));
    }
    let chi = c.vertices.len() as i64 - c.edges.len() as i64 + c.faces as i64;
    if chi != 1 {
        return Err(format!("Euler characteristic {chi}, expected 1"));
    }
    // every vertex link is a single path or cycle
    let mut at: HashMap<&GroupElement, Vec<usize>> = HashMap::new();
    let polys: Vec<&PolyId> = distinct.into_iter().collect();
    let edge_sets: Vec<Vec<EdgeKey>> = polys.iter().map(|p| polygon_edges(cx, p)).collect();
    let verts: Vec<Vec<GroupElement>> = polys.iter().map(|p| cx.vertices(p)).collect();
    for (i, vs) in verts.iter().enumerate() {
        for v in vs {
            at.entry(v).or_default().push(i);
        }
    }
    let mut boundary_deg: HashMap<&GroupElement, usize> = HashMap::new();
    for (e, n) in &c.edges {
        if *n == 1 {
            *boundary_deg.entry(&e.0).or_insert(0) += 1;
            *boundary_deg.entry(&e.1).or_insert(0) += 1;
        }
    }
    for (v, ps) in &at {
        let bd = boundary_deg.get(v).copied().unwrap_or(0);
        if bd != 0 && bd != 2 {
            return Err(format!("vertex {v} has {bd} boundary edges"));
        }
        // polygons at v joined when they share an edge at v
        let mut seen = vec![ps[0]];
        let mut stack = vec![ps[0]];
        while let Some(p) = stack.pop() {
            for &q in ps {
                if seen.contains(&q) {
                    continue;
                }
                let shares = edge_sets[p].iter().any(|e| (e.0 == **v || e.1 == **v) && edge_sets[q].contains(e));
                if shares {
                    seen.push(q);
                    stack.push(q);
                }
            }
        }
        if seen.len() != ps.len() {
            return Err(format!("vertex {v} is a pinch point"));
        }
    }
    // one boundary circle
    let bedges: Vec<&EdgeKey> = c.edges.iter().filter(|(_, n)| **n == 1).map(|(e, _)| e).collect();
    if bedges.is_empty() {
        return Err("no boundary".into());
    }
    let mut adj: HashMap<&GroupElement, Vec<&GroupElement>> = HashMap::new();
    for e in &bedges {
        adj.entry(&e.0).or_default().push(&e.1);
        adj.entry(&e.1).or_default().push(&e.0);
    }
    let start = &bedges[0].0;
    let mut seen: BTreeSet<&GroupElement> = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for w in &adj[v] {
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    if seen.len() != adj.len() {
        return Err("boundary has more than one component".into());
    }
    // connectedness of the surface follows from chi = 1 with one boundary
    // circle only if it is connected; check via polygons sharing vertices
    let mut comp = vec![false; polys.len()];
    comp[0] = true;
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for v in &verts[i] {
            for &j in &at[v] {
                if !comp[j] {
                    comp[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    if comp.iter().any(|c| !c) {
        return Err("not connected".into());
    }
    if let Some(expected) = boundary {
        let want: BTreeSet<&EdgeKey> = expected.iter().collect();
        let got: BTreeSet<&EdgeKey> = bedges.iter().copied().collect();
        if let Some(e) = want.symmetric_difference(&got).next() {
            return Err(format!("boundary edge {}-{} does not match L ∪ E ∪ R", e.0, e.1));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use cxdim_core::{CoxeterGroup, DefiningGraph};

    #[test]
    fn three_hexagons_form_a_disk_and_two_opposite_do_not() {
        let g = CoxeterGroup::new(DefiningGraph::uniform(4, 3).unwrap());
        let cx = PolygonComplex::new(&g);
        let e = GroupElement::identity();
        let three = [cx.polygon(&e, 0, 1), cx.polygon(&e, 0, 2), cx.polygon(&e, 1, 2)];
        assert!(disk_check(&cx, &three, None).is_ok());
        // two polygons meeting only at the identity
        let pinch = [cx.polygon(&e, 0, 1), cx.polygon(&e, 2, 3)];
        assert!(disk_check(&cx, &pinch, None).is_err());
        // all six around a vertex of K_4: every edge at e lies in three polygons
        let all: Vec<PolyId> = g.graph().pairs().map(|(i, j)| cx.polygon(&e, i, j)).collect();
        assert!(disk_check(&cx, &all, None).unwrap_err().contains("3 polygons"));
    }
}
