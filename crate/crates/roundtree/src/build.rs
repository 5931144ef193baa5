//! The inductive construction. Every polygon is a coset `g⟨s_a, s_b⟩`, so
//! gluing a polygon of type `{x, ℓ}` to an edge with label `ℓ` at `g` means
//! taking the coset of `g`.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use cxdim_census::{PolyId, PolygonComplex};
use cxdim_core::{CoxeterGroup, DefiningGraph, GroupElement};

use crate::{Result, RoundTreeError};

/// One planar piece `A_{a_n}`.
#[derive(Clone, Debug, Serialize)]
pub struct Branch {
    /// Strip indices `1..=V`; empty for `A_0`.
    pub address: Vec<usize>,
    /// `L_{a_n}` from `x_0`.
    pub left: Vec<GroupElement>,
    /// `R_{a_n}` from `x_0`.
    pub right: Vec<GroupElement>,
    /// `E_{a_n}` from the end of `L` to the end of `R`.
    pub outer: Vec<GroupElement>,
    /// Internal vertices as (index into `outer`, adjacent vertex `v'`).
    pub internal: Vec<(usize, GroupElement)>,
    pub polygons: Vec<PolyId>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StripPolygon {
    pub poly: PolyId,
    /// The vertex joined back to the previous outer path, used as the fan
    /// apex when triangulating.
    pub apex: GroupElement,
    /// True for the `{x, y}` polygon glued at a vertex where the strip
    /// changes label.
    pub corner: bool,
}

/// `S^j_{a_k}`, glued along `E_{a_k}`.
#[derive(Clone, Debug, Serialize)]
pub struct Strip {
    pub stage: usize,
    pub parent: Vec<usize>,
    pub index: usize,
    /// 0-based new-edge label at each internal vertex of `E_{a_k}`.
    pub labels: Vec<usize>,
    pub polygons: Vec<StripPolygon>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundTreeStage {
    pub n: usize,
    pub branches: Vec<Branch>,
    /// The strips glued at stage `n - 1` to produce this stage.
    pub strips: Vec<Strip>,
    /// Index into `RoundTree::triples` of the triple the next strips avoid.
    pub forbidden_triple_index: usize,
}

#[derive(Clone, Debug)]
pub struct RoundTree {
    pub group: CoxeterGroup,
    pub v: usize,
    pub h: u64,
    /// All triples `t_1..t_R`, lexicographic, 0-based.
    pub triples: Vec<[usize; 3]>,
    pub stages: Vec<RoundTreeStage>,
}

impl RoundTree {
    pub fn graph(&self) -> &DefiningGraph {
        self.group.graph()
    }

    /// The triple whose pairs the strips glued at stage `k` avoid.
    pub fn forbidden_triple(&self, k: usize) -> [usize; 3] {
        self.triples[k % self.triples.len()]
    }

    /// `A_0` polygons followed by every strip polygon glued before stage `n`.
    pub fn polygons_at_stage(&self, n: usize) -> Vec<PolyId> {
        let mut out = self.stages[0].branches[0].polygons.clone();
        for st in &self.stages[1..=n] {
            for s in &st.strips {
                out.extend(s.polygons.iter().map(|p| p.poly.clone()));
            }
        }
        out
    }

    /// Initial `|L_0|`, which is 4 for hexagons.
    pub fn initial_side(&self) -> usize {
        self.graph().label(0, 1) as usize + 1
    }
}

/// The generator `s` with `a s = b`.
pub(crate) fn step_label(g: &CoxeterGroup, a: &GroupElement, b: &GroupElement) -> Option<usize> {
    if a.len().abs_diff(b.len()) != 1 {
        return None;
    }
    (0..g.rank()).find(|&s| g.mul_gen(a, s) == *b)
}

/// `start`, then `steps` right multiplications alternating `a, b, a, ...`.
fn walk(g: &CoxeterGroup, start: &GroupElement, a: usize, b: usize, steps: usize) -> Vec<GroupElement> {
    let mut out = Vec::with_capacity(steps + 1);
    out.push(start.clone());
    for t in 0..steps {
        let s = if t % 2 == 0 { a } else { b };
        let next = g.mul_gen(out.last().unwrap(), s);
        out.push(next);
    }
    out
}

fn all_triples(m: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for p in 0..m {
        for q in p + 1..m {
            for r in q + 1..m {
                out.push([p, q, r]);
            }
        }
    }
    out
}

/// Labels of edges of the given polygons at each vertex.
fn incident_labels(cx: &PolygonComplex, polys: &[PolyId]) -> HashMap<GroupElement, BTreeSet<usize>> {
    let mut out: HashMap<GroupElement, BTreeSet<usize>> = HashMap::new();
    for p in polys {
        for v in cx.vertices(p) {
            let e = out.entry(v).or_default();
            e.insert(p.pair.0);
            e.insert(p.pair.1);
        }
    }
    out
}

fn initial_stage(g: &CoxeterGroup, cx: &PolygonComplex) -> Branch {
    let gl = g.graph();
    let m12 = gl.label(0, 1) as usize;
    let e = GroupElement::identity();
    // the vertex shared by the three polygons, opposite x_0 on the {1,2} polygon
    let c = walk(g, &e, 0, 1, m12).pop().unwrap();
    // L leaves the {1,2} polygon at c a, R at c b
    let (a, b) = if m12 % 2 == 1 { (0, 1) } else { (1, 0) };
    let mut left = walk(g, &e, 0, 1, m12 - 1);
    let l_end = left.last().unwrap().clone();
    left.extend(walk(g, &l_end, 2, a, 2).into_iter().skip(1));
    let mut right = walk(g, &e, 1, 0, m12 - 1);
    let r_end = right.last().unwrap().clone();
    right.extend(walk(g, &r_end, 2, b, 2).into_iter().skip(1));
    // around the {a,3} polygon from c: c, c a, c a s3, c a s3 a = end of L, ..., c s3
    let pa = walk(g, &c, a, 2, 2 * gl.label(a, 2) as usize - 1);
    let pb = walk(g, &c, 2, b, 2 * gl.label(b, 2) as usize - 3);
    let mut outer: Vec<GroupElement> = pa[3..].to_vec();
    outer.extend(pb[2..].iter().cloned());
    let v1 = outer.iter().position(|v| *v == *pa.last().unwrap()).unwrap();
    let polygons = vec![cx.polygon(&e, 0, 1), cx.polygon(&c, a, 2), cx.polygon(&c, b, 2)];
    Branch { address: Vec::new(), left, right, outer, internal: vec![(v1, c)], polygons }
}

/// Strip labels at each internal vertex: strip `j` keeps its label wherever
/// the next vertex offers it, the rest are paired in sorted order.
fn match_strips(choices: &[Vec<usize>], v: usize) -> Vec<Vec<usize>> {
    let mut strips: Vec<Vec<usize>> = (0..v).map(|j| vec![choices[0][j]]).collect();
    for set in &choices[1..] {
        let mut free: Vec<usize> = set.iter().copied().filter(|l| !strips.iter().any(|s| s.last() == Some(l))).collect();
        free.reverse();
        for s in strips.iter_mut() {
            let prev = *s.last().unwrap();
            let next = if set.contains(&prev) { prev } else { free.pop().unwrap() };
            s.push(next);
        }
    }
    strips
}

struct Glued {
    strip: Vec<StripPolygon>,
    child: Branch,
}

fn glue_strip(g: &CoxeterGroup, cx: &PolygonComplex, parent: &Branch, labels: &[usize], stage: usize) -> Result<Glued> {
    let e = &parent.outer;
    let n = e.len() - 1;
    let err = |v: &GroupElement, reason: String| RoundTreeError::Construction { stage, vertex: v.to_string(), reason };
    let ell: Vec<usize> = (0..n)
        .map(|s| step_label(g, &e[s], &e[s + 1]).ok_or_else(|| err(&e[s], "outer path is not an edge path".into())))
        .collect::<Result<_>>()?;
    let idx: Vec<usize> = parent.internal.iter().map(|(i, _)| *i).collect();
    let lambda = |s: usize| -> usize {
        if s < idx[0] {
            return labels[0];
        }
        if s >= *idx.last().unwrap() {
            return *labels.last().unwrap();
        }
        let t = idx.iter().rposition(|&i| i <= s).unwrap();
        if s == idx[t] {
            labels[t]
        } else {
            labels[t + 1]
        }
    };
    let mut corner_at: HashMap<usize, (usize, usize)> = HashMap::new();
    for t in 0..idx.len().saturating_sub(1) {
        if labels[t] != labels[t + 1] {
            if idx[t + 1] - idx[t] < 2 {
                return Err(err(&e[idx[t]], "internal vertices adjacent where the strip changes label".into()));
            }
            corner_at.insert(idx[t] + 1, (labels[t], labels[t + 1]));
        }
    }
    let mut strip = Vec::new();
    let mut path: Vec<GroupElement> = Vec::new();
    let push_arc = |arc: Vec<GroupElement>, path: &mut Vec<GroupElement>| -> Result<()> {
        if let Some(last) = path.last() {
            if *last != arc[0] {
                return Err(err(&arc[0], "strip polygons do not share a rung".into()));
            }
            path.extend(arc.into_iter().skip(1));
        } else {
            path.extend(arc);
        }
        Ok(())
    };
    for s in 0..n {
        if let Some(&(x, y)) = corner_at.get(&s) {
            let w = &e[s];
            let mxy = g.graph().label(x, y) as usize;
            let start = g.mul_gen(w, x);
            let arc = walk(g, &start, y, x, 2 * mxy - 2);
            if *arc.last().unwrap() != g.mul_gen(w, y) {
                return Err(err(w, "corner polygon does not close".into()));
            }
            strip.push(StripPolygon { poly: cx.polygon(w, x, y), apex: start, corner: true });
            push_arc(arc, &mut path)?;
        }
        let (l, lam) = (ell[s], lambda(s));
        if l == lam {
            return Err(err(&e[s], format!("new label {} repeats the edge label", lam + 1)));
        }
        let mll = g.graph().label(l, lam) as usize;
        let start = g.mul_gen(&e[s], lam);
        let arc = walk(g, &start, l, lam, 2 * mll - 3);
        if *arc.last().unwrap() != g.mul_gen(&e[s + 1], lam) {
            return Err(err(&e[s], "strip polygon does not close".into()));
        }
        strip.push(StripPolygon { poly: cx.polygon(&e[s], l, lam), apex: start, corner: false });
        push_arc(arc, &mut path)?;
    }
    let k = path.len();
    let mut left = parent.left.clone();
    left.extend_from_slice(&path[..2]);
    let mut right = parent.right.clone();
    right.push(path[k - 1].clone());
    right.push(path[k - 2].clone());
    let outer: Vec<GroupElement> = path[1..k - 1].to_vec();
    let pos: HashMap<&GroupElement, usize> = outer.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut internal = Vec::new();
    for s in 1..n {
        let rungs = match corner_at.get(&s) {
            Some(&(x, y)) => vec![x, y],
            None => vec![lambda(s)],
        };
        for r in rungs {
            let far = g.mul_gen(&e[s], r);
            let i = *pos.get(&far).ok_or_else(|| err(&far, "rung end is not on the new outer path".into()))?;
            internal.push((i, e[s].clone()));
        }
    }
    internal.sort_by_key(|(i, _)| *i);
    let mut polygons = parent.polygons.clone();
    polygons.extend(strip.iter().map(|p| p.poly.clone()));
    Ok(Glued { strip, child: Branch { address: Vec::new(), left, right, outer, internal, polygons } })
}

/// Stages `0..=n_max` of the round tree with vertical branching `v`.
pub fn build_round_tree(graph: &DefiningGraph, v: usize, n_max: usize) -> Result<RoundTree> {
    let m = graph.m();
    if v < 2 || m < 3 * v + 5 {
        return Err(RoundTreeError::Precondition(format!("need V >= 2 and m >= 3V + 5, got V = {v}, m = {m}")));
    }
    let group = CoxeterGroup::new(graph.clone());
    let cx = PolygonComplex::new(&group);
    let triples = all_triples(m);
    let h = 2 * graph.max_label() as u64 - 1;
    let mut stages = vec![RoundTreeStage { n: 0, branches: vec![initial_stage(&group, &cx)], strips: Vec::new(), forbidden_triple_index: 0 }];
    for n in 0..n_max {
        let prev = &stages[n];
        let all: Vec<PolyId> = prev.branches.iter().flat_map(|b| b.polygons.iter().cloned()).collect();
        let at = incident_labels(&cx, &all);
        let forbidden = triples[n % triples.len()];
        let mut branches = Vec::new();
        let mut strips = Vec::new();
        for b in &prev.branches {
            let mut choices = Vec::new();
            for (i, partner) in &b.internal {
                let vtx = &b.outer[*i];
                let mut excluded: BTreeSet<usize> = forbidden.iter().copied().collect();
                for w in [vtx, partner] {
                    excluded.extend(at.get(w).into_iter().flatten());
                }
                let free: Vec<usize> = (0..m).filter(|l| !excluded.contains(l)).take(v).collect();
                if free.len() < v {
                    return Err(RoundTreeError::Construction {
                        stage: n,
                        vertex: vtx.to_string(),
                        reason: format!("only {} admissible labels after excluding {:?}", free.len(), excluded),
                    });
                }
                choices.push(free);
            }
            for (j, labels) in match_strips(&choices, v).into_iter().enumerate() {
                let glued = glue_strip(&group, &cx, b, &labels, n)?;
                let mut child = glued.child;
                child.address = b.address.iter().copied().chain([j + 1]).collect();
                strips.push(Strip { stage: n, parent: b.address.clone(), index: j + 1, labels, polygons: glued.strip });
                branches.push(child);
            }
        }
        stages.push(RoundTreeStage { n: n + 1, branches, strips, forbidden_triple_index: (n + 1) % triples.len() });
    }
    Ok(RoundTree { group, v, h, triples, stages })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_complex_is_three_hexagons() {
        let g = DefiningGraph::uniform(11, 3).unwrap();
        let t = build_round_tree(&g, 2, 0).unwrap();
        let b = &t.stages[0].branches[0];
        assert_eq!(b.polygons.len(), 3);
        assert_eq!(b.left.len() - 1, 4);
        assert_eq!(b.right.len() - 1, 4);
        assert_eq!(b.outer.len() - 1, 4);
        assert_eq!(b.internal[0].0, 2);
        assert_eq!(t.triples.len(), 165);
    }

    #[test]
    fn strip_matching_keeps_shared_labels() {
        let m = match_strips(&[vec![3, 4], vec![4, 7], vec![5, 7]], 2);
        assert_eq!(m, vec![vec![3, 7, 7], vec![4, 4, 5]]);
    }

    #[test]
    fn precondition() {
        let g = DefiningGraph::uniform(10, 3).unwrap();
        assert!(matches!(build_round_tree(&g, 2, 1), Err(RoundTreeError::Precondition(_))));
    }
}
