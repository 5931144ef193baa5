//! Finite balls in the Davis complex `X_Γ`.
//!
//! Vertices are group elements, edges join `u` and `u s` (one edge per pair,
//! bigons collapsed), and every left coset `g⟨s_i, s_j⟩` whose whole boundary
//! lies in the ball spans a `2 m_ij`-gon.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;
use serde_json::json;

use crate::{CoreError, CoxeterGroup, GroupElement, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    /// 0-based generator label.
    pub label: usize,
}

#[derive(Clone, Debug)]
pub struct Polygon {
    /// `(i, j)` with `i < j`, 0-based.
    pub pair: (usize, usize),
    /// ShortLex-least element of the coset.
    pub coset: GroupElement,
    /// Cyclic vertex list, alternating labels starting with `pair.0`.
    pub boundary: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Wall {
    pub reflection: GroupElement,
    /// Indices of the ball edges the wall crosses.
    pub edges: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlatKind {
    Flat,
    HypPlane,
}

/// A coset of a triangle special subgroup, restricted to the ball.
#[derive(Clone, Debug)]
pub struct PeriodicSubcomplex {
    pub triple: [usize; 3],
    pub coset: GroupElement,
    pub kind: FlatKind,
    pub polygons: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct DavisBall {
    group: CoxeterGroup,
    radius: usize,
    vertices: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    edges: Vec<Edge>,
    /// `neighbour[u * m + s]`: the vertex `u s` if it lies in the ball.
    neighbour: Vec<Option<usize>>,
    polygons: Vec<Polygon>,
    walls: Vec<Wall>,
    edge_wall: Vec<usize>,
}

impl DavisBall {
    pub fn build(group: &CoxeterGroup, radius: usize, cap: usize) -> Result<Self> {
        let ball = group.enumerate_ball(radius, cap)?;
        let m = group.rank();
        let vertices: Vec<GroupElement> = ball.elements().cloned().collect();
        let index: HashMap<_, _> = vertices.iter().cloned().enumerate().map(|(k, v)| (v, k)).collect();
        let mut neighbour = vec![None; vertices.len() * m];
        let mut edges = Vec::new();
        for (u, a) in vertices.iter().enumerate() {
            for s in 0..m {
                let b = group.mul_gen(a, s);
                if let Some(&v) = index.get(&b) {
                    neighbour[u * m + s] = Some(v);
                    if b.len() > a.len() {
                        edges.push(Edge { u, v, label: s });
                    }
                }
            }
        }
        let mut polygons = Vec::new();
        let g = group.graph();
        for (u, a) in vertices.iter().enumerate() {
            for (i, j) in g.pairs() {
                let shorter = |s: usize| neighbour[u * m + s].is_some_and(|v| vertices[v].len() < a.len());
                if shorter(i) || shorter(j) {
                    continue;
                }
                let n = 2 * g.label(i, j) as usize;
                let mut boundary = Vec::with_capacity(n);
                let mut cur = u;
                let mut complete = true;
                for k in 0..n {
                    boundary.push(cur);
                    let s = if k % 2 == 0 { i } else { j };
                    match neighbour[cur * m + s] {
                        Some(next) => cur = next,
                        None => {
                            complete = false;
                            break;
                        }
                    }
                }
                if complete {
                    debug_assert_eq!(cur, u);
                    polygons.push(Polygon { pair: (i, j), coset: a.clone(), boundary });
                }
            }
        }
        let mut by_reflection: BTreeMap<GroupElement, Vec<usize>> = BTreeMap::new();
        for (k, e) in edges.iter().enumerate() {
            let r = group.reflection(&vertices[e.u], e.label);
            by_reflection.entry(r).or_default().push(k);
        }
        let mut edge_wall = vec![0; edges.len()];
        let walls: Vec<Wall> = by_reflection
            .into_iter()
            .enumerate()
            .map(|(w, (reflection, es))| {
                for &e in &es {
                    edge_wall[e] = w;
                }
                Wall { reflection, edges: es }
            })
            .collect();
        Ok(Self { group: group.clone(), radius, vertices, index, edges, neighbour, polygons, walls, edge_wall })
    }

    pub fn group(&self) -> &CoxeterGroup {
        &self.group
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn vertices(&self) -> &[GroupElement] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn polygons(&self) -> &[Polygon] {
        &self.polygons
    }

    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    pub fn wall_of_edge(&self, e: usize) -> usize {
        self.edge_wall[e]
    }

    pub fn vertex_index(&self, a: &GroupElement) -> Option<usize> {
        self.index.get(a).copied()
    }

    /// The vertex `u s`, if inside the ball.
    pub fn neighbour(&self, u: usize, s: usize) -> Option<usize> {
        self.neighbour[u * self.group.rank() + s]
    }

    /// Index of the edge joining `u` and `v`, if any.
    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        let m = self.group.rank();
        let s = (0..m).find(|&s| self.neighbour(u, s) == Some(v))?;
        let (lo, hi) = if self.vertices[u].len() < self.vertices[v].len() { (u, v) } else { (v, u) };
        self.edge_index(lo, s).filter(|&e| self.edges[e].v == hi)
    }

    fn path_edges(&self, path: &[usize]) -> Result<Vec<usize>> {
        let m = self.group.rank();
        path.windows(2)
            .enumerate()
            .map(|(step, p)| {
                let s = (0..m)
                    .find(|&s| self.neighbour(p[0], s) == Some(p[1]))
                    .ok_or(CoreError::Disconnected { step })?;
                let (lo, hi) = if self.vertices[p[0]].len() < self.vertices[p[1]].len() {
                    (p[0], p[1])
                } else {
                    (p[1], p[0])
                };
                Ok(self.edge_index(lo, s).filter(|&e| self.edges[e].v == hi).expect("edge present"))
            })
            .collect()
    }

    fn edge_index(&self, lo: usize, s: usize) -> Option<usize> {
        // edges are pushed in vertex order, so a binary search on `u` narrows the scan
        let start = self.edges.partition_point(|e| e.u < lo);
        self.edges[start..].iter().take_while(|e| e.u == lo).position(|e| e.label == s).map(|k| start + k)
    }

    /// Wall index → number of path edges crossing it.
    pub fn walls_crossed(&self, path: &[usize]) -> Result<BTreeMap<usize, usize>> {
        let mut out = BTreeMap::new();
        for e in self.path_edges(path)? {
            *out.entry(self.edge_wall[e]).or_insert(0) += 1;
        }
        Ok(out)
    }

    /// A path is geodesic iff it crosses every wall at most once. Refuses paths
    /// whose endpoints are too close to the ball's boundary.
    pub fn is_geodesic(&self, path: &[usize]) -> Result<bool> {
        let len = path.len().saturating_sub(1);
        if let (Some(&a), Some(&b)) = (path.first(), path.last()) {
            let required = self.vertices[a].len().max(self.vertices[b].len()) + len;
            if required > self.radius {
                return Err(CoreError::Margin { required, radius: self.radius });
            }
        }
        Ok(self.walls_crossed(path)?.values().all(|&c| c <= 1))
    }

    /// Breadth-first distances inside the ball from `from`.
    pub fn bfs(&self, from: usize) -> Vec<Option<usize>> {
        let m = self.group.rank();
        let mut dist = vec![None; self.vertices.len()];
        dist[from] = Some(0);
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for s in 0..m {
                if let Some(v) = self.neighbour(u, s) {
                    if dist[v].is_none() {
                        dist[v] = Some(d + 1);
                        queue.push_back(v);
                    }
                }
            }
        }
        dist
    }

    /// True iff every pair of subcomplex vertices is joined inside the
    /// subcomplex by a path as short as the ball distance.
    pub fn is_convex(&self, vertices: &[usize], edges: &[usize]) -> Result<bool> {
        let local: HashMap<usize, usize> = vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let mut adj = vec![Vec::new(); vertices.len()];
        for &e in edges {
            let Edge { u, v, .. } = self.edges[e];
            if let (Some(&a), Some(&b)) = (local.get(&u), local.get(&v)) {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let max_len = vertices.iter().map(|&v| self.vertices[v].len()).max().unwrap_or(0);
        let mut convex = true;
        for (a, &va) in vertices.iter().enumerate() {
            let ambient = self.bfs(va);
            let mut inner = vec![usize::MAX; vertices.len()];
            inner[a] = 0;
            let mut queue = VecDeque::from([a]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if inner[y] == usize::MAX {
                        inner[y] = inner[x] + 1;
                        queue.push_back(y);
                    }
                }
            }
            for (b, &vb) in vertices.iter().enumerate() {
                let d = ambient[vb].expect("ball is connected");
                if max_len + d > self.radius {
                    return Err(CoreError::Margin { required: max_len + d, radius: self.radius });
                }
                if inner[b] != d {
                    convex = false;
                }
            }
        }
        Ok(convex)
    }

    /// Vertices and edges of the polygons meeting a wall.
    pub fn carrier(&self, wall: usize) -> (Vec<usize>, Vec<usize>) {
        let wall_edges = &self.walls[wall].edges;
        let mut vs = Vec::new();
        let mut es = Vec::new();
        for p in &self.polygons {
            let pe = self.path_edges(&cycle(&p.boundary)).expect("polygon boundary is a cycle");
            if pe.iter().any(|e| wall_edges.contains(e)) {
                vs.extend_from_slice(&p.boundary);
                es.extend(pe);
            }
        }
        vs.sort_unstable();
        vs.dedup();
        es.sort_unstable();
        es.dedup();
        (vs, es)
    }

    /// Edge indices of a polygon's boundary, in cyclic order.
    pub fn polygon_edges(&self, p: usize) -> Vec<usize> {
        self.path_edges(&cycle(&self.polygons[p].boundary)).expect("polygon boundary is a cycle")
    }

    /// Cosets of triangle special subgroups meeting the ball in at least one polygon.
    pub fn find_flats_and_planes(&self) -> Vec<PeriodicSubcomplex> {
        let g = self.group.graph();
        let mut groups: BTreeMap<([usize; 3], GroupElement), Vec<usize>> = BTreeMap::new();
        for (k, p) in self.polygons.iter().enumerate() {
            for t in 0..g.m() {
                if t == p.pair.0 || t == p.pair.1 {
                    continue;
                }
                let mut triple = [p.pair.0, p.pair.1, t];
                triple.sort_unstable();
                let rep = self.group.min_coset_rep(&p.coset, &triple);
                groups.entry((triple, rep)).or_default().push(k);
            }
        }
        groups
            .into_iter()
            .map(|((triple, coset), polygons)| PeriodicSubcomplex {
                triple,
                kind: if g.is_euclidean_triple(triple) { FlatKind::Flat } else { FlatKind::HypPlane },
                coset,
                polygons,
            })
            .collect()
    }

    /// Deterministic JSON dump for golden files.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "graph": self.group.graph().to_text(),
            "radius": self.radius,
            "vertices": self.vertices,
            "edges": self.edges.iter().map(|e| json!([e.u, e.v, e.label + 1])).collect::<Vec<_>>(),
            "polygons": self.polygons.iter().map(|p| json!({
                "pair": [p.pair.0 + 1, p.pair.1 + 1],
                "coset": p.coset,
                "boundary": p.boundary,
            })).collect::<Vec<_>>(),
            "walls": self.walls.iter().map(|w| json!({
                "reflection": w.reflection,
                "edges": w.edges,
            })).collect::<Vec<_>>(),
        })
    }
}

fn cycle(boundary: &[usize]) -> Vec<usize> {
    let mut c = boundary.to_vec();
    c.push(boundary[0]);
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DefiningGraph;

    fn ball(m: usize, label: u32, r: usize) -> DavisBall {
        let g = CoxeterGroup::new(DefiningGraph::uniform(m, label).unwrap());
        DavisBall::build(&g, r, 1_000_000).unwrap()
    }

    #[test]
    fn dihedral_hexagon() {
        let b = ball(2, 3, 3);
        assert_eq!((b.vertices().len(), b.edges().len(), b.polygons().len(), b.walls().len()), (6, 6, 1, 3));
        let cyc = cycle(&b.polygons()[0].boundary);
        let crossed = b.walls_crossed(&cyc).unwrap();
        assert_eq!(crossed.len(), 3);
        assert!(crossed.values().all(|&c| c == 2));
    }

    #[test]
    fn radius_zero() {
        let b = ball(4, 3, 0);
        assert_eq!((b.vertices().len(), b.edges().len(), b.polygons().len()), (1, 0, 0));
    }

    #[test]
    fn single_edge_and_backtrack() {
        let b = ball(3, 3, 4);
        let e = b.edges()[0];
        assert!(b.is_geodesic(&[e.u, e.v]).unwrap());
        assert_eq!(b.walls_crossed(&[e.u, e.v, e.u]).unwrap().values().copied().collect::<Vec<_>>(), vec![2]);
        assert!(!b.is_geodesic(&[e.u, e.v, e.u]).unwrap());
        assert!(matches!(b.walls_crossed(&[0, 0]), Err(CoreError::Disconnected { step: 0 })));
    }

    #[test]
    fn convexity_examples() {
        let b = ball(3, 3, 6);
        let p = b.polygons().iter().position(|p| p.coset.is_identity()).unwrap();
        let vs = b.polygons()[p].boundary.clone();
        assert!(b.is_convex(&vs, &b.polygon_edges(p)).unwrap());
        // identity and s1 s2, with no middle vertex
        let far = b.vertex_index(&b.group().reduce_letters(&[0, 1])).unwrap();
        assert!(!b.is_convex(&[0, far], &[]).unwrap());
    }

    #[test]
    fn flats_through_identity() {
        let b = ball(3, 3, 3);
        let f: Vec<_> = b.find_flats_and_planes().into_iter().filter(|f| f.coset.is_identity()).collect();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].kind, FlatKind::Flat);
        let h = ball(4, 4, 4).find_flats_and_planes();
        assert!(!h.is_empty() && h.iter().all(|f| f.kind == FlatKind::HypPlane));
    }
}
