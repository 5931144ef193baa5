//! Audits of (IH1)-(IH4) on a built round tree. Every failure carries a
//! concrete witness.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use serde::Serialize;

use cxdim_census::{PolyId, PolygonComplex};
use cxdim_core::walls::symmetric_difference_len;
use cxdim_core::{GroupElement, ReflectionTable};

use crate::build::{step_label, Branch, RoundTree};
use crate::systolic::{check_strictly_systolic, SystolicCertificate};
use crate::topology::{cells, disk_check, path_edges, polygon_edges, EdgeKey};

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Check {
    pub pass: bool,
    pub witness: Option<String>,
}

impl Check {
    pub fn ok() -> Self {
        Self { pass: true, witness: None }
    }

    pub fn fail(witness: impl Into<String>) -> Self {
        Self { pass: false, witness: Some(witness.into()) }
    }

    fn from(r: Result<(), String>) -> Self {
        match r {
            Ok(()) => Self::ok(),
            Err(w) => Self::fail(w),
        }
    }
}

macro_rules! ensure {
    ($cond:expr, $($w:tt)*) => {
        if !$cond {
            return Err(format!($($w)*));
        }
    };
}

#[derive(Clone, Debug, Serialize)]
pub struct StageAudit {
    pub stage: usize,
    pub addresses: usize,
    pub polygons: usize,
    pub vertices: usize,
    pub ih1: Check,
    pub ih2: Check,
    pub ih3: Check,
    pub ih4: Check,
    pub convex: bool,
    /// Vertex pairs whose distance inside `A_n` was compared with the wall count.
    pub pairs_checked: usize,
    /// Largest 1-skeleton diameter of `A_n` intersected with a flat.
    pub max_flat_diameter: usize,
    /// Flats meeting `A_n` in at least two polygons.
    pub flats_met: usize,
    /// How many polygons of the new strips a polygon of the parent piece
    /// touches, over polygons of the parent that touch `E`.
    pub meets: Option<MeetCounts>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MeetCounts {
    /// Most polygons of a single strip sharing at least a vertex.
    pub per_strip: usize,
    /// Most polygons of all strips on that parent sharing at least a vertex.
    pub all_strips: usize,
    /// Most polygons of a single strip sharing an edge.
    pub per_strip_edges: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundTreeReport {
    pub m: usize,
    #[serde(rename = "M")]
    pub big_m: u32,
    #[serde(rename = "V")]
    pub v: usize,
    #[serde(rename = "H")]
    pub h: u64,
    pub n_max: usize,
    pub stages: Vec<StageAudit>,
    pub systolic: SystolicCertificate,
    pub lower_bound: Option<f64>,
    pub pass: bool,
}

pub fn audit_inductive_hypotheses(tree: &RoundTree) -> RoundTreeReport {
    let cx = PolygonComplex::new(&tree.group);
    let mut walls = ReflectionTable::new();
    let mut stages = Vec::new();
    for n in 0..tree.stages.len() {
        let polys = tree.polygons_at_stage(n);
        let c = cells(&cx, &polys);
        let ih1 = Check::from(ih1(tree, &cx, &mut walls, n, &polys));
        let ih2 = if n == 0 { Check::ok() } else { Check::from(ih2(tree, &cx, n)) };
        let ih4 = if n == 0 { Check::ok() } else { Check::from(ih4(tree, n)) };
        let (ih3, pairs_checked) = convexity(tree, &mut walls, &c.vertices, c.edges.keys());
        let (max_flat_diameter, flats_met) = flat_intersections(tree, &cx, &polys);
        let meets = (n > 0).then(|| meet_counts(tree, &cx, n));
        stages.push(StageAudit {
            stage: n,
            addresses: tree.stages[n].branches.len(),
            polygons: c.faces,
            vertices: c.vertices.len(),
            convex: ih3.pass,
            ih1,
            ih2,
            ih3,
            ih4,
            pairs_checked,
            max_flat_diameter,
            flats_met,
            meets,
        });
    }
    let systolic = check_strictly_systolic(tree, 0.75);
    let g = tree.graph();
    let lower_bound = crate::lower_bound(g.m() as u64, g.max_label() as u64, Some(tree.v as u64)).ok().map(|l| l.value);
    let pass = systolic.pass && stages.iter().all(|s| s.ih1.pass && s.ih2.pass && s.ih3.pass && s.ih4.pass);
    RoundTreeReport {
        m: g.m(),
        big_m: g.max_label(),
        v: tree.v,
        h: tree.h,
        n_max: tree.stages.len() - 1,
        stages,
        systolic,
        lower_bound,
        pass,
    }
}

fn addr(a: &[usize]) -> String {
    if a.is_empty() {
        "()".into()
    } else {
        format!("({})", a.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
    }
}

/// Walls crossed by an edge path, in order.
fn path_walls(tree: &RoundTree, walls: &mut ReflectionTable, path: &[GroupElement]) -> Result<Vec<u32>, String> {
    path.windows(2)
        .map(|w| {
            let s = step_label(&tree.group, &w[0], &w[1]).ok_or_else(|| format!("{} and {} are not adjacent", w[0], w[1]))?;
            Ok(walls.wall_of_edge(&tree.group, &w[0], s))
        })
        .collect()
}

/// A path is geodesic iff it crosses no wall twice.
fn geodesic(tree: &RoundTree, walls: &mut ReflectionTable, path: &[GroupElement]) -> Result<(), String> {
    let crossed = path_walls(tree, walls, path)?;
    let mut seen = HashSet::new();
    for (i, w) in crossed.iter().enumerate() {
        ensure!(seen.insert(*w), "wall {} crossed twice, again at step {}", walls.reflection(*w), i + 1);
    }
    let ends = walls.wall_distance(&tree.group, &path[0], path.last().unwrap());
    ensure!(ends == crossed.len(), "path of length {} between points at distance {ends}", crossed.len());
    Ok(())
}

fn tree_check(paths: &[&[GroupElement]], v: usize, n: usize) -> Result<(), String> {
    let mut adj: BTreeMap<&GroupElement, BTreeSet<&GroupElement>> = BTreeMap::new();
    for p in paths {
        for w in p.windows(2) {
            adj.entry(&w[0]).or_default().insert(&w[1]);
            adj.entry(&w[1]).or_default().insert(&w[0]);
        }
    }
    let edges: usize = adj.values().map(BTreeSet::len).sum::<usize>() / 2;
    ensure!(adj.len() == edges + 1, "{} vertices and {edges} edges is not a tree", adj.len());
    let root = GroupElement::identity();
    let mut seen = BTreeSet::from([&root]);
    let mut stack = vec![&root];
    while let Some(x) = stack.pop() {
        for y in adj.get(x).into_iter().flatten() {
            if seen.insert(*y) {
                stack.push(*y);
            }
        }
    }
    ensure!(seen.len() == adj.len(), "tree is disconnected");
    let root_degree = adj.get(&root).map_or(0, BTreeSet::len);
    ensure!(root_degree == 1, "root has degree {root_degree}");
    let branch_points: usize = (0..n).map(|k| v.pow(k as u32)).sum();
    let mut by_degree: BTreeMap<usize, usize> = BTreeMap::new();
    for (x, nb) in &adj {
        let d = nb.len();
        ensure!(d == 1 || d == 2 || d == v + 1, "vertex {x} has degree {d}");
        *by_degree.entry(d).or_insert(0) += 1;
    }
    let leaves = by_degree.get(&1).copied().unwrap_or(0);
    let forks = by_degree.get(&(v + 1)).copied().unwrap_or(0);
    ensure!(leaves == v.pow(n as u32) + 1, "{leaves} leaves, expected {}", v.pow(n as u32) + 1);
    ensure!(forks == branch_points, "{forks} branch points, expected {branch_points}");
    Ok(())
}

fn ih1(tree: &RoundTree, cx: &PolygonComplex, walls: &mut ReflectionTable, n: usize, polys: &[PolyId]) -> Result<(), String> {
    let stage = &tree.stages[n];
    let v = tree.v;
    ensure!(stage.branches.len() == v.pow(n as u32), "{} pieces, expected V^n = {}", stage.branches.len(), v.pow(n as u32));
    let addresses: BTreeSet<&Vec<usize>> = stage.branches.iter().map(|b| &b.address).collect();
    ensure!(addresses.len() == stage.branches.len(), "repeated address");
    for b in &stage.branches {
        ensure!(b.address.len() == n && b.address.iter().all(|&a| (1..=v).contains(&a)), "address {} not in T^{n}", addr(&b.address));
    }
    let mut distinct: BTreeSet<BTreeSet<&PolyId>> = BTreeSet::new();
    let mut union: BTreeSet<&PolyId> = BTreeSet::new();
    for b in &stage.branches {
        let set: BTreeSet<&PolyId> = b.polygons.iter().collect();
        union.extend(set.iter().copied());
        ensure!(distinct.insert(set), "piece {} repeats another piece", addr(&b.address));
    }
    let all: BTreeSet<&PolyId> = polys.iter().collect();
    if let Some(p) = all.symmetric_difference(&union).next() {
        return Err(format!("polygon {p} is in exactly one of A_n and the union of its pieces"));
    }
    let side = tree.initial_side() + 2 * n;
    for b in &stage.branches {
        let a = addr(&b.address);
        for (name, path) in [("L", &b.left), ("R", &b.right)] {
            ensure!(path.len() == side + 1, "|{name}_{a}| = {}, expected {side}", path.len() - 1);
            ensure!(path[0].is_identity(), "{name}_{a} does not start at x0");
            geodesic(tree, walls, path).map_err(|w| format!("{name}_{a}: {w}"))?;
            let edges: HashSet<EdgeKey> = path_edges(path).into_iter().collect();
            let incident = b.polygons.iter().filter(|p| polygon_edges(cx, p).iter().any(|e| edges.contains(e))).count();
            ensure!(incident == 2 + n, "{name}_{a} lies on {incident} polygons, expected {}", 2 + n);
        }
        ensure!(b.left.last() == b.outer.first() && b.right.last() == b.outer.last(), "E_{a} does not join the ends of L and R");
        let mut boundary = path_edges(&b.left);
        boundary.extend(path_edges(&b.right));
        boundary.extend(path_edges(&b.outer));
        disk_check(cx, &b.polygons, Some(&boundary)).map_err(|w| format!("A_{a} is not a disk: {w}"))?;
    }
    let lefts: Vec<&[GroupElement]> = stage.branches.iter().map(|b| b.left.as_slice()).collect();
    tree_check(&lefts, v, n).map_err(|w| format!("left tree: {w}"))?;
    let rights: Vec<&[GroupElement]> = stage.branches.iter().map(|b| b.right.as_slice()).collect();
    tree_check(&rights, v, n).map_err(|w| format!("right tree: {w}"))?;
    Ok(())
}

fn ih2(tree: &RoundTree, cx: &PolygonComplex, n: usize) -> Result<(), String> {
    let k = n - 1;
    let parents: HashMap<&Vec<usize>, &Branch> = tree.stages[k].branches.iter().map(|b| (&b.address, b)).collect();
    let strips = &tree.stages[n].strips;
    let mut by_parent: BTreeMap<&Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (i, s) in strips.iter().enumerate() {
        by_parent.entry(&s.parent).or_default().push(i);
    }
    let verts: Vec<BTreeSet<GroupElement>> =
        strips.iter().map(|s| s.polygons.iter().flat_map(|p| cx.vertices(&p.poly)).collect()).collect();
    let edges: Vec<BTreeSet<EdgeKey>> =
        strips.iter().map(|s| s.polygons.iter().flat_map(|p| polygon_edges(cx, &p.poly)).collect()).collect();
    ensure!(by_parent.len() == parents.len(), "{} pieces carry strips, expected {}", by_parent.len(), parents.len());
    for (parent, ids) in &by_parent {
        let a = addr(parent);
        let b = parents.get(parent).ok_or_else(|| format!("strip glued to unknown piece {a}"))?;
        ensure!(ids.len() == tree.v, "{} strips on E_{a}, expected {}", ids.len(), tree.v);
        let e_verts: BTreeSet<GroupElement> = b.outer.iter().cloned().collect();
        let e_edges: BTreeSet<EdgeKey> = path_edges(&b.outer).into_iter().collect();
        for (x, &i) in ids.iter().enumerate() {
            let si = &strips[i];
            let name = format!("S^{}_{a}", si.index);
            ensure!(e_edges.is_subset(&edges[i]), "{name} is not glued along all of E_{a}");
            let polys: Vec<PolyId> = si.polygons.iter().map(|p| p.poly.clone()).collect();
            disk_check(cx, &polys, None).map_err(|w| format!("{name} is not a square: {w}"))?;
            for p in &si.polygons {
                let pv: BTreeSet<GroupElement> = cx.vertices(&p.poly).into_iter().collect();
                let meet: Vec<&GroupElement> = pv.intersection(&e_verts).collect();
                let ok = match meet.len() {
                    1 => true,
                    2 => e_edges.contains(&crate::topology::edge_key(meet[0], meet[1])),
                    _ => false,
                };
                ensure!(ok, "polygon {} of {name} meets E_{a} in {} vertices", p.poly, meet.len());
            }
            for &j in &ids[x + 1..] {
                let sj = &strips[j];
                let vi: BTreeSet<&GroupElement> = verts[i].intersection(&verts[j]).collect();
                let want: BTreeSet<&GroupElement> = e_verts.iter().collect();
                if let Some(w) = vi.symmetric_difference(&want).next() {
                    return Err(format!("S^{}_{a} ∩ S^{}_{a} differs from E_{a} at vertex {w}", si.index, sj.index));
                }
                let ei: BTreeSet<&EdgeKey> = edges[i].intersection(&edges[j]).collect();
                ensure!(ei.len() == e_edges.len(), "S^{}_{a} and S^{}_{a} share an edge off E_{a}", si.index, sj.index);
            }
            // polygons of A_{a_k} on E_{a_k} meet at most H polygons of each strip
            let strip_verts: Vec<BTreeSet<GroupElement>> =
                si.polygons.iter().map(|p| cx.vertices(&p.poly).into_iter().collect()).collect();
            for q in &b.polygons {
                let qv: BTreeSet<GroupElement> = cx.vertices(q).into_iter().collect();
                if qv.is_disjoint(&e_verts) {
                    continue;
                }
                let count = strip_verts.iter().filter(|sv| !sv.is_disjoint(&qv)).count() as u64;
                ensure!(count <= tree.h, "polygon {q} meets {count} > H = {} polygons of {name}", tree.h);
            }
        }
    }
    let parent_list: Vec<&Vec<usize>> = by_parent.keys().copied().collect();
    for (x, pa) in parent_list.iter().enumerate() {
        for pb in &parent_list[x + 1..] {
            for &i in &by_parent[pa] {
                for &j in &by_parent[pb] {
                    if let Some(w) = verts[i].intersection(&verts[j]).next() {
                        return Err(format!(
                            "S^{}_{} and S^{}_{} meet at {w}",
                            strips[i].index,
                            addr(pa),
                            strips[j].index,
                            addr(pb)
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

fn meet_counts(tree: &RoundTree, cx: &PolygonComplex, n: usize) -> MeetCounts {
    let parents: HashMap<&Vec<usize>, &Branch> = tree.stages[n - 1].branches.iter().map(|b| (&b.address, b)).collect();
    let mut by_parent: BTreeMap<&Vec<usize>, Vec<(Vec<BTreeSet<GroupElement>>, Vec<BTreeSet<EdgeKey>>)>> = BTreeMap::new();
    for s in &tree.stages[n].strips {
        let vs = s.polygons.iter().map(|p| cx.vertices(&p.poly).into_iter().collect()).collect();
        let es = s.polygons.iter().map(|p| polygon_edges(cx, &p.poly).into_iter().collect()).collect();
        by_parent.entry(&s.parent).or_default().push((vs, es));
    }
    let mut out = MeetCounts::default();
    for (parent, strips) in by_parent {
        let Some(b) = parents.get(parent) else { continue };
        let e_verts: BTreeSet<&GroupElement> = b.outer.iter().collect();
        for q in &b.polygons {
            let qv: BTreeSet<GroupElement> = cx.vertices(q).into_iter().collect();
            if qv.iter().all(|v| !e_verts.contains(v)) {
                continue;
            }
            let qe: BTreeSet<EdgeKey> = polygon_edges(cx, q).into_iter().collect();
            let mut all = 0;
            for (vs, es) in &strips {
                let c = vs.iter().filter(|sv| !sv.is_disjoint(&qv)).count();
                let ce = es.iter().filter(|se| !se.is_disjoint(&qe)).count();
                out.per_strip = out.per_strip.max(c);
                out.per_strip_edges = out.per_strip_edges.max(ce);
                all += c;
            }
            out.all_strips = out.all_strips.max(all);
        }
    }
    out
}

fn ih4(tree: &RoundTree, n: usize) -> Result<(), String> {
    let k = n - 1;
    let t = tree.forbidden_triple(k);
    for s in &tree.stages[n].strips {
        for p in &s.polygons {
            let (a, b) = p.poly.pair;
            ensure!(
                !(t.contains(&a) && t.contains(&b)),
                "polygon {} of S^{}_{} has both labels in the triple {{{},{},{}}}",
                p.poly,
                s.index,
                addr(&s.parent),
                t[0] + 1,
                t[1] + 1,
                t[2] + 1
            );
        }
    }
    Ok(())
}

/// Compares breadth-first distances inside the 1-skeleton with the number of
/// separating walls for every vertex pair, and checks the wall-crossing
/// criterion on the breadth-first paths from a spread of sources.
fn convexity<'a>(
    tree: &RoundTree,
    walls: &mut ReflectionTable,
    vertices: &BTreeSet<GroupElement>,
    edges: impl Iterator<Item = &'a EdgeKey>,
) -> (Check, usize) {
    let vs: Vec<&GroupElement> = vertices.iter().collect();
    let index: HashMap<&GroupElement, usize> = vs.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut adj = vec![Vec::new(); vs.len()];
    for (a, b) in edges {
        let (i, j) = (index[a], index[b]);
        adj[i].push(j);
        adj[j].push(i);
    }
    let inv: Vec<Vec<u32>> = vs.iter().map(|v| walls.inversion_set(&tree.group, v)).collect();
    // the wall dual to each edge, keyed by its lower endpoint index
    let mut edge_wall: HashMap<(usize, usize), u32> = HashMap::new();
    for (i, nb) in adj.iter().enumerate() {
        for &j in nb.iter().filter(|&&j| i < j) {
            let s = step_label(&tree.group, vs[i], vs[j]).expect("edge of the complex");
            edge_wall.insert((i, j), walls.wall_of_edge(&tree.group, vs[i], s));
        }
    }
    let mut pairs = 0;
    let stride = (vs.len() / 12).max(1);
    for s in 0..vs.len() {
        let mut dist = vec![usize::MAX; vs.len()];
        let mut parent = vec![usize::MAX; vs.len()];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &y in &adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    q.push_back(y);
                }
            }
        }
        for t in s + 1..vs.len() {
            pairs += 1;
            let d = symmetric_difference_len(&inv[s], &inv[t]);
            if dist[t] != d {
                let inside = if dist[t] == usize::MAX { "disconnected".to_string() } else { dist[t].to_string() };
                return (Check::fail(format!("{} to {}: distance {inside} inside A_n, {d} in X", vs[s], vs[t])), pairs);
            }
        }
        if s % stride == 0 {
            // a path is geodesic iff it crosses no wall twice
            for t in 0..vs.len() {
                let mut seen = HashSet::new();
                let mut x = t;
                while x != s {
                    let y = parent[x];
                    let w = edge_wall[&(x.min(y), x.max(y))];
                    if !seen.insert(w) {
                        let msg = format!("path {} to {} crosses wall {} twice", vs[t], vs[s], walls.reflection(w));
                        return (Check::fail(msg), pairs);
                    }
                    x = y;
                }
            }
        }
    }
    (Check::ok(), pairs)
}

/// For each flat `g⟨s_p, s_q, s_r⟩` (all labels 3) met by at least two
/// polygons, the diameter of the intersection's 1-skeleton.
fn flat_intersections(tree: &RoundTree, cx: &PolygonComplex, polys: &[PolyId]) -> (usize, usize) {
    let g = tree.graph();
    let mut flats: BTreeMap<([usize; 3], GroupElement), Vec<&PolyId>> = BTreeMap::new();
    for p in polys {
        for k in 0..g.m() {
            if k == p.pair.0 || k == p.pair.1 {
                continue;
            }
            let mut t = [p.pair.0, p.pair.1, k];
            t.sort();
            if !g.is_euclidean_triple(t) {
                continue;
            }
            let rep = tree.group.min_coset_rep(&p.coset, &t);
            flats.entry((t, rep)).or_default().push(p);
        }
    }
    let mut max = 0;
    let mut met = 0;
    for ps in flats.values().filter(|ps| ps.len() >= 2) {
        met += 1;
        let mut adj: HashMap<GroupElement, Vec<GroupElement>> = HashMap::new();
        for p in ps {
            let vs = cx.vertices(p);
            for i in 0..vs.len() {
                let (a, b) = (&vs[i], &vs[(i + 1) % vs.len()]);
                adj.entry(a.clone()).or_default().push(b.clone());
                adj.entry(b.clone()).or_default().push(a.clone());
            }
        }
        for s in adj.keys() {
            let mut dist: HashMap<&GroupElement, usize> = HashMap::from([(s, 0)]);
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                let d = dist[x];
                for y in &adj[x] {
                    if !dist.contains_key(y) {
                        dist.insert(y, d + 1);
                        q.push_back(y);
                    }
                }
            }
            max = max.max(dist.values().copied().max().unwrap_or(0));
        }
    }
    (max, met)
}
