//! The angled-complex certificate. Polygons away from the left and right
//! trees are fanned into triangles from their apex, corners get their
//! Euclidean angles in the regular polygon, and corners at the apex are
//! scaled.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::f64::consts::PI;

use serde::Serialize;

use cxdim_census::{PolyId, PolygonComplex};
use cxdim_core::GroupElement;

use crate::RoundTree;

const EPS: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
pub struct SystolicCertificate {
    pub corner_scale: f64,
    /// Polygons of `A'` at the last built stage.
    pub polygons: usize,
    pub triangles: usize,
    /// Largest triangle angle sum, in units of `π`.
    pub max_simplex_sum: f64,
    pub simplex_ok: bool,
    pub simplex_witness: Option<String>,
    pub cycles_checked: usize,
    /// Smallest angular length of a 2-full link cycle, in units of `π`.
    pub min_cycle_length: Option<f64>,
    pub links_ok: bool,
    pub link_witness: Option<String>,
    /// Always vacuous for a 2-dimensional complex.
    pub three_flag: &'static str,
    pub pass: bool,
}

/// Corner angles of the fan triangles `(0, t, t+1)` of a regular `n`-gon.
pub fn fan_angles(n: usize) -> Vec<[f64; 3]> {
    let p = |k: usize| {
        let t = 2.0 * PI * k as f64 / n as f64;
        (t.cos(), t.sin())
    };
    let angle = |a: (f64, f64), b: (f64, f64), c: (f64, f64)| {
        let (u, v) = ((b.0 - a.0, b.1 - a.1), (c.0 - a.0, c.1 - a.1));
        (u.0 * v.1 - u.1 * v.0).abs().atan2(u.0 * v.0 + u.1 * v.1)
    };
    (1..n - 1)
        .map(|t| {
            let (a, b, c) = (p(0), p(t), p(t + 1));
            [angle(a, b, c), angle(b, c, a), angle(c, a, b)]
        })
        .collect()
}

struct Triangle {
    corners: [GroupElement; 3],
    angles: [f64; 3],
}

fn simple_cycles(n: usize, adj: &[Vec<usize>], out: &mut Vec<Vec<usize>>) {
    fn dfs(s: usize, path: &mut Vec<usize>, on: &mut [bool], adj: &[Vec<usize>], out: &mut Vec<Vec<usize>>) {
        let x = *path.last().unwrap();
        for &y in &adj[x] {
            if y == s && path.len() >= 3 && path[1] < x {
                out.push(path.clone());
            } else if y > s && !on[y] {
                on[y] = true;
                path.push(y);
                dfs(s, path, on, adj, out);
                path.pop();
                on[y] = false;
            }
        }
    }
    for s in 0..n {
        let mut on = vec![false; n];
        on[s] = true;
        dfs(s, &mut vec![s], &mut on, adj, out);
    }
}

pub fn check_strictly_systolic(tree: &RoundTree, corner_scale: f64) -> SystolicCertificate {
    let cx = PolygonComplex::new(&tree.group);
    let last = tree.stages.last().unwrap();
    let mut on_trees: BTreeSet<&GroupElement> = BTreeSet::new();
    for b in &last.branches {
        on_trees.extend(b.left.iter());
        on_trees.extend(b.right.iter());
    }
    let apex: HashMap<&PolyId, &GroupElement> =
        tree.stages.iter().flat_map(|s| &s.strips).flat_map(|s| &s.polygons).map(|p| (&p.poly, &p.apex)).collect();
    let polys: BTreeSet<PolyId> = tree.polygons_at_stage(tree.stages.len() - 1).into_iter().collect();
    let mut triangles = Vec::new();
    let mut cert = SystolicCertificate {
        corner_scale,
        polygons: 0,
        triangles: 0,
        max_simplex_sum: 0.0,
        simplex_ok: true,
        simplex_witness: None,
        cycles_checked: 0,
        min_cycle_length: None,
        links_ok: true,
        link_witness: None,
        three_flag: "vacuous",
        pass: false,
    };
    for p in &polys {
        let mut vs = cx.vertices(p);
        if vs.iter().any(|v| on_trees.contains(v)) {
            continue;
        }
        cert.polygons += 1;
        let Some(u) = apex.get(p) else {
            cert.simplex_ok = false;
            cert.simplex_witness.get_or_insert(format!("polygon {p} has no apex"));
            continue;
        };
        let Some(at) = vs.iter().position(|v| v == *u) else {
            cert.simplex_ok = false;
            cert.simplex_witness.get_or_insert(format!("apex {u} is not on polygon {p}"));
            continue;
        };
        vs.rotate_left(at);
        for (t, ang) in fan_angles(vs.len()).into_iter().enumerate() {
            let angles = [ang[0] * corner_scale, ang[1], ang[2]];
            let sum = angles.iter().sum::<f64>();
            cert.max_simplex_sum = cert.max_simplex_sum.max(sum / PI);
            if sum >= PI - EPS && cert.simplex_ok {
                cert.simplex_ok = false;
                cert.simplex_witness = Some(format!("triangle {t} of polygon {p} has angle sum {:.12}π", sum / PI));
            }
            triangles.push(Triangle { corners: [vs[0].clone(), vs[t + 1].clone(), vs[t + 2].clone()], angles });
        }
    }
    cert.triangles = triangles.len();
    // vertex links: one link edge per triangle at the vertex, weighted by the corner angle
    let mut links: BTreeMap<&GroupElement, Vec<(&GroupElement, &GroupElement, f64)>> = BTreeMap::new();
    for tr in &triangles {
        for i in 0..3 {
            let (a, b) = (&tr.corners[(i + 1) % 3], &tr.corners[(i + 2) % 3]);
            links.entry(&tr.corners[i]).or_default().push((a, b, tr.angles[i]));
        }
    }
    for (x, edges) in &links {
        let nodes: Vec<&GroupElement> = edges.iter().flat_map(|e| [e.0, e.1]).collect::<BTreeSet<_>>().into_iter().collect();
        let idx: HashMap<&GroupElement, usize> = nodes.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut adj = vec![Vec::new(); nodes.len()];
        let mut weight: HashMap<(usize, usize), f64> = HashMap::new();
        for (a, b, w) in edges {
            let (i, j) = (idx[a], idx[b]);
            adj[i].push(j);
            adj[j].push(i);
            weight.insert((i.min(j), i.max(j)), *w);
        }
        let mut cycles = Vec::new();
        simple_cycles(nodes.len(), &adj, &mut cycles);
        for c in cycles.into_iter().filter(|c| c.len() > 3) {
            let k = c.len();
            let two_full = (0..k).all(|i| !adj[c[i]].contains(&c[(i + 2) % k]));
            if !two_full {
                continue;
            }
            cert.cycles_checked += 1;
            let len: f64 = (0..k).map(|i| weight[&(c[i].min(c[(i + 1) % k]), c[i].max(c[(i + 1) % k]))]).sum();
            let min = cert.min_cycle_length.get_or_insert(len / PI);
            *min = min.min(len / PI);
            if len < 2.0 * PI - EPS && cert.links_ok {
                cert.links_ok = false;
                cert.link_witness = Some(format!("link of {x}: cycle of {k} vertices has angular length {:.12}π", len / PI));
            }
        }
    }
    cert.pass = cert.simplex_ok && cert.links_ok;
    cert
}
