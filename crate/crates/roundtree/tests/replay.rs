//! Replays the construction from the gluing rules alone: polygons are placed
//! as cosets on each outer edge, and the new outer path, left and right lines
//! and internal vertices are read off the boundary of the union. None of the
//! builder's arc walking is reused.

use std::collections::{BTreeMap, BTreeSet};

use cxdim_census::{PolyId, PolygonComplex};
use cxdim_core::{CoxeterGroup, DefiningGraph, GroupElement};
use cxdim_roundtree::build_round_tree;

type G = GroupElement;

struct Piece {
    polys: BTreeSet<PolyId>,
    left: Vec<G>,
    right: Vec<G>,
    outer: Vec<G>,
    /// Vertices of the previous outer path (the hub vertex for `A_0`).
    before: BTreeSet<G>,
}

fn label(g: &CoxeterGroup, a: &G, b: &G) -> usize {
    (0..g.rank()).find(|&s| g.mul_gen(a, s) == *b).expect("adjacent")
}

fn key(a: &G, b: &G) -> (G, G) {
    if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) }
}

fn edges(cx: &PolygonComplex, polys: &BTreeSet<PolyId>) -> BTreeMap<(G, G), usize> {
    let mut out = BTreeMap::new();
    for p in polys {
        let vs = cx.vertices(p);
        for i in 0..vs.len() {
            *out.entry(key(&vs[i], &vs[(i + 1) % vs.len()])).or_insert(0) += 1;
        }
    }
    out
}

/// The boundary path from `from` to `to` that avoids the given edges.
fn boundary_path(cx: &PolygonComplex, polys: &BTreeSet<PolyId>, from: &G, to: &G, avoid: &BTreeSet<(G, G)>) -> Vec<G> {
    let mut adj: BTreeMap<G, Vec<G>> = BTreeMap::new();
    for ((a, b), n) in edges(cx, polys) {
        if n == 1 && !avoid.contains(&(a.clone(), b.clone())) {
            adj.entry(a.clone()).or_default().push(b.clone());
            adj.entry(b).or_default().push(a);
        }
    }
    let mut path = vec![from.clone()];
    while path.last() != Some(to) {
        let x = path.last().unwrap();
        let next = adj[x].iter().find(|y| path.len() < 2 || **y != path[path.len() - 2]).unwrap().clone();
        path.push(next);
    }
    path
}

fn initial(g: &CoxeterGroup, cx: &PolygonComplex) -> Piece {
    let gl = g.graph();
    let e = G::identity();
    // the vertex of the {1,2} polygon farthest from x0
    let mut hub = e.clone();
    for t in 0..gl.label(0, 1) as usize {
        hub = g.mul_gen(&hub, t % 2);
    }
    let polys: BTreeSet<PolyId> = [(0, 1), (0, 2), (1, 2)].iter().map(|&(i, j)| cx.polygon(&hub, i, j)).collect();
    let side = gl.label(0, 1) as usize + 1;
    let mut adj: BTreeMap<G, Vec<G>> = BTreeMap::new();
    for ((a, b), n) in edges(cx, &polys) {
        if n == 1 {
            adj.entry(a.clone()).or_default().push(b.clone());
            adj.entry(b).or_default().push(a);
        }
    }
    let walk_from = |first: G| {
        let mut p = vec![e.clone(), first];
        while p.len() <= side {
            let x = p.last().unwrap();
            let y = adj[x].iter().find(|y| **y != p[p.len() - 2]).unwrap().clone();
            p.push(y);
        }
        p
    };
    let left = walk_from(g.mul_gen(&e, 0));
    let right = walk_from(g.mul_gen(&e, 1));
    let avoid: BTreeSet<(G, G)> = left.windows(2).chain(right.windows(2)).map(|w| key(&w[0], &w[1])).collect();
    let outer = boundary_path(cx, &polys, left.last().unwrap(), right.last().unwrap(), &avoid);
    Piece { polys, left, right, outer, before: BTreeSet::from([hub]) }
}

/// Shared labels stay in one strip; leftovers pair up in sorted order.
fn strips_from(choices: &[Vec<usize>], v: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = choices[0].iter().map(|&l| vec![l]).collect();
    for next in &choices[1..] {
        let lasts: Vec<usize> = out.iter().map(|s| *s.last().unwrap()).collect();
        let kept: Vec<bool> = lasts.iter().map(|l| next.contains(l)).collect();
        let mut spare = next.iter().filter(|l| !lasts.contains(l));
        for (s, k) in out.iter_mut().zip(kept) {
            let l = if k { *s.last().unwrap() } else { *spare.next().unwrap() };
            s.push(l);
        }
    }
    assert_eq!(out.len(), v);
    out
}

fn step(g: &CoxeterGroup, cx: &PolygonComplex, pieces: &[Piece], v: usize, triple: [usize; 3]) -> Vec<Piece> {
    let union: BTreeSet<PolyId> = pieces.iter().flat_map(|p| p.polys.iter().cloned()).collect();
    let all_edges = edges(cx, &union);
    let mut at: BTreeMap<&G, BTreeSet<usize>> = BTreeMap::new();
    for (a, b) in all_edges.keys() {
        let l = label(g, a, b);
        at.entry(a).or_default().insert(l);
        at.entry(b).or_default().insert(l);
    }
    let mut out = Vec::new();
    for piece in pieces {
        let own = edges(cx, &piece.polys);
        let e = &piece.outer;
        // internal vertices: on E and joined by an edge of the piece to the previous outer path
        let mut internal = Vec::new();
        for (i, x) in e.iter().enumerate() {
            let partners: Vec<&G> = piece.before.iter().filter(|y| own.contains_key(&key(x, y))).collect();
            assert!(partners.len() <= 1);
            if let Some(y) = partners.first() {
                internal.push((i, (*y).clone()));
            }
        }
        let choices: Vec<Vec<usize>> = internal
            .iter()
            .map(|(i, y)| {
                let mut bad: BTreeSet<usize> = triple.into_iter().collect();
                bad.extend(at[&e[*i]].iter());
                bad.extend(at[y].iter());
                (0..g.rank()).filter(|l| !bad.contains(l)).take(v).collect()
            })
            .collect();
        let ell: Vec<usize> = e.windows(2).map(|w| label(g, &w[0], &w[1])).collect();
        let idx: Vec<usize> = internal.iter().map(|(i, _)| *i).collect();
        for labels in strips_from(&choices, v) {
            let mut polys = piece.polys.clone();
            for s in 0..ell.len() {
                // the interval of internal vertices containing edge s
                let t = idx.iter().filter(|&&i| i <= s).count();
                let lam = if t == 0 {
                    labels[0]
                } else if t == idx.len() || s == idx[t - 1] {
                    labels[t - 1]
                } else {
                    labels[t]
                };
                polys.insert(cx.polygon(&e[s], ell[s], lam));
                if t > 0 && t < idx.len() && s == idx[t - 1] + 1 && labels[t - 1] != labels[t] {
                    polys.insert(cx.polygon(&e[s], labels[t - 1], labels[t]));
                }
            }
            let (x0, xn) = (labels[0], *labels.last().unwrap());
            let (a, b) = (e.first().unwrap(), e.last().unwrap());
            let mut left = piece.left.clone();
            left.push(g.mul_gen(a, x0));
            left.push(g.mul_gen(&g.mul_gen(a, x0), ell[0]));
            let mut right = piece.right.clone();
            right.push(g.mul_gen(b, xn));
            right.push(g.mul_gen(&g.mul_gen(b, xn), *ell.last().unwrap()));
            let avoid: BTreeSet<(G, G)> = left.windows(2).chain(right.windows(2)).map(|w| key(&w[0], &w[1])).collect();
            let outer = boundary_path(cx, &polys, left.last().unwrap(), right.last().unwrap(), &avoid);
            out.push(Piece { polys, left, right, outer, before: e.iter().cloned().collect() });
        }
    }
    out
}

fn replay(graph: &DefiningGraph, v: usize, n_max: usize) -> Vec<Vec<Piece>> {
    let g = CoxeterGroup::new(graph.clone());
    let cx = PolygonComplex::new(&g);
    let m = graph.m();
    let triples: Vec<[usize; 3]> = (0..m)
        .flat_map(|p| (p + 1..m).flat_map(move |q| (q + 1..m).map(move |r| [p, q, r])))
        .collect();
    let mut stages = vec![vec![initial(&g, &cx)]];
    for n in 0..n_max {
        let next = step(&g, &cx, &stages[n], v, triples[n % triples.len()]);
        stages.push(next);
    }
    stages
}

#[test]
fn replay_matches_the_builder_through_stage_three() {
    let graph = DefiningGraph::uniform(11, 3).unwrap();
    let oracle = replay(&graph, 2, 3);
    let tree = build_round_tree(&graph, 2, 3).unwrap();
    let counts: Vec<usize> = oracle
        .iter()
        .map(|pieces| pieces.iter().flat_map(|p| p.polys.iter()).collect::<BTreeSet<_>>().len())
        .collect();
    assert_eq!(counts, vec![3, 11, 51, 283]);
    for (n, pieces) in oracle.iter().enumerate() {
        let built: BTreeSet<PolyId> = tree.polygons_at_stage(n).into_iter().collect();
        assert_eq!(built.len(), counts[n], "stage {n}");
        let stage = &tree.stages[n];
        assert_eq!(stage.branches.len(), pieces.len());
        for (b, p) in stage.branches.iter().zip(pieces) {
            let polys: BTreeSet<PolyId> = b.polygons.iter().cloned().collect();
            assert_eq!(polys, p.polys, "stage {n} piece {:?}", b.address);
            assert_eq!(b.left, p.left);
            assert_eq!(b.right, p.right);
            assert_eq!(b.outer, p.outer);
        }
    }
}

#[test]
fn replay_with_squares_and_hexagons() {
    // labels 4 on the edges touching generator 1, 3 elsewhere
    let graph = DefiningGraph::from_fn(11, |i, j| if i == 0 || j == 0 { 4 } else { 3 }).unwrap();
    let oracle = replay(&graph, 2, 2);
    let tree = build_round_tree(&graph, 2, 2).unwrap();
    for (n, pieces) in oracle.iter().enumerate() {
        for (b, p) in tree.stages[n].branches.iter().zip(pieces) {
            let polys: BTreeSet<PolyId> = b.polygons.iter().cloned().collect();
            assert_eq!(polys, p.polys, "stage {n} piece {:?}", b.address);
            assert_eq!(b.outer, p.outer);
        }
    }
    assert_eq!(tree.initial_side(), 5);
}
