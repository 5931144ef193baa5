use std::collections::{HashMap, VecDeque};

use cxdim_bounds::constant_a;
use cxdim_census::*;
use cxdim_core::{CoxeterGroup, DavisBall, DefiningGraph, GroupElement};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn uniform(m: usize, big_m: u32) -> CoxeterGroup {
    CoxeterGroup::new(DefiningGraph::uniform(m, big_m).unwrap())
}

#[test]
fn s1_is_exact_and_s2_below_a_on_grid() {
    for m in 4..=6 {
        for big_m in 3..=4 {
            let g = uniform(m, big_m);
            let s1 = census_s1(&g, (0, 1)).unwrap();
            let (mu, l) = (m as u64, big_m as u64);
            assert_eq!(s1.count as u64, 2 * l * (mu - 2) + l * (mu - 2) * (mu - 3), "m {m} M {big_m}");
            assert!(s1.pass);
            let s2 = census_s2(&g, (0, 1), None).unwrap();
            assert!(s2.pass, "{s2:?}");
            assert_eq!(s2.bound, constant_a(mu, l).unwrap());
        }
    }
    assert_eq!(census_s1(&uniform(5, 3), (2, 4)).unwrap().count, 36);
}

#[test]
fn s2_at_m4_is_below_126() {
    let s2 = census_s2(&uniform(4, 3), (0, 1), None).unwrap();
    assert_eq!(s2.bound, 126.0);
    assert!(s2.count <= 126);
}

#[test]
fn lazy_shells_match_a_materialized_ball() {
    let g = uniform(4, 3);
    // radius (k + 1) M with k = 2 is the least that holds all of S_2
    let ball = DavisBall::build(&g, 9, 1 << 22).unwrap();
    let mut cx = PolygonComplex::new(&g);
    for (i, p) in ball.polygons().iter().enumerate().filter(|(_, p)| p.coset.is_identity()) {
        let from_ball = ball_shells(&ball, i, 2).unwrap();
        let base = PolyId { pair: p.pair, coset: p.coset.clone() };
        let lazy = PolygonCensus::compute(&mut cx, &base, 2);
        assert_eq!(from_ball.shells, lazy.shells);
        assert_eq!(from_ball.counts[0], 18);
    }
    let small = DavisBall::build(&g, 6, 1 << 22).unwrap();
    let p = small.polygons().iter().position(|p| p.coset.is_identity()).unwrap();
    assert_eq!(ball_shells(&small, p, 1).unwrap().counts, vec![18]);
}

#[test]
fn mixed_labels_respect_the_s1_bound() {
    let one_four = CoxeterGroup::new(DefiningGraph::from_fn(5, |i, j| if (i, j) == (0, 1) { 4 } else { 3 }).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut groups = vec![one_four];
    for _ in 0..4 {
        let m = rng.gen_range(4..=6);
        groups.push(CoxeterGroup::new(DefiningGraph::from_fn(m, |_, _| rng.gen_range(3..=5)).unwrap()));
    }
    for g in &groups {
        let m = g.rank();
        for (i, j) in g.graph().pairs() {
            let c = census_s1(g, (i, j)).unwrap();
            assert!(c.pass, "{c:?}");
            // the exact count for the type: every edge of P sees m - 2 polygons,
            // every vertex C(m - 2, 2) more
            let n = 2 * g.graph().label(i, j) as usize;
            assert_eq!(c.count, n * (m - 2) + n * (m - 2) * (m - 3) / 2);
        }
        assert!(census_s2(g, (0, 1), None).unwrap().pass);
    }
}

/// Breadth-first layers of the polygon adjacency graph.
fn bfs_layers(cx: &mut PolygonComplex, base: &PolyId, k: usize) -> Vec<Vec<PolyId>> {
    let mut dist = HashMap::from([(base.clone(), 0usize)]);
    let mut queue = VecDeque::from([base.clone()]);
    let mut layers = vec![Vec::new(); k];
    while let Some(p) = queue.pop_front() {
        let d = dist[&p];
        if d == k {
            continue;
        }
        for q in cx.meeting(&p).to_vec() {
            if !dist.contains_key(&q) {
                dist.insert(q.clone(), d + 1);
                layers[d].push(q.clone());
                queue.push_back(q);
            }
        }
    }
    for l in &mut layers {
        l.sort();
    }
    layers
}

#[test]
fn shells_partition_the_ball() {
    for (m, big_m, k) in [(4, 3, 3), (5, 4, 2)] {
        let g = uniform(m, big_m);
        let mut cx = PolygonComplex::new(&g);
        let base = cx.polygon(&g.reduce_letters(&[1, 0, 2]), 0, 3);
        let c = PolygonCensus::compute(&mut cx, &base, k);
        assert!(c.disjointness_witness().is_none());
        assert_eq!(c.shells, bfs_layers(&mut cx, &base, k));
    }
}

#[test]
fn triangle_balls() {
    for (p, q, r) in [(3, 3, 4), (3, 4, 4), (4, 4, 4)] {
        let c = census_triangle_ball(p, q, r, 3).unwrap();
        assert!(c.pass, "{c:?}");
        for row in &c.rows {
            assert_eq!(row.s1, 2 * row.label as usize);
        }
    }
    let c = census_triangle_ball(4, 4, 4, 2).unwrap();
    assert!(c.rows.iter().all(|r| r.ball[2] <= 200));
}

#[test]
fn flat_hexagon_counts() {
    let one = census_flat_hexagons(1, 1.0).unwrap();
    assert!((one.bound - 52.59).abs() < 0.01);
    // every lattice point with 3(a² + ab + b²) <= 16 e
    assert_eq!(one.centres.count, 55);
    for ell in 1..=4 {
        let c = census_flat_hexagons(ell, 1.0).unwrap();
        assert!(c.contained.pass, "{c:?}");
    }
    let three = census_flat_hexagons(3, 1.0).unwrap();
    let e2 = std::f64::consts::E.powi(2);
    assert!((three.centres.count as f64) / (one.centres.count as f64) <= e2 * 1.1);
    assert!((three.contained.count as f64) / (one.contained.count as f64) <= e2 * 1.5);
}

proptest! {
    #[test]
    fn hexagon_counts_are_scale_free(ell in 1u32..=6, y in 0.05..40.0f64) {
        let a = census_flat_hexagons(ell, 1.0).unwrap();
        let b = census_flat_hexagons(ell, y).unwrap();
        prop_assert_eq!(a.centres.count, b.centres.count);
        prop_assert_eq!(a.contained.count, b.contained.count);
    }

    #[test]
    fn s1_is_translation_invariant(word in proptest::collection::vec(0u8..4, 0..12), pair in (0usize..3, 1usize..4)) {
        prop_assume!(pair.0 < pair.1);
        let g = uniform(4, 3);
        let mut cx = PolygonComplex::new(&g);
        let v: GroupElement = g.reduce_letters(&word);
        let p = cx.polygon(&v, pair.0, pair.1);
        let c = PolygonCensus::compute(&mut cx, &p, 1);
        prop_assert_eq!(c.counts[0], 18);
    }
}

#[test]
fn itineraries_are_reexported() {
    let c = enumerate_itineraries(1, 1, Default::default());
    assert_eq!(c.total, 2);
}
