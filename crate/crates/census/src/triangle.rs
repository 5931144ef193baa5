//! Combinatorial balls around a polygon in the Davis complex of a hyperbolic
//! triangle group `Δ(p, q, r)`.

use serde::Serialize;

use cxdim_core::{CoxeterGroup, DefiningGraph, GroupElement};

use crate::{CensusError, PolygonCensus, PolygonComplex, Result};

#[derive(Clone, Debug, Serialize)]
pub struct TriangleRow {
    /// Label of the base polygon's generator pair.
    pub label: u32,
    pub s1: usize,
    /// `|B_0|, ..., |B_k|`.
    pub ball: Vec<usize>,
    /// `2r (2r - 3)^i` for the largest label `r`.
    pub bound: Vec<u64>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangleBallCensus {
    pub triple: [u32; 3],
    pub k: usize,
    pub rows: Vec<TriangleRow>,
    pub pass: bool,
}

/// Ball sizes around each of the three polygon types at the identity.
/// Generators 1, 2, 3 carry `m_12 = p`, `m_13 = q`, `m_23 = r`.
pub fn census_triangle_ball(p: u32, q: u32, r: u32, k: usize) -> Result<TriangleBallCensus> {
    if !(3 <= p && p <= q && q <= r) {
        return Err(CensusError::Domain(format!("need 3 <= p <= q <= r, got ({p},{q},{r})")));
    }
    if (q * r + p * r + p * q) as u64 >= (p * q * r) as u64 {
        return Err(CensusError::NotApplicable(format!("Δ({p},{q},{r}) is not hyperbolic")));
    }
    let labels = [p, q, r];
    let graph = DefiningGraph::from_fn(3, |i, j| labels[i + j - 1])?;
    let group = CoxeterGroup::new(graph);
    let mut cx = PolygonComplex::new(&group);
    let big = 2 * r as u64;
    let bound: Vec<u64> = (0..=k as u32).map(|i| big * (big - 3).pow(i)).collect();
    let mut rows = Vec::new();
    for (i, j) in [(1, 2), (0, 2), (0, 1)] {
        let label = group.graph().label(i, j);
        let base = cx.polygon(&GroupElement::identity(), i, j);
        let c = PolygonCensus::compute(&mut cx, &base, k);
        let ball: Vec<usize> = (0..=k).map(|i| c.ball_size(i)).collect();
        let s1 = c.counts.first().copied().unwrap_or(0);
        let pass = (k == 0 || s1 == 2 * label as usize)
            && ball.iter().zip(&bound).all(|(b, u)| *b as u64 <= *u)
            && c.disjointness_witness().is_none();
        rows.push(TriangleRow { label, s1, ball, bound: bound.clone(), pass });
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(TriangleBallCensus { triple: labels, k, rows, pass })
}
