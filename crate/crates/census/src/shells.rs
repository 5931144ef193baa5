//! Combinatorial spheres `S_k(C)`: polygons outside `C ∪ S_1 ∪ ... ∪ S_{k-1}`
//! meeting that union.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use cxdim_bounds::{constant_a, constant_s1};
use cxdim_core::{CoxeterGroup, DavisBall, GroupElement};

use crate::{CensusError, PolyId, PolygonComplex, Result};

/// Shells `S_1..S_k` around `base`, with `meets(P, shell)` listing the
/// polygons meeting `P` (other than `P`).
pub fn shells<F>(base: &[PolyId], k: usize, mut meets: F) -> Result<Vec<Vec<PolyId>>>
where
    F: FnMut(&PolyId, usize) -> Result<Vec<PolyId>>,
{
    let mut union: BTreeSet<PolyId> = base.iter().cloned().collect();
    let mut out = Vec::with_capacity(k);
    for shell in 1..=k {
        let mut next = BTreeSet::new();
        for p in &union {
            for q in meets(p, shell)? {
                if !union.contains(&q) {
                    next.insert(q);
                }
            }
        }
        union.extend(next.iter().cloned());
        out.push(next.into_iter().collect());
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct PolygonCensus {
    pub base: PolyId,
    pub shells: Vec<Vec<PolyId>>,
    pub counts: Vec<usize>,
}

impl PolygonCensus {
    fn new(base: PolyId, shells: Vec<Vec<PolyId>>) -> Self {
        let counts = shells.iter().map(Vec::len).collect();
        Self { base, shells, counts }
    }

    /// Lazily, in the full complex.
    pub fn compute(cx: &mut PolygonComplex, base: &PolyId, k: usize) -> Self {
        let sh = shells(std::slice::from_ref(base), k, |p, _| Ok(cx.meeting(p).to_vec())).expect("lazy shells cannot fail");
        Self::new(base.clone(), sh)
    }

    /// `|B_k| = 1 + |S_1| + ... + |S_k|`.
    pub fn ball_size(&self, k: usize) -> usize {
        1 + self.counts[..k].iter().sum::<usize>()
    }

    /// A polygon found in two shells, or a shell containing the base.
    pub fn disjointness_witness(&self) -> Option<String> {
        let mut seen: HashMap<&PolyId, usize> = HashMap::new();
        seen.insert(&self.base, 0);
        for (i, sh) in self.shells.iter().enumerate() {
            for p in sh {
                if let Some(j) = seen.insert(p, i + 1) {
                    return Some(format!("{p} lies in S_{j} and S_{}", i + 1));
                }
            }
        }
        None
    }
}

/// Shells read off a materialized ball. `base` indexes `ball.polygons()`.
/// Polygons in `S_k` reach at most `k M` past the base, so the ball must
/// have radius at least `reach(base) + k M`.
pub fn ball_shells(ball: &DavisBall, base: usize, k: usize) -> Result<PolygonCensus> {
    let g = ball.group();
    let big_m = g.graph().max_label() as usize;
    let id = |i: usize| {
        let p = &ball.polygons()[i];
        PolyId { pair: p.pair, coset: p.coset.clone() }
    };
    let base_poly = ball.polygons().get(base).ok_or_else(|| CensusError::MissingPolygon(base.to_string()))?;
    let reach = base_poly.boundary.iter().map(|&v| ball.vertices()[v].len()).max().unwrap_or(0);
    if ball.radius() < reach + k * big_m {
        return Err(CensusError::Margin { shell: k, required: reach + k * big_m, radius: ball.radius() });
    }
    let mut at_vertex: Vec<Vec<usize>> = vec![Vec::new(); ball.vertices().len()];
    let mut index: HashMap<PolyId, usize> = HashMap::new();
    for (i, p) in ball.polygons().iter().enumerate() {
        for &v in &p.boundary {
            at_vertex[v].push(i);
        }
        index.insert(id(i), i);
    }
    let sh = shells(&[id(base)], k, |p, _| {
        let i = index[p];
        let mut out: Vec<PolyId> =
            ball.polygons()[i].boundary.iter().flat_map(|&v| at_vertex[v].iter().copied()).filter(|&q| q != i).map(id).collect();
        out.sort();
        out.dedup();
        Ok(out)
    })?;
    Ok(PolygonCensus::new(id(base), sh))
}

/// The polygon of type `(i, j)` through the identity.
fn base_polygon(cx: &PolygonComplex, pair: (usize, usize)) -> PolyId {
    cx.polygon(&GroupElement::identity(), pair.0, pair.1)
}

#[derive(Clone, Debug, Serialize)]
pub struct S1Census {
    pub m: usize,
    #[serde(rename = "M")]
    pub big_m: u32,
    pub base: PolyId,
    pub count: usize,
    pub witnesses: Vec<PolyId>,
    /// `2M(m-2) + 2M C(m-2, 2)` when every label is `M`.
    pub exact: Option<u64>,
    pub bound: f64,
    pub pass: bool,
}

/// `S_1` of the polygon of type `pair` at the identity.
pub fn census_s1(group: &CoxeterGroup, pair: (usize, usize)) -> Result<S1Census> {
    let m = group.rank();
    let big_m = group.graph().max_label();
    let mut cx = PolygonComplex::new(group);
    let base = base_polygon(&cx, pair);
    let c = PolygonCensus::compute(&mut cx, &base, 1);
    let count = c.counts[0];
    let exact = group.graph().uniform_label().map(|l| {
        let (l, m) = (l as u64, m as u64);
        2 * l * (m - 2) + 2 * l * (m - 2) * (m - 3) / 2
    });
    let bound = constant_s1(m as u64, big_m as u64)?;
    let pass = count as f64 <= bound && exact.map_or(true, |e| e == count as u64);
    Ok(S1Census { m, big_m, base, count, witnesses: c.shells[0].clone(), exact, bound, pass })
}

/// Deliberate corruptions for exercising the audit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Also count one polygon adjacent to the base as a second-shell polygon.
    AdjacentInS2,
}

#[derive(Clone, Debug, Serialize)]
pub struct S2Census {
    pub m: usize,
    #[serde(rename = "M")]
    pub big_m: u32,
    pub base: PolyId,
    pub s1: usize,
    pub count: usize,
    pub bound: f64,
    pub disjoint: bool,
    pub witness: Option<String>,
    pub pass: bool,
}

/// `S_2` of the polygon of type `pair` at the identity.
pub fn census_s2(group: &CoxeterGroup, pair: (usize, usize), fault: Option<Fault>) -> Result<S2Census> {
    let m = group.rank();
    let big_m = group.graph().max_label();
    let mut cx = PolygonComplex::new(group);
    let base = base_polygon(&cx, pair);
    let mut c = PolygonCensus::compute(&mut cx, &base, 2);
    if fault == Some(Fault::AdjacentInS2) {
        let p = c.shells[0][0].clone();
        c.shells[1].push(p);
        c.counts[1] += 1;
    }
    let bound = constant_a(m as u64, big_m as u64)?;
    let witness = c.disjointness_witness();
    let count = c.counts[1];
    Ok(S2Census {
        m,
        big_m,
        base,
        s1: c.counts[0],
        count,
        bound,
        disjoint: witness.is_none(),
        pass: witness.is_none() && count as f64 <= bound,
        witness,
    })
}
