//! Walls as reflections, and the wall-count metric.
//!
//! The number of walls separating `u` and `v` equals `|N(u) Δ N(v)|` where
//! `N(w) = {t : |t w| < |w|}` is the set of reflections whose walls separate
//! the identity from `w`. That count is the word distance, so exact 1-skeleton
//! distances are available without materializing a ball.

use std::collections::HashMap;

use crate::{CoxeterGroup, GroupElement};

/// Interns reflections and caches inversion sets.
#[derive(Debug, Default)]
pub struct ReflectionTable {
    ids: HashMap<GroupElement, u32>,
    reflections: Vec<GroupElement>,
    inversions: HashMap<GroupElement, Vec<u32>>,
}

impl ReflectionTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Id of a reflection, interning it on first sight.
    pub fn intern(&mut self, r: GroupElement) -> u32 {
        let next = self.reflections.len() as u32;
        *self.ids.entry(r.clone()).or_insert_with(|| {
            self.reflections.push(r);
            next
        })
    }

    pub fn reflection(&self, id: u32) -> &GroupElement {
        &self.reflections[id as usize]
    }

    /// Id of the wall through the edge `(a, a s)`.
    pub fn wall_of_edge(&mut self, g: &CoxeterGroup, a: &GroupElement, s: usize) -> u32 {
        let r = g.reflection(a, s);
        self.intern(r)
    }

    /// Sorted ids of the walls separating the identity from `w`.
    pub fn inversion_set(&mut self, g: &CoxeterGroup, w: &GroupElement) -> Vec<u32> {
        if let Some(v) = self.inversions.get(w) {
            return v.clone();
        }
        let mut prefix = GroupElement::identity();
        let mut set = Vec::with_capacity(w.len());
        for &s in w.letters() {
            set.push(self.wall_of_edge(g, &prefix, s as usize));
            prefix = g.mul_gen(&prefix, s as usize);
        }
        set.sort_unstable();
        self.inversions.insert(w.clone(), set.clone());
        set
    }

    /// Number of walls separating `u` and `v`.
    pub fn wall_distance(&mut self, g: &CoxeterGroup, u: &GroupElement, v: &GroupElement) -> usize {
        let a = self.inversion_set(g, u);
        let b = self.inversion_set(g, v);
        symmetric_difference_len(&a, &b)
    }
}

/// `|a Δ b|` for sorted slices.
pub fn symmetric_difference_len(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut common) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                common += 1;
                i += 1;
                j += 1;
            }
        }
    }
    a.len() + b.len() - 2 * common
}
