//! Itinerary vectors in `(N ∪ {1/2})^j` for orbit points within distance `r`.
//!
//! An entry `1/2` marks a Type A step (length at least `1/2`). Any other
//! entry is `ceil(d)` for a step of length `d >= 1/2`. Two admissibility
//! rules are offered:
//!
//! * [`Constraint::Realizable`]: some choice of step lengths consistent with
//!   the entries has total at most `r`. A `1` entry costs at least `1/2`, an
//!   entry `l >= 2` costs more than `l - 1`.
//! * [`Constraint::Stated`]: `j <= 2r` and `sum_{l >= 1} l <= (r - k/2) + (j - k)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::binom;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Step {
    Half,
    Len(u32),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Constraint {
    #[default]
    Realizable,
    Stated,
}

/// Whether `v` is an admissible itinerary at radius `r`.
pub fn admissible(v: &[Step], r: u32, c: Constraint) -> bool {
    let j = v.len() as u32;
    if j == 0 || j > 2 * r {
        return false;
    }
    if v.iter().any(|s| matches!(s, Step::Len(0))) {
        return false;
    }
    let k = v.iter().filter(|s| **s == Step::Half).count() as u32;
    match c {
        Constraint::Stated => {
            let l: u32 = v.iter().map(|s| if let Step::Len(l) = s { *l } else { 0 }).sum();
            // 2L <= 2r - k + 2(j - k)
            2 * l + k <= 2 * r + 2 * (j - k)
        }
        Constraint::Realizable => {
            // Work in halves: minimal cost and whether it is attained.
            let mut cost = k;
            let mut open = false;
            for s in v {
                if let Step::Len(l) = s {
                    if *l == 1 {
                        cost += 1;
                    } else {
                        cost += 2 * (l - 1);
                        open = true;
                    }
                }
            }
            if open {
                cost < 2 * r
            } else {
                cost <= 2 * r
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ItineraryCounts {
    pub r: u32,
    pub j_max: u32,
    pub constraint: Constraint,
    /// `(j, k) -> count`, `k` the number of half entries.
    pub counts: BTreeMap<(u32, u32), u64>,
    pub total: u64,
}

/// Exhaustive depth-first enumeration of admissible vectors with `1 <= j <= j_max`.
pub fn enumerate_itineraries(r: u32, j_max: u32, c: Constraint) -> ItineraryCounts {
    let mut counts = BTreeMap::new();
    let mut v = Vec::new();
    for j in 1..=j_max.min(2 * r) {
        dfs(&mut v, j as usize, r, c, &mut counts);
    }
    let total = counts.values().sum();
    ItineraryCounts { r, j_max, constraint: c, counts, total }
}

fn dfs(v: &mut Vec<Step>, j: usize, r: u32, c: Constraint, counts: &mut BTreeMap<(u32, u32), u64>) {
    if v.len() == j {
        if admissible(v, r, c) {
            let k = v.iter().filter(|s| **s == Step::Half).count() as u32;
            *counts.entry((j as u32, k)).or_insert(0) += 1;
        }
        return;
    }
    // Entries never exceed r + j. Padding with 1s is the cheapest completion
    // under both rules, so a failed probe rules out the prefix.
    let mut candidates = vec![Step::Half];
    candidates.extend((1..=r + j as u32).map(Step::Len));
    for s in candidates {
        v.push(s);
        let mut probe = v.clone();
        probe.resize(j, Step::Len(1));
        let ok = admissible(&probe, r, c);
        if ok {
            dfs(v, j, r, c, counts);
        }
        v.pop();
        if !ok && matches!(s, Step::Len(_)) {
            break;
        }
    }
}

/// Closed form for [`Constraint::Stated`]: `C(j,k) C(t + j - k, j - k)` with
/// `t = floor(r - k/2)` slack shared among the `j - k` integer entries.
pub fn closed_form_count(r: u32, j: u32, k: u32) -> u128 {
    if j == 0 || j > 2 * r || k > j || k > 2 * r {
        return 0;
    }
    let n = (j - k) as i64;
    let t = ((2 * r - k) / 2) as i64;
    binom(j as i64, k as i64) * binom(t + n, n)
}

/// The stars-and-bars count `C(j,k) C(r + j - floor(3k/2) - 1, j - k - 1)`,
/// with the usual convention that binomials outside range vanish.
pub fn eq1_count(r: u32, j: u32, k: u32) -> u128 {
    let (r, j, k) = (r as i64, j as i64, k as i64);
    binom(j, k) * binom(r + j - (3 * k) / 2 - 1, j - k - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_one() {
        let c = enumerate_itineraries(1, 1, Constraint::Realizable);
        assert_eq!(c.total, 2);
        assert_eq!(c.counts[&(1, 0)], 1);
        assert_eq!(c.counts[&(1, 1)], 1);
        let s = enumerate_itineraries(1, 1, Constraint::Stated);
        assert_eq!(s.total, 3);
    }

    #[test]
    fn stated_closed_form() {
        for r in 1..=4 {
            let c = enumerate_itineraries(r, 2 * r, Constraint::Stated);
            for j in 1..=2 * r {
                for k in 0..=j {
                    let got = c.counts.get(&(j, k)).copied().unwrap_or(0) as u128;
                    assert_eq!(got, closed_form_count(r, j, k), "r {r} j {j} k {k}");
                }
            }
        }
    }

    #[test]
    fn eq1_examples() {
        assert_eq!(eq1_count(2, 2, 1), 2);
        assert_eq!(eq1_count(1, 1, 0), 1);
        assert_eq!(eq1_count(1, 1, 1), 0);
    }
}
