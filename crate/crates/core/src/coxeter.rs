//! Word problem and ShortLex normal forms.
//!
//! The fast path runs the root-system descent test: a generator `s` is a
//! left descent of `w` iff `w^{-1}(α_s)` is a negative root. Graphs whose
//! labels all lie in {3, 4, 6} admit an integer Cartan matrix, so the test is
//! exact in `i128`. Other labels use the symmetric geometric representation in
//! `f64` under a magnitude guard. Whenever integer arithmetic overflows or a
//! float sign is ambiguous the engine falls back to Tits' rewriting: saturate
//! braid moves and cancellations, then take the lexicographically least word
//! of the braid class.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::{CoreError, DefiningGraph, Result};

/// A word in the generators, stored as 0-based indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<u8>);

impl Word {
    /// Build from 1-based labels, checking the range `1..=m`.
    pub fn from_labels(labels: &[usize], m: usize) -> Result<Self> {
        labels
            .iter()
            .map(|&l| {
                if l == 0 || l > m {
                    Err(CoreError::LetterOutOfRange { letter: l, m })
                } else {
                    Ok((l - 1) as u8)
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 1-based labels.
    pub fn labels(&self) -> Vec<usize> {
        self.0.iter().map(|&g| g as usize + 1).collect()
    }
}

/// An element of `W_Γ`, held as its ShortLex-least reduced word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupElement {
    word: Vec<u8>,
}

impl GroupElement {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Word length.
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Normal form letters, 0-based.
    pub fn letters(&self) -> &[u8] {
        &self.word
    }

    pub fn normal_form(&self) -> Word {
        Word(self.word.clone())
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.word.len().cmp(&other.word.len()).then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "e");
        }
        for (k, g) in self.word.iter().enumerate() {
            if k > 0 {
                write!(f, ".")?;
            }
            write!(f, "{}", g + 1)?;
        }
        Ok(())
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.word.iter().map(|&g| g as u32 + 1))
    }
}

#[derive(Clone, Debug)]
enum Cartan {
    Int(Vec<i128>),
    Float(Vec<f64>),
}

/// The Coxeter group of a defining graph.
#[derive(Clone, Debug)]
pub struct CoxeterGroup {
    graph: DefiningGraph,
    cartan: Cartan,
}

/// Elements of word length at most `radius`, grouped by length.
#[derive(Clone, Debug)]
pub struct Ball {
    pub radius: usize,
    pub spheres: Vec<Vec<GroupElement>>,
}

impl Ball {
    pub fn len(&self) -> usize {
        self.spheres.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn sphere_sizes(&self) -> Vec<usize> {
        self.spheres.iter().map(Vec::len).collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = &GroupElement> {
        self.spheres.iter().flatten()
    }
}

/// Default cap on ball sizes.
pub const DEFAULT_BALL_CAP: usize = 10_000_000;

const BRAID_CLASS_CAP: usize = 2_000_000;

impl CoxeterGroup {
    pub fn new(graph: DefiningGraph) -> Self {
        let m = graph.m();
        let crystallographic = graph.pairs().all(|(i, j)| matches!(graph.label(i, j), 3 | 4 | 6));
        let cartan = if crystallographic {
            let mut a = vec![0i128; m * m];
            for i in 0..m {
                a[i * m + i] = 2;
            }
            for (i, j) in graph.pairs() {
                let long = match graph.label(i, j) {
                    3 => 1,
                    4 => 2,
                    _ => 3,
                };
                a[i * m + j] = -1;
                a[j * m + i] = -long;
            }
            Cartan::Int(a)
        } else {
            let mut a = vec![0f64; m * m];
            for i in 0..m {
                a[i * m + i] = 2.0;
            }
            for (i, j) in graph.pairs() {
                let c = -2.0 * (std::f64::consts::PI / graph.label(i, j) as f64).cos();
                a[i * m + j] = c;
                a[j * m + i] = c;
            }
            Cartan::Float(a)
        };
        Self { graph, cartan }
    }

    pub fn graph(&self) -> &DefiningGraph {
        &self.graph
    }

    pub fn rank(&self) -> usize {
        self.graph.m()
    }

    /// Reduce an arbitrary word, checking letter range.
    pub fn reduce(&self, w: &Word) -> Result<GroupElement> {
        let m = self.rank();
        if let Some(&bad) = w.0.iter().find(|&&g| g as usize >= m) {
            return Err(CoreError::LetterOutOfRange { letter: bad as usize + 1, m });
        }
        Ok(self.reduce_letters(&w.0))
    }

    /// Reduce a word of 0-based letters already known to be in range.
    pub fn reduce_letters(&self, w: &[u8]) -> GroupElement {
        let fast = match &self.cartan {
            Cartan::Int(a) => normal_form_by_roots::<i128>(w, a, self.rank()),
            Cartan::Float(a) => normal_form_by_roots::<f64>(w, a, self.rank()),
        };
        let word = match fast {
            Some(word) => word,
            None => reduce_by_rewriting(&self.graph, w).expect("braid class cap exceeded"),
        };
        GroupElement { word }
    }

    /// Reference reduction by braid/cancellation saturation only.
    pub fn reduce_by_rewriting(&self, w: &Word) -> Result<GroupElement> {
        reduce_by_rewriting(&self.graph, &w.0).map(|word| GroupElement { word })
    }

    /// `a · s_s` for a 0-based generator.
    pub fn multiply(&self, a: &GroupElement, s: usize) -> Result<GroupElement> {
        let m = self.rank();
        if s >= m {
            return Err(CoreError::LetterOutOfRange { letter: s + 1, m });
        }
        Ok(self.mul_gen(a, s))
    }

    /// `a · s_s` without the range check.
    pub fn mul_gen(&self, a: &GroupElement, s: usize) -> GroupElement {
        let mut w = a.word.clone();
        w.push(s as u8);
        self.reduce_letters(&w)
    }

    /// `s_s · a`.
    pub fn gen_mul(&self, s: usize, a: &GroupElement) -> GroupElement {
        let mut w = Vec::with_capacity(a.len() + 1);
        w.push(s as u8);
        w.extend_from_slice(&a.word);
        self.reduce_letters(&w)
    }

    pub fn product(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let mut w = a.word.clone();
        w.extend_from_slice(&b.word);
        self.reduce_letters(&w)
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        let w: Vec<u8> = a.word.iter().rev().copied().collect();
        self.reduce_letters(&w)
    }

    /// Word distance `|a^{-1} b|`.
    pub fn distance(&self, a: &GroupElement, b: &GroupElement) -> usize {
        let mut w: Vec<u8> = a.word.iter().rev().copied().collect();
        w.extend_from_slice(&b.word);
        self.reduce_letters(&w).len()
    }

    /// True when `|a s| < |a|`.
    pub fn is_right_descent(&self, a: &GroupElement, s: usize) -> bool {
        self.mul_gen(a, s).len() < a.len()
    }

    /// The conjugate `a s a^{-1}`, the reflection in the wall through the edge `(a, a s)`.
    pub fn reflection(&self, a: &GroupElement, s: usize) -> GroupElement {
        let mut w = a.word.clone();
        w.push(s as u8);
        w.extend(a.word.iter().rev());
        self.reduce_letters(&w)
    }

    /// The shortest element of the coset `a ⟨s_i : i ∈ subset⟩`.
    pub fn min_coset_rep(&self, a: &GroupElement, subset: &[usize]) -> GroupElement {
        let mut cur = a.clone();
        'outer: loop {
            for &s in subset {
                let next = self.mul_gen(&cur, s);
                if next.len() < cur.len() {
                    cur = next;
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    /// All elements of length at most `radius`.
    pub fn enumerate_ball(&self, radius: usize, cap: usize) -> Result<Ball> {
        let mut spheres = vec![vec![GroupElement::identity()]];
        let mut total = 1usize;
        if total > cap {
            return Err(CoreError::BallCap { cap });
        }
        for _ in 0..radius {
            let last = spheres.last().unwrap();
            let mut seen = HashSet::new();
            for a in last {
                for s in 0..self.rank() {
                    let b = self.mul_gen(a, s);
                    if b.len() > a.len() {
                        seen.insert(b);
                    }
                }
            }
            total += seen.len();
            if total > cap {
                return Err(CoreError::BallCap { cap });
            }
            let mut next: Vec<_> = seen.into_iter().collect();
            next.sort();
            spheres.push(next);
        }
        Ok(Ball { radius, spheres })
    }
}

trait Coeff: Copy {
    const ZERO: Self;
    const ONE: Self;
    /// `self - a * b`, or `None` when the result leaves the trusted range.
    fn sub_mul(self, a: Self, b: Self) -> Option<Self>;
    fn neg(self) -> Self;
    /// Sign of a root coefficient: -1, 0, 1, or `None` when ambiguous.
    fn sign(self) -> Option<i8>;
}

impl Coeff for i128 {
    const ZERO: Self = 0;
    const ONE: Self = 1;
    fn sub_mul(self, a: Self, b: Self) -> Option<Self> {
        self.checked_sub(a.checked_mul(b)?)
    }
    fn neg(self) -> Self {
        -self
    }
    fn sign(self) -> Option<i8> {
        Some(self.signum() as i8)
    }
}

/// Root coefficients in the geometric representation are 0 or at least 1 in
/// absolute value, so a float in (1e-6, 0.5) signals lost precision.
impl Coeff for f64 {
    const ZERO: Self = 0.0;
    const ONE: Self = 1.0;
    fn sub_mul(self, a: Self, b: Self) -> Option<Self> {
        let r = self - a * b;
        (r.abs() < 1e12).then_some(r)
    }
    fn neg(self) -> Self {
        -self
    }
    fn sign(self) -> Option<i8> {
        let a = self.abs();
        if a < 1e-6 {
            Some(0)
        } else if a < 0.5 {
            None
        } else if self > 0.0 {
            Some(1)
        } else {
            Some(-1)
        }
    }
}

/// Sign of the root stored in column `c` of the row-major matrix `x`.
fn column_sign<T: Coeff>(x: &[T], m: usize, c: usize) -> Option<i8> {
    let mut sign = 0i8;
    for r in 0..m {
        let s = x[r * m + c].sign()?;
        if s != 0 {
            if sign != 0 && s != sign {
                return None;
            }
            sign = s;
        }
    }
    (sign != 0).then_some(sign)
}

fn normal_form_by_roots<T: Coeff>(w: &[u8], a: &[T], m: usize) -> Option<Vec<u8>> {
    // x holds ρ(w^{-1}); column c is w^{-1}(α_c).
    let mut x = vec![T::ZERO; m * m];
    for c in 0..m {
        x[c * m + c] = T::ONE;
    }
    for &t in w {
        let t = t as usize;
        for c in 0..m {
            let mut acc = x[t * m + c];
            for j in 0..m {
                acc = acc.sub_mul(a[t * m + j], x[j * m + c])?;
            }
            x[t * m + c] = acc;
        }
    }
    let mut out = Vec::new();
    loop {
        let mut descent = None;
        for s in 0..m {
            if column_sign(&x, m, s)? < 0 {
                descent = Some(s);
                break;
            }
        }
        let Some(s) = descent else { return Some(out) };
        out.push(s as u8);
        for j in 0..m {
            if j == s {
                continue;
            }
            let coef = a[s * m + j];
            for r in 0..m {
                x[r * m + j] = x[r * m + j].sub_mul(coef, x[r * m + s])?;
            }
        }
        for r in 0..m {
            x[r * m + s] = x[r * m + s].neg();
        }
        if out.len() > w.len() {
            return None;
        }
    }
}

/// Tits' solution: saturate braid moves over the class of the current word;
/// cancel an adjacent pair `ss` as soon as one appears, otherwise the class
/// consists of the reduced words of the element and its least member is the
/// ShortLex normal form.
pub(crate) fn reduce_by_rewriting(g: &DefiningGraph, w: &[u8]) -> Result<Vec<u8>> {
    let mut current = w.to_vec();
    'restart: loop {
        if let Some(i) = current.windows(2).position(|p| p[0] == p[1]) {
            current.drain(i..i + 2);
            continue;
        }
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(current.clone());
        queue.push_back(current.clone());
        while let Some(word) = queue.pop_front() {
            for next in braid_neighbours(g, &word) {
                if seen.contains(&next) {
                    continue;
                }
                if let Some(i) = next.windows(2).position(|p| p[0] == p[1]) {
                    current = next;
                    current.drain(i..i + 2);
                    continue 'restart;
                }
                if seen.len() >= BRAID_CLASS_CAP {
                    return Err(CoreError::ClassTooLarge { cap: BRAID_CLASS_CAP });
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
        return Ok(seen.into_iter().min().unwrap_or_default());
    }
}

/// Words obtained from `w` by one braid move `stst… ↔ tsts…` of length `m_st`.
pub(crate) fn braid_neighbours(g: &DefiningGraph, w: &[u8]) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for p in 0..w.len().saturating_sub(1) {
        let (s, t) = (w[p] as usize, w[p + 1] as usize);
        if s == t {
            continue;
        }
        let len = g.label(s, t) as usize;
        if p + len > w.len() {
            continue;
        }
        let alternates = (0..len).all(|k| w[p + k] as usize == if k % 2 == 0 { s } else { t });
        if alternates {
            let mut next = w.to_vec();
            for k in 0..len {
                next[p + k] = if k % 2 == 0 { t as u8 } else { s as u8 };
            }
            out.push(next);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(m: usize, label: u32) -> CoxeterGroup {
        CoxeterGroup::new(DefiningGraph::uniform(m, label).unwrap())
    }

    fn el(g: &CoxeterGroup, labels: &[usize]) -> GroupElement {
        g.reduce(&Word::from_labels(labels, g.rank()).unwrap()).unwrap()
    }

    #[test]
    fn involution_and_braid() {
        let g = grp(2, 3);
        assert!(el(&g, &[1, 1]).is_identity());
        let a = el(&g, &[1, 2, 1]);
        assert_eq!(a.letters(), &[0, 1, 0]);
        assert_eq!(a, el(&g, &[2, 1, 2]));
        assert!(el(&g, &[1, 2, 1, 2, 1, 2]).is_identity());
    }

    #[test]
    fn multiply_examples() {
        let g = grp(2, 3);
        let e = GroupElement::identity();
        assert_eq!(g.multiply(&e, 0).unwrap().letters(), &[0]);
        assert!(g.multiply(&el(&g, &[1]), 0).unwrap().is_identity());
        assert_eq!(g.multiply(&el(&g, &[1, 2]), 0).unwrap().len(), 3);
        assert!(g.multiply(&e, 2).is_err());
    }

    #[test]
    fn out_of_range_letter() {
        assert!(Word::from_labels(&[1, 4], 3).is_err());
        let g = grp(3, 3);
        assert!(g.reduce(&Word(vec![3])).is_err());
    }

    #[test]
    fn ball_examples() {
        let g = grp(2, 3);
        let b = g.enumerate_ball(3, DEFAULT_BALL_CAP).unwrap();
        assert_eq!(b.sphere_sizes(), vec![1, 2, 2, 1]);
        for m in 2..6 {
            assert_eq!(grp(m, 4).enumerate_ball(1, DEFAULT_BALL_CAP).unwrap().len(), 1 + m);
        }
        assert!(matches!(grp(4, 3).enumerate_ball(6, 50), Err(CoreError::BallCap { cap: 50 })));
    }

    #[test]
    fn float_and_integer_engines_agree_on_labels_3_4() {
        // label 5 on one edge forces the float path for the whole graph
        let mixed = DefiningGraph::from_fn(3, |i, j| if (i, j) == (0, 1) { 5 } else { 3 }).unwrap();
        let g = CoxeterGroup::new(mixed);
        let a = el(&g, &[1, 2, 1, 2, 1]);
        assert_eq!(a, el(&g, &[2, 1, 2, 1, 2]));
        assert!(el(&g, &[1, 2, 1, 2, 1, 2, 1, 2, 1, 2]).is_identity());
    }

    #[test]
    fn dihedral_growth() {
        for label in [3u32, 4, 5, 6, 7] {
            let g = CoxeterGroup::new(DefiningGraph::uniform(2, label).unwrap());
            let b = g.enumerate_ball(label as usize + 2, DEFAULT_BALL_CAP).unwrap();
            let mut expect = vec![1];
            expect.extend(std::iter::repeat(2).take(label as usize - 1));
            expect.extend([1, 0, 0]);
            assert_eq!(b.sphere_sizes(), expect, "label {label}");
        }
    }
}
