//! Defining graphs: complete graphs `K_m` with edge labels `m_ij >= 3`.

use std::fmt;

use crate::{CoreError, Result};

/// A labeled complete graph. Vertex `i` corresponds to the generator `s_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DefiningGraph {
    m: usize,
    labels: Vec<u32>,
    max_label: u32,
}

impl DefiningGraph {
    /// All labels equal to `label`.
    pub fn uniform(m: usize, label: u32) -> Result<Self> {
        Self::from_fn(m, |_, _| label)
    }

    /// Build from a label function on 0-based pairs `i < j`.
    pub fn from_fn(m: usize, mut f: impl FnMut(usize, usize) -> u32) -> Result<Self> {
        if m < 2 {
            return Err(CoreError::TooFewVertices(m));
        }
        let mut labels = vec![0; m * m];
        for i in 0..m {
            for j in i + 1..m {
                let l = f(i, j);
                if l < 3 {
                    return Err(CoreError::Label { i: i + 1, j: j + 1, label: l });
                }
                labels[i * m + j] = l;
                labels[j * m + i] = l;
            }
        }
        let max_label = labels.iter().copied().max().unwrap_or(0);
        Ok(Self { m, labels, max_label })
    }

    /// Build from a full symmetric matrix (diagonal ignored).
    pub fn from_matrix(rows: &[Vec<u32>]) -> Result<Self> {
        let m = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(CoreError::Parse(format!("row {} has {} entries", i + 1, row.len())));
            }
            for j in 0..m {
                if i != j && rows[i][j] != rows[j][i] {
                    return Err(CoreError::Asymmetric { i: i + 1, j: j + 1 });
                }
            }
        }
        Self::from_fn(m, |i, j| rows[i][j])
    }

    /// Parse the text format: `m=<int>` then `uniform=<M>` or one `i j m_ij`
    /// line per pair. Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| CoreError::Parse("empty input".into()))?;
        let m: usize = header
            .strip_prefix("m=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| CoreError::Parse(format!("expected `m=<int>`, got `{header}`")))?;
        if m < 2 {
            return Err(CoreError::TooFewVertices(m));
        }
        let rest: Vec<&str> = lines.collect();
        if let [single] = rest.as_slice() {
            if let Some(v) = single.strip_prefix("uniform=") {
                let label = v
                    .trim()
                    .parse()
                    .map_err(|_| CoreError::Parse(format!("bad uniform label `{v}`")))?;
                return Self::uniform(m, label);
            }
        }
        let mut given: Vec<Option<u32>> = vec![None; m * m];
        for line in rest {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let nums: Option<Vec<usize>> = parts.iter().map(|p| p.parse().ok()).collect();
            let nums = match nums {
                Some(n) if n.len() == 3 => n,
                _ => return Err(CoreError::Parse(format!("expected `i j m_ij`, got `{line}`"))),
            };
            let (i, j, l) = (nums[0], nums[1], nums[2] as u32);
            if i == 0 || j == 0 || i > m || j > m || i == j {
                return Err(CoreError::Parse(format!("bad vertex pair ({i},{j})")));
            }
            let (a, b) = (i - 1, j - 1);
            for (p, q) in [(a, b), (b, a)] {
                match given[p * m + q] {
                    Some(old) if old != l => return Err(CoreError::Asymmetric { i, j }),
                    _ => given[p * m + q] = Some(l),
                }
            }
        }
        for i in 0..m {
            for j in i + 1..m {
                if given[i * m + j].is_none() {
                    return Err(CoreError::Parse(format!("missing label for pair ({},{})", i + 1, j + 1)));
                }
            }
        }
        Self::from_fn(m, |i, j| given[i * m + j].unwrap())
    }

    /// Number of generators.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Label `m_ij` for 0-based `i != j`.
    pub fn label(&self, i: usize, j: usize) -> u32 {
        debug_assert!(i != j);
        self.labels[i * self.m + j]
    }

    /// `M = max m_ij`.
    pub fn max_label(&self) -> u32 {
        self.max_label
    }

    /// Uniform label if every edge carries the same one.
    pub fn uniform_label(&self) -> Option<u32> {
        let first = self.label(0, 1);
        self.pairs().all(|(i, j)| self.label(i, j) == first).then_some(first)
    }

    /// Unordered pairs `i < j` in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.m).flat_map(move |i| (i + 1..self.m).map(move |j| (i, j)))
    }

    /// Triples `i < j < k` in lexicographic order.
    pub fn triples(&self) -> Vec<[usize; 3]> {
        let m = self.m;
        let mut out = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    out.push([i, j, k]);
                }
            }
        }
        out
    }

    /// True when all three labels of the triple equal 3 (a Euclidean triangle group).
    pub fn is_euclidean_triple(&self, t: [usize; 3]) -> bool {
        self.label(t[0], t[1]) == 3 && self.label(t[0], t[2]) == 3 && self.label(t[1], t[2]) == 3
    }

    /// Render in the text format, listing every pair.
    pub fn to_text(&self) -> String {
        if let Some(u) = self.uniform_label() {
            return format!("m={}\nuniform={u}\n", self.m);
        }
        let mut s = format!("m={}\n", self.m);
        for (i, j) in self.pairs() {
            s.push_str(&format!("{} {} {}\n", i + 1, j + 1, self.label(i, j)));
        }
        s
    }
}

impl fmt::Display for DefiningGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.uniform_label() {
            Some(u) => write!(f, "K_{} (uniform {u})", self.m),
            None => write!(f, "K_{} (M = {})", self.m, self.max_label),
        }
    }
}
