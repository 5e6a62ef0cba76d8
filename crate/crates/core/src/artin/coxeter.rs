//! Simply-laced finite Coxeter groups acting on their root lattices.
//!
//! Node numbering (1-based, as printed in diagrams and word syntax):
//!
//! * `A_n`: the chain `1 – 2 – … – n`;
//! * `D_n`: the fork `1, 2` both attached to `3`, then the chain `3 – 4 – … – n`;
//! * `E_6`: chain `6 – 1 – 3 – 4 – 5` with `2` attached to `3`;
//! * `E_7`: chain `7 – 1 – 3 – 4 – 5 – 6` with `2` attached to `3`;
//! * `E_8`: chain `7 – 1 – 3 – 4 – 5 – 6 – 8` with `2` attached to `3`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ArtinError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoxeterLetter {
    A,
    D,
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoxeterSpec {
    pub letter: CoxeterLetter,
    pub rank: usize,
}

impl CoxeterSpec {
    pub fn new(letter: CoxeterLetter, rank: usize) -> Result<Self, ArtinError> {
        let supported = match letter {
            CoxeterLetter::A => (1..=9).contains(&rank),
            CoxeterLetter::D => (4..=8).contains(&rank),
            CoxeterLetter::E => (6..=8).contains(&rank),
        };
        if supported {
            Ok(Self { letter, rank })
        } else {
            Err(ArtinError::UnsupportedType(format!("{letter:?}{rank}")))
        }
    }

    /// Diagram edges as 1-based node pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.letter {
            CoxeterLetter::A => (1..n).map(|i| (i, i + 1)).collect(),
            CoxeterLetter::D => {
                let mut e = vec![(1, 3), (2, 3)];
                e.extend((3..n).map(|i| (i, i + 1)));
                e
            }
            CoxeterLetter::E => {
                let chain: &[usize] = match n {
                    6 => &[6, 1, 3, 4, 5],
                    7 => &[7, 1, 3, 4, 5, 6],
                    _ => &[7, 1, 3, 4, 5, 6, 8],
                };
                let mut e: Vec<_> = chain.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))).collect();
                e.push((2, 3));
                e.sort_unstable();
                e
            }
        }
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        let (a, b) = (i.min(j), i.max(j));
        self.edges().contains(&(a, b))
    }
}

impl fmt::Display for CoxeterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.letter, self.rank)
    }
}

impl FromStr for CoxeterSpec {
    type Err = ArtinError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ArtinError::UnsupportedType(s.to_string());
        let mut chars = s.trim().chars();
        let letter = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => CoxeterLetter::A,
            Some('D') => CoxeterLetter::D,
            Some('E') => CoxeterLetter::E,
            _ => return Err(bad()),
        };
        let rank = chars.as_str().parse().map_err(|_| bad())?;
        Self::new(letter, rank)
    }
}

/// A Coxeter group element as its matrix on the simple-root basis, kept
/// together with the inverse matrix so both descent sets are cheap.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    n: usize,
    /// Row-major; column `j` holds `w(α_j)`.
    mat: Vec<i64>,
    inv: Vec<i64>,
}

impl Element {
    pub fn identity(n: usize) -> Self {
        let mut mat = vec![0; n * n];
        for i in 0..n {
            mat[i * n + i] = 1;
        }
        Self { n, inv: mat.clone(), mat }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.mat[i * self.n + j] == i64::from(i == j)))
    }

    fn column_negative(m: &[i64], n: usize, j: usize) -> bool {
        (0..n).any(|i| m[i * n + j] < 0)
    }

    /// `ℓ(w s) < ℓ(w)`.
    pub fn has_right_descent(&self, s: usize) -> bool {
        Self::column_negative(&self.mat, self.n, s)
    }

    /// `ℓ(s w) < ℓ(w)`.
    pub fn has_left_descent(&self, s: usize) -> bool {
        Self::column_negative(&self.inv, self.n, s)
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.mat[i * self.n + j] * v[j]).sum()).collect()
    }

    pub fn inverse(&self) -> Self {
        Self { n: self.n, mat: self.inv.clone(), inv: self.mat.clone() }
    }

    /// Column `j` of the matrix, i.e. `w(α_j)`.
    pub fn image_of_simple(&self, j: usize) -> Vec<i64> {
        (0..self.n).map(|i| self.mat[i * self.n + j]).collect()
    }
}

fn column_reflect(m: &mut [i64], n: usize, s: usize, nbrs: &[usize]) {
    for i in 0..n {
        let cs = m[i * n + s];
        for &j in nbrs {
            m[i * n + j] += cs;
        }
        m[i * n + s] = -cs;
    }
}

fn row_reflect(m: &mut [i64], n: usize, s: usize, nbrs: &[usize]) {
    for c in 0..n {
        let sum: i64 = nbrs.iter().map(|&j| m[j * n + c]).sum();
        m[s * n + c] = sum - m[s * n + c];
    }
}

/// Root system data and the longest element for one Coxeter type.
#[derive(Debug, Clone)]
pub struct CoxeterGroup {
    pub spec: CoxeterSpec,
    /// 0-based neighbour lists.
    neighbours: Vec<Vec<usize>>,
    positive_roots: Vec<Vec<i64>>,
    w0: Element,
    /// The diagram involution `σ` with `w0(α_i) = -α_{σ(i)}`.
    tau: Vec<usize>,
}

impl CoxeterGroup {
    pub fn build(spec: CoxeterSpec) -> Self {
        let n = spec.rank;
        let mut neighbours = vec![Vec::new(); n];
        for (a, b) in spec.edges() {
            neighbours[a - 1].push(b - 1);
            neighbours[b - 1].push(a - 1);
        }
        let positive_roots = enumerate_positive_roots(n, &neighbours);
        let mut g = Self { spec, neighbours, positive_roots, w0: Element::identity(n), tau: (0..n).collect() };
        let mut w0 = Element::identity(n);
        while let Some(s) = (0..n).find(|&s| !w0.has_right_descent(s)) {
            g.right_mul(&mut w0, s);
        }
        g.tau = (0..n)
            .map(|i| {
                let col = w0.image_of_simple(i);
                col.iter().position(|&x| x == -1).expect("w0 maps simple roots to negative simple roots")
            })
            .collect();
        g.w0 = w0;
        g
    }

    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn longest(&self) -> &Element {
        &self.w0
    }

    pub fn diagram_involution(&self) -> &[usize] {
        &self.tau
    }

    pub fn identity(&self) -> Element {
        Element::identity(self.rank())
    }

    pub fn generator(&self, s: usize) -> Element {
        let mut e = self.identity();
        self.right_mul(&mut e, s);
        e
    }

    /// `w ← w·s`.
    pub fn right_mul(&self, w: &mut Element, s: usize) {
        column_reflect(&mut w.mat, w.n, s, &self.neighbours[s]);
        row_reflect(&mut w.inv, w.n, s, &self.neighbours[s]);
    }

    /// `w ← s·w`.
    pub fn left_mul(&self, w: &mut Element, s: usize) {
        row_reflect(&mut w.mat, w.n, s, &self.neighbours[s]);
        column_reflect(&mut w.inv, w.n, s, &self.neighbours[s]);
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self, w: &Element) -> usize {
        self.positive_roots.iter().filter(|r| w.apply(r).iter().any(|&x| x < 0)).count()
    }

    /// `w0 · w · w0`, computed by relabelling through the diagram involution.
    pub fn conjugate_by_longest(&self, w: &Element) -> Element {
        let n = w.n;
        let t = &self.tau;
        let permute = |m: &[i64]| {
            let mut out = vec![0; n * n];
            for r in 0..n {
                for c in 0..n {
                    out[r * n + c] = m[t[r] * n + t[c]];
                }
            }
            out
        };
        Element { n, mat: permute(&w.mat), inv: permute(&w.inv) }
    }

    /// Reduced word (0-based letters), always peeling the smallest left descent.
    pub fn reduced_word(&self, w: &Element) -> Vec<usize> {
        let mut w = w.clone();
        let mut word = Vec::new();
        while let Some(s) = (0..w.n).find(|&s| w.has_left_descent(s)) {
            word.push(s);
            self.left_mul(&mut w, s);
        }
        word
    }
}

fn enumerate_positive_roots(n: usize, neighbours: &[Vec<usize>]) -> Vec<Vec<i64>> {
    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    let mut seen: HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut k = 0;
    while k < roots.len() {
        let beta = roots[k].clone();
        for i in 0..n {
            let pairing = 2 * beta[i] - neighbours[i].iter().map(|&j| beta[j]).sum::<i64>();
            if pairing >= 0 {
                continue;
            }
            let mut next = beta.clone();
            next[i] -= pairing;
            if seen.insert(next.clone()) {
                roots.push(next);
            }
        }
        k += 1;
    }
    roots
}
