//! Independent oracles shared by the integration tests. None of these call
//! into the algorithms they are used to check.

#![allow(dead_code, clippy::needless_range_loop)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use cyclotwist::artin::{ArtinWord, Letter};

/// Leibniz determinant.
pub fn det3(a: [i64; 3], b: [i64; 3], c: [i64; 3]) -> i64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
}

/// `v ∈ Λ` iff `v ≡ k·w (mod r)` for some `k`; no basis needed.
pub fn in_lattice(r: i64, w: [i64; 3], v: [i64; 3]) -> bool {
    (0..r).any(|k| (0..3).all(|i| (v[i] - k * w[i]).rem_euclid(r) == 0))
}

/// Junior points by brute force over the cube `[0, r)^3`.
pub fn junior_oracle(r: i64, w: [i64; 3]) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    for x in 1..r {
        for y in 1..r {
            let z = r - x - y;
            if z >= 1 && in_lattice(r, w, [x, y, z]) {
                out.push([x, y, z]);
            }
        }
    }
    out
}

/// `|Z^3 : Λ| = r^2` since `rZ^3 ⊂ Λ` with cyclic quotient of order `r`, so a
/// cone is unimodular iff its plain determinant is `±r^2`.
pub fn unimodular(r: i64, a: [i64; 3], b: [i64; 3], c: [i64; 3]) -> bool {
    det3(a, b, c).abs() == r * r
}

/// Solve `u + u' = α a + β b` exactly by 2×2 minors; `None` if not integral.
pub fn wall_coefficients(a: [i64; 3], b: [i64; 3], sum: [i64; 3]) -> Option<(i64, i64)> {
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let m = a[i] * b[j] - a[j] * b[i];
        if m == 0 {
            continue;
        }
        let an = sum[i] * b[j] - sum[j] * b[i];
        let bn = a[i] * sum[j] - a[j] * sum[i];
        if an % m != 0 || bn % m != 0 {
            return None;
        }
        let (alpha, beta) = (an / m, bn / m);
        return ((0..3).all(|k| alpha * a[k] + beta * b[k] == sum[k])).then_some((alpha, beta));
    }
    None
}

/// Sections of a line bundle of degrees `(d1, d2)` on two lines glued at a
/// node: the kernel of `(s1, s2) ↦ s1(p1) − s2(p2)` on monomial coefficient
/// vectors, computed by rational Gaussian elimination.
pub fn nodal_h0_bruteforce(d1: i64, d2: i64) -> i64 {
    // node at [1:2] on the first line and [1:3] on the second
    let monomials = |d: i64, t: i64| -> Vec<i128> {
        if d < 0 {
            Vec::new()
        } else {
            (0..=d).map(|i| (t as i128).pow(i as u32)).collect()
        }
    };
    let row: Vec<i128> = monomials(d1, 2).into_iter().chain(monomials(d2, 3).into_iter().map(|x| -x)).collect();
    let n = row.len() as i64;
    let mut matrix = vec![row];
    n - rank(&mut matrix)
}

fn rank(m: &mut [Vec<i128>]) -> i64 {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let (f, g) = (m[i][c], m[r][c]);
                for k in 0..cols {
                    m[i][k] = m[i][k] * g - m[r][k] * f;
                }
            }
        }
        r += 1;
    }
    r as i64
}

/// Dynkin edges written out by hand (1-based), kept separate from the
/// library's diagram tables.
pub fn dynkin_edges(kind: &str) -> Vec<(usize, usize)> {
    match kind {
        "A3" => vec![(1, 2), (2, 3)],
        "A4" => vec![(1, 2), (2, 3), (3, 4)],
        "D4" => vec![(1, 3), (2, 3), (3, 4)],
        "D6" => vec![(1, 3), (2, 3), (3, 4), (4, 5), (5, 6)],
        "E6" => vec![(6, 1), (1, 3), (3, 4), (4, 5), (2, 3)],
        "E8" => vec![(7, 1), (1, 3), (3, 4), (4, 5), (5, 6), (6, 8), (2, 3)],
        other => panic!("no oracle diagram for {other}"),
    }
}

pub type IntMatrix = Vec<Vec<i64>>;

/// The reflection `s_i` on the root lattice: `α_j ↦ α_j − A_{ij} α_i`.
pub fn reflection(n: usize, edges: &[(usize, usize)], i: usize) -> IntMatrix {
    let mut m = vec![vec![0; n]; n];
    for j in 0..n {
        m[j][j] = 1;
        let a_ij = if i == j {
            2
        } else if edges.iter().any(|&(x, y)| (x - 1, y - 1) == (i, j) || (y - 1, x - 1) == (i, j)) {
            -1
        } else {
            0
        };
        m[i][j] -= a_ij;
    }
    m
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

/// Image of a braid word in the Weyl group (`σ_i^{±1} ↦ s_i`).
pub fn weyl_image(kind: &str, n: usize, word: &ArtinWord) -> IntMatrix {
    let edges = dynkin_edges(kind);
    let mut m: IntMatrix = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for l in &word.0 {
        m = mat_mul(&m, &reflection(n, &edges, l.gen));
    }
    m
}

pub fn exponent_sum(word: &ArtinWord) -> i64 {
    word.0.iter().map(|l| if l.inverse { -1 } else { 1 }).sum()
}

pub fn random_word(rng: &mut ChaCha8Rng, rank: usize, max_len: usize) -> ArtinWord {
    let len = rng.gen_range(0..=max_len);
    ArtinWord(
        (0..len)
            .map(|_| {
                let g = rng.gen_range(0..rank);
                if rng.gen_bool(0.5) {
                    Letter::pos(g)
                } else {
                    Letter::neg(g)
                }
            })
            .collect(),
    )
}

/// Defining relators `s_i s_j s_i (s_j s_i s_j)^{-1}` or `s_i s_j (s_j s_i)^{-1}`.
pub fn relators(kind: &str, n: usize) -> Vec<ArtinWord> {
    let edges = dynkin_edges(kind);
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = edges.iter().any(|&(x, y)| (x - 1, y - 1) == (i, j) || (y - 1, x - 1) == (i, j));
            let (lhs, rhs) = if adjacent {
                (ArtinWord::positive(&[i, j, i]), ArtinWord::positive(&[j, i, j]))
            } else {
                (ArtinWord::positive(&[i, j]), ArtinWord::positive(&[j, i]))
            };
            out.push(lhs.concat(&rhs.inverse()));
        }
    }
    out
}

/// Published self-intersection pairs `(k, l, c_in_k, c_in_l)` for (1,3,9).
pub const X139_CURVES: &[(&str, &str, i64, i64)] = &[
    ("1", "2", -3, 1),
    ("3", "4", -3, 1),
    ("5", "6", -3, 1),
    ("2", "4", -1, -1),
    ("2", "6", -1, -1),
    ("4", "6", -1, -1),
    ("2", "3", -2, 0),
    ("4", "5", -2, 0),
    ("1", "6", 0, -2),
];

/// Published edge labels for (1,3,13).
pub const X1313_CURVES: &[(&str, &str, i64, i64)] = &[
    ("1", "2", -3, 1),
    ("1", "6", 0, -2),
    ("1", "8", 3, -5),
    ("2", "3", -2, 0),
    ("2", "4", -1, -1),
    ("2", "6", -1, -1),
    ("3", "4", -3, 1),
    ("4", "5", -2, 0),
    ("4", "6", -1, -1),
    ("5", "6", -2, 0),
    ("5", "7", 0, -2),
    ("6", "7", -1, -1),
    ("6", "8", -1, -1),
    ("7", "8", -1, -1),
];
