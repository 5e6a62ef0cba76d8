//! Exact integer lattice arithmetic for the r-scaled cocharacter lattice.
//!
//! Every point of the overlattice `L = Z^3 + Z·(a,b,c)/r` is stored multiplied
//! by `r`, so `L` becomes the integer lattice `Λ = rZ^3 + Z·(a,b,c) ⊂ Z^3`.
//! All computations stay in `i64`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vec3 = [i64; 3];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightsError {
    #[error("group order must be at least 2, got {0}")]
    OrderTooSmall(i64),
    #[error("weights {0:?} must be positive (degenerate triples are not isolated singularities)")]
    NonPositiveWeight(Vec3),
    #[error("weights {weights:?} sum to {sum}, expected the group order {order}")]
    WrongSum { weights: Vec3, sum: i64, order: i64 },
    #[error("weight {weight} shares a factor with the order {order}: singularity is not isolated")]
    NotIsolated { weight: i64, order: i64 },
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn det3(a: Vec3, b: Vec3, c: Vec3) -> i64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
}

pub fn add3(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

/// Weights `(a,b,c)` of a cyclic group `μ_r ⊂ SL(3)` acting diagonally on `C^3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuotientWeights {
    order: i64,
    weights: Vec3,
}

impl QuotientWeights {
    pub fn new(order: i64, weights: Vec3) -> Result<Self, WeightsError> {
        if order < 2 {
            return Err(WeightsError::OrderTooSmall(order));
        }
        if weights.iter().any(|&w| w <= 0) {
            return Err(WeightsError::NonPositiveWeight(weights));
        }
        let sum: i64 = weights.iter().sum();
        if sum != order {
            return Err(WeightsError::WrongSum { weights, sum, order });
        }
        if let Some(&weight) = weights.iter().find(|&&w| gcd(w, order) != 1) {
            return Err(WeightsError::NotIsolated { weight, order });
        }
        Ok(Self { order, weights })
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn weights(&self) -> Vec3 {
        self.weights
    }

    /// The k-th group element in r-scaled coordinates, reduced into `[0, r)^3`.
    pub fn element(&self, k: i64) -> Vec3 {
        let r = self.order;
        self.weights.map(|w| (k * w).rem_euclid(r))
    }
}

/// Column Hermite normal form basis of `Λ`.
///
/// The basis is lower triangular with positive diagonal, and every entry left
/// of the diagonal lies in `[0, diagonal)`. This makes it canonical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScaledLattice {
    /// `basis[i][j]` is row `i` of column `j`.
    basis: [[i64; 3]; 3],
}

impl ScaledLattice {
    pub fn of(w: &QuotientWeights) -> Self {
        let r = w.order();
        let gens = vec![[r, 0, 0], [0, r, 0], [0, 0, r], w.weights()];
        let basis = hermite_normal_form(&gens).expect("generators span a full-rank lattice");
        Self { basis }
    }

    pub fn basis(&self) -> [[i64; 3]; 3] {
        self.basis
    }

    pub fn column(&self, j: usize) -> Vec3 {
        [self.basis[0][j], self.basis[1][j], self.basis[2][j]]
    }

    pub fn determinant(&self) -> i64 {
        self.basis[0][0] * self.basis[1][1] * self.basis[2][2]
    }

    /// Coordinates of `v` in the HNF basis, or `None` if `v ∉ Λ`.
    pub fn coords(&self, v: Vec3) -> Option<Vec3> {
        let b = &self.basis;
        let mut x = [0i64; 3];
        for i in 0..3 {
            let rest = v[i] - (0..i).map(|j| b[i][j] * x[j]).sum::<i64>();
            if rest % b[i][i] != 0 {
                return None;
            }
            x[i] = rest / b[i][i];
        }
        Some(x)
    }

    pub fn contains(&self, v: Vec3) -> bool {
        self.coords(v).is_some()
    }

    /// Determinant of three lattice vectors measured in the `Λ` basis.
    pub fn lattice_det(&self, a: Vec3, b: Vec3, c: Vec3) -> Option<i64> {
        let (a, b, c) = (self.coords(a)?, self.coords(b)?, self.coords(c)?);
        Some(det3(a, b, c))
    }

    pub fn is_primitive(&self, v: Vec3) -> bool {
        match self.coords(v) {
            Some(x) => gcd(gcd(x[0], x[1]), x[2]) == 1,
            None => false,
        }
    }
}

/// HNF of the lattice spanned by `gens` (full rank 3 required).
pub fn hermite_normal_form(gens: &[Vec3]) -> Option<[[i64; 3]; 3]> {
    let mut cols: Vec<Vec3> = gens.to_vec();
    for row in 0..3 {
        // Gather the gcd of row `row` over columns row.. into column `row`.
        for j in (row + 1)..cols.len() {
            let (a, b) = (cols[row][row], cols[j][row]);
            if b == 0 {
                continue;
            }
            let (g, x, y) = ext_gcd(a, b);
            let (p, q) = (a / g, b / g);
            let (ci, cj) = (cols[row], cols[j]);
            for k in 0..3 {
                cols[row][k] = x * ci[k] + y * cj[k];
                cols[j][k] = -q * ci[k] + p * cj[k];
            }
        }
        if cols.len() <= row || cols[row][row] == 0 {
            return None;
        }
        if cols[row][row] < 0 {
            cols[row] = cols[row].map(|v| -v);
        }
        let d = cols[row][row];
        for j in 0..row {
            let q = cols[j][row].div_euclid(d);
            let pivot = cols[row];
            for (x, p) in cols[j].iter_mut().zip(pivot) {
                *x -= q * p;
            }
        }
    }
    let mut basis = [[0i64; 3]; 3];
    for (j, col) in cols.iter().take(3).enumerate() {
        for i in 0..3 {
            basis[i][j] = col[i];
        }
    }
    Some(basis)
}

/// A unimodular integer matrix `U` with `U · x = e_3` for a primitive `x`.
///
/// The first two rows of `U` project `Z^3` onto `Z^3 / Z·x ≅ Z^2`.
pub fn complete_to_basis(x: Vec3) -> Option<[[i64; 3]; 3]> {
    let mut u = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let mut v = x;
    // Row operations clearing v[0] and v[1] into v[2].
    for i in 0..2 {
        if v[i] == 0 {
            continue;
        }
        let (g, s, t) = ext_gcd(v[2], v[i]);
        let (p, q) = (v[2] / g, v[i] / g);
        let (r2, ri) = (u[2], u[i]);
        for k in 0..3 {
            u[2][k] = s * r2[k] + t * ri[k];
            u[i][k] = -q * r2[k] + p * ri[k];
        }
        v[2] = g;
        v[i] = 0;
    }
    match v[2] {
        1 => Some(u),
        -1 => {
            u[2] = u[2].map(|e| -e);
            Some(u)
        }
        _ => None,
    }
}

pub fn mat_vec(m: &[[i64; 3]; 3], v: Vec3) -> Vec3 {
    [0, 1, 2].map(|i| m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2])
}
