//! Spherical twists acting on the Euler lattice spanned by a configuration.
//!
//! On classes, `T_E` acts by `v ↦ v − χ(E, v)·[E]`. Everything here is exact
//! integer linear algebra. Since the representation is not faithful in
//! general, passing relations is a necessary condition only.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::artin::{forward_generators, CoxeterSpec, RelationReport, RelationVerdict, TransportCase};
use crate::hom::HomTable;
use crate::quiver::{ATPresentation, QuiverWithPotential};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KTheoryError {
    #[error("Euler form is not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(String, String),
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
    #[error("transport {case:?} needs {expected} objects, lattice has {found}")]
    WrongObjectCount { case: TransportCase, expected: usize, found: usize },
}

pub type Matrix = Vec<Vec<i64>>;
pub type Class = Vec<i64>;

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = b.first().map_or(0, Vec::len);
    a.iter().map(|row| (0..n).map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum()).collect()).collect()
}

pub fn mat_vec(a: &Matrix, v: &[i64]) -> Class {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

pub fn basis_vector(n: usize, i: usize) -> Class {
    (0..n).map(|j| i64::from(i == j)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerLattice {
    pub labels: Vec<String>,
    /// `chi[i][j] = Σ_k (-1)^k dim Hom^k(E_i, E_j)`.
    pub chi: Matrix,
}

impl EulerLattice {
    pub fn from_homs(homs: &HomTable) -> Result<Self, KTheoryError> {
        let labels = homs.objects.clone();
        let chi: Matrix = labels
            .iter()
            .map(|a| labels.iter().map(|b| if a == b { 0 } else { homs.dims(a, b).euler() }).collect())
            .collect();
        Self::new(labels, chi)
    }

    pub fn new(labels: Vec<String>, chi: Matrix) -> Result<Self, KTheoryError> {
        let n = labels.len();
        for i in 0..n {
            for j in 0..n {
                if chi[i][j] != -chi[j][i] {
                    return Err(KTheoryError::NotAntisymmetric(labels[i].clone(), labels[j].clone()));
                }
            }
        }
        Ok(Self { labels, chi })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn index(&self, label: &str) -> Result<usize, KTheoryError> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| KTheoryError::UnknownLabel(label.to_string()))
    }

    pub fn pairing(&self, v: &[i64], w: &[i64]) -> i64 {
        v.iter().enumerate().map(|(i, &x)| x * self.chi[i].iter().zip(w).map(|(c, y)| c * y).sum::<i64>()).sum()
    }

    /// Twist by an arbitrary class: `v ↦ v − χ(θ, v)·θ`.
    pub fn twist_by_class(&self, theta: &[i64]) -> Matrix {
        let n = self.rank();
        let row: Vec<i64> = (0..n).map(|j| self.pairing(theta, &basis_vector(n, j))).collect();
        (0..n).map(|a| (0..n).map(|b| i64::from(a == b) - theta[a] * row[b]).collect()).collect()
    }

    pub fn twist(&self, i: usize) -> Matrix {
        self.twist_by_class(&basis_vector(self.rank(), i))
    }

    /// `v ↦ v + χ(e_i, v)·e_i`.
    pub fn twist_inverse(&self, i: usize) -> Matrix {
        let n = self.rank();
        (0..n).map(|a| (0..n).map(|b| i64::from(a == b) + i64::from(a == i) * self.chi[i][b]).collect()).collect()
    }

    /// Product `M_{w1} M_{w2} ⋯` for signed letters `(index, inverse)`.
    pub fn word_matrix(&self, word: &[(usize, bool)]) -> Matrix {
        word.iter().fold(identity(self.rank()), |acc, &(i, inv)| {
            mat_mul(&acc, &if inv { self.twist_inverse(i) } else { self.twist(i) })
        })
    }

    pub fn preserves_form(&self, m: &Matrix) -> bool {
        let n = self.rank();
        let cols: Vec<Class> = (0..n).map(|j| mat_vec(m, &basis_vector(n, j))).collect();
        (0..n).all(|a| (0..n).all(|b| self.pairing(&cols[a], &cols[b]) == self.chi[a][b]))
    }

    fn positive_word(&self, labels: &[String]) -> Result<Matrix, KTheoryError> {
        let word = labels.iter().map(|l| Ok((self.index(l)?, false))).collect::<Result<Vec<_>, KTheoryError>>()?;
        Ok(self.word_matrix(&word))
    }
}

/// Test every relation as an exact matrix identity.
pub fn verify_relations_numeric(pres: &ATPresentation, lat: &EulerLattice) -> Result<RelationReport, KTheoryError> {
    let verdicts = pres
        .relations
        .par_iter()
        .map(|r| {
            Ok(RelationVerdict {
                kind: r.kind,
                vertices: r.vertices.clone(),
                relation: r.to_string(),
                holds: lat.positive_word(&r.lhs)? == lat.positive_word(&r.rhs)?,
            })
        })
        .collect::<Result<Vec<_>, KTheoryError>>()?;
    Ok(RelationReport { backend: "euler-lattice".into(), verdicts })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowShadow {
    pub arrow: (String, String),
    /// `s` with `M_j M_i e_j = s·e_i`, if such a sign exists.
    pub sign: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugationShadow {
    pub word: String,
    pub vertex: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShadowReport {
    pub arrows: Vec<ArrowShadow>,
    pub conjugations: Vec<ConjugationShadow>,
    /// Per generator: preserves `χ` and `M_i M_i⁻¹ = I`.
    pub twists_preserve_form: BTreeMap<String, bool>,
}

impl ShadowReport {
    pub fn all_hold(&self) -> bool {
        self.arrows.iter().all(|a| a.sign.is_some())
            && self.conjugations.iter().all(|c| c.holds)
            && self.twists_preserve_form.values().all(|&b| b)
    }
}

fn conjugation_holds(lat: &EulerLattice, word: &[(usize, bool)], vertex: usize) -> bool {
    let theta = lat.word_matrix(word);
    let inverse: Vec<(usize, bool)> = word.iter().rev().map(|&(i, inv)| (i, !inv)).collect();
    let theta_inv = lat.word_matrix(&inverse);
    let class = mat_vec(&theta, &basis_vector(lat.rank(), vertex));
    lat.twist_by_class(&class) == mat_mul(&mat_mul(&theta, &lat.twist(vertex)), &theta_inv)
}

fn word_label(lat: &EulerLattice, word: &[(usize, bool)]) -> String {
    if word.is_empty() {
        return "id".into();
    }
    word.iter().map(|&(i, inv)| format!("T[{}]{}", lat.labels[i], if inv { "'" } else { "" })).collect::<Vec<_>>().join(" ")
}

/// K-theoretic shadows of the twist identities; `samples` random conjugators
/// are drawn from a fixed seed, so the report is deterministic.
pub fn k_shadow_checks(lat: &EulerLattice, quiver: &QuiverWithPotential, samples: usize) -> Result<ShadowReport, KTheoryError> {
    let n = lat.rank();
    let mut arrows = Vec::new();
    for (a, b) in &quiver.arrows {
        let (i, j) = (lat.index(a)?, lat.index(b)?);
        let v = mat_vec(&mat_mul(&lat.twist(j), &lat.twist(i)), &basis_vector(n, j));
        let ei = basis_vector(n, i);
        let sign = [1, -1].into_iter().find(|&s| v.iter().zip(&ei).all(|(x, y)| *x == s * y));
        arrows.push(ArrowShadow { arrow: (a.clone(), b.clone()), sign });
    }

    let mut words: Vec<Vec<(usize, bool)>> = vec![Vec::new()];
    if n >= 6 {
        // T4 T5 T2, the conjugator producing the fork class of the D6 transport.
        words.push(vec![(3, false), (4, false), (1, false)]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x7715_7ed5);
    for _ in 0..samples {
        let len = rng.gen_range(1..=6);
        words.push((0..len).map(|_| (rng.gen_range(0..n), rng.gen_bool(0.5))).collect());
    }
    let conjugations = words
        .iter()
        .flat_map(|w| (0..n).map(move |v| (w, v)))
        .map(|(w, v)| ConjugationShadow {
            word: word_label(lat, w),
            vertex: lat.labels[v].clone(),
            holds: conjugation_holds(lat, w, v),
        })
        .collect();

    let twists_preserve_form = (0..n)
        .map(|i| {
            let m = lat.twist(i);
            let ok = lat.preserves_form(&m) && mat_mul(&m, &lat.twist_inverse(i)) == identity(n);
            (lat.labels[i].clone(), ok)
        })
        .collect();
    Ok(ShadowReport { arrows, conjugations, twists_preserve_form })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransportPairing {
    pub case: TransportCase,
    /// `[F_i]` in the basis of configuration objects.
    pub classes: Vec<Class>,
    pub pairing: Matrix,
    /// 1-based Dynkin edges expected to pair to ±1.
    pub expected_edges: Vec<(usize, usize)>,
    pub matches_dynkin: bool,
}

/// Classes of the transported objects and their Euler pairings.
pub fn transport_classes(case: TransportCase, lat: &EulerLattice) -> Result<TransportPairing, KTheoryError> {
    let fwd = forward_generators(case);
    if fwd.len() != lat.rank() {
        return Err(KTheoryError::WrongObjectCount { case, expected: fwd.len(), found: lat.rank() });
    }
    let n = lat.rank();
    let classes: Vec<Class> = fwd
        .iter()
        .map(|g| {
            let y: Vec<(usize, bool)> = g.conjugator.iter().map(|&i| (i, false)).collect();
            mat_vec(&lat.word_matrix(&y), &basis_vector(n, g.object))
        })
        .collect();
    let pairing: Matrix = classes.iter().map(|a| classes.iter().map(|b| lat.pairing(a, b)).collect()).collect();
    let spec: CoxeterSpec = case.spec();
    let matches_dynkin = (0..n).all(|i| {
        (0..n).all(|j| {
            let want = if i != j && spec.adjacent(i + 1, j + 1) { 1 } else { 0 };
            pairing[i][j].abs() == want
        })
    });
    Ok(TransportPairing { case, classes, pairing, expected_edges: spec.edges(), matches_dynkin })
}
