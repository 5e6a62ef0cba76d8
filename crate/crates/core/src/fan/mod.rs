//! Smooth crepant fans of `C^3 / μ_r` in r-scaled coordinates.
//!
//! Rays carry caller-supplied labels; internally cones are index triples into
//! the ray list. All geometric predicates are integer determinants.

mod io;
mod search;

pub use io::{FanFile, RayEntry};
pub use search::{find_unimodular_triangulations, SearchError, DEFAULT_ORDER_BOUND};

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{complete_to_basis, det3, mat_vec, QuotientWeights, ScaledLattice, Vec3, WeightsError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error(transparent)]
    Weights(#[from] WeightsError),
    #[error("duplicate ray id `{0}`")]
    DuplicateRay(String),
    #[error("unknown ray id `{0}`")]
    UnknownRay(String),
    #[error("ray `{id}` with coordinates {coords:?} is not a point of the scaled lattice")]
    NotInLattice { id: String, coords: Vec3 },
    #[error("ray `{id}` must lie in the closed positive octant and be non-zero, got {coords:?}")]
    OutsideOctant { id: String, coords: Vec3 },
    #[error("cone {0:?} repeats a ray")]
    DegenerateCone([String; 3]),
    #[error("ray `{0}` is not junior, so it has no compact divisor")]
    NotJunior(String),
    #[error("star of ray `{ray}` is not a complete smooth 2D fan: {reason}")]
    BadStar { ray: String, reason: String },
}

/// A one-dimensional cone generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ray {
    pub id: String,
    pub coords: Vec3,
    pub primitive: bool,
    pub junior: bool,
}

impl Ray {
    fn classify(id: String, coords: Vec3, w: &QuotientWeights, lat: &ScaledLattice) -> Self {
        let junior = coords.iter().all(|&c| c > 0) && coords.iter().sum::<i64>() == w.order();
        Self { primitive: lat.is_primitive(coords), junior, id, coords }
    }

    pub fn is_axis(&self, order: i64) -> bool {
        let mut sorted = self.coords;
        sorted.sort_unstable();
        sorted == [0, 0, order]
    }
}

/// Junior group elements `k·(a,b,c) mod r` with coordinate sum `r`, ordered by `k`.
///
/// The ray for `k` is labelled `j{k}`.
pub fn junior_points(w: &QuotientWeights) -> Vec<Ray> {
    let lat = ScaledLattice::of(w);
    let mut seen = BTreeSet::new();
    (1..w.order())
        .filter_map(|k| {
            let p = w.element(k);
            (p.iter().sum::<i64>() == w.order() && seen.insert(p))
                .then(|| Ray::classify(format!("j{k}"), p, w, &lat))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum ValidationIssue {
    NonUnimodularCone { cone: [String; 3], determinant: i64 },
    OverlappingCones { first: [String; 3], second: [String; 3] },
    WrongConeCount { found: usize, expected: usize },
    NonJuniorRay { ray: String },
    NonPrimitiveRay { ray: String },
    MissingAxis { axis: Vec3 },
    WallMultiplicity { wall: [String; 2], cones: usize, expected: usize },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub maximal_cones: usize,
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionFan {
    pub label: String,
    pub weights: QuotientWeights,
    pub lattice: ScaledLattice,
    pub rays: Vec<Ray>,
    /// Maximal cones as sorted index triples into `rays`.
    pub cones: Vec<[usize; 3]>,
    pub provenance: Option<String>,
}

impl ResolutionFan {
    pub fn new(
        label: impl Into<String>,
        weights: QuotientWeights,
        rays: Vec<(String, Vec3)>,
        cones: Vec<[String; 3]>,
    ) -> Result<Self, FanError> {
        let lattice = ScaledLattice::of(&weights);
        let mut index = BTreeMap::new();
        let mut out = Vec::with_capacity(rays.len());
        for (id, coords) in rays {
            if coords.iter().any(|&c| c < 0) || coords == [0, 0, 0] {
                return Err(FanError::OutsideOctant { id, coords });
            }
            if !lattice.contains(coords) {
                return Err(FanError::NotInLattice { id, coords });
            }
            if index.insert(id.clone(), out.len()).is_some() {
                return Err(FanError::DuplicateRay(id));
            }
            out.push(Ray::classify(id, coords, &weights, &lattice));
        }
        let mut idx_cones = Vec::with_capacity(cones.len());
        for cone in cones {
            let mut c = [0usize; 3];
            for (slot, id) in c.iter_mut().zip(cone.iter()) {
                *slot = *index.get(id).ok_or_else(|| FanError::UnknownRay(id.clone()))?;
            }
            c.sort_unstable();
            if c[0] == c[1] || c[1] == c[2] {
                return Err(FanError::DegenerateCone(cone));
            }
            idx_cones.push(c);
        }
        Ok(Self { label: label.into(), weights, lattice, rays: out, cones: idx_cones, provenance: None })
    }

    pub fn order(&self) -> i64 {
        self.weights.order()
    }

    pub fn ray_index(&self, id: &str) -> Option<usize> {
        self.rays.iter().position(|r| r.id == id)
    }

    pub fn ray(&self, id: &str) -> Result<&Ray, FanError> {
        self.rays.iter().find(|r| r.id == id).ok_or_else(|| FanError::UnknownRay(id.to_string()))
    }

    pub fn junior_rays(&self) -> impl Iterator<Item = (usize, &Ray)> {
        self.rays.iter().enumerate().filter(|(_, r)| r.junior)
    }

    pub fn cone_ids(&self, cone: &[usize; 3]) -> [String; 3] {
        cone.map(|i| self.rays[i].id.clone())
    }

    /// Every 2-cone `{i<j}` mapped to the apex rays of the maximal cones containing it.
    pub fn walls(&self) -> BTreeMap<(usize, usize), Vec<usize>> {
        let mut walls: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for &[a, b, c] in &self.cones {
            walls.entry((a, b)).or_default().push(c);
            walls.entry((a, c)).or_default().push(b);
            walls.entry((b, c)).or_default().push(a);
        }
        walls
    }

    /// Cone set as coordinates, for comparing fans whose ray labels differ.
    pub fn cone_coordinates(&self) -> BTreeSet<[Vec3; 3]> {
        self.cones
            .iter()
            .map(|c| {
                let mut v = c.map(|i| self.rays[i].coords);
                v.sort_unstable();
                v
            })
            .collect()
    }

    pub fn validate(&self) -> ValidationReport {
        let r = self.order();
        let mut issues = Vec::new();
        for axis in [[r, 0, 0], [0, r, 0], [0, 0, r]] {
            if !self.rays.iter().any(|ray| ray.coords == axis) {
                issues.push(ValidationIssue::MissingAxis { axis });
            }
        }
        for ray in &self.rays {
            if !ray.junior && !ray.is_axis(r) {
                issues.push(ValidationIssue::NonJuniorRay { ray: ray.id.clone() });
            } else if !ray.primitive {
                issues.push(ValidationIssue::NonPrimitiveRay { ray: ray.id.clone() });
            }
        }
        for cone in &self.cones {
            let [a, b, c] = cone.map(|i| self.rays[i].coords);
            let det = self.lattice.lattice_det(a, b, c).unwrap_or(0);
            if det.abs() != 1 {
                issues.push(ValidationIssue::NonUnimodularCone { cone: self.cone_ids(cone), determinant: det });
            }
        }
        for (i, first) in self.cones.iter().enumerate() {
            for second in &self.cones[i + 1..] {
                if self.interiors_overlap(first, second) {
                    issues.push(ValidationIssue::OverlappingCones {
                        first: self.cone_ids(first),
                        second: self.cone_ids(second),
                    });
                }
            }
        }
        let expected = usize::try_from(r).unwrap_or(usize::MAX);
        if self.cones.len() != expected {
            issues.push(ValidationIssue::WrongConeCount { found: self.cones.len(), expected });
        }
        for ((a, b), apexes) in self.walls() {
            let (ra, rb) = (&self.rays[a], &self.rays[b]);
            let on_boundary = (0..3).any(|k| ra.coords[k] == 0 && rb.coords[k] == 0);
            let expected = if on_boundary { 1 } else { 2 };
            if apexes.len() != expected {
                issues.push(ValidationIssue::WallMultiplicity {
                    wall: [ra.id.clone(), rb.id.clone()],
                    cones: apexes.len(),
                    expected,
                });
            }
        }
        ValidationReport { maximal_cones: self.cones.len(), issues }
    }

    /// Separating-axis test on the cross-section `x+y+z = const`.
    ///
    /// For rays in the positive octant, the orientation of three projected
    /// points equals the sign of the 3×3 determinant of the rays.
    fn interiors_overlap(&self, p: &[usize; 3], q: &[usize; 3]) -> bool {
        if p == q {
            return true;
        }
        let separated_by_face_of = |x: &[usize; 3], y: &[usize; 3]| {
            (0..3).any(|k| {
                let (u, v, apex) = (x[k], x[(k + 1) % 3], x[(k + 2) % 3]);
                let (cu, cv) = (self.rays[u].coords, self.rays[v].coords);
                let side = det3(cu, cv, self.rays[apex].coords).signum();
                y.iter().all(|&t| det3(cu, cv, self.rays[t].coords).signum() * side <= 0)
            })
        };
        !(separated_by_face_of(p, q) || separated_by_face_of(q, p))
    }

    /// Projection of the star of a junior ray to `Λ / Z·ρ`.
    pub fn star_quotient_fan(&self, id: &str) -> Result<StarFan2D, FanError> {
        let rho = self.ray_index(id).ok_or_else(|| FanError::UnknownRay(id.to_string()))?;
        if !self.rays[rho].junior {
            return Err(FanError::NotJunior(id.to_string()));
        }
        let bad = |reason: String| FanError::BadStar { ray: id.to_string(), reason };
        let x_rho = self.lattice.coords(self.rays[rho].coords).expect("rays lie in the lattice");
        let u = complete_to_basis(x_rho).ok_or_else(|| bad("ray is not primitive".into()))?;
        let containing: Vec<&[usize; 3]> = self.cones.iter().filter(|c| c.contains(&rho)).collect();

        let mut neighbours: Vec<usize> = containing.iter().flat_map(|c| c.iter().copied()).filter(|&i| i != rho).collect();
        neighbours.sort_unstable();
        neighbours.dedup();
        let mut boundary: Vec<BoundaryRay> = neighbours
            .into_iter()
            .map(|i| {
                let x = self.lattice.coords(self.rays[i].coords).expect("rays lie in the lattice");
                let y = mat_vec(&u, x);
                BoundaryRay { ray: self.rays[i].id.clone(), generator: [y[0], y[1]] }
            })
            .collect();
        boundary.sort_by(|a, b| angle_cmp(a.generator, b.generator));

        let n = boundary.len();
        if n != containing.len() || n < 3 {
            return Err(bad(format!("{n} boundary rays but {} cones contain it", containing.len())));
        }
        for k in 0..n {
            let (a, b) = (&boundary[k], &boundary[(k + 1) % n]);
            if cross2(a.generator, b.generator) != 1 {
                return Err(bad(format!("consecutive rays {} and {} do not span a smooth cone", a.ray, b.ray)));
            }
            let (ia, ib) = (self.ray_index(&a.ray).unwrap(), self.ray_index(&b.ray).unwrap());
            let mut cone = [rho, ia, ib];
            cone.sort_unstable();
            if !self.cones.contains(&cone) {
                return Err(bad(format!("rays {} and {} are adjacent by angle but share no cone", a.ray, b.ray)));
            }
        }
        Ok(StarFan2D { surface_ray: id.to_string(), boundary })
    }
}

pub(crate) fn cross2(a: [i64; 2], b: [i64; 2]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Counter-clockwise angular order starting at the positive x-axis.
fn angle_cmp(a: [i64; 2], b: [i64; 2]) -> std::cmp::Ordering {
    let half = |v: [i64; 2]| if v[1] > 0 || (v[1] == 0 && v[0] > 0) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&cross2(a, b)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryRay {
    pub ray: String,
    pub generator: [i64; 2],
}

/// The complete smooth 2D fan of a compact exceptional surface, counter-clockwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarFan2D {
    pub surface_ray: String,
    pub boundary: Vec<BoundaryRay>,
}

impl StarFan2D {
    /// Self-intersections from `u_{i-1} + u_{i+1} = -c_i u_i`.
    pub fn self_intersections(&self) -> Vec<i64> {
        let n = self.boundary.len();
        (0..n)
            .map(|i| {
                let prev = self.boundary[(i + n - 1) % n].generator;
                let next = self.boundary[(i + 1) % n].generator;
                -cross2(prev, next)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2_fan() -> ResolutionFan {
        let w = QuotientWeights::new(3, [1, 1, 1]).unwrap();
        let rays = vec![
            ("x".to_string(), [3, 0, 0]),
            ("y".to_string(), [0, 3, 0]),
            ("z".to_string(), [0, 0, 3]),
            ("p".to_string(), [1, 1, 1]),
        ];
        let s = |a: &str, b: &str| [a.to_string(), b.to_string(), "p".to_string()];
        ResolutionFan::new("p2", w, rays, vec![s("x", "y"), s("y", "z"), s("x", "z")]).unwrap()
    }

    #[test]
    fn junior_points_of_small_groups() {
        let w = QuotientWeights::new(3, [1, 1, 1]).unwrap();
        let pts = junior_points(&w);
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].coords, [1, 1, 1]);
        assert!(pts[0].junior && pts[0].primitive);
    }

    #[test]
    fn projective_plane_star() {
        let fan = p2_fan();
        assert!(fan.validate().is_valid());
        let star = fan.star_quotient_fan("p").unwrap();
        assert_eq!(star.self_intersections(), vec![1, 1, 1]);
        assert!(matches!(fan.star_quotient_fan("x"), Err(FanError::NotJunior(_))));
    }

    #[test]
    fn detects_missing_and_duplicate_cones() {
        let mut fan = p2_fan();
        fan.cones.pop();
        let report = fan.validate();
        assert!(report.issues.contains(&ValidationIssue::WrongConeCount { found: 2, expected: 3 }));
        let mut fan = p2_fan();
        fan.cones.push(fan.cones[0]);
        assert!(fan.validate().issues.iter().any(|i| matches!(i, ValidationIssue::OverlappingCones { .. })));
    }

    #[test]
    fn rejects_unknown_ids_and_foreign_points() {
        let w = QuotientWeights::new(3, [1, 1, 1]).unwrap();
        let err = ResolutionFan::new("bad", w, vec![("a".into(), [3, 0, 0])], vec![["a".into(), "b".into(), "c".into()]]);
        assert_eq!(err, Err(FanError::UnknownRay("b".into())));
        let err = ResolutionFan::new("bad", w, vec![("a".into(), [1, 2, 0])], vec![]);
        assert!(matches!(err, Err(FanError::NotInLattice { .. })));
    }
}
