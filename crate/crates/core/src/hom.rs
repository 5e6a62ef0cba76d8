//! Spherical objects supported on exceptional surfaces and their graded Homs.
//!
//! An object is `i_* O_S ⊗ O_X(D)` for a compact surface `S` and an integer
//! divisor `D = Σ twist_ρ D_ρ` on `X`. Between objects on surfaces meeting in
//! a curve `C ≅ P^1`, all Homs are governed by a single line-bundle degree on
//! `C` (see [`hom_degree`]).

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::artin::TransportCase;
use crate::surface::{CurveRecord, DivisorClass, FanGeometry, SurfaceError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("duplicate object id `{0}`")]
    DuplicateObject(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("object `{object}` refers to unknown ray `{ray}`")]
    UnknownRay { object: String, ray: String },
    #[error("object `{object}` sits on ray `{ray}`, which is not junior (no compact surface)")]
    NotJunior { object: String, ray: String },
    #[error("objects `{0}` and `{1}` live on disjoint surfaces")]
    Disjoint(String, String),
    #[error("objects `{0}` and `{1}` share a surface with different twists; unsupported")]
    SameSurfaceDifferentTwist(String, String),
    #[error("extension of `{k}` by `{l}` needs Hom = C[-1], found {found}")]
    NotUniqueExtension { k: String, l: String, found: GradedDims },
    #[error("no line-bundle model on the union for ({k},{l}): degrees {on_k} and {on_l} on the common curve")]
    DegreeMismatch { k: String, l: String, on_k: i64, on_l: i64 },
    #[error("cycle {cycle:?} violates the orthogonality hypotheses: {reason}")]
    CycleHypothesis { cycle: [String; 3], reason: String },
}

/// One spherical object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphericalSpec {
    pub id: String,
    pub surface: String,
    #[serde(default)]
    pub twist: BTreeMap<String, i64>,
}

impl SphericalSpec {
    fn twist_at(&self, ray: &str) -> i64 {
        self.twist.get(ray).copied().unwrap_or(0)
    }
}

/// A linear-equivalence assertion on one surface, checked for information only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorCheck {
    pub name: String,
    pub surface: String,
    pub lhs: DivisorClass,
    pub rhs: DivisorClass,
    /// Whether the equivalence is expected to hold.
    pub expect: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// On-disk configuration of spherical objects.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigFile {
    #[serde(default)]
    pub label: String,
    pub objects: Vec<SphericalSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transport: Option<TransportCase>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub divisor_checks: Vec<DivisorCheck>,
}

impl ConfigFile {
    /// Check all references against the fan.
    pub fn validate(&self, geom: &FanGeometry) -> Result<(), HomError> {
        let mut seen = std::collections::BTreeSet::new();
        for obj in &self.objects {
            if !seen.insert(&obj.id) {
                return Err(HomError::DuplicateObject(obj.id.clone()));
            }
            let unknown = |ray: &str| HomError::UnknownRay { object: obj.id.clone(), ray: ray.to_string() };
            let ray = geom.fan.ray(&obj.surface).map_err(|_| unknown(&obj.surface))?;
            if !ray.junior {
                return Err(HomError::NotJunior { object: obj.id.clone(), ray: obj.surface.clone() });
            }
            if let Some(bad) = obj.twist.keys().find(|r| geom.fan.ray_index(r).is_none()) {
                return Err(unknown(bad));
            }
        }
        Ok(())
    }

    pub fn object(&self, id: &str) -> Result<&SphericalSpec, HomError> {
        self.objects.iter().find(|o| o.id == id).ok_or_else(|| HomError::UnknownObject(id.to_string()))
    }
}

/// Dimensions of `Hom^k` per degree `k`; zero entries are omitted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GradedDims(pub BTreeMap<i32, u64>);

impl GradedDims {
    pub fn from_pairs(pairs: &[(i32, u64)]) -> Self {
        Self(pairs.iter().copied().filter(|&(_, d)| d > 0).collect())
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn euler(&self) -> i64 {
        self.0.iter().map(|(&k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
    }

    /// The Serre-dual dimensions `k ↦ 3 - k`.
    pub fn dual(&self) -> Self {
        Self(self.0.iter().map(|(&k, &d)| (3 - k, d)).collect())
    }

    pub fn is_single(&self, degree: i32) -> bool {
        self.0.len() == 1 && self.0.get(&degree) == Some(&1)
    }
}

impl std::fmt::Display for GradedDims {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(k, d)| if *d == 1 { format!("C[-{k}]") } else { format!("C^{d}[-{k}]") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Degree on `C` of the line bundle whose shifted cohomology is `Hom•(E_i, E_j)`.
pub fn hom_degree(geom: &FanGeometry, ei: &SphericalSpec, ej: &SphericalSpec) -> Result<i64, HomError> {
    let c = geom
        .curve(&ei.surface, &ej.surface)
        .ok_or_else(|| HomError::Disjoint(ei.id.clone(), ej.id.clone()))?;
    Ok(degree_on_curve(geom, ei, ej, c))
}

fn degree_on_curve(geom: &FanGeometry, ei: &SphericalSpec, ej: &SphericalSpec, c: &CurveRecord) -> i64 {
    let shift: i64 = geom
        .fan
        .rays
        .iter()
        .map(|r| (ej.twist_at(&r.id) - ei.twist_at(&r.id)) * geom.divisor_restriction_degree(&r.id, c))
        .sum();
    geom.divisor_restriction_degree(&ei.surface, c) + shift
}

/// Cohomology of `O_{P^1}(d)[-1]`.
pub fn dims_from_degree(d: i64) -> GradedDims {
    match d {
        d if d >= 0 => GradedDims::from_pairs(&[(1, (d + 1) as u64)]),
        -1 => GradedDims::default(),
        d => GradedDims::from_pairs(&[(2, (-d - 1) as u64)]),
    }
}

pub fn graded_hom(geom: &FanGeometry, ei: &SphericalSpec, ej: &SphericalSpec) -> Result<GradedDims, HomError> {
    if ei.surface == ej.surface {
        return if ei.twist == ej.twist {
            Ok(GradedDims::from_pairs(&[(0, 1), (3, 1)]))
        } else {
            Err(HomError::SameSurfaceDifferentTwist(ei.id.clone(), ej.id.clone()))
        };
    }
    match geom.curve(&ei.surface, &ej.surface) {
        Some(c) => Ok(dims_from_degree(degree_on_curve(geom, ei, ej, c))),
        None => Ok(GradedDims::default()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomEntry {
    pub source: String,
    pub target: String,
    /// Curve degree, present when the two surfaces meet.
    pub degree: Option<i64>,
    pub dims: GradedDims,
}

/// All ordered pairs of distinct objects, in configuration order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomTable {
    pub objects: Vec<String>,
    pub entries: Vec<HomEntry>,
}

impl HomTable {
    pub fn compute(geom: &FanGeometry, config: &ConfigFile) -> Result<Self, HomError> {
        config.validate(geom)?;
        let objs = &config.objects;
        let pairs: Vec<(usize, usize)> =
            (0..objs.len()).flat_map(|i| (0..objs.len()).filter(move |&j| j != i).map(move |j| (i, j))).collect();
        let entries = pairs
            .par_iter()
            .map(|&(i, j)| {
                let (a, b) = (&objs[i], &objs[j]);
                let degree = if a.surface == b.surface { None } else { hom_degree(geom, a, b).ok() };
                Ok(HomEntry { source: a.id.clone(), target: b.id.clone(), degree, dims: graded_hom(geom, a, b)? })
            })
            .collect::<Result<Vec<_>, HomError>>()?;
        Ok(Self { objects: objs.iter().map(|o| o.id.clone()).collect(), entries })
    }

    pub fn get(&self, source: &str, target: &str) -> Option<&HomEntry> {
        self.entries.iter().find(|e| e.source == source && e.target == target)
    }

    pub fn dims(&self, source: &str, target: &str) -> GradedDims {
        if source == target {
            return GradedDims::from_pairs(&[(0, 1), (3, 1)]);
        }
        self.get(source, target).map(|e| e.dims.clone()).unwrap_or_default()
    }
}

/// A line bundle on `S_k ∪ S_l` glued along `C_kl`, modelling `T_{E_k} E_l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluedBundle {
    pub k: String,
    pub l: String,
    pub on_k: DivisorClass,
    pub on_l: DivisorClass,
    pub common_degree: i64,
}

pub fn twist_extension_bundle(geom: &FanGeometry, ek: &SphericalSpec, el: &SphericalSpec) -> Result<GluedBundle, HomError> {
    let dims = graded_hom(geom, ek, el)?;
    if !dims.is_single(1) {
        return Err(HomError::NotUniqueExtension { k: ek.id.clone(), l: el.id.clone(), found: dims });
    }
    let (sk, sl) = (geom.surface(&ek.surface)?, geom.surface(&el.surface)?);
    let on_k = geom.restrict_to_surface(&ek.surface, &ek.twist)?;
    let mut on_l = geom.restrict_to_surface(&el.surface, &el.twist)?;
    *on_l.entry(ek.surface.clone()).or_default() += 1;
    on_l.retain(|_, v| *v != 0);
    let curve_in_k = DivisorClass::from([(el.surface.clone(), 1)]);
    let curve_in_l = DivisorClass::from([(ek.surface.clone(), 1)]);
    let (dk, dl) = (sk.pairing(&on_k, &curve_in_k)?, sl.pairing(&on_l, &curve_in_l)?);
    if dk != dl {
        return Err(HomError::DegreeMismatch { k: ek.id.clone(), l: el.id.clone(), on_k: dk, on_l: dl });
    }
    Ok(GluedBundle { k: ek.id.clone(), l: el.id.clone(), on_k, on_l, common_degree: dk })
}

/// `h^0` of a line bundle of degrees `(d1, d2)` on two `P^1`s meeting in a node.
pub fn nodal_h0(d1: i64, d2: i64) -> i64 {
    let glued = if d1 >= 0 || d2 >= 0 { 1 } else { 0 };
    (d1 + 1).max(0) + (d2 + 1).max(0) - glued
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationCheck {
    /// The cycle `(k, l, t)` in the order used.
    pub rotation: [String; 3],
    pub bundle: GluedBundle,
    pub degree_on_ckt: i64,
    pub degree_on_clt: i64,
    pub h0: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrthogonalityReport {
    pub cycle: [String; 3],
    pub rotations: Vec<RotationCheck>,
    /// First rotation with vanishing sections, if any.
    pub witness: Option<usize>,
    pub orthogonal: bool,
}

fn check_rotation(geom: &FanGeometry, config: &ConfigFile, rot: [&str; 3]) -> Result<RotationCheck, HomError> {
    let cycle = rot.map(str::to_string);
    let hyp = |reason: String| HomError::CycleHypothesis { cycle: cycle.clone(), reason };
    let [ek, el, et] = [config.object(rot[0])?, config.object(rot[1])?, config.object(rot[2])?];
    for (a, b) in [(ek, el), (el, et), (et, ek)] {
        let dims = graded_hom(geom, a, b)?;
        if !dims.is_single(1) {
            return Err(hyp(format!("Hom({}, {}) = {dims}, expected C[-1] (A2 pair)", a.id, b.id)));
        }
    }
    if !geom.is_triple_point(&ek.surface, &el.surface, &et.surface) {
        return Err(hyp("the three surfaces do not meet in a point".into()));
    }
    let ckt = geom.curve_between(&ek.surface, &et.surface)?;
    let clt = geom.curve_between(&el.surface, &et.surface)?;
    let bundle = twist_extension_bundle(geom, ek, el)?;
    let base = |c: &CurveRecord| {
        geom.divisor_restriction_degree(&et.surface, c)
            - et.twist.iter().map(|(r, &t)| t * geom.divisor_restriction_degree(r, c)).sum::<i64>()
    };
    let t_curve = DivisorClass::from([(et.surface.clone(), 1)]);
    let degree_on_ckt = base(ckt) + geom.surface(&ek.surface)?.pairing(&bundle.on_k, &t_curve)?;
    let degree_on_clt = base(clt) + geom.surface(&el.surface)?.pairing(&bundle.on_l, &t_curve)?;
    Ok(RotationCheck { rotation: cycle, bundle, degree_on_ckt, degree_on_clt, h0: nodal_h0(degree_on_ckt, degree_on_clt) })
}

/// Whether `T_{E_k} E_l` is orthogonal to `E_t`, trying all three rotations.
pub fn verify_cycle_orthogonality(
    geom: &FanGeometry,
    config: &ConfigFile,
    cycle: [&str; 3],
) -> Result<OrthogonalityReport, HomError> {
    let [a, b, c] = cycle;
    let rotations = [[a, b, c], [b, c, a], [c, a, b]]
        .into_iter()
        .map(|rot| check_rotation(geom, config, rot))
        .collect::<Result<Vec<_>, _>>()?;
    let witness = rotations.iter().position(|r| r.h0 == 0);
    Ok(OrthogonalityReport { cycle: cycle.map(str::to_string), rotations, witness, orthogonal: witness.is_some() })
}
