//! Compact exceptional surfaces, their intersection curves and restriction degrees.
//!
//! Self-intersections of every compact curve are computed twice: from the
//! 3D wall relation across the 2-cone of the curve, and from the 2D star fans
//! of both surfaces. [`FanGeometry::analyze`] refuses fans where they differ.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fan::{cross2, FanError, ResolutionFan, StarFan2D, ValidationReport};
use crate::lattice::{add3, Vec3};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error("fan `{label}` failed validation with {issues} issue(s)")]
    InvalidFan { label: String, issues: usize, report: ValidationReport },
    #[error("surface `{ray}` has {count} boundary curves; only 3 to 6 are supported")]
    Unsupported { ray: String, count: usize },
    #[error("surface `{ray}` has self-intersections {pattern:?} matching no known type")]
    PatternMismatch { ray: String, pattern: Vec<i64> },
    #[error("wall relation across curve ({k},{l}) is not integral")]
    NonIntegralWall { k: String, l: String },
    #[error("curve ({k},{l}): wall relation gives {wall:?} but star fans give {star:?}")]
    RouteMismatch { k: String, l: String, wall: (i64, i64), star: (i64, i64) },
    #[error("unknown compact surface `{0}`")]
    UnknownSurface(String),
    #[error("`{curve}` is not a boundary curve of surface `{surface}`")]
    UnknownCurve { surface: String, curve: String },
    #[error("surfaces `{0}` and `{1}` do not meet in a compact curve")]
    NoCurve(String, String),
}

/// Type of a smooth complete toric surface with at most six boundary curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SurfaceType {
    P2,
    Hirzebruch(i64),
    BlownUpOnce(i64),
    BlownUpTwice(i64),
}

impl SurfaceType {
    /// Cyclic self-intersection pattern of the standard presentation.
    pub fn pattern(self) -> Vec<i64> {
        match self {
            Self::P2 => vec![1, 1, 1],
            Self::Hirzebruch(e) => vec![0, -e, 0, e],
            Self::BlownUpOnce(e) => vec![-e, -1, -1, e - 1, 0],
            Self::BlownUpTwice(e) => vec![-e, -1, -1, e - 2, -1, -1],
        }
    }
}

impl fmt::Display for SurfaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::P2 => write!(f, "P2"),
            Self::Hirzebruch(e) => write!(f, "F{e}"),
            Self::BlownUpOnce(e) => write!(f, "F{e}(1)"),
            Self::BlownUpTwice(e) => write!(f, "F{e}(2)"),
        }
    }
}

impl Serialize for SurfaceType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SurfaceType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl std::str::FromStr for SurfaceType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "P2" {
            return Ok(Self::P2);
        }
        let body = s.strip_prefix('F').ok_or_else(|| format!("bad surface type `{s}`"))?;
        let (e, suffix) = match body.find('(') {
            Some(i) => (&body[..i], &body[i..]),
            None => (body, ""),
        };
        let e: i64 = e.parse().map_err(|_| format!("bad surface type `{s}`"))?;
        match suffix {
            "" => Ok(Self::Hirzebruch(e)),
            "(1)" => Ok(Self::BlownUpOnce(e)),
            "(2)" => Ok(Self::BlownUpTwice(e)),
            _ => Err(format!("bad surface type `{s}`")),
        }
    }
}

fn matches_cyclically(seq: &[i64], pattern: &[i64]) -> bool {
    let n = seq.len();
    if n != pattern.len() {
        return false;
    }
    let reversed: Vec<i64> = pattern.iter().rev().copied().collect();
    (0..n).any(|shift| {
        (0..n).all(|i| seq[i] == pattern[(i + shift) % n]) || (0..n).all(|i| seq[i] == reversed[(i + shift) % n])
    })
}

/// Identify a surface type from its cyclic self-intersection list.
///
/// Blow-ups have two presentations (`F0(1) ≅ F1(1)`, `F0(2) ≅ F2(2)`, …);
/// the one with the most negative section, i.e. the largest `e`, is reported.
pub fn classify_pattern(seq: &[i64]) -> Option<SurfaceType> {
    let max_e = seq.iter().map(|c| c.abs()).max().unwrap_or(0) + 2;
    let family: fn(i64) -> SurfaceType = match seq.len() {
        3 => return matches_cyclically(seq, &SurfaceType::P2.pattern()).then_some(SurfaceType::P2),
        4 => SurfaceType::Hirzebruch,
        5 => SurfaceType::BlownUpOnce,
        6 => SurfaceType::BlownUpTwice,
        _ => return None,
    };
    (0..=max_e).rev().map(family).find(|t| matches_cyclically(seq, &t.pattern()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryCurve {
    /// The other fan ray whose divisor cuts out this curve.
    pub ray: String,
    pub generator: [i64; 2],
    pub self_intersection: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceModel {
    pub surface_ray: String,
    /// Counter-clockwise boundary of the star fan.
    pub boundary: Vec<BoundaryCurve>,
    #[serde(rename = "type")]
    pub kind: SurfaceType,
}

/// A divisor class on a surface as a combination of its boundary curves,
/// keyed by the ray labelling each curve.
pub type DivisorClass = BTreeMap<String, i64>;

pub fn classify_surface(star: &StarFan2D) -> Result<SurfaceModel, SurfaceError> {
    let n = star.boundary.len();
    if !(3..=6).contains(&n) {
        return Err(SurfaceError::Unsupported { ray: star.surface_ray.clone(), count: n });
    }
    let selfs = star.self_intersections();
    let kind = classify_pattern(&selfs)
        .ok_or_else(|| SurfaceError::PatternMismatch { ray: star.surface_ray.clone(), pattern: selfs.clone() })?;
    let boundary = star
        .boundary
        .iter()
        .zip(&selfs)
        .map(|(b, &c)| BoundaryCurve { ray: b.ray.clone(), generator: b.generator, self_intersection: c })
        .collect();
    Ok(SurfaceModel { surface_ray: star.surface_ray.clone(), boundary, kind })
}

impl SurfaceModel {
    fn position(&self, curve: &str) -> Result<usize, SurfaceError> {
        self.boundary.iter().position(|b| b.ray == curve).ok_or_else(|| SurfaceError::UnknownCurve {
            surface: self.surface_ray.clone(),
            curve: curve.to_string(),
        })
    }

    pub fn self_intersection(&self, curve: &str) -> Result<i64, SurfaceError> {
        Ok(self.boundary[self.position(curve)?].self_intersection)
    }

    fn curve_product(&self, i: usize, j: usize) -> i64 {
        let n = self.boundary.len();
        if i == j {
            self.boundary[i].self_intersection
        } else if (i + 1) % n == j || (j + 1) % n == i {
            1
        } else {
            0
        }
    }

    /// Intersection form extended bilinearly from the boundary curves.
    pub fn pairing(&self, a: &DivisorClass, b: &DivisorClass) -> Result<i64, SurfaceError> {
        let mut total = 0;
        for (ca, &x) in a {
            let i = self.position(ca)?;
            for (cb, &y) in b {
                total += x * y * self.curve_product(i, self.position(cb)?);
            }
        }
        Ok(total)
    }

    /// Whether a boundary combination is the divisor of a torus character.
    pub fn is_principal(&self, class: &DivisorClass) -> Result<bool, SurfaceError> {
        let mut coeff = vec![0i64; self.boundary.len()];
        for (c, &x) in class {
            coeff[self.position(c)?] += x;
        }
        let (u0, u1) = (self.boundary[0].generator, self.boundary[1].generator);
        let det = cross2(u0, u1);
        let mx = coeff[0] * u1[1] - coeff[1] * u0[1];
        let my = u0[0] * coeff[1] - u1[0] * coeff[0];
        if mx % det != 0 || my % det != 0 {
            return Ok(false);
        }
        let m = [mx / det, my / det];
        Ok(self.boundary.iter().zip(&coeff).all(|(b, &a)| m[0] * b.generator[0] + m[1] * b.generator[1] == a))
    }

    pub fn linearly_equivalent(&self, a: &DivisorClass, b: &DivisorClass) -> Result<bool, SurfaceError> {
        let mut diff = a.clone();
        for (c, &y) in b {
            *diff.entry(c.clone()).or_default() -= y;
        }
        self.is_principal(&diff)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub k: String,
    pub l: String,
    /// Self-intersection of the curve inside the surface of `k`.
    pub c_in_k: i64,
    /// Self-intersection of the curve inside the surface of `l`.
    pub c_in_l: i64,
    /// Third rays of the two maximal cones containing the curve's 2-cone.
    pub apexes: [String; 2],
}

impl CurveRecord {
    pub fn endpoints(&self) -> [[String; 3]; 2] {
        self.apexes.clone().map(|a| [self.k.clone(), self.l.clone(), a])
    }

    pub fn joins(&self, a: &str, b: &str) -> bool {
        (self.k == a && self.l == b) || (self.k == b && self.l == a)
    }
}

/// Solve `s = alpha·a + beta·b` over the integers for independent `a`, `b`.
fn wall_coefficients(s: Vec3, a: Vec3, b: Vec3) -> Option<(i64, i64)> {
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let d = a[i] * b[j] - a[j] * b[i];
        if d == 0 {
            continue;
        }
        let (an, bn) = (s[i] * b[j] - s[j] * b[i], a[i] * s[j] - a[j] * s[i]);
        if an % d != 0 || bn % d != 0 {
            return None;
        }
        let (alpha, beta) = (an / d, bn / d);
        return (0..3).all(|k| alpha * a[k] + beta * b[k] == s[k]).then_some((alpha, beta));
    }
    None
}

/// Everything about the exceptional locus that later stages need.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FanGeometry {
    pub fan: ResolutionFan,
    pub surfaces: Vec<SurfaceModel>,
    pub curves: Vec<CurveRecord>,
    pub triple_points: Vec<[String; 3]>,
}

impl FanGeometry {
    pub fn analyze(fan: ResolutionFan) -> Result<Self, SurfaceError> {
        let report = fan.validate();
        if !report.is_valid() {
            return Err(SurfaceError::InvalidFan { label: fan.label.clone(), issues: report.issues.len(), report });
        }
        let surfaces = fan
            .junior_rays()
            .map(|(_, r)| r.id.clone())
            .collect::<Vec<_>>()
            .par_iter()
            .map(|id| classify_surface(&fan.star_quotient_fan(id)?))
            .collect::<Result<Vec<_>, _>>()?;
        let curves = wall_route_curves(&fan)?;
        for c in &curves {
            let sk = surfaces.iter().find(|s| s.surface_ray == c.k).expect("junior surface");
            let sl = surfaces.iter().find(|s| s.surface_ray == c.l).expect("junior surface");
            let star = (sk.self_intersection(&c.l)?, sl.self_intersection(&c.k)?);
            if star != (c.c_in_k, c.c_in_l) {
                return Err(SurfaceError::RouteMismatch {
                    k: c.k.clone(),
                    l: c.l.clone(),
                    wall: (c.c_in_k, c.c_in_l),
                    star,
                });
            }
        }
        let triple_points = triple_points(&fan);
        Ok(Self { fan, surfaces, curves, triple_points })
    }

    pub fn surface(&self, id: &str) -> Result<&SurfaceModel, SurfaceError> {
        self.surfaces
            .iter()
            .find(|s| s.surface_ray == id)
            .ok_or_else(|| SurfaceError::UnknownSurface(id.to_string()))
    }

    pub fn curve(&self, a: &str, b: &str) -> Option<&CurveRecord> {
        self.curves.iter().find(|c| c.joins(a, b))
    }

    pub fn curve_between(&self, a: &str, b: &str) -> Result<&CurveRecord, SurfaceError> {
        self.curve(a, b).ok_or_else(|| SurfaceError::NoCurve(a.to_string(), b.to_string()))
    }

    pub fn is_triple_point(&self, a: &str, b: &str, c: &str) -> bool {
        let mut key = [a, b, c];
        key.sort_unstable();
        self.triple_points.iter().any(|t| {
            let mut t = [t[0].as_str(), t[1].as_str(), t[2].as_str()];
            t.sort_unstable();
            t == key
        })
    }

    /// Degree of `O_X(D_ρ)` restricted to the compact curve `C`.
    pub fn divisor_restriction_degree(&self, rho: &str, c: &CurveRecord) -> i64 {
        if rho == c.k {
            c.c_in_l
        } else if rho == c.l {
            c.c_in_k
        } else {
            c.apexes.iter().filter(|a| *a == rho).count() as i64
        }
    }

    /// Restriction of the divisor `Σ t_ρ D_ρ` of `X` to the surface `S`,
    /// as a boundary class of `S`. Uses `O_X(S)|_S = K_S = -Σ boundary`.
    pub fn restrict_to_surface(&self, surface: &str, twist: &BTreeMap<String, i64>) -> Result<DivisorClass, SurfaceError> {
        let s = self.surface(surface)?;
        let mut class = DivisorClass::new();
        for (rho, &t) in twist {
            if t == 0 {
                continue;
            }
            if rho == surface {
                for b in &s.boundary {
                    *class.entry(b.ray.clone()).or_default() -= t;
                }
            } else if s.boundary.iter().any(|b| &b.ray == rho) {
                *class.entry(rho.clone()).or_default() += t;
            }
        }
        class.retain(|_, v| *v != 0);
        Ok(class)
    }
}

/// Curves from the 3D wall relation `u + u' = α ρ_k + β ρ_l`, which gives
/// `C² = -β` in `S_k` and `C² = -α` in `S_l`.
fn wall_route_curves(fan: &ResolutionFan) -> Result<Vec<CurveRecord>, SurfaceError> {
    let mut out = Vec::new();
    for ((a, b), apexes) in fan.walls() {
        let (ra, rb) = (&fan.rays[a], &fan.rays[b]);
        if !(ra.junior && rb.junior) {
            continue;
        }
        let nonintegral = || SurfaceError::NonIntegralWall { k: ra.id.clone(), l: rb.id.clone() };
        let [u, v] = apexes[..] else { return Err(nonintegral()) };
        let s = add3(fan.rays[u].coords, fan.rays[v].coords);
        let (alpha, beta) = wall_coefficients(s, ra.coords, rb.coords).ok_or_else(nonintegral)?;
        out.push(CurveRecord {
            k: ra.id.clone(),
            l: rb.id.clone(),
            c_in_k: -beta,
            c_in_l: -alpha,
            apexes: [fan.rays[u].id.clone(), fan.rays[v].id.clone()],
        });
    }
    Ok(out)
}

/// Maximal cones spanned by three junior rays.
pub fn triple_points(fan: &ResolutionFan) -> Vec<[String; 3]> {
    fan.cones
        .iter()
        .filter(|c| c.iter().all(|&i| fan.rays[i].junior))
        .map(|c| fan.cone_ids(c))
        .collect()
}
