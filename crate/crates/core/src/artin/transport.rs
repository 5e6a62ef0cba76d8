//! Homomorphisms from braid-twist presentations into Artin groups, and the
//! two built-in transports onto the `D6` and `E8` Dynkin configurations.
//!
//! The forward transport `ψ` expresses each Dynkin twist `T'_i` as a conjugate
//! `Y · T_j · Y⁻¹` of a configuration twist, so the corresponding spherical
//! object is `F_i = Y(E_j)`. The converse `φ` sends each configuration
//! generator `β_j` to a word in the Dynkin generators `σ_i`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::coxeter::{CoxeterGroup, CoxeterSpec};
use super::word::{ArtinWord, Letter};
use super::ArtinError;
use crate::quiver::{ATPresentation, RelationKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TransportCase {
    D6,
    E8,
}

impl TransportCase {
    pub fn spec(self) -> CoxeterSpec {
        match self {
            Self::D6 => "D6".parse().expect("supported"),
            Self::E8 => "E8".parse().expect("supported"),
        }
    }

    pub fn rank(self) -> usize {
        self.spec().rank
    }
}

impl std::str::FromStr for TransportCase {
    type Err = ArtinError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "D6" => Ok(Self::D6),
            "E8" => Ok(Self::E8),
            _ => Err(ArtinError::UnsupportedType(s.to_string())),
        }
    }
}

/// Which image of `β6` to use in the converse map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConverseVariant {
    /// `β6 ↦ (σ3σ4σ5)⁻¹ σ2 (σ3σ4σ5)` as printed alongside the forward words.
    Printed,
    /// `β6 ↦ X⁻¹ σ2 X` with `X = φ(T4 T5 T2) = σ3 σ1 σ4σ5σ4⁻¹`, the actual
    /// inverse of the forward expression for `T'_2`.
    Inverse,
}

/// `T'_i = Y · T_object · Y⁻¹` with `Y` a positive word in configuration
/// twists (0-based object positions).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForwardGenerator {
    pub conjugator: Vec<usize>,
    pub object: usize,
}

impl ForwardGenerator {
    pub fn word(&self) -> ArtinWord {
        let y = ArtinWord::positive(&self.conjugator);
        y.concat(&ArtinWord(vec![Letter::pos(self.object)])).concat(&y.inverse())
    }
}

/// Forward transport, indexed by 0-based Dynkin node.
pub fn forward_generators(case: TransportCase) -> Vec<ForwardGenerator> {
    let g = |conjugator: &[usize], object: usize| ForwardGenerator {
        conjugator: conjugator.iter().map(|x| x - 1).collect(),
        object: object - 1,
    };
    let mut out = vec![g(&[], 5), g(&[4, 5, 2], 6), g(&[], 4), g(&[], 3), g(&[2], 3), g(&[], 1)];
    if case == TransportCase::E8 {
        out.push(g(&[], 7));
        out.push(g(&[], 8));
    }
    out
}

/// Converse transport: image of each configuration generator (0-based object position).
pub fn converse_images(case: TransportCase, variant: ConverseVariant) -> Vec<ArtinWord> {
    let w = |s: &str| s.parse::<ArtinWord>().expect("built-in word parses");
    let beta6 = match variant {
        ConverseVariant::Printed => w("s2").conjugated_by(&w("s3 s4 s5")),
        ConverseVariant::Inverse => w("s2").conjugated_by(&w("s3 s1 s4 s5 s4'")),
    };
    let mut out = vec![w("s6"), w("s5").conjugated_by(&w("s4'")), w("s4"), w("s3"), w("s1"), beta6];
    if case == TransportCase::E8 {
        out.push(w("s7"));
        out.push(w("s8"));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationVerdict {
    pub kind: RelationKind,
    pub vertices: Vec<String>,
    pub relation: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub backend: String,
    pub verdicts: Vec<RelationVerdict>,
}

impl RelationReport {
    pub fn failures(&self) -> usize {
        self.verdicts.iter().filter(|v| !v.holds).count()
    }

    pub fn all_hold(&self) -> bool {
        self.failures() == 0
    }
}

/// Map every relation of `src` through `images` and test it by normal forms.
pub fn check_homomorphism(
    src: &ATPresentation,
    group: &CoxeterGroup,
    images: &BTreeMap<String, ArtinWord>,
) -> Result<RelationReport, ArtinError> {
    for gen in &src.generators {
        let img = images.get(gen).ok_or_else(|| ArtinError::MissingImage(gen.clone()))?;
        img.check_rank(group.rank())?;
    }
    let image_of = |side: &[String]| -> ArtinWord {
        ArtinWord(side.iter().flat_map(|g| images[g].0.iter().copied()).collect())
    };
    let verdicts = src
        .relations
        .par_iter()
        .map(|r| RelationVerdict {
            kind: r.kind,
            vertices: r.vertices.clone(),
            relation: r.to_string(),
            holds: group.word_equal(&image_of(&r.lhs), &image_of(&r.rhs)),
        })
        .collect();
    Ok(RelationReport { backend: format!("garside:{}", group.spec), verdicts })
}

/// Bind converse images to presentation generators by object position.
pub fn images_by_position(
    src: &ATPresentation,
    case: TransportCase,
    variant: ConverseVariant,
) -> Result<BTreeMap<String, ArtinWord>, ArtinError> {
    let images = converse_images(case, variant);
    if src.generators.len() != images.len() {
        return Err(ArtinError::WrongObjectCount { expected: images.len(), found: src.generators.len() });
    }
    Ok(src.generators.iter().cloned().zip(images).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecoveryEntry {
    pub node: usize,
    pub forward: String,
    pub substituted: String,
    pub recovered: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundTripReport {
    pub case: TransportCase,
    pub variant: ConverseVariant,
    pub entries: Vec<RecoveryEntry>,
}

impl RoundTripReport {
    pub fn recovered(&self) -> usize {
        self.entries.iter().filter(|e| e.recovered).count()
    }
}

/// Check `φ(ψ(σ_i)) = σ_i` for every Dynkin node.
pub fn generator_recovery(case: TransportCase, variant: ConverseVariant, group: &CoxeterGroup) -> RoundTripReport {
    let images = converse_images(case, variant);
    let entries = forward_generators(case)
        .par_iter()
        .enumerate()
        .map(|(i, fwd)| {
            let forward = fwd.word();
            let substituted = forward.substitute(&images);
            let recovered = group.word_equal(&substituted, &ArtinWord(vec![Letter::pos(i)]));
            RecoveryEntry { node: i + 1, forward: forward.to_string(), substituted: substituted.to_string(), recovered }
        })
        .collect();
    RoundTripReport { case, variant, entries }
}
