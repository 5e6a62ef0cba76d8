use serde::{Deserialize, Serialize};

use super::{FanError, ResolutionFan};
use crate::lattice::{QuotientWeights, Vec3};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayEntry {
    pub id: String,
    pub coords: Vec3,
}

/// On-disk fan description. Coordinates are r-scaled integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanFile {
    pub label: String,
    pub order: i64,
    pub weights: Vec3,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    pub rays: Vec<RayEntry>,
    pub maximal_cones: Vec<[String; 3]>,
}

impl FanFile {
    pub fn into_fan(self) -> Result<ResolutionFan, FanError> {
        let weights = QuotientWeights::new(self.order, self.weights)?;
        let rays = self.rays.into_iter().map(|r| (r.id, r.coords)).collect();
        let mut fan = ResolutionFan::new(self.label, weights, rays, self.maximal_cones)?;
        fan.provenance = self.provenance;
        Ok(fan)
    }
}

impl From<&ResolutionFan> for FanFile {
    fn from(fan: &ResolutionFan) -> Self {
        Self {
            label: fan.label.clone(),
            order: fan.order(),
            weights: fan.weights.weights(),
            provenance: fan.provenance.clone(),
            rays: fan.rays.iter().map(|r| RayEntry { id: r.id.clone(), coords: r.coords }).collect(),
            maximal_cones: fan.cones.iter().map(|c| fan.cone_ids(c)).collect(),
        }
    }
}
