//! End-to-end verification of a fan plus configuration.
//!
//! Stages run in order; once a stage fails, every later stage is reported as
//! skipped. Input problems (unparsable files, dangling references) are not a
//! report at all but a [`InputError`], mapped to exit code 2.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::artin::{
    check_homomorphism, generator_recovery, images_by_position, ConverseVariant, CoxeterGroup, RelationReport,
    RoundTripReport, TransportCase,
};
use crate::fan::{FanError, FanFile, ValidationReport};
use crate::hom::{verify_cycle_orthogonality, ConfigFile, GradedDims, HomError, HomTable, OrthogonalityReport};
use crate::ktheory::{k_shadow_checks, transport_classes, verify_relations_numeric, EulerLattice, ShadowReport, TransportPairing};
use crate::quiver::{at_presentation, extract_quiver, QuiverWithPotential, RelationKind};
use crate::surface::{CurveRecord, FanGeometry, SurfaceModel};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{what}: JSON error at line {line}, column {column}: {message}")]
    Parse { what: String, line: usize, column: usize, message: String },
    #[error("{what}: {source}")]
    Fan { what: String, source: FanError },
    #[error("{what}: {source}")]
    Config { what: String, source: HomError },
    #[error("{what}: {source}")]
    Io { what: String, source: std::io::Error },
}

impl InputError {
    pub fn exit_code(&self) -> i32 {
        EXIT_INPUT_ERROR
    }
}

pub fn parse_json<T: serde::de::DeserializeOwned>(what: &str, text: &str) -> Result<T, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::Parse {
        what: what.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StageStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Serialize", deserialize = "T: Deserialize<'de>"))]
pub struct Stage<T> {
    pub status: StageStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<T>,
}

impl<T> Stage<T> {
    fn skipped() -> Self {
        Self { status: StageStatus::Skipped, message: None, detail: None }
    }

    fn failed(message: impl ToString) -> Self {
        Self { status: StageStatus::Fail, message: Some(message.to_string()), detail: None }
    }

    fn judged(ok: bool, detail: T) -> Self {
        Self { status: if ok { StageStatus::Pass } else { StageStatus::Fail }, message: None, detail: Some(detail) }
    }

    pub fn passed(&self) -> bool {
        self.status == StageStatus::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorVerdict {
    pub name: String,
    pub surface: String,
    pub expect: bool,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometrySummary {
    pub surfaces: Vec<SurfaceModel>,
    pub curves: Vec<CurveRecord>,
    pub triple_points: Vec<[String; 3]>,
    pub divisor_checks: Vec<DivisorVerdict>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub pair: (String, String),
    pub dims: GradedDims,
    pub adjacent: bool,
    pub ok: bool,
}

/// The three defining conditions of a configuration: one-dimensional Homs on
/// arrows, vanishing Homs between non-adjacent vertices, and orthogonality
/// for every potential cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigurationVerdicts {
    pub pairs: Vec<PairVerdict>,
    pub orthogonality: Vec<OrthogonalityReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationsSummary {
    pub generators: usize,
    pub braid: usize,
    pub commute: usize,
    pub cycle: usize,
    pub k_theory: RelationReport,
    pub shadows: ShadowReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransportSummary {
    pub case: TransportCase,
    pub pairing: TransportPairing,
    pub homomorphism: RelationReport,
    pub recovery: RoundTripReport,
    /// Whether Garside and Euler-lattice verdicts agree relation by relation.
    pub backends_agree: bool,
    /// The printed converse image of `β6`, checked for information only.
    pub printed_converse: PrintedConverse,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrintedConverse {
    pub failing_relations: Vec<String>,
    pub generators_recovered: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportHeader {
    pub fan: String,
    pub config: String,
    pub conventions: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub header: ReportHeader,
    pub fan: Stage<ValidationReport>,
    pub geometry: Stage<GeometrySummary>,
    pub homs: Stage<HomTable>,
    pub quiver: Stage<QuiverWithPotential>,
    pub configuration: Stage<ConfigurationVerdicts>,
    pub relations: Stage<RelationsSummary>,
    pub transport: Stage<TransportSummary>,
}

impl PipelineReport {
    pub fn statuses(&self) -> [(&'static str, StageStatus); 7] {
        [
            ("fan", self.fan.status),
            ("geometry", self.geometry.status),
            ("homs", self.homs.status),
            ("quiver", self.quiver.status),
            ("configuration", self.configuration.status),
            ("relations", self.relations.status),
            ("transport", self.transport.status),
        ]
    }

    pub fn exit_code(&self) -> i32 {
        if self.statuses().iter().all(|(_, s)| *s != StageStatus::Fail) {
            EXIT_OK
        } else {
            EXIT_VERIFICATION_FAILED
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PipelineOptions {
    /// Random conjugators drawn for the K-theory conjugation shadow.
    pub shadow_samples: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        Self { shadow_samples: 16 }
    }
}

/// Parse and cross-check both inputs.
pub fn load_inputs(fan_text: &str, config_text: &str) -> Result<(FanGeometryInput, ConfigFile), InputError> {
    let file: FanFile = parse_json("fan", fan_text)?;
    let fan = file.into_fan().map_err(|source| InputError::Fan { what: "fan".into(), source })?;
    let config: ConfigFile = parse_json("config", config_text)?;
    // Reference checks need only the rays, so they run before validation.
    for obj in &config.objects {
        let err = |ray: &str, junior: bool| InputError::Config {
            what: "config".into(),
            source: if junior {
                HomError::NotJunior { object: obj.id.clone(), ray: ray.to_string() }
            } else {
                HomError::UnknownRay { object: obj.id.clone(), ray: ray.to_string() }
            },
        };
        match fan.ray(&obj.surface) {
            Err(_) => return Err(err(&obj.surface, false)),
            Ok(r) if !r.junior => return Err(err(&obj.surface, true)),
            Ok(_) => {}
        }
        if let Some(bad) = obj.twist.keys().find(|r| fan.ray_index(r).is_none()) {
            return Err(err(bad, false));
        }
    }
    Ok((FanGeometryInput(fan), config))
}

/// A parsed but not yet validated fan.
pub struct FanGeometryInput(pub crate::fan::ResolutionFan);

pub fn run_pipeline(fan_text: &str, config_text: &str, options: PipelineOptions) -> Result<PipelineReport, InputError> {
    let (FanGeometryInput(fan), config) = load_inputs(fan_text, config_text)?;
    let header = ReportHeader {
        fan: fan.label.clone(),
        config: config.label.clone(),
        conventions: vec![
            "arrow i -> j iff Hom(E_i, E_j) = C[-1]".into(),
            "D6 nodes: 1,2 attached to 3, chain 3-4-5-6; E8 nodes: chain 7-1-3-4-5-6-8, 2 attached to 3".into(),
            "Euler-lattice relations are a necessary condition only (representation not faithful)".into(),
            "transport verifies relation preservation and generator recovery, not faithfulness".into(),
        ],
    };
    let mut report = PipelineReport {
        header,
        fan: Stage::skipped(),
        geometry: Stage::skipped(),
        homs: Stage::skipped(),
        quiver: Stage::skipped(),
        configuration: Stage::skipped(),
        relations: Stage::skipped(),
        transport: Stage::skipped(),
    };

    let validation = fan.validate();
    let valid = validation.is_valid();
    report.fan = Stage::judged(valid, validation);
    if !valid {
        return Ok(report);
    }

    let geom = match FanGeometry::analyze(fan) {
        Ok(g) => g,
        Err(e) => {
            report.geometry = Stage::failed(e);
            return Ok(report);
        }
    };
    let mut divisor_checks = Vec::new();
    for check in &config.divisor_checks {
        let holds = geom.surface(&check.surface).and_then(|s| s.linearly_equivalent(&check.lhs, &check.rhs));
        match holds {
            Ok(holds) => divisor_checks.push(DivisorVerdict {
                name: check.name.clone(),
                surface: check.surface.clone(),
                expect: check.expect,
                holds,
                note: check.note.clone(),
            }),
            Err(e) => {
                report.geometry = Stage::failed(format!("divisor check `{}`: {e}", check.name));
                return Ok(report);
            }
        }
    }
    let divisors_ok = divisor_checks.iter().all(|d| d.holds == d.expect);
    report.geometry = Stage::judged(
        divisors_ok,
        GeometrySummary {
            surfaces: geom.surfaces.clone(),
            curves: geom.curves.clone(),
            triple_points: geom.triple_points.clone(),
            divisor_checks,
        },
    );
    if !divisors_ok {
        return Ok(report);
    }

    let homs = match HomTable::compute(&geom, &config) {
        Ok(h) => h,
        Err(e) => {
            report.homs = Stage::failed(e);
            return Ok(report);
        }
    };
    report.homs = Stage::judged(true, homs.clone());

    let quiver = match extract_quiver(&geom, &config, &homs) {
        Ok(q) => q,
        Err(e) => {
            report.quiver = Stage::failed(e);
            return Ok(report);
        }
    };
    report.quiver = Stage::judged(true, quiver.clone());

    let mut pairs = Vec::new();
    for (i, a) in quiver.vertices.iter().enumerate() {
        for b in &quiver.vertices[i + 1..] {
            let dims = homs.dims(a, b);
            let adjacent = quiver.adjacent(a, b);
            let ok = if adjacent { dims.total() == 1 } else { dims.total() == 0 };
            pairs.push(PairVerdict { pair: (a.clone(), b.clone()), dims, adjacent, ok });
        }
    }
    let mut orthogonality = Vec::new();
    for cycle in &quiver.w_cycles {
        match verify_cycle_orthogonality(&geom, &config, [&cycle[0], &cycle[1], &cycle[2]]) {
            Ok(r) => orthogonality.push(r),
            Err(e) => {
                report.configuration = Stage::failed(e);
                return Ok(report);
            }
        }
    }
    let config_ok = pairs.iter().all(|p| p.ok) && orthogonality.iter().all(|o| o.orthogonal);
    report.configuration = Stage::judged(config_ok, ConfigurationVerdicts { pairs, orthogonality });
    if !config_ok {
        return Ok(report);
    }

    let pres = match at_presentation(&quiver) {
        Ok(p) => p,
        Err(e) => {
            report.relations = Stage::failed(e);
            return Ok(report);
        }
    };
    let numeric = EulerLattice::from_homs(&homs).and_then(|lat| {
        let k = verify_relations_numeric(&pres, &lat)?;
        let s = k_shadow_checks(&lat, &quiver, options.shadow_samples)?;
        Ok((lat, k, s))
    });
    let (lat, k_theory, shadows) = match numeric {
        Ok(x) => x,
        Err(e) => {
            report.relations = Stage::failed(e);
            return Ok(report);
        }
    };
    let relations_ok = k_theory.all_hold() && shadows.all_hold();
    report.relations = Stage::judged(
        relations_ok,
        RelationsSummary {
            generators: pres.generators.len(),
            braid: pres.count(RelationKind::Braid),
            commute: pres.count(RelationKind::Commute),
            cycle: pres.count(RelationKind::Cycle),
            k_theory: k_theory.clone(),
            shadows,
        },
    );
    if !relations_ok {
        return Ok(report);
    }

    let Some(case) = config.transport else {
        report.transport.message = Some("no transport declared in the configuration".into());
        return Ok(report);
    };
    let pairing = match transport_classes(case, &lat) {
        Ok(p) => p,
        Err(e) => {
            report.transport = Stage::failed(e);
            return Ok(report);
        }
    };
    let group = CoxeterGroup::build(case.spec());
    let checked = images_by_position(&pres, case, ConverseVariant::Inverse)
        .and_then(|imgs| check_homomorphism(&pres, &group, &imgs))
        .and_then(|hom| {
            let printed = images_by_position(&pres, case, ConverseVariant::Printed)
                .and_then(|imgs| check_homomorphism(&pres, &group, &imgs))?;
            Ok((hom, printed))
        });
    let (homomorphism, printed) = match checked {
        Ok(x) => x,
        Err(e) => {
            report.transport = Stage::failed(e);
            return Ok(report);
        }
    };
    let recovery = generator_recovery(case, ConverseVariant::Inverse, &group);
    let backends_agree =
        homomorphism.verdicts.iter().zip(&k_theory.verdicts).all(|(g, k)| g.relation == k.relation && g.holds == k.holds);
    let printed_converse = PrintedConverse {
        failing_relations: printed.verdicts.iter().filter(|v| !v.holds).map(|v| v.relation.clone()).collect(),
        generators_recovered: generator_recovery(case, ConverseVariant::Printed, &group).recovered(),
    };
    let transport_ok = pairing.matches_dynkin
        && homomorphism.all_hold()
        && recovery.recovered() == recovery.entries.len()
        && backends_agree;
    report.transport = Stage::judged(
        transport_ok,
        TransportSummary { case, pairing, homomorphism, recovery, backends_agree, printed_converse },
    );
    Ok(report)
}
