//! The quiver with potential of a configuration and its braid-twist presentation.
//!
//! Convention: there is an arrow `i → j` exactly when `Hom•(E_i, E_j) = C[-1]`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hom::{ConfigFile, HomTable};
use crate::surface::FanGeometry;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("Hom•({source_id}, {target}) has total dimension {total}; not a configuration")]
    TooManyHoms { source_id: String, target: String, total: u64 },
    #[error("potential term of length {0} is unsupported; only 3-cycles are handled")]
    CycleLength(usize),
    #[error("cycle refers to unknown vertex `{0}`")]
    UnknownVertex(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverWithPotential {
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String)>,
    /// Directed cycles `a → b → c → a`, each rotated to start at its
    /// earliest vertex.
    pub w_cycles: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl QuiverWithPotential {
    pub fn has_arrow(&self, a: &str, b: &str) -> bool {
        self.arrows.iter().any(|(s, t)| s == a && t == b)
    }

    pub fn adjacent(&self, a: &str, b: &str) -> bool {
        self.has_arrow(a, b) || self.has_arrow(b, a)
    }

    fn position(&self, v: &str) -> usize {
        self.vertices.iter().position(|x| x == v).unwrap_or(usize::MAX)
    }

    fn normalize_cycle(&self, mut cycle: Vec<String>) -> Vec<String> {
        let start = (0..cycle.len()).min_by_key(|&i| self.position(&cycle[i])).unwrap_or(0);
        cycle.rotate_left(start);
        cycle
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph Q {\n");
        for cycle in &self.w_cycles {
            let _ = writeln!(out, "  // W-cycle: {}", cycle.join(" -> "));
        }
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{v}\";");
        }
        for (a, b) in &self.arrows {
            let _ = writeln!(out, "  \"{a}\" -> \"{b}\";");
        }
        out.push_str("}\n");
        out
    }
}

/// Build the quiver from a Hom table and the triple points of the fan.
pub fn extract_quiver(geom: &FanGeometry, config: &ConfigFile, homs: &HomTable) -> Result<QuiverWithPotential, QuiverError> {
    let mut arrows = Vec::new();
    for e in &homs.entries {
        if e.dims.total() >= 2 {
            return Err(QuiverError::TooManyHoms {
                source_id: e.source.clone(),
                target: e.target.clone(),
                total: e.dims.total(),
            });
        }
        if e.dims.is_single(1) {
            arrows.push((e.source.clone(), e.target.clone()));
        }
    }
    let mut q = QuiverWithPotential { vertices: homs.objects.clone(), arrows, w_cycles: Vec::new(), warnings: Vec::new() };
    let objs = &config.objects;
    for tp in &geom.triple_points {
        let on = |s: &String| objs.iter().filter(|o| &o.surface == s).map(|o| o.id.clone()).collect::<Vec<_>>();
        for a in on(&tp[0]) {
            for b in on(&tp[1]) {
                for c in on(&tp[2]) {
                    if ![(&a, &b), (&b, &c), (&a, &c)].iter().all(|(x, y)| q.adjacent(x, y)) {
                        continue;
                    }
                    if q.has_arrow(&a, &b) && q.has_arrow(&b, &c) && q.has_arrow(&c, &a) {
                        q.w_cycles.push(q.normalize_cycle(vec![a.clone(), b.clone(), c.clone()]));
                    } else if q.has_arrow(&b, &a) && q.has_arrow(&c, &b) && q.has_arrow(&a, &c) {
                        q.w_cycles.push(q.normalize_cycle(vec![a.clone(), c.clone(), b.clone()]));
                    } else {
                        q.warnings.push(format!(
                            "triple point ({}, {}, {}) carries three arrows that do not form a directed cycle; no potential term added",
                            tp[0], tp[1], tp[2]
                        ));
                    }
                }
            }
        }
    }
    let mut cycles = std::mem::take(&mut q.w_cycles);
    cycles.sort_by_key(|c| c.iter().map(|v| q.position(v)).collect::<Vec<_>>());
    q.w_cycles = cycles;
    Ok(q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    Braid,
    Commute,
    Cycle,
}

/// An equation between two positive words in the generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub kind: RelationKind,
    pub vertices: Vec<String>,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} = {}", self.lhs.join("·"), self.rhs.join("·"))
    }
}

/// Generators per vertex; braid relations on arrows, commutation otherwise,
/// and `R_1 = R_2 = R_3` for each potential 3-cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ATPresentation {
    pub generators: Vec<String>,
    pub relations: Vec<Relation>,
}

impl ATPresentation {
    pub fn count(&self, kind: RelationKind) -> usize {
        self.relations.iter().filter(|r| r.kind == kind).count()
    }
}

pub fn at_presentation(q: &QuiverWithPotential) -> Result<ATPresentation, QuiverError> {
    let mut relations = Vec::new();
    let v = &q.vertices;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let (a, b) = (v[i].clone(), v[j].clone());
            let vertices = vec![a.clone(), b.clone()];
            relations.push(if q.adjacent(&a, &b) {
                Relation {
                    kind: RelationKind::Braid,
                    vertices,
                    lhs: vec![a.clone(), b.clone(), a.clone()],
                    rhs: vec![b.clone(), a, b],
                }
            } else {
                Relation { kind: RelationKind::Commute, vertices, lhs: vec![a.clone(), b.clone()], rhs: vec![b, a] }
            });
        }
    }
    for cycle in &q.w_cycles {
        if cycle.len() != 3 {
            return Err(QuiverError::CycleLength(cycle.len()));
        }
        if let Some(bad) = cycle.iter().find(|c| !v.contains(c)) {
            return Err(QuiverError::UnknownVertex(bad.clone()));
        }
        let r = |i: usize| (0..4).map(|k| cycle[(i + k) % 3].clone()).collect::<Vec<_>>();
        for (x, y) in [(0, 1), (1, 2)] {
            relations.push(Relation { kind: RelationKind::Cycle, vertices: cycle.clone(), lhs: r(x), rhs: r(y) });
        }
    }
    Ok(ATPresentation { generators: v.clone(), relations })
}
