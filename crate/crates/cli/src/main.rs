use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cyclotwist::artin::{
    check_homomorphism, generator_recovery, images_by_position, ArtinWord, ConverseVariant, CoxeterGroup, CoxeterSpec,
};
use cyclotwist::bundled::Example;
use cyclotwist::diagram::FanDiagram;
use cyclotwist::fan::{find_unimodular_triangulations, junior_points, FanFile, ResolutionFan, DEFAULT_ORDER_BOUND};
use cyclotwist::hom::{verify_cycle_orthogonality, ConfigFile, HomTable};
use cyclotwist::ktheory::{k_shadow_checks, transport_classes, verify_relations_numeric, EulerLattice};
use cyclotwist::lattice::QuotientWeights;
use cyclotwist::pipeline::{
    self, parse_json, run_pipeline, InputError, PipelineOptions, EXIT_INPUT_ERROR, EXIT_OK, EXIT_VERIFICATION_FAILED,
};
use cyclotwist::quiver::{at_presentation, extract_quiver};
use cyclotwist::surface::FanGeometry;

#[derive(Parser)]
#[command(name = "cyclotwist", version, about = "Resolutions of C^3/μ_r, spherical twists and braid-type actions")]
struct Cli {
    #[command(flatten)]
    input: InputArgs,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Fan JSON file.
    #[arg(long, global = true)]
    fan: Option<PathBuf>,
    /// Configuration JSON file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Use a bundled example instead of files.
    #[arg(long, global = true, value_parser = ["x139", "x1313"])]
    example: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Dot,
}

#[derive(Args)]
struct WeightArgs {
    /// Group order r.
    #[arg(long)]
    order: i64,
    /// Weights a,b,c.
    #[arg(long, value_delimiter = ',', required = true)]
    weights: Vec<i64>,
}

#[derive(Subcommand)]
enum Command {
    /// List junior lattice points.
    Junior(WeightArgs),
    /// Enumerate unimodular triangulations on all junior points.
    Triangulate {
        #[command(flatten)]
        weights: WeightArgs,
        #[arg(long, default_value_t = 100)]
        limit: usize,
        #[arg(long, default_value_t = DEFAULT_ORDER_BOUND)]
        bound: i64,
    },
    /// Validate a fan.
    Validate,
    /// Exceptional surfaces and their types.
    Surfaces,
    /// Compact curves with self-intersections (DOT: dual graph).
    Curves,
    /// Graded Hom dimensions between configuration objects.
    Homs,
    /// Quiver with potential.
    Quiver,
    /// Check the configuration conditions, including cycle orthogonality.
    VerifyConfig,
    /// Check the braid-twist relations on the Euler lattice.
    VerifyAction,
    /// Check the declared ADE transport with Garside normal forms.
    Transport {
        #[arg(long, value_enum, default_value_t = VariantArg::Inverse)]
        variant: VariantArg,
    },
    /// Artin-group utilities.
    Braid {
        #[command(subcommand)]
        command: BraidCommand,
    },
    /// Run the full pipeline.
    Run {
        #[arg(long, default_value_t = PipelineOptions::default().shadow_samples)]
        samples: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Printed,
    Inverse,
}

#[derive(Subcommand)]
enum BraidCommand {
    /// Decide equality of two words; exit 0 if equal, 1 if not.
    Eq {
        /// Dynkin type, e.g. D6 or E8.
        #[arg(long = "type")]
        kind: String,
        lhs: String,
        rhs: String,
    },
}

enum Failure {
    Input(String),
    Verification(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(String, bool), Failure>;

fn read(path: &PathBuf, what: &str) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|source| InputError::Io { what: format!("{what} {}", path.display()), source })
}

impl InputArgs {
    fn example(&self) -> Option<Example> {
        self.example.as_deref().and_then(Example::from_name)
    }

    fn fan_text(&self) -> Result<String, Failure> {
        match (&self.fan, self.example()) {
            (Some(p), _) => Ok(read(p, "fan")?),
            (None, Some(ex)) => Ok(ex.fan_json().to_string()),
            (None, None) => Err(Failure::Input("a fan is required: pass --fan FILE or --example NAME".into())),
        }
    }

    fn config_text(&self) -> Result<String, Failure> {
        match (&self.config, self.example()) {
            (Some(p), _) => Ok(read(p, "config")?),
            (None, Some(ex)) => Ok(ex.config_json().to_string()),
            (None, None) => Err(Failure::Input("a configuration is required: pass --config FILE or --example NAME".into())),
        }
    }

    fn fan(&self) -> Result<ResolutionFan, Failure> {
        let file: FanFile = parse_json("fan", &self.fan_text()?)?;
        file.into_fan().map_err(|e| Failure::Input(format!("fan: {e}")))
    }

    fn geometry(&self) -> Result<FanGeometry, Failure> {
        FanGeometry::analyze(self.fan()?).map_err(|e| Failure::Verification(e.to_string()))
    }

    fn geometry_and_config(&self) -> Result<(FanGeometry, ConfigFile), Failure> {
        let (pipeline::FanGeometryInput(fan), config) = pipeline::load_inputs(&self.fan_text()?, &self.config_text()?)?;
        let geom = FanGeometry::analyze(fan).map_err(|e| Failure::Verification(e.to_string()))?;
        Ok((geom, config))
    }
}

fn weights(w: &WeightArgs) -> Result<QuotientWeights, Failure> {
    if w.weights.len() != 3 {
        return Err(Failure::Input(format!("expected three weights a,b,c, got {}", w.weights.len())));
    }
    QuotientWeights::new(w.order, [w.weights[0], w.weights[1], w.weights[2]]).map_err(|e| Failure::Input(e.to_string()))
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn unsupported(format: Format) -> Failure {
    let name = match format {
        Format::Table => "table",
        Format::Json => "json",
        Format::Dot => "dot",
    };
    Failure::Input(format!("format `{name}` is not available for this command"))
}

fn verification(e: impl ToString) -> Failure {
    Failure::Verification(e.to_string())
}

fn dispatch(cli: &Cli) -> Outcome {
    let f = cli.format;
    let input = &cli.input;
    let mut s = String::new();
    match &cli.command {
        Command::Junior(w) => {
            let pts = junior_points(&weights(w)?);
            match f {
                Format::Json => Ok((json(&pts.iter().map(|r| (&r.id, r.coords)).collect::<Vec<_>>()), true)),
                Format::Table => {
                    for r in &pts {
                        let _ = writeln!(s, "{:>5}  {:?}", r.id, r.coords);
                    }
                    Ok((s, true))
                }
                Format::Dot => Err(unsupported(f)),
            }
        }
        Command::Triangulate { weights: w, limit, bound } => {
            let fans = find_unimodular_triangulations(&weights(w)?, *limit, *bound).map_err(|e| Failure::Input(e.to_string()))?;
            match f {
                Format::Json => Ok((json(&fans.iter().map(FanFile::from).collect::<Vec<_>>()), true)),
                Format::Table => {
                    let _ = writeln!(s, "{} triangulation(s)", fans.len());
                    for (i, fan) in fans.iter().enumerate() {
                        let cones: Vec<String> = fan.cones.iter().map(|c| fan.cone_ids(c).join(",")).collect();
                        let _ = writeln!(s, "#{i}: {}", cones.join(" | "));
                    }
                    Ok((s, true))
                }
                Format::Dot => Err(unsupported(f)),
            }
        }
        Command::Validate => {
            let report = input.fan()?.validate();
            let ok = report.is_valid();
            match f {
                Format::Json => Ok((json(&report), ok)),
                Format::Table => {
                    let _ = writeln!(s, "maximal cones: {}", report.maximal_cones);
                    for issue in &report.issues {
                        let _ = writeln!(s, "issue: {}", serde_json::to_string(issue).expect("serializable"));
                    }
                    let _ = writeln!(s, "{}", if ok { "valid" } else { "INVALID" });
                    Ok((s, ok))
                }
                Format::Dot => Err(unsupported(f)),
            }
        }
        Command::Surfaces => {
            let geom = input.geometry()?;
            match f {
                Format::Json => Ok((json(&geom.surfaces), true)),
                Format::Table => {
                    for m in &geom.surfaces {
                        let b: Vec<String> = m.boundary.iter().map(|c| format!("{}:{}", c.ray, c.self_intersection)).collect();
                        let _ = writeln!(s, "S{:<4} {:<6} {}", m.surface_ray, m.kind.to_string(), b.join(" "));
                    }
                    Ok((s, true))
                }
                Format::Dot => Ok((FanDiagram::of(&geom).to_dot(), true)),
            }
        }
        Command::Curves => {
            let geom = input.geometry()?;
            match f {
                Format::Json => Ok((json(&FanDiagram::of(&geom)), true)),
                Format::Dot => Ok((FanDiagram::of(&geom).to_dot(), true)),
                Format::Table => {
                    for c in &geom.curves {
                        let _ = writeln!(s, "C{}{}  ({}, {})", c.k, c.l, c.c_in_k, c.c_in_l);
                    }
                    let tp: Vec<String> = geom.triple_points.iter().map(|t| format!("({})", t.join(","))).collect();
                    let _ = writeln!(s, "triple points: {}", tp.join(" "));
                    Ok((s, true))
                }
            }
        }
        Command::Homs => {
            let (geom, config) = input.geometry_and_config()?;
            let homs = HomTable::compute(&geom, &config).map_err(verification)?;
            match f {
                Format::Json => Ok((json(&homs), true)),
                Format::Table => {
                    for e in homs.entries.iter().filter(|e| e.source != e.target) {
                        let _ = writeln!(s, "Hom({}, {}) = {}", e.source, e.target, e.dims);
                    }
                    Ok((s, true))
                }
                Format::Dot => Err(unsupported(f)),
            }
        }
        Command::Quiver => {
            let (geom, config) = input.geometry_and_config()?;
            let homs = HomTable::compute(&geom, &config).map_err(verification)?;
            let q = extract_quiver(&geom, &config, &homs).map_err(verification)?;
            match f {
                Format::Json => Ok((json(&q), true)),
                Format::Dot => Ok((q.to_dot(), true)),
                Format::Table => {
                    for (a, b) in &q.arrows {
                        let _ = writeln!(s, "{a} -> {b}");
                    }
                    for c in &q.w_cycles {
                        let _ = writeln!(s, "W-cycle: {}", c.join(" -> "));
                    }
                    for w in &q.warnings {
                        let _ = writeln!(s, "warning: {w}");
                    }
                    Ok((s, true))
                }
            }
        }
        Command::VerifyConfig => {
            let (geom, config) = input.geometry_and_config()?;
            let homs = HomTable::compute(&geom, &config).map_err(verification)?;
            let q = extract_quiver(&geom, &config, &homs).map_err(verification)?;
            let reports = q
                .w_cycles
                .iter()
                .map(|c| verify_cycle_orthogonality(&geom, &config, [&c[0], &c[1], &c[2]]))
                .collect::<Result<Vec<_>, _>>()
                .map_err(verification)?;
            let ok = reports.iter().all(|r| r.orthogonal);
            match f {
                Format::Json => Ok((json(&reports), ok)),
                Format::Table => {
                    for r in &reports {
                        let _ = writeln!(s, "cycle ({}): {}", r.cycle.join(","), if r.orthogonal { "orthogonal" } else { "NOT orthogonal" });
                        for rot in &r.rotations {
                            let _ = writeln!(
                                s,
                                "  rotation ({}): degrees ({}, {}) h0 = {}",
                                rot.rotation.join(","),
                                rot.degree_on_ckt,
                                rot.degree_on_clt,
                                rot.h0
                            );
                        }
                    }
                    Ok((s, ok))
                }
                Format::Dot => Err(unsupported(f)),
            }
        }
        Command::VerifyAction => {
            let (geom, config) = input.geometry_and_config()?;
            let homs = HomTable::compute(&geom, &config).map_err(verification)?;
            let q = extract_quiver(&geom, &config, &homs).map_err(verification)?;
            let pres = at_presentation(&q).map_err(verification)?;
            let lat = EulerLattice::from_homs(&homs).map_err(verification)?;
            let rel = verify_relations_numeric(&pres, &lat).map_err(verification)?;
            let shadows = k_shadow_checks(&lat, &q, PipelineOptions::default().shadow_samples).map_err(verification)?;
            let ok = rel.all_hold() && shadows.all_hold();
            match f {
                Format::Json => Ok((json(&serde_json::json!({ "relations": rel, "shadows": shadows })), ok)),
                Format::Table => {
                    for v in &rel.verdicts {
                        let _ = writeln!(s, "[{}] {}", if v.holds { "ok" } else { "FAIL" }, v.relation);
                    }
                    let _ = writeln!(s, "{} relation(s), {} failure(s); shadows {}", rel.verdicts.len(), rel.failures(), if shadows.all_hold() { "ok" } else { "FAIL" });
                    Ok((s, ok))
                }
                Format::Dot => Err(unsupported(f)),
            }
        }
        Command::Transport { variant } => {
            let variant = match variant {
                VariantArg::Printed => ConverseVariant::Printed,
                VariantArg::Inverse => ConverseVariant::Inverse,
            };
            let (geom, config) = input.geometry_and_config()?;
            let case = config.transport.ok_or_else(|| Failure::Input("configuration declares no transport".into()))?;
            let homs = HomTable::compute(&geom, &config).map_err(verification)?;
            let q = extract_quiver(&geom, &config, &homs).map_err(verification)?;
            let pres = at_presentation(&q).map_err(verification)?;
            let lat = EulerLattice::from_homs(&homs).map_err(verification)?;
            let pairing = transport_classes(case, &lat).map_err(verification)?;
            let group = CoxeterGroup::build(case.spec());
            let images = images_by_position(&pres, case, variant).map_err(verification)?;
            let hom = check_homomorphism(&pres, &group, &images).map_err(verification)?;
            let recovery = generator_recovery(case, variant, &group);
            let ok = pairing.matches_dynkin && hom.all_hold() && recovery.recovered() == recovery.entries.len();
            match f {
                Format::Json => {
                    Ok((json(&serde_json::json!({ "pairing": pairing, "homomorphism": hom, "recovery": recovery })), ok))
                }
                Format::Table => {
                    let _ = writeln!(s, "Euler pairing matches {}: {}", case.spec(), pairing.matches_dynkin);
                    for v in &hom.verdicts {
                        let _ = writeln!(s, "[{}] {}", if v.holds { "ok" } else { "FAIL" }, v.relation);
                    }
                    for e in &recovery.entries {
                        let _ = writeln!(s, "node {}: {} -> {} [{}]", e.node, e.forward, e.substituted, if e.recovered { "ok" } else { "FAIL" });
                    }
                    let _ = writeln!(s, "{} failure(s); recovered {}/{}", hom.failures(), recovery.recovered(), recovery.entries.len());
                    Ok((s, ok))
                }
                Format::Dot => Err(unsupported(f)),
            }
        }
        Command::Braid { command: BraidCommand::Eq { kind, lhs, rhs } } => {
            let spec: CoxeterSpec = kind.parse().map_err(|e: cyclotwist::artin::ArtinError| Failure::Input(e.to_string()))?;
            let parse = |w: &str| -> Result<ArtinWord, Failure> {
                let word: ArtinWord = w.parse().map_err(|e: cyclotwist::artin::ArtinError| Failure::Input(e.to_string()))?;
                word.check_rank(spec.rank).map_err(|e| Failure::Input(e.to_string()))?;
                Ok(word)
            };
            let (a, b) = (parse(lhs)?, parse(rhs)?);
            let group = CoxeterGroup::build(spec);
            let (na, nb) = (group.normal_form(&a), group.normal_form(&b));
            let equal = na == nb;
            match f {
                Format::Json => Ok((
                    json(&serde_json::json!({
                        "equal": equal,
                        "lhs": group.render(&na).to_string(),
                        "rhs": group.render(&nb).to_string(),
                    })),
                    equal,
                )),
                Format::Table => {
                    let _ = writeln!(s, "{}", if equal { "equal" } else { "not equal" });
                    Ok((s, equal))
                }
                Format::Dot => Err(unsupported(f)),
            }
        }
        Command::Run { samples } => {
            let report = run_pipeline(&input.fan_text()?, &input.config_text()?, PipelineOptions { shadow_samples: *samples })?;
            let ok = report.exit_code() == EXIT_OK;
            match f {
                Format::Json => Ok((report.to_json() + "\n", ok)),
                Format::Table => {
                    let _ = writeln!(s, "{} / {}", report.header.fan, report.header.config);
                    for (name, status) in report.statuses() {
                        let msg = |m: &Option<String>| m.clone().map(|m| format!(" — {m}")).unwrap_or_default();
                        let extra = match name {
                            "fan" => msg(&report.fan.message),
                            "geometry" => msg(&report.geometry.message),
                            "homs" => msg(&report.homs.message),
                            "quiver" => msg(&report.quiver.message),
                            "configuration" => msg(&report.configuration.message),
                            "relations" => msg(&report.relations.message),
                            _ => msg(&report.transport.message),
                        };
                        let _ = writeln!(s, "{name:<14} {}{extra}", serde_json::to_string(&status).expect("serializable").trim_matches('"'));
                    }
                    if let Some(t) = &report.transport.detail {
                        let _ = writeln!(
                            s,
                            "note: printed converse image fails {} relation(s) and recovers {}/{} generators",
                            t.printed_converse.failing_relations.len(),
                            t.printed_converse.generators_recovered,
                            t.recovery.entries.len()
                        );
                    }
                    Ok((s, ok))
                }
                Format::Dot => Err(unsupported(f)),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match dispatch(&cli) {
        Ok((text, ok)) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &text).map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Ok(()) if ok => EXIT_OK,
                Ok(()) => EXIT_VERIFICATION_FAILED,
                Err(e) => {
                    eprintln!("error: {e}");
                    EXIT_INPUT_ERROR
                }
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            EXIT_INPUT_ERROR
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            EXIT_VERIFICATION_FAILED
        }
    };
    ExitCode::from(code as u8)
}
