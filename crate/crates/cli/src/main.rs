//! Command-line frontend: load JSON inputs, run decisions, checks and
//! enumerations, emit verdict JSON, witness certificates and DOT
//! diagrams.
//!
//! Exit codes: 0 = Yes/pass, 1 = No/fail, 2 = Unknown, 3 = input error.
//! The primary result goes to standard output as JSON; diagnostics go to
//! standard error. Identical invocations produce byte-identical output.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use quivdeg::decompose::decompose;
use quivdeg::degeneration::{decide_deg, rz_witness_search, DegenConfig, Verdict};
use quivdeg::derived::{decide_delta, delta_witness_search_widened, Complex, DeltaVerdict};
use quivdeg::error::Error;
use quivdeg::family::{check_dvr_degeneration, rz_to_family};
use quivdeg::json::{self, QuiverFile};
use quivdeg::poset::{
    enumerate_indecomposables, hasse_diagram, indecomposable_labels, to_dot, verify_partial_order,
};
use quivdeg::quiver::{DimensionVector, Quiver};
use quivdeg::rep::{ext1_dim, hom_dim, Representation};
use quivdeg::scalar::FieldSpec;
use quivdeg::verify::{verify_rz_witness, verify_triangle_witness};

#[derive(Parser)]
#[command(
    name = "quivdeg",
    about = "Degeneration orders for quiver representations, with machine-checkable certificates",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonIo {
    /// Quiver description (quiver.json)
    #[arg(long)]
    quiver: PathBuf,
    /// Also write the primary JSON output to this path
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether module m degenerates to module n
    Decide {
        #[command(flatten)]
        io: CommonIo,
        #[arg(long)]
        m: PathBuf,
        #[arg(long)]
        n: PathBuf,
        /// Total-dimension bound for middle objects (default: 2 dim m)
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Search directly for an exact-sequence witness
    ZwaraSearch {
        #[command(flatten)]
        io: CommonIo,
        #[arg(long)]
        m: PathBuf,
        #[arg(long)]
        n: PathBuf,
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check that a one-parameter family degenerates m to n
    DvrCheck {
        #[command(flatten)]
        io: CommonIo,
        #[arg(long)]
        m: PathBuf,
        #[arg(long)]
        n: PathBuf,
        /// Family description (family.json, polynomial entries)
        #[arg(long)]
        family: PathBuf,
    },
    /// Turn an exact-sequence witness into a one-parameter family
    RzToFamily {
        #[command(flatten)]
        io: CommonIo,
        #[arg(long)]
        m: PathBuf,
        #[arg(long)]
        n: PathBuf,
        /// Witness certificate (witness.json of kind "rz")
        #[arg(long)]
        witness: PathBuf,
    },
    /// Decide triangle degeneration between bounded complexes
    DeltaCheck {
        #[command(flatten)]
        io: CommonIo,
        #[arg(long)]
        complex_m: PathBuf,
        #[arg(long)]
        complex_n: PathBuf,
        #[arg(long)]
        bound: Option<usize>,
        /// Widening of the shift window for middle objects
        #[arg(long, default_value_t = 1)]
        shift_range: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Decompose a module into indecomposable summands
    Decompose {
        #[command(flatten)]
        io: CommonIo,
        #[arg(long)]
        m: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Orbit dimension of a module in its module variety
    OrbitDim {
        #[command(flatten)]
        io: CommonIo,
        #[arg(long)]
        m: PathBuf,
    },
    /// Hom and Ext^1 dimension tables between enumerated indecomposables
    HomTable {
        #[command(flatten)]
        io: CommonIo,
        /// Field: "q" or "p=<prime>"
        #[arg(long)]
        field: String,
        /// Per-vertex dimension bounds, comma separated
        #[arg(long)]
        max_dim: String,
    },
    /// Enumerate indecomposables up to a dimension bound
    Enumerate {
        #[command(flatten)]
        io: CommonIo,
        #[arg(long)]
        field: String,
        #[arg(long)]
        max_dim: String,
    },
    /// Degeneration Hasse diagram at a dimension vector
    Hasse {
        #[command(flatten)]
        io: CommonIo,
        #[arg(long)]
        field: String,
        /// Dimension vector, comma separated
        #[arg(long)]
        dimvec: String,
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the Hasse diagram in DOT format to this path
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Re-check a witness certificate from scratch
    VerifyWitness {
        #[command(flatten)]
        io: CommonIo,
        /// Witness file (kind "rz" or "delta")
        #[arg(long)]
        witness: PathBuf,
        #[arg(long)]
        m: Option<PathBuf>,
        #[arg(long)]
        n: Option<PathBuf>,
        #[arg(long)]
        complex_m: Option<PathBuf>,
        #[arg(long)]
        complex_n: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(3)
        }
    }
}

fn read_file(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Json(format!("cannot read {}: {}", path.display(), e)))
}

fn load_quiver(path: &Path) -> Result<Arc<Quiver>, Error> {
    let file: QuiverFile = json::from_json_str(&read_file(path)?)?;
    json::quiver_from_file(&file)
}

fn load_rep(q: &Arc<Quiver>, path: &Path) -> Result<Representation, Error> {
    let file: json::RepFile = json::from_json_str(&read_file(path)?)?;
    json::rep_from_file(q, &file)
}

fn load_complex(q: &Arc<Quiver>, path: &Path) -> Result<Complex, Error> {
    let file: json::ComplexFile = json::from_json_str(&read_file(path)?)?;
    json::complex_from_file(q, &file)
}

fn parse_field(text: &str) -> Result<FieldSpec, Error> {
    let text = text.trim().to_lowercase();
    if text == "q" {
        return Ok(FieldSpec::Rationals);
    }
    if let Some(p) = text.strip_prefix("p=") {
        let p: u64 = p
            .parse()
            .map_err(|_| Error::Parse(format!("bad prime in field spec {:?}", text)))?;
        return FieldSpec::prime_field(p);
    }
    Err(Error::Parse(format!(
        "field must be \"q\" or \"p=<prime>\", got {:?}",
        text
    )))
}

fn parse_dimvec(text: &str, arity: usize) -> Result<DimensionVector, Error> {
    let parts: Result<Vec<usize>, _> = text.split(',').map(|s| s.trim().parse()).collect();
    let parts = parts.map_err(|_| Error::Parse(format!("bad dimension vector {:?}", text)))?;
    if parts.len() != arity {
        return Err(Error::DimensionMismatch(format!(
            "dimension vector {:?} has {} entries for {} vertices",
            text,
            parts.len(),
            arity
        )));
    }
    Ok(DimensionVector(parts))
}

/// Prints the primary output and mirrors it to --json when requested.
fn emit(io: &CommonIo, text: &str) -> Result<(), Error> {
    print!("{}", text);
    if let Some(path) = &io.json {
        std::fs::write(path, text)
            .map_err(|e| Error::Json(format!("cannot write {}: {}", path.display(), e)))?;
    }
    Ok(())
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Decide { io, m, n, bound, seed } => {
            let q = load_quiver(&io.quiver)?;
            let m = load_rep(&q, &m)?;
            let n = load_rep(&q, &n)?;
            let config = DegenConfig { dim_bound: bound, seed };
            let verdict = decide_deg(&m, &n, &config)?;
            let file = json::verdict_to_file(&verdict);
            emit(&io, &json::to_json_string(&file)?)?;
            Ok(verdict_exit(&verdict))
        }
        Command::ZwaraSearch { io, m, n, bound, seed } => {
            let q = load_quiver(&io.quiver)?;
            let m = load_rep(&q, &m)?;
            let n = load_rep(&q, &n)?;
            let bound = bound.unwrap_or(2 * m.total_dim());
            match rz_witness_search(&m, &n, bound, seed)? {
                Some(w) => {
                    let file = json::witness_to_file(&w);
                    emit(&io, &json::to_json_string(&file)?)?;
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    eprintln!(
                        "unknown: no witness with middle objects of total dimension <= {}",
                        bound
                    );
                    let file = json::verdict_to_file(&Verdict::Unknown(
                        quivdeg::degeneration::SearchBounds { dim_bound: bound },
                    ));
                    emit(&io, &json::to_json_string(&file)?)?;
                    Ok(ExitCode::from(2))
                }
            }
        }
        Command::DvrCheck { io, m, n, family } => {
            let q = load_quiver(&io.quiver)?;
            let m = load_rep(&q, &m)?;
            let n = load_rep(&q, &n)?;
            let fam_file: json::FamilyFile = json::from_json_str(&read_file(&family)?)?;
            let fam = json::family_from_file(&q, &fam_file)?;
            let report = check_dvr_degeneration(&m, &n, &fam)?;
            let pass = report.pass();
            if !pass {
                eprintln!(
                    "fail: generic fiber {} match, special fiber {} match",
                    if report.generic_ok() { "does" } else { "does NOT" },
                    if report.special_ok() { "does" } else { "does NOT" },
                );
            }
            emit(&io, &json::to_json_string(&json::dvr_report_to_file(&report))?)?;
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::RzToFamily { io, m, n, witness } => {
            let q = load_quiver(&io.quiver)?;
            let m = load_rep(&q, &m)?;
            let n = load_rep(&q, &n)?;
            let wf: json::WitnessFile = json::from_json_str(&read_file(&witness)?)?;
            let w = json::witness_from_file(&q, &m, &n, &wf)?;
            verify_rz_witness(&m, &n, &w)?;
            let fam = rz_to_family(&w)?;
            emit(&io, &json::to_json_string(&json::family_to_file(&fam))?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::DeltaCheck { io, complex_m, complex_n, bound, shift_range, seed } => {
            let q = load_quiver(&io.quiver)?;
            let m = load_complex(&q, &complex_m)?;
            let n = load_complex(&q, &complex_n)?;
            let total: usize = (m.lo()..=m.hi()).map(|i| m.term(i).total_dim()).sum();
            let bound = bound.unwrap_or(2 * total.max(1));
            let verdict = if shift_range == 1 {
                decide_delta(&m, &n, bound, seed)?
            } else {
                // widened searches skip the obstruction sweep and go
                // straight to the search with the requested window
                match delta_witness_search_widened(&m, &n, bound, seed, shift_range)? {
                    Some(w) => DeltaVerdict::Yes(Box::new(w)),
                    None => DeltaVerdict::Unknown { dim_bound: bound },
                }
            };
            let file = json::delta_verdict_to_file(&verdict)?;
            emit(&io, &json::to_json_string(&file)?)?;
            Ok(match &verdict {
                DeltaVerdict::Yes(_) => ExitCode::SUCCESS,
                DeltaVerdict::No(_) => ExitCode::FAILURE,
                DeltaVerdict::Unknown { .. } => ExitCode::from(2),
            })
        }
        Command::Decompose { io, m, seed } => {
            let q = load_quiver(&io.quiver)?;
            let m = load_rep(&q, &m)?;
            let d = decompose(&m, seed)?;
            emit(&io, &json::to_json_string(&json::decomposition_to_file(&m, &d))?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::OrbitDim { io, m } => {
            let q = load_quiver(&io.quiver)?;
            let m = load_rep(&q, &m)?;
            let dim = quivdeg::degeneration::orbit_dimension(&m)?;
            emit(&io, &format!("{{\n  \"orbit_dimension\": {}\n}}\n", dim))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::HomTable { io, field, max_dim } => {
            let q = load_quiver(&io.quiver)?;
            let field = parse_field(&field)?;
            let max_dim = parse_dimvec(&max_dim, q.vertex_count())?;
            let indecs = enumerate_indecomposables(&q, &max_dim, &field)?;
            let labels = indecomposable_labels(&q, &indecs);
            let k = indecs.len();
            let mut hom = vec![vec![0usize; k]; k];
            let mut ext = vec![vec![0usize; k]; k];
            for i in 0..k {
                for j in 0..k {
                    hom[i][j] = hom_dim(&indecs[i], &indecs[j])?;
                    if q.is_hereditary() {
                        ext[i][j] = ext1_dim(&indecs[i], &indecs[j])?;
                    }
                }
            }
            #[derive(serde::Serialize)]
            struct HomTableFile {
                labels: Vec<String>,
                hom: Vec<Vec<usize>>,
                #[serde(skip_serializing_if = "Option::is_none")]
                ext1: Option<Vec<Vec<usize>>>,
            }
            let file = HomTableFile {
                labels,
                hom,
                ext1: if q.is_hereditary() { Some(ext) } else { None },
            };
            emit(&io, &json::to_json_string(&file)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate { io, field, max_dim } => {
            let q = load_quiver(&io.quiver)?;
            let field = parse_field(&field)?;
            let max_dim = parse_dimvec(&max_dim, q.vertex_count())?;
            let indecs = enumerate_indecomposables(&q, &max_dim, &field)?;
            let labels = indecomposable_labels(&q, &indecs);
            #[derive(serde::Serialize)]
            struct EnumerationFile {
                count: usize,
                labels: Vec<String>,
                reps: Vec<json::RepFile>,
            }
            let file = EnumerationFile {
                count: indecs.len(),
                labels,
                reps: indecs.iter().map(json::rep_to_file).collect(),
            };
            emit(&io, &json::to_json_string(&file)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Hasse { io, field, dimvec, bound, seed, dot } => {
            let q = load_quiver(&io.quiver)?;
            let field = parse_field(&field)?;
            let dimvec = parse_dimvec(&dimvec, q.vertex_count())?;
            let config = DegenConfig { dim_bound: bound, seed };
            let poset = hasse_diagram(&q, &dimvec, &field, &config)?;
            let report = verify_partial_order(&poset);
            if !report.pass() {
                eprintln!(
                    "partial-order verification FAILED: antisymmetry violations {:?}, transitivity failures {:?}",
                    report.antisymmetry_violations, report.transitivity_failures
                );
            }
            if !report.transitivity_gaps.is_empty() {
                eprintln!(
                    "note: {} transitive pairs undecided within bounds",
                    report.transitivity_gaps.len()
                );
            }
            if let Some(path) = dot {
                std::fs::write(&path, to_dot(&poset))
                    .map_err(|e| Error::Json(format!("cannot write {}: {}", path.display(), e)))?;
            }
            emit(&io, &json::to_json_string(&json::poset_to_file(&poset))?)?;
            Ok(if report.pass() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::VerifyWitness { io, witness, m, n, complex_m, complex_n } => {
            let q = load_quiver(&io.quiver)?;
            let text = read_file(&witness)?;
            // dispatch on the "kind" tag
            let probe: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| Error::Json(format!("malformed witness file: {}", e)))?;
            let kind = probe
                .get("kind")
                .and_then(|k| k.as_str())
                .ok_or_else(|| Error::Json("witness file has no kind".into()))?;
            let outcome: Result<(), Error> = match kind {
                "rz" => {
                    let (m, n) = match (m, n) {
                        (Some(m), Some(n)) => (load_rep(&q, &m)?, load_rep(&q, &n)?),
                        _ => {
                            return Err(Error::Json(
                                "an rz witness needs --m and --n to verify against".into(),
                            ))
                        }
                    };
                    let wf: json::WitnessFile = json::from_json_str(&text)?;
                    json::witness_from_file(&q, &m, &n, &wf)
                        .and_then(|w| verify_rz_witness(&m, &n, &w))
                }
                "delta" => {
                    let (m, n) = match (complex_m, complex_n) {
                        (Some(m), Some(n)) => (load_complex(&q, &m)?, load_complex(&q, &n)?),
                        _ => {
                            return Err(Error::Json(
                                "a delta witness needs --complex-m and --complex-n".into(),
                            ))
                        }
                    };
                    let wf: json::TriangleWitnessFile = json::from_json_str(&text)?;
                    json::triangle_witness_from_file(&q, &m, &n, &wf)
                        .and_then(|w| verify_triangle_witness(&m, &n, &w))
                }
                other => return Err(Error::Json(format!("unknown witness kind {:?}", other))),
            };
            match outcome {
                Ok(()) => {
                    emit(&io, "{\n  \"valid\": true\n}\n")?;
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    eprintln!("invalid witness: {}", e);
                    emit(&io, "{\n  \"valid\": false\n}\n")?;
                    Ok(ExitCode::FAILURE)
                }
            }
        }
    }
}

fn verdict_exit(v: &Verdict) -> ExitCode {
    match v {
        Verdict::Yes(_) => ExitCode::SUCCESS,
        Verdict::No(o) => {
            match o {
                quivdeg::degeneration::Obstruction::DimensionVectors { dims_m, dims_n } => {
                    eprintln!("no: dimension vector mismatch {} vs {}", dims_m, dims_n)
                }
                quivdeg::degeneration::Obstruction::HomOrder { direction, dim_m, dim_n, .. } => {
                    eprintln!(
                        "no: hom-order obstruction ({:?}): {} > {}",
                        direction, dim_m, dim_n
                    )
                }
                quivdeg::degeneration::Obstruction::EndDimension { end_m, end_n } => {
                    eprintln!(
                        "no: End dimension does not grow ({} >= {}) for non-isomorphic modules",
                        end_m, end_n
                    )
                }
            }
            ExitCode::FAILURE
        }
        Verdict::Unknown(b) => {
            eprintln!("unknown: search exhausted at middle-object bound {}", b.dim_bound);
            ExitCode::from(2)
        }
    }
}
