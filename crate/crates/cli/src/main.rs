//! Command-line surface: stability cones of string and band walks, face
//! lattices, poset correspondence reports, band-approximation schedules, and
//! affine cross-sections for external plotting. All output is deterministic:
//! JSON with sorted keys or CSV, byte-identical across repeated runs.

mod output;
mod section;

use algebra::{check_special_biserial, parse_algebra, BoundQuiver};
use clap::{Parser, Subcommand, ValueEnum};
use cones::linalg::rank;
use cones::{face_ray_supports, Int, RationalCone};
use output::{cone_json, int_from_str, json_int, vectors_json};
use posets::{enumerate_ccp, face_correspondence, monotone_dual, poset_from_quiver};
use serde_json::{json, Value};
use stability::{approximate_family, lift_and_cut, StabilityCone, WordRef};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use words::{check_band, check_string, parse_walk, BandWord, StringWord};

/// Failures split by exit status: usage errors (2) cover unreadable inputs
/// and malformed options; domain errors (1) cover inputs that parse but are
/// mathematically invalid.
pub enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    fn usage(msg: impl Into<String>) -> CliError {
        CliError::Usage(msg.into())
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "stabcone",
    version,
    about = "Stability cones of string and band modules over special biserial algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an algebra file and report the special biserial diagnostics.
    AlgebraCheck {
        /// Algebra file.
        algebra: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Stability cone of a string walk.
    StringCone {
        #[arg(long)]
        algebra: PathBuf,
        /// The walk, e.g. "a b- c" or "@2" for a trivial walk.
        #[arg(long)]
        string: String,
        /// Restrict output to the support coordinates.
        #[arg(long)]
        support: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Stability cone of a band walk.
    BandCone {
        #[arg(long)]
        algebra: PathBuf,
        /// The cyclic walk, e.g. "a b g- d-".
        #[arg(long)]
        band: String,
        #[arg(long)]
        support: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Face lattice summary of a walk's stability cone.
    Faces {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, conflicts_with = "band")]
        string: Option<String>,
        #[arg(long)]
        band: Option<String>,
        #[arg(long)]
        support: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Connected compatible partitions and the face correspondence of a
    /// Hasse quiver (acyclic, no relations, no transitive arrows).
    Ccp {
        /// Algebra file holding the Hasse quiver.
        algebra: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Distances from a point to the string cones approximating a band cone
    /// along the doubling schedule 2, 4, ..., 2^k.
    Converge {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        band: String,
        /// The target weight, e.g. "2 -1 0 -1".
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Schedule exponent: members at r = 2, 4, ..., 2^k.
        #[arg(long, default_value_t = 7)]
        k: u32,
        /// Thresholds for the first-r-within-eps table (repeatable).
        #[arg(long)]
        eps: Vec<f64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Slice a walk's cone by an affine functional and emit the section
    /// points for plotting.
    CrossSection {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, conflicts_with = "band")]
        string: Option<String>,
        #[arg(long)]
        band: Option<String>,
        /// The slicing functional, e.g. "1 0 -1 0"; sections sit at value 1.
        #[arg(long, allow_hyphen_values = true)]
        functional: String,
        /// Optional plane basis, two vectors separated by ';'.
        #[arg(long, allow_hyphen_values = true)]
        basis: Option<String>,
        #[arg(long)]
        support: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cmd: Command) -> CliResult<()> {
    match cmd {
        Command::AlgebraCheck { algebra, format } => algebra_check(&algebra, format),
        Command::StringCone { algebra, string, support, format } => {
            let q = load_algebra(&algebra)?;
            let w = parse_string(&q, &string)?;
            let sc = lift_and_cut(&q, WordRef::String(&w)).map_err(domain)?;
            emit_stability(&q, &sc, support, format)
        }
        Command::BandCone { algebra, band, support, format } => {
            let q = load_algebra(&algebra)?;
            let b = parse_band(&q, &band)?;
            let sc = lift_and_cut(&q, WordRef::Band(&b)).map_err(domain)?;
            emit_stability(&q, &sc, support, format)
        }
        Command::Faces { algebra, string, band, support, format } => {
            let q = load_algebra(&algebra)?;
            let sc = walk_cone(&q, string.as_deref(), band.as_deref())?;
            faces(&sc, support, format)
        }
        Command::Ccp { algebra, format } => ccp(&algebra, format),
        Command::Converge { algebra, band, point, k, eps, format } => {
            converge(&algebra, &band, &point, k, &eps, format)
        }
        Command::CrossSection { algebra, string, band, functional, basis, support, format } => {
            let q = load_algebra(&algebra)?;
            let sc = walk_cone(&q, string.as_deref(), band.as_deref())?;
            cross_section(&q, &sc, &functional, basis.as_deref(), support, format)
        }
    }
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn load_algebra(path: &Path) -> CliResult<BoundQuiver> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    parse_algebra(&text).map_err(domain)
}

fn parse_string(q: &BoundQuiver, text: &str) -> CliResult<StringWord> {
    let w = parse_walk(q, text).map_err(domain)?;
    check_string(q, &w).map_err(domain)
}

fn parse_band(q: &BoundQuiver, text: &str) -> CliResult<BandWord> {
    let w = parse_walk(q, text).map_err(domain)?;
    check_band(q, &w).map_err(domain)
}

fn walk_cone(
    q: &BoundQuiver,
    string: Option<&str>,
    band: Option<&str>,
) -> CliResult<StabilityCone> {
    match (string, band) {
        (Some(s), None) => {
            let w = parse_string(q, s)?;
            lift_and_cut(q, WordRef::String(&w)).map_err(domain)
        }
        (None, Some(b)) => {
            let b = parse_band(q, b)?;
            lift_and_cut(q, WordRef::Band(&b)).map_err(domain)
        }
        _ => Err(CliError::usage("provide exactly one of --string or --band")),
    }
}

/// Write to stdout, exiting quietly if the consumer closed the pipe (e.g.
/// `stabcone ccp q.alg | head`).
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {e}");
        std::process::exit(2);
    }
}

fn print_json(v: &Value) {
    let mut text = serde_json::to_string_pretty(v).expect("JSON rendering cannot fail");
    text.push('\n');
    emit(&text);
}

fn support_names(q: &BoundQuiver, sc: &StabilityCone) -> Vec<String> {
    sc.support.iter().map(|&v| q.vertices()[v].clone()).collect()
}

fn coordinate_names(q: &BoundQuiver, sc: &StabilityCone, support: bool) -> Vec<String> {
    if support {
        support_names(q, sc)
    } else {
        q.vertices().to_vec()
    }
}

fn pick_cone(sc: &StabilityCone, support: bool) -> &RationalCone {
    if support {
        &sc.support_cone
    } else {
        &sc.cone
    }
}

fn algebra_check(path: &Path, format: Format) -> CliResult<()> {
    let q = load_algebra(path)?;
    let diag = check_special_biserial(&q);
    match format {
        Format::Json => {
            let arrows: Vec<Value> = q
                .arrows()
                .iter()
                .map(|a| {
                    json!({
                        "name": a.name,
                        "source": q.vertices()[a.source],
                        "target": q.vertices()[a.target],
                    })
                })
                .collect();
            let relations: Vec<Value> = q
                .relations()
                .iter()
                .map(|r| {
                    Value::Array(
                        r.iter().map(|&a| Value::String(q.arrow(a).name.clone())).collect(),
                    )
                })
                .collect();
            let violations: Vec<Value> = diag
                .violations
                .iter()
                .map(|v| json!({"rule": v.rule.as_str(), "witness": v.witness}))
                .collect();
            print_json(&json!({
                "vertices": q.vertices(),
                "arrows": arrows,
                "relations": relations,
                "passed": diag.passed,
                "violations": violations,
            }));
        }
        Format::Csv => {
            let mut out = String::from("kind,name,detail\n");
            for v in q.vertices() {
                out.push_str(&format!("vertex,{v},\n"));
            }
            for a in q.arrows() {
                out.push_str(&format!(
                    "arrow,{},{} -> {}\n",
                    a.name,
                    q.vertices()[a.source],
                    q.vertices()[a.target]
                ));
            }
            for r in q.relations() {
                let path: Vec<&str> = r.iter().map(|&a| q.arrow(a).name.as_str()).collect();
                out.push_str(&format!("relation,,{}\n", path.join(" ")));
            }
            out.push_str(&format!("passed,,{}\n", diag.passed));
            for v in &diag.violations {
                out.push_str(&format!("violation,{},{}\n", v.rule.as_str(), v.witness.join(" ")));
            }
            emit(&out);
        }
    }
    Ok(())
}

fn emit_stability(
    q: &BoundQuiver,
    sc: &StabilityCone,
    support: bool,
    format: Format,
) -> CliResult<()> {
    match format {
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("walk".into(), Value::String(sc.descriptor.clone()));
            obj.insert("kind".into(), Value::String(sc.kind.as_str().to_string()));
            obj.insert(
                "support".into(),
                Value::Array(
                    support_names(q, sc).into_iter().map(Value::String).collect(),
                ),
            );
            if support {
                obj.insert("cone".into(), cone_json(&sc.support_cone)?);
            } else {
                obj.insert("cone".into(), cone_json(&sc.cone)?);
                obj.insert("support_cone".into(), cone_json(&sc.support_cone)?);
            }
            print_json(&Value::Object(obj));
        }
        Format::Csv => {
            let names = coordinate_names(q, sc, support);
            emit(&output::cone_csv(pick_cone(sc, support), &names));
        }
    }
    Ok(())
}

fn faces(sc: &StabilityCone, support: bool, format: Format) -> CliResult<()> {
    let cone = pick_cone(sc, support).canonical();
    let supports = face_ray_supports(&cone);
    let face_dim = |ray_idx: &[usize]| -> usize {
        let mut rows: Vec<Vec<Int>> =
            ray_idx.iter().map(|&i| cone.rays()[i].clone()).collect();
        rows.extend(cone.lineality().iter().cloned());
        rank(&rows)
    };
    let dims: Vec<usize> = supports.iter().map(|s| face_dim(s)).collect();
    let mut counts = vec![0usize; cone.dim() + 1];
    for &d in &dims {
        counts[d] += 1;
    }
    let simplicial = {
        let rows: Vec<Vec<Int>> = cone.rays().to_vec();
        rank(&rows) == rows.len()
    };
    match format {
        Format::Json => {
            let faces: Vec<Value> = supports
                .iter()
                .zip(&dims)
                .map(|(s, &d)| {
                    json!({
                        "dim": d,
                        "rays": s.iter().map(|&i| i as i64).collect::<Vec<i64>>(),
                    })
                })
                .collect();
            print_json(&json!({
                "walk": sc.descriptor,
                "kind": sc.kind.as_str(),
                "cone_dim": cone.dim(),
                "simplicial": simplicial,
                "rays": vectors_json(cone.rays())?,
                "face_count": supports.len(),
                "face_counts_by_dim": counts.iter().map(|&c| c as i64).collect::<Vec<i64>>(),
                "faces": faces,
            }));
        }
        Format::Csv => {
            let mut out = String::from("dim,rays\n");
            for (s, d) in supports.iter().zip(&dims) {
                let idx: Vec<String> = s.iter().map(|i| i.to_string()).collect();
                out.push_str(&format!("{d},{}\n", idx.join(" ")));
            }
            emit(&out);
        }
    }
    Ok(())
}

fn ccp(path: &Path, format: Format) -> CliResult<()> {
    let q = load_algebra(path)?;
    let poset = poset_from_quiver(&q).map_err(domain)?;
    let partitions = enumerate_ccp(&poset).map_err(domain)?;
    let report = face_correspondence(&poset).map_err(domain)?;
    let monotone = monotone_dual(&poset);
    match format {
        Format::Json => {
            let cover: Vec<Value> = poset
                .covers()
                .iter()
                .map(|&(l, u)| json!([l as i64, u as i64]))
                .collect();
            let rows: Vec<Value> = report
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "partition": r.partition,
                        "block_count": r.block_count as i64,
                        "face_dim": r.face_dim as i64,
                    })
                })
                .collect();
            print_json(&json!({
                "poset": {"elements": poset.elements(), "cover": cover},
                "partition_count": report.partition_count as i64,
                "face_count": report.face_count as i64,
                "ray_count": report.ray_count as i64,
                "cover_count": report.cover_count as i64,
                "counts_match": report.counts_match,
                "rays_match_covers": report.rays_match_covers,
                "bijective": report.bijective,
                "refinement_respected": report.refinement_respected,
                "partitions": rows,
                "monotone": {
                    "dual_matches": monotone.dual_matches,
                    "double_dual_matches": monotone.double_dual_matches,
                    "dual_facet_count": monotone.dual_facet_count as i64,
                },
            }));
        }
        Format::Csv => {
            let mut out = String::from("partition,block_count,face_dim\n");
            for (part, row) in partitions.iter().zip(&report.rows) {
                out.push_str(&format!(
                    "{},{},{}\n",
                    part.display(&poset),
                    row.block_count,
                    row.face_dim
                ));
            }
            emit(&out);
        }
    }
    Ok(())
}

fn converge(
    path: &Path,
    band: &str,
    point: &str,
    k: u32,
    eps: &[f64],
    format: Format,
) -> CliResult<()> {
    let q = load_algebra(path)?;
    let b = parse_band(&q, band)?;
    let x = int_from_str(point)?;
    if k == 0 || k > 16 {
        return Err(CliError::usage("schedule exponent k must be between 1 and 16"));
    }
    let schedule: Vec<usize> = (1..=k).map(|i| 1usize << i).collect();
    let default_eps = [1e-3, 1e-6, 1e-9];
    let eps: &[f64] = if eps.is_empty() { &default_eps } else { eps };
    let fam = approximate_family(&q, &b, &x, &schedule, eps).map_err(domain)?;
    match format {
        Format::Json => {
            let mut members = Vec::new();
            for &(r, _) in &fam.distances {
                let member = fam.cone_at(&q, r).map_err(domain)?;
                members.push(json!({
                    "r": r as i64,
                    "walk": member.descriptor,
                    "rays": vectors_json(member.cone.canonical().rays())?,
                }));
            }
            let distances: Vec<Value> = fam
                .distances
                .iter()
                .map(|&(r, d)| json!({"r": r as i64, "distance": d}))
                .collect();
            let eps_table: Vec<Value> = fam
                .eps_table
                .iter()
                .map(|&(e, r)| json!({"eps": e, "first_r": r.map(|r| r as i64)}))
                .collect();
            print_json(&json!({
                "band": fam.band,
                "rotation": fam.rotation.serialize(&q),
                "m": fam.m as i64,
                "omitted_letters": [fam.omitted_letters.0 as i64, fam.omitted_letters.1 as i64],
                "point": json_int(&x)?,
                "schedule": fam.schedule.iter().map(|&r| r as i64).collect::<Vec<i64>>(),
                "members": members,
                "distances": distances,
                "eps_table": eps_table,
            }));
        }
        Format::Csv => {
            let mut out = String::from("r,distance\n");
            for &(r, d) in &fam.distances {
                out.push_str(&format!("{r},{d}\n"));
            }
            emit(&out);
        }
    }
    Ok(())
}

fn cross_section(
    q: &BoundQuiver,
    sc: &StabilityCone,
    functional: &str,
    basis: Option<&str>,
    support: bool,
    format: Format,
) -> CliResult<()> {
    let cone = pick_cone(sc, support);
    let names = coordinate_names(q, sc, support);
    let f = int_from_str(functional)?;
    if f.len() != names.len() {
        return Err(CliError::usage(format!(
            "functional has {} coordinates, expected {}",
            f.len(),
            names.len()
        )));
    }
    let basis = basis
        .map(|text| -> CliResult<Vec<Vec<Int>>> {
            let vecs: Vec<Vec<Int>> =
                text.split(';').map(int_from_str).collect::<CliResult<_>>()?;
            for v in &vecs {
                if v.len() != names.len() {
                    return Err(CliError::usage("basis vector length mismatch"));
                }
            }
            Ok(vecs)
        })
        .transpose()?;
    let sect = section::cross_section(cone, &f, basis)?;
    match format {
        Format::Json => print_json(&section::section_json(sc, &sect)?),
        Format::Csv => emit(&section::section_csv(&sect, &names)),
    }
    Ok(())
}
