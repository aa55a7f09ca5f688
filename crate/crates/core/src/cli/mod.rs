//! Command-line front end.
//!
//! Exit codes: 0 success, 2 input error (bad flags, malformed orbit set,
//! overflow, violated preconditions), 3 internal inconsistency.

mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bundle::{ExactAction, MorseProfile, OrbitSet, PrequantizationBundle};
use crate::error::{Error, Result};
use crate::generators::{enumerate_by_action, enumerate_by_grading, GradedGenerator};
use crate::index::{ech_index, RelativeClassOffset};
use crate::obstruction::{gromov_width_report, obstructs_embedding, parse_domain};
use crate::spectrum::{
    capacity_sphere_result, capacity_torus_bounds, sphere_u_orbit, SpherePair, UImage, Witness,
};

pub use output::{OutputFormat, OutputRecord, Report, Row, VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "prequant-ech", version, about = "ECH combinatorics of prequantization bundles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Capacities c_k of sphere or torus bundles.
    Capacity(CapacityArgs),
    /// Null-class generators by grading or below an action limit.
    Generators(GeneratorsArgs),
    /// ECH index of Z_alpha + d[Sigma].
    Index(IndexArgs),
    /// U orbit of a sphere generator down to the empty set.
    Umap(UmapArgs),
    /// Compare capacity sequences of balls and ellipsoids.
    Obstruct(ObstructArgs),
    /// Gromov width bounds for the unit disk bundle.
    Gromov(GromovArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Base {
    Sphere,
    Torus,
}

#[derive(Debug, Args)]
struct CapacityArgs {
    #[arg(long, value_enum)]
    base: Base,
    #[arg(long, allow_negative_numbers = true)]
    euler: i64,
    #[arg(long)]
    k: u64,
    /// Emit every k from --k to --k-max.
    #[arg(long)]
    k_max: Option<u64>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("selector").required(true).args(["grading", "action_limit"])))]
struct GeneratorsArgs {
    #[arg(long)]
    genus: u32,
    #[arg(long, allow_negative_numbers = true)]
    euler: i64,
    #[arg(long, allow_negative_numbers = true)]
    grading: Option<i64>,
    /// `L` or `L:c`, compared against (2M, correction).
    #[arg(long)]
    action_limit: Option<String>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
}

#[derive(Debug, Args)]
struct IndexArgs {
    #[arg(long)]
    genus: u32,
    #[arg(long, allow_negative_numbers = true)]
    euler: i64,
    /// e.g. "e+^2 h1 e-^3"
    #[arg(long)]
    orbitset: String,
    #[arg(long, allow_negative_numbers = true)]
    d: i64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
}

#[derive(Debug, Args)]
struct UmapArgs {
    #[arg(long, allow_negative_numbers = true)]
    euler: i64,
    /// "m-:m+"
    #[arg(long)]
    start: String,
    #[arg(long)]
    trace: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
}

#[derive(Debug, Args)]
struct ObstructArgs {
    /// ball:A or ellipsoid:A,B
    #[arg(long)]
    source: String,
    #[arg(long)]
    target: String,
    #[arg(long)]
    k_max: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
}

#[derive(Debug, Args)]
struct GromovArgs {
    #[arg(long)]
    genus: u32,
    #[arg(long, allow_negative_numbers = true)]
    euler: i64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
}

/// Parses `argv` (including the program name), runs the subcommand and
/// writes to `out` / `err`. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_INPUT
                }
            };
            return code;
        }
    };
    let (report, format) = match dispatch(cli.command) {
        Ok(pair) => pair,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return if e.is_internal() { EXIT_INTERNAL } else { EXIT_INPUT };
        }
    };
    match report.render(format, out) {
        Ok(()) => EXIT_OK,
        // reader went away, e.g. `| head`
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn dispatch(command: Command) -> Result<(Report, OutputFormat)> {
    Ok(match command {
        Command::Capacity(a) => (capacity(&a)?, a.format),
        Command::Generators(a) => (generators(&a)?, a.format),
        Command::Index(a) => (index(&a)?, a.format),
        Command::Umap(a) => (umap(&a)?, a.format),
        Command::Obstruct(a) => (obstruct(&a)?, a.format),
        Command::Gromov(a) => (gromov(&a)?, a.format),
    })
}

fn witness_json(w: &Witness) -> Value {
    json!({"d": w.d, "m_plus": w.m_plus, "m_1": w.m_1, "m_2": w.m_2, "m_minus": w.m_minus})
}

fn witness_cell(w: &Witness) -> String {
    format!("{}:{}:{}:{}:{}", w.d, w.m_plus, w.m_1, w.m_2, w.m_minus)
}

fn capacity(a: &CapacityArgs) -> Result<Report> {
    let bundle = match a.base {
        Base::Sphere => PrequantizationBundle::new(0, a.euler)?,
        Base::Torus => PrequantizationBundle::new(1, a.euler)?,
    };
    let abs_e = bundle.abs_e();
    let k_max = a.k_max.unwrap_or(a.k);
    if k_max < a.k {
        return Err(Error::Precondition(format!("--k-max {k_max} < --k {}", a.k)));
    }
    let base = match a.base {
        Base::Sphere => "sphere",
        Base::Torus => "torus",
    };
    let mut report = match a.base {
        Base::Sphere => Report::new("capacity", vec!["k", "capacity"]),
        Base::Torus => Report::new(
            "capacity",
            vec!["k", "lower", "upper", "exact", "witness_lower", "witness_upper"],
        ),
    };
    for k in a.k..=k_max {
        let inputs = json!({"base": base, "euler": a.euler, "k": k});
        let row = match a.base {
            Base::Sphere => {
                let r = capacity_sphere_result(abs_e, k)?;
                Row {
                    inputs,
                    result: json!({"capacity": r.lower, "exact": true}),
                    witnesses: json!({"generator": witness_json(&r.witness_lower)}),
                    cells: vec![k.to_string(), r.lower.to_string()],
                }
            }
            Base::Torus => {
                let r = capacity_torus_bounds(abs_e, k)?;
                Row {
                    inputs,
                    result: json!({"lower": r.lower, "upper": r.upper, "exact": r.exact}),
                    witnesses: json!({
                        "lower": witness_json(&r.witness_lower),
                        "upper": witness_json(&r.witness_upper),
                    }),
                    cells: vec![
                        k.to_string(),
                        r.lower.to_string(),
                        r.upper.to_string(),
                        r.exact.to_string(),
                        witness_cell(&r.witness_lower),
                        witness_cell(&r.witness_upper),
                    ],
                }
            }
        };
        report.rows.push(row);
    }
    Ok(report)
}

fn generator_row(inputs: &Value, g: &GradedGenerator) -> Row {
    let hyp: Vec<String> = g.orbit_set.m_hyp.iter().map(u64::to_string).collect();
    Row {
        inputs: inputs.clone(),
        result: json!({
            "orbit_set": g.orbit_set.to_string(),
            "m_plus": g.orbit_set.m_plus,
            "m_hyp": g.orbit_set.m_hyp,
            "m_minus": g.orbit_set.m_minus,
            "d": g.d,
            "grading": g.grading,
            "action": {"leading": g.action.leading, "correction": g.action.correction.to_string()},
        }),
        witnesses: Value::Null,
        cells: vec![
            g.d.to_string(),
            g.orbit_set.m_plus.to_string(),
            hyp.join(" "),
            g.orbit_set.m_minus.to_string(),
            g.grading.to_string(),
            g.action.leading.to_string(),
            g.action.correction.to_string(),
            g.orbit_set.to_string(),
        ],
    }
}

fn generators(a: &GeneratorsArgs) -> Result<Report> {
    let bundle = PrequantizationBundle::new(a.genus, a.euler)?;
    let (inputs, gens) = match (&a.grading, &a.action_limit) {
        (Some(gr), _) => (
            json!({"genus": a.genus, "euler": a.euler, "grading": gr}),
            enumerate_by_grading(&bundle, *gr)?,
        ),
        (None, Some(limit)) => {
            let limit: ExactAction = limit.parse()?;
            (
                json!({"genus": a.genus, "euler": a.euler, "action_limit": {
                    "leading": limit.leading, "correction": limit.correction.to_string()}}),
                enumerate_by_action(&bundle, &MorseProfile::standard(a.genus), &limit)?,
            )
        }
        (None, None) => unreachable!("clap enforces the selector group"),
    };
    let mut report = Report::new(
        "generators",
        vec![
            "d",
            "m_plus",
            "m_hyp",
            "m_minus",
            "grading",
            "action_leading",
            "action_correction",
            "orbit_set",
        ],
    );
    report.rows = gens.iter().map(|g| generator_row(&inputs, g)).collect();
    Ok(report)
}

fn index(a: &IndexArgs) -> Result<Report> {
    let bundle = PrequantizationBundle::new(a.genus, a.euler)?;
    let alpha = OrbitSet::parse(&a.orbitset, a.genus)?;
    let value = ech_index(&bundle, &alpha, RelativeClassOffset::new(a.d))?;
    let mut report = Report::new("index", vec!["index"]);
    report.rows.push(Row {
        inputs: json!({"genus": a.genus, "euler": a.euler, "orbitset": alpha.to_string(), "d": a.d}),
        result: json!({"index": value}),
        witnesses: Value::Null,
        cells: vec![value.to_string()],
    });
    report.table_text = Some(value.to_string());
    Ok(report)
}

fn parse_start(s: &str) -> Result<SpherePair> {
    let bad = || Error::Parse(format!("start `{s}` must be `m-:m+`"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    Ok(SpherePair::new(
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn state_cell(s: &UImage) -> String {
    match s {
        UImage::Pair(p) => format!("{}:{}", p.m_minus, p.m_plus),
        UImage::Empty => "EMPTY".into(),
    }
}

fn umap(a: &UmapArgs) -> Result<Report> {
    let bundle = PrequantizationBundle::new(0, a.euler)?;
    let start = parse_start(&a.start)?;
    if start.m_minus == 0 && start.m_plus == 0 {
        return Err(Error::EmptyInput);
    }
    let orbit = sphere_u_orbit(bundle.abs_e(), start)?;
    let inputs = json!({"euler": a.euler, "start": state_cell(&UImage::Pair(start))});
    let steps = orbit.len() - 1;
    let mut report;
    if a.trace {
        report = Report::new("umap", vec!["step", "state", "grading"]);
        for (i, s) in orbit.iter().enumerate() {
            report.rows.push(Row {
                inputs: inputs.clone(),
                result: json!({"step": i, "state": state_cell(&s.state), "grading": s.grading}),
                witnesses: Value::Null,
                cells: vec![i.to_string(), s.state.to_string(), s.grading.to_string()],
            });
        }
    } else {
        report = Report::new("umap", vec!["start", "steps"]);
        let chain: Vec<String> = orbit.iter().map(|s| state_cell(&s.state)).collect();
        let gradings: Vec<i64> = orbit.iter().map(|s| s.grading).collect();
        report.rows.push(Row {
            inputs,
            result: json!({"steps": steps, "orbit": chain, "gradings": gradings}),
            witnesses: Value::Null,
            cells: vec![state_cell(&UImage::Pair(start)), steps.to_string()],
        });
        let arrows: Vec<String> = orbit.iter().map(|s| s.state.to_string()).collect();
        report.table_text = Some(arrows.join(" -> "));
    }
    Ok(report)
}

fn obstruct(a: &ObstructArgs) -> Result<Report> {
    let source = parse_domain(&a.source, a.k_max)?;
    let target = parse_domain(&a.target, a.k_max)?;
    let first = obstructs_embedding(&source, &target)?;
    let mut report = Report::new("obstruct", vec!["source", "target", "k_max", "obstructed", "first_k"]);
    let witnesses = match first {
        Some(k) => json!({
            "k": k,
            "source_value": source.values()[k].to_string(),
            "target_value": target.values()[k].to_string(),
        }),
        None => Value::Null,
    };
    report.rows.push(Row {
        inputs: json!({"source": source.label(), "target": target.label(), "k_max": a.k_max}),
        result: json!({"obstructed": first.is_some(), "first_k": first}),
        witnesses,
        cells: vec![
            source.label().to_string(),
            target.label().to_string(),
            a.k_max.to_string(),
            first.is_some().to_string(),
            first.map(|k| k.to_string()).unwrap_or_default(),
        ],
    });
    Ok(report)
}

fn gromov(a: &GromovArgs) -> Result<Report> {
    let bundle = PrequantizationBundle::new(a.genus, a.euler)?;
    let r = gromov_width_report(&bundle)?;
    let mut report = Report::new(
        "gromov",
        vec!["genus", "euler", "paper_bound", "capacity_c1", "best_bound", "genus_in_scope"],
    );
    report.rows.push(Row {
        inputs: json!({"genus": a.genus, "euler": a.euler}),
        result: json!({
            "paper_bound": r.paper_bound,
            "capacity_c1": r.capacity_c1,
            "best_bound": r.best_bound,
            "genus_in_scope": r.genus_in_scope,
        }),
        witnesses: Value::Null,
        cells: vec![
            r.genus.to_string(),
            r.euler.to_string(),
            r.paper_bound.to_string(),
            r.capacity_c1.map(|c| c.to_string()).unwrap_or_default(),
            r.best_bound.to_string(),
            r.genus_in_scope.to_string(),
        ],
    });
    Ok(report)
}
