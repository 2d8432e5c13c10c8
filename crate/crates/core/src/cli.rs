//! Command-line front end.
//!
//! `run` never prints or exits on its own; it returns the exit code and both
//! output streams so the binary and the tests share one code path.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::algcheck::{self, AlgebraData};
use crate::duality::{
    complement_dim_check, dual_presentation, verify_dual_identities, IdentityCheck,
};
use crate::error::{Error, Result};
use crate::exactla::{parse_rational, Rational};
use crate::expansion::{DimensionTable, Expander, DEFAULT_MAX_ARITY};
use crate::koszul::{koszul_necessary_check, poincare_series, PoincareSeries};
use crate::par::Exec;
use crate::presentations::{format_relation, parse_presentation, Builtin, Presentation};
use crate::treespace::{free_dim, OperadElement};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_INCONSISTENT: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    /// Quotient dimensions dim P(n)
    Dims,
    /// Dual presentation and its identity checks
    Dual,
    /// Poincaré series functional equation test
    Koszul,
    /// Identity checks on a structure-constant file
    Check,
    /// Poincaré series from computed dimensions
    Series,
    /// Relation and ideal dimensions per arity
    ExpandReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "quadop",
    version,
    about = "Exact computations with binary quadratic operads"
)]
pub struct Command {
    #[arg(value_enum)]
    pub verb: Verb,
    /// Builtin name (ass, vinb, prelie, g4ass, g5ass, lieadm) or file path
    pub target: String,
    #[arg(long, default_value_t = DEFAULT_MAX_ARITY, value_parser = parse_max_arity)]
    pub max_arity: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Run without the thread pool
    #[arg(long)]
    pub sequential: bool,
}

fn parse_max_arity(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if (3..=5).contains(&n) => Ok(n),
        _ => Err(format!("'{s}' is not an arity in 3..=5")),
    }
}

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Machine-readable report. The first five fields are always present;
/// verb-specific data goes in `extra`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonReport {
    pub name: String,
    pub dims: BTreeMap<usize, u64>,
    pub series: BTreeMap<usize, String>,
    pub verdict: Option<String>,
    pub identities: Vec<JsonIdentity>,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonIdentity {
    pub name: String,
    pub holds: bool,
}

impl JsonReport {
    fn new(name: &str) -> Self {
        JsonReport {
            name: name.to_string(),
            dims: BTreeMap::new(),
            series: BTreeMap::new(),
            verdict: None,
            identities: Vec::new(),
            extra: Map::new(),
        }
    }

    /// Parses the `series` field back into exact coefficients.
    pub fn series_coeffs(&self) -> Option<BTreeMap<usize, Rational>> {
        self.series
            .iter()
            .map(|(k, v)| parse_rational(v).map(|r| (*k, r)))
            .collect()
    }
}

/// Always `p/q`, also for integers.
pub fn fraction(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn series_map(s: &PoincareSeries) -> BTreeMap<usize, String> {
    (1..=s.truncation_order())
        .map(|n| (n, fraction(s.coeff(n))))
        .collect()
}

fn dims_map(t: &DimensionTable) -> BTreeMap<usize, u64> {
    t.dims.iter().map(|(&n, &d)| (n, d as u64)).collect()
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. } | Error::Labels { .. } => EXIT_PARSE,
        Error::Inconsistency(_) => EXIT_INCONSISTENT,
        _ => EXIT_INVALID,
    }
}

/// Parses `args` (without the program name) and executes the command.
pub fn run(args: &[String]) -> Output {
    let argv = std::iter::once("quadop".to_string()).chain(args.iter().cloned());
    let cmd = match Command::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Output {
                    code: EXIT_OK,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => Output {
                    code: EXIT_INVALID,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    match execute(&cmd) {
        Ok(stdout) => Output {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Output {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

struct Target {
    presentation: Presentation,
    notes: Vec<String>,
}

fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read '{path}': {e}")))
}

fn file_stem(path: &str) -> String {
    Path::new(path)
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.to_string())
}

fn load_target(target: &str) -> Result<Target> {
    if let Ok(b) = target.parse::<Builtin>() {
        return Ok(Target {
            presentation: b.presentation(),
            notes: Vec::new(),
        });
    }
    if !Path::new(target).exists() {
        return Err(Error::InvalidInput(format!(
            "'{target}' is neither a builtin ({}) nor an existing file",
            Builtin::ALL.map(|b| b.name()).join(", ")
        )));
    }
    let text = read_file(target)?;
    let parsed = parse_presentation(&text, &file_stem(target))?;
    let mut notes = parsed.warnings.clone();
    if parsed.closure_applied() {
        notes.push(format!(
            "relations were closed under the symmetric group: dimension {} -> {}",
            parsed.generator_span_dim,
            parsed.presentation.relations.dim()
        ));
    }
    Ok(Target {
        presentation: parsed.presentation,
        notes,
    })
}

fn execute(cmd: &Command) -> Result<String> {
    let exec = if cmd.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    let report = match cmd.verb {
        Verb::Check => check(&cmd.target)?,
        verb => {
            let target = load_target(&cmd.target)?;
            let mut r = match verb {
                Verb::Dims => dims(&target.presentation, cmd.max_arity, exec)?,
                Verb::Series => series(&target.presentation, cmd.max_arity, exec)?,
                Verb::Dual => dual(&target.presentation, cmd.max_arity, exec)?,
                Verb::Koszul => koszul(&target.presentation, cmd.max_arity, exec)?,
                Verb::ExpandReport => expand_report(&target.presentation, cmd.max_arity, exec)?,
                Verb::Check => unreachable!(),
            };
            r.notes.splice(0..0, target.notes);
            r
        }
    };
    Ok(match cmd.format {
        Format::Text => report.text + &render_notes(&report.notes),
        Format::Json => {
            let mut j = report.json;
            if !report.notes.is_empty() {
                j.extra.insert("notes".into(), json!(report.notes));
            }
            let mut s = serde_json::to_string_pretty(&j)
                .map_err(|e| Error::Inconsistency(format!("serialization failed: {e}")))?;
            s.push('\n');
            s
        }
    })
}

struct Report {
    text: String,
    json: JsonReport,
    notes: Vec<String>,
}

fn render_notes(notes: &[String]) -> String {
    notes.iter().map(|n| format!("note: {n}\n")).collect()
}

fn check_table(t: &DimensionTable) -> Result<()> {
    for (&n, &d) in &t.dims {
        let expected_low = match n {
            1 => Some(1),
            2 => Some(2),
            _ => None,
        };
        if expected_low.is_some_and(|e| e != d) || d > free_dim(n) {
            return Err(Error::Inconsistency(format!(
                "dim {}({n}) = {d} is impossible",
                t.operad_name
            )));
        }
    }
    Ok(())
}

fn dimension_table(p: &Presentation, n: usize, exec: Exec) -> Result<DimensionTable> {
    let t = Expander::new(exec).dimension_table(p, n)?;
    check_table(&t)?;
    Ok(t)
}

fn dims_text(t: &DimensionTable) -> String {
    let mut out = String::new();
    for (n, d) in &t.dims {
        let _ = writeln!(out, "{n:>3}  {d:>8}");
    }
    out
}

fn dims(p: &Presentation, n: usize, exec: Exec) -> Result<Report> {
    let t = dimension_table(p, n, exec)?;
    let s = poincare_series(&t)?;
    let mut json = JsonReport::new(&p.name);
    json.dims = dims_map(&t);
    json.series = series_map(&s);
    let text = format!("{}\n  n  dim P(n)\n{}", p.name, dims_text(&t));
    Ok(Report {
        text,
        json,
        notes: Vec::new(),
    })
}

fn series(p: &Presentation, n: usize, exec: Exec) -> Result<Report> {
    let t = dimension_table(p, n, exec)?;
    let s = poincare_series(&t)?;
    let mut json = JsonReport::new(&p.name);
    json.dims = dims_map(&t);
    json.series = series_map(&s);
    let mut text = format!("{}\ng(x) = {s}\n", p.name);
    for k in 1..=s.truncation_order() {
        let _ = writeln!(text, "  x^{k}  {:>10}", s.coeff(k));
    }
    Ok(Report {
        text,
        json,
        notes: Vec::new(),
    })
}

fn relation_lines(p: &Presentation) -> Vec<String> {
    p.relations
        .rows()
        .iter()
        .map(|r| format_relation(&OperadElement::from_coords(3, r)))
        .collect()
}

fn dual(p: &Presentation, n: usize, exec: Exec) -> Result<Report> {
    complement_dim_check(p)?;
    let d = dual_presentation(p)?;
    let (checks, notes): (Vec<IdentityCheck>, Vec<String>) = match verify_dual_identities(p) {
        Ok(r) => {
            let mut checks = r.checks;
            checks.push(IdentityCheck {
                name: "relations equal the closure of the expected identities".into(),
                holds: r.closure_matches,
            });
            (checks, Vec::new())
        }
        Err(Error::Unsupported(msg)) => (Vec::new(), vec![msg]),
        Err(e) => return Err(e),
    };
    let t = dimension_table(&d, n, exec)?;
    let s = poincare_series(&t)?;
    let lines = relation_lines(&d);

    let mut text = format!(
        "{} (dual of {})\nrelations: dimension {} of {}\n",
        d.name,
        p.name,
        d.relations.dim(),
        free_dim(3)
    );
    for l in &lines {
        let _ = writeln!(text, "  {l}");
    }
    if !checks.is_empty() {
        text.push_str("identities:\n");
        for c in &checks {
            let _ = writeln!(
                text,
                "  [{}] {}",
                if c.holds { "ok" } else { "FAILED" },
                c.name
            );
        }
    }
    let _ = write!(text, "  n  dim P!(n)\n{}", dims_text(&t));

    let mut json = JsonReport::new(&d.name);
    json.dims = dims_map(&t);
    json.series = series_map(&s);
    json.identities = checks
        .iter()
        .map(|c| JsonIdentity {
            name: c.name.clone(),
            holds: c.holds,
        })
        .collect();
    json.extra
        .insert("relation_dim".into(), json!(d.relations.dim()));
    json.extra.insert("relations".into(), json!(lines));
    Ok(Report { text, json, notes })
}

fn koszul(p: &Presentation, n: usize, exec: Exec) -> Result<Report> {
    let r = koszul_necessary_check(p, n, exec)?;
    check_table(&r.dims)?;
    check_table(&r.dual_dims)?;
    let mut text = format!("{}\n  n  dim P(n)  dim P!(n)\n", p.name);
    for k in 1..=n {
        let _ = writeln!(
            text,
            "{k:>3}  {:>8}  {:>9}",
            r.dims.get(k).unwrap_or(0),
            r.dual_dims.get(k).unwrap_or(0)
        );
    }
    let _ = write!(
        text,
        "g_P(x)          = {}\ng_P!(x)         = {}\ng_P(g_P!(x))    = {}\nverdict: {}\n",
        r.series, r.dual_series, r.composition, r.verdict
    );
    let mut json = JsonReport::new(&p.name);
    json.dims = dims_map(&r.dims);
    json.series = series_map(&r.series);
    json.verdict = Some(r.verdict.to_string());
    json.extra
        .insert("dual_dims".into(), json!(dims_map(&r.dual_dims)));
    json.extra
        .insert("dual_series".into(), json!(series_map(&r.dual_series)));
    json.extra
        .insert("composition".into(), json!(series_map(&r.composition)));
    Ok(Report {
        text,
        json,
        notes: r.notes,
    })
}

fn expand_report(p: &Presentation, n: usize, exec: Exec) -> Result<Report> {
    let tower = Expander::new(exec).ideal_tower(p, n)?;
    let mut text = format!(
        "{}\nrelations: dimension {} of {}\n  n     basis     ideal  quotient\n",
        p.name,
        p.relations.dim(),
        free_dim(3)
    );
    let mut ideal_dims = BTreeMap::new();
    let mut basis_sizes = BTreeMap::new();
    let mut table = DimensionTable {
        operad_name: p.name.clone(),
        dims: BTreeMap::from([(1, 1), (2, 2)]),
    };
    for k in 1..=2 {
        let _ = writeln!(
            text,
            "{k:>3}  {:>8}  {:>8}  {:>8}",
            free_dim(k),
            0,
            free_dim(k)
        );
        basis_sizes.insert(k, free_dim(k));
        ideal_dims.insert(k, 0);
    }
    for (k, ideal) in (3..=n).zip(&tower) {
        let (size, i) = (free_dim(k), ideal.dim());
        if i > size {
            return Err(Error::Inconsistency(format!(
                "ideal R({k}) larger than the free module"
            )));
        }
        let _ = writeln!(text, "{k:>3}  {size:>8}  {i:>8}  {:>8}", size - i);
        basis_sizes.insert(k, size);
        ideal_dims.insert(k, i);
        table.dims.insert(k, size - i);
    }
    check_table(&table)?;
    let mut json = JsonReport::new(&p.name);
    json.dims = dims_map(&table);
    json.series = series_map(&poincare_series(&table)?);
    json.extra
        .insert("relation_dim".into(), json!(p.relations.dim()));
    json.extra.insert("ideal_dims".into(), json!(ideal_dims));
    json.extra.insert("basis_sizes".into(), json!(basis_sizes));
    Ok(Report {
        text,
        json,
        notes: Vec::new(),
    })
}

fn check(path: &str) -> Result<Report> {
    let a = AlgebraData::parse(&read_file(path)?)?;
    let r = algcheck::report(&a);
    let mut identities: Vec<JsonIdentity> =
        r.gi.iter()
            .map(|(g, holds)| JsonIdentity {
                name: format!("{g}-associative"),
                holds: *holds,
            })
            .collect();
    identities.push(JsonIdentity {
        name: "Lie-admissible".into(),
        holds: r.lie_admissible,
    });
    identities.push(JsonIdentity {
        name: "commutator satisfies Jacobi".into(),
        holds: r.commutator_jacobi,
    });
    if r.lie_admissible != r.commutator_jacobi {
        return Err(Error::Inconsistency(
            "G6-associativity and Jacobi of the commutator disagree".into(),
        ));
    }
    let name = file_stem(path);
    let mut text = format!("{name}: algebra of dimension {}\n", r.dim);
    for i in &identities {
        let _ = writeln!(
            text,
            "  {:<30} {}",
            i.name,
            if i.holds { "yes" } else { "no" }
        );
    }
    let mut json = JsonReport::new(&name);
    json.identities = identities;
    json.extra.insert("algebra_dim".into(), json!(r.dim));
    json.extra
        .insert("commutative".into(), json!(r.commutative));
    Ok(Report {
        text,
        json,
        notes: Vec::new(),
    })
}
