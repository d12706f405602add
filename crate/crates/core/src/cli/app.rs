use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use super::formats::{load_algebra, read_surface_file, FormatError};
use super::suite::{run_reference_suite, SCHEMA_VERSION};
use crate::algebra::{Algebra, AlgebraError};
use crate::autalg::{compute_aut, s_exhaustion_report, AutError, AutOptions, GradedAutBasis};
use crate::flow::{exponentiate, s_flow_check, verify_flow_tangency, DEFAULT_ORDER};
use crate::surface::{
    algebraize, check_fd_condition, check_finite_type_linear,
    check_holomorphic_nondegeneracy_bounded, default_nondegeneracy_degree, FdOutcome,
    HolNondegeneracy, ModelSurface, SurfaceError, DEFAULT_SEED,
};

#[derive(Debug, Parser)]
#[command(
    name = "cralg",
    version,
    about = "Automorphism algebras of algebraized CR model surfaces"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for random sampling; defaults to $CRALG_SEED, then 0x5eed.
    #[arg(long, global = true)]
    pub seed: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Algebra definitions.
    Algebra {
        #[command(subcommand)]
        action: ValidateAction,
    },
    /// Surface definitions.
    Surface {
        #[command(subcommand)]
        action: ValidateAction,
    },
    /// Expand a surface over an algebra into scalar coordinates.
    Algebraize {
        surface: String,
        #[arg(long)]
        algebra: String,
    },
    /// Graded basis of the automorphism algebra.
    Aut {
        surface: String,
        #[command(flatten)]
        range: Range,
        /// Algebraize first and split off the algebra-holomorphic part.
        #[arg(long)]
        algebra: Option<String>,
    },
    /// Compare a surface with its algebraization weight by weight.
    SReport {
        surface: String,
        #[arg(long)]
        algebra: String,
        #[command(flatten)]
        range: Range,
    },
    /// Truncated flow of one basis field.
    Flow {
        surface: String,
        /// 1-based index into the basis listed by `aut`.
        #[arg(long)]
        field: usize,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: u16,
        #[arg(long)]
        algebra: Option<String>,
        #[command(flatten)]
        range: Range,
    },
    /// Run the reference scenarios; exits nonzero on any mismatch.
    PaperSuite {
        #[command(flatten)]
        range: Range,
    },
}

#[derive(Debug, Subcommand)]
pub enum ValidateAction {
    Validate { input: String },
}

#[derive(Debug, Args)]
pub struct Range {
    /// Highest field weight to solve for.
    #[arg(long, allow_hyphen_values = true)]
    pub max_weight: Option<i64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: String,
    pub message: String,
}

impl CliError {
    fn new(code: &str, message: impl Into<String>) -> Self {
        CliError {
            code: code.to_string(),
            message: message.into(),
        }
    }

    /// Single line: `error[<code>]: <message>`.
    pub fn line(&self) -> String {
        let msg: String = self.message.lines().collect::<Vec<_>>().join(" ");
        format!("error[{}]: {}", self.code, msg.trim())
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::new(e.code(), e.to_string())
    }
}

impl From<AutError> for CliError {
    fn from(e: AutError) -> Self {
        CliError::new(e.code(), e.to_string())
    }
}

impl From<SurfaceError> for CliError {
    fn from(e: SurfaceError) -> Self {
        CliError::new(e.code(), e.to_string())
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        FormatError::from(e).into()
    }
}

/// Rendered output and exit status of a successful command.
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

fn ok(stdout: String) -> Result<Output, CliError> {
    Ok(Output { stdout, code: 0 })
}

fn to_json(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn resolve_seed(flag: Option<&str>, env: Option<String>) -> Result<u64, CliError> {
    let Some(text) = flag.map(str::to_string).or(env) else {
        return Ok(DEFAULT_SEED);
    };
    let t = text.trim();
    let parsed = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => t.parse(),
    };
    parsed.map_err(|_| {
        CliError::new(
            "BadSeed",
            format!("seed `{text}` is not an unsigned integer"),
        )
    })
}

fn load_surface(
    path: &str,
    algebra: Option<&str>,
) -> Result<(ModelSurface, Option<Algebra>), CliError> {
    let q = read_surface_file(path)?;
    match algebra {
        None => Ok((q, None)),
        Some(spec) => {
            let a = load_algebra(spec)?;
            Ok((algebraize(&q, &a)?, Some(a)))
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let seed = resolve_seed(cli.seed.as_deref(), std::env::var("CRALG_SEED").ok())?;
    match &cli.command {
        Command::Algebra {
            action: ValidateAction::Validate { input },
        } => algebra_validate(input, cli.json),
        Command::Surface {
            action: ValidateAction::Validate { input },
        } => surface_validate(input, seed, cli.json),
        Command::Algebraize { surface, algebra } => {
            let (qa, _) = load_surface(surface, Some(algebra))?;
            if cli.json {
                ok(to_json(&surface_json(&qa)))
            } else {
                ok(qa.to_text())
            }
        }
        Command::Aut {
            surface,
            range,
            algebra,
        } => {
            let (q, a) = load_surface(surface, algebra.as_deref())?;
            let b = compute_aut(
                &q,
                &AutOptions {
                    max_weight: range.max_weight,
                    with_s_part: a.is_some(),
                },
            )?;
            if cli.json {
                ok(to_json(&aut_json(&b)))
            } else {
                ok(aut_text(&b))
            }
        }
        Command::SReport {
            surface,
            algebra,
            range,
        } => s_report(surface, algebra, range.max_weight, cli.json),
        Command::Flow {
            surface,
            field,
            order,
            algebra,
            range,
        } => flow(
            surface,
            *field,
            *order,
            algebra.as_deref(),
            range.max_weight,
            cli.json,
        ),
        Command::PaperSuite { range } => {
            let report = run_reference_suite(range.max_weight)?;
            let code = if report.ok() { 0 } else { 1 };
            let stdout = if cli.json {
                to_json(&report)
            } else {
                report.render_text()
            };
            Ok(Output { stdout, code })
        }
    }
}

fn algebra_validate(input: &str, json: bool) -> Result<Output, CliError> {
    let a = load_algebra(input)?;
    if json {
        let constants: Vec<Value> = (0..a.dim())
            .flat_map(|i| (i..a.dim()).map(move |j| (i, j)))
            .filter_map(|(i, j)| {
                let coords: Vec<String> = (0..a.dim())
                    .map(|k| a.constant(i, j, k).to_string())
                    .collect();
                coords.iter().any(|c| c != "0").then(
                    || json!({"left": a.labels()[i], "right": a.labels()[j], "product": coords}),
                )
            })
            .collect();
        return ok(to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "name": a.name(),
            "dim": a.dim(),
            "basis": a.labels(),
            "local": a.is_local(),
            "products": constants,
            "valid": true,
        })));
    }
    let mut out = a.to_text();
    let _ = writeln!(
        out,
        "# valid: commutative, associative, unital; local: {}",
        yes_no(a.is_local())
    );
    ok(out)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn surface_json(q: &ModelSurface) -> Value {
    let t = q.table();
    let weights: serde_json::Map<String, Value> = (0..q.n() + q.k())
        .map(|p| (t.name(p).to_string(), json!(t.hol_weight(p))))
        .collect();
    let phi: Vec<Value> = (0..q.k())
        .map(|j| json!({"lhs": format!("Im{}", t.name(q.w_pos(j))), "rhs": q.phi()[j].to_string()}))
        .collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "n": q.n(),
        "k": q.k(),
        "weights": weights,
        "equations": phi,
        "algebra": q.algebraization().map(|a| a.algebra.name().to_string()),
    })
}

fn surface_validate(input: &str, seed: u64, json: bool) -> Result<Output, CliError> {
    let q = read_surface_file(input)?;
    let finite = check_finite_type_linear(&q);
    let d = default_nondegeneracy_degree(&q);
    let hol = check_holomorphic_nondegeneracy_bounded(&q, d);
    let bideg = q.is_bidegree_22();
    let fd = if bideg {
        Some(check_fd_condition(&q, seed)?)
    } else {
        None
    };
    let hol_text = match &hol {
        HolNondegeneracy::NondegenerateUpTo(d) => {
            format!("no tangent holomorphic field up to degree {d}")
        }
        HolNondegeneracy::Degenerate(x) => format!("degenerate, witness {x}"),
    };
    let fd_text = match &fd {
        None => "not applicable (forms are not of bidegree (2,2))".to_string(),
        Some(FdOutcome::Holds { samples, .. }) => format!("holds (found at sample {samples})"),
        Some(FdOutcome::Inconclusive { samples }) => {
            format!("inconclusive after {samples} samples")
        }
    };
    if json {
        let mut v = surface_json(&q);
        let m = v.as_object_mut().expect("object");
        m.insert("valid".into(), json!(true));
        m.insert("bidegree_22".into(), json!(bideg));
        m.insert("u_independent".into(), json!(q.is_u_independent()));
        m.insert("forms_independent".into(), json!(finite));
        m.insert("holomorphic_nondegeneracy".into(), json!(hol_text));
        m.insert("fd".into(), json!(fd.as_ref().map(FdOutcome::holds)));
        m.insert("fd_detail".into(), json!(fd_text));
        m.insert("seed".into(), json!(seed));
        return ok(to_json(&v));
    }
    let mut out = q.to_text();
    let _ = writeln!(out, "# valid: real and weighted-homogeneous");
    let _ = writeln!(out, "# bidegree (2,2): {}", yes_no(bideg));
    let _ = writeln!(out, "# u-independent: {}", yes_no(q.is_u_independent()));
    let _ = writeln!(out, "# forms linearly independent: {}", yes_no(finite));
    let _ = writeln!(out, "# holomorphic nondegeneracy: {hol_text}");
    let _ = writeln!(out, "# (fd) condition: {fd_text}");
    ok(out)
}

fn aut_json(b: &GradedAutBasis) -> Value {
    let components: Vec<Value> = b
        .components
        .iter()
        .map(|c| {
            json!({
                "weight": c.weight,
                "dim": c.dim(),
                "s_dim": b.algebra.as_ref().map(|_| c.s_dim()),
                "basis": c.fields.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "s_basis_indices": b.algebra.as_ref().map(|_| c.s_indices()),
            })
        })
        .collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "surface": surface_json(&b.surface),
        "floor": b.floor,
        "cap": b.cap,
        "components": components,
        "total_dim": b.total_dim(),
        "total_s_dim": b.algebra.as_ref().map(|_| b.components.iter().map(|c| c.s_dim()).sum::<usize>()),
        "cap_disclosure": b.cap_disclosure(),
    })
}

fn aut_text(b: &GradedAutBasis) -> String {
    let with_s = b.algebra.is_some();
    let mut out = String::new();
    let _ = writeln!(out, "{}", b.cap_disclosure());
    let _ = writeln!(
        out,
        "{:>6} {:>4}{}",
        "weight",
        "dim",
        if with_s { "  s_dim" } else { "" }
    );
    for c in &b.components {
        if with_s {
            let _ = writeln!(out, "{:>6} {:>4} {:>6}", c.weight, c.dim(), c.s_dim());
        } else {
            let _ = writeln!(out, "{:>6} {:>4}", c.weight, c.dim());
        }
    }
    let _ = writeln!(out, "total {}", b.total_dim());
    let _ = writeln!(out, "basis:");
    let mut index = 0;
    for c in &b.components {
        for (i, x) in c.fields.iter().enumerate() {
            index += 1;
            let mark = if with_s && c.s_flags[i] { " [S]" } else { "" };
            let _ = writeln!(out, "  [{index}] weight {}{mark}: {x}", c.weight);
        }
    }
    out
}

fn s_report(
    surface: &str,
    algebra: &str,
    max_weight: Option<i64>,
    json: bool,
) -> Result<Output, CliError> {
    let q = read_surface_file(surface)?;
    let a = load_algebra(algebra)?;
    let r = s_exhaustion_report(&q, &a, max_weight)?;
    if json {
        let rows: Vec<Value> = r
            .rows
            .iter()
            .map(|row| {
                json!({
                    "weight": row.weight,
                    "dim_base": row.dim_base,
                    "l_times_dim_base": row.scaled_base,
                    "s_dim": row.s_dim,
                    "dim": row.dim_alg,
                    "scaling_holds": row.scaling_holds,
                    "exhausted": row.exhausted,
                })
            })
            .collect();
        return ok(to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "algebra": r.algebra,
            "l": r.l,
            "rows": rows,
            "scaling_holds": r.scaling_holds(),
            "exhausted": r.exhausted(),
            "cap_disclosure": r.algebraized.cap_disclosure(),
        })));
    }
    let mut out = String::new();
    let _ = writeln!(out, "algebra {} (l = {})", r.algebra, r.l);
    let _ = writeln!(out, "{}", r.algebraized.cap_disclosure());
    let _ = writeln!(
        out,
        "{:>6} {:>8} {:>10} {:>6} {:>4} {:>8} {:>9}",
        "weight", "dim_base", "l*dim_base", "s_dim", "dim", "scaling", "exhausted"
    );
    for row in &r.rows {
        let _ = writeln!(
            out,
            "{:>6} {:>8} {:>10} {:>6} {:>4} {:>8} {:>9}",
            row.weight,
            row.dim_base,
            row.scaled_base,
            row.s_dim,
            row.dim_alg,
            yes_no(row.scaling_holds),
            yes_no(row.exhausted)
        );
    }
    let _ = writeln!(
        out,
        "scaling holds at every weight: {}",
        yes_no(r.scaling_holds())
    );
    let _ = writeln!(
        out,
        "algebra-holomorphic part exhausts the algebra: {}",
        yes_no(r.exhausted())
    );
    ok(out)
}

fn flow(
    surface: &str,
    index: usize,
    order: u16,
    algebra: Option<&str>,
    max_weight: Option<i64>,
    json: bool,
) -> Result<Output, CliError> {
    if order == 0 {
        return Err(CliError::new("BadOrder", "--order must be at least 1"));
    }
    let (q, a) = load_surface(surface, algebra)?;
    let b = compute_aut(
        &q,
        &AutOptions {
            max_weight,
            with_s_part: a.is_some(),
        },
    )?;
    let total = b.total_dim();
    let Some((weight, x)) = index.checked_sub(1).and_then(|i| b.fields().nth(i)) else {
        return Err(CliError::new(
            "BadFieldIndex",
            format!("field index {index} is outside 1..={total}"),
        ));
    };
    let f = exponentiate(x, order);
    let tangency = verify_flow_tangency(&q, &f)?;
    let s_check = match a {
        Some(_) => Some(s_flow_check(&q, &f)?),
        None => None,
    };
    if json {
        return ok(to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "index": index,
            "weight": weight,
            "flow": f.to_json(),
            "tangent": tangency.ok,
            "first_bad_order": tangency.first_bad_order,
            "algebra_holomorphic": s_check,
        })));
    }
    let mut out = String::new();
    let _ = writeln!(out, "field [{index}] weight {weight}: {x}");
    let _ = writeln!(out, "flow through {}^{}:", f.t_name(), f.order());
    for line in f.render() {
        let _ = writeln!(out, "  {line}");
    }
    let _ = writeln!(out, "series terminates: {}", yes_no(f.terminates()));
    match tangency.first_bad_order {
        None => {
            let _ = writeln!(out, "tangent modulo {}^{}: yes", f.t_name(), order + 1);
        }
        Some(m) => {
            let _ = writeln!(
                out,
                "tangent modulo {}^{}: no (first defect at order {m})",
                f.t_name(),
                order + 1
            );
        }
    }
    if let Some(s) = s_check {
        let _ = writeln!(out, "regroups into algebra variables: {}", yes_no(s));
    }
    ok(out)
}

/// Parses arguments, runs the command and prints; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(
                e.kind(),
                ErrorKind::DisplayHelp
                    | ErrorKind::DisplayVersion
                    | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            ) {
                print!("{e}");
                return if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                    2
                } else {
                    0
                };
            }
            let first = e.to_string();
            let msg = first
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ");
            eprintln!("{}", CliError::new("UsageError", msg).line());
            return 2;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            out.code
        }
        Err(e) => {
            eprintln!("{}", e.line());
            2
        }
    }
}
