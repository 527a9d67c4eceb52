use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use opennet::dirichlet::{circuits_equivalent, power_functional};
use opennet::field::{parse_expr, Field, Rational, RationalFunction};
use opennet::lti::{BehaviourRep, Machine, MatCospan, PolyMatrix, RegisterState, SfgTerm, Step};
use opennet::symplectic::{black_box, black_box_via_extended_power, LagrangianRelation};
use opennet::Error;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::circuit_doc::{CircuitDocument, NamedCircuit, Scalar};
use crate::error::CliError;
use crate::term_syntax::parse_term;

#[derive(Debug, Parser)]
#[command(name = "opennet", version, about = "Exact semantics for open circuits and signal-flow diagrams")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Field for circuit impedances; defaults to the documents' own field.
    #[arg(long, global = true, value_enum)]
    field: Option<FieldArg>,
    /// Use the slower black-box pipeline through the extended power.
    #[arg(long, global = true)]
    oracle: bool,
    /// Read TERM arguments as term text instead of file paths.
    #[arg(long, global = true)]
    expr: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FieldArg {
    Q,
    Qs,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Open resistor networks.
    #[command(subcommand)]
    Circuit(CircuitCommand),
    /// Signal-flow terms and linear time-invariant systems.
    #[command(subcommand)]
    Sfg(SfgCommand),
}

#[derive(Debug, Subcommand)]
enum CircuitCommand {
    /// Glue the outputs of the first circuit to the inputs of the second.
    Compose { first: PathBuf, second: PathBuf },
    /// The relation between terminal potentials and currents.
    Blackbox { file: PathBuf },
    /// Whether two circuits have the same external behaviour.
    Equiv { first: PathBuf, second: PathBuf },
    /// The power functional on the terminals.
    Power { file: PathBuf },
}

#[derive(Debug, Subcommand)]
enum SfgCommand {
    /// The denoting cospan and kernel representation.
    Denote { term: String },
    /// Whether two terms denote the same behaviour.
    Equiv { first: String, second: String },
    /// Whether the behaviour is controllable; prints the controllable part.
    Controllable { term: String },
    /// Whether a finite window of boundary values is realizable.
    CheckTrace(CheckTraceArgs),
    /// One forward tick from a register assignment.
    Step(StepArgs),
}

#[derive(Debug, Args)]
struct CheckTraceArgs {
    term: String,
    /// JSON file `{"init": [...], "window": [{"left": [...], "right": [...]}, ...]}`;
    /// `init` may be omitted to leave the registers free.
    window: PathBuf,
}

#[derive(Debug, Args)]
struct StepArgs {
    term: String,
    /// Comma-separated register values.
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    state: String,
    /// Comma-separated values on the left boundary.
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    left: String,
    /// Comma-separated values on the right boundary.
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    right: String,
}

/// What a command printed and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    holds: bool,
    text: String,
    json: Value,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { holds: true, text, json }
    }
}

/// Runs the command line `args` (program name first).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli) {
        Ok(report) => {
            let stdout = if cli.json {
                let mut s = serde_json::to_string_pretty(&report.json).expect("reports serialize");
                s.push('\n');
                s
            } else {
                report.text
            };
            Outcome { code: if report.holds { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Circuit(cmd) => {
            let docs = match cmd {
                CircuitCommand::Compose { first, second } | CircuitCommand::Equiv { first, second } => {
                    vec![read_document(first)?, read_document(second)?]
                }
                CircuitCommand::Blackbox { file } | CircuitCommand::Power { file } => vec![read_document(file)?],
            };
            let over_qs = match cli.field {
                Some(f) => f == FieldArg::Qs,
                None => docs.iter().any(|d| d.field == "Q(s)"),
            };
            if over_qs {
                circuit_command::<RationalFunction>(cli, cmd, &docs)
            } else {
                circuit_command::<Rational>(cli, cmd, &docs)
            }
        }
        Command::Sfg(cmd) => sfg_command(cli, cmd),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn read_document(path: &Path) -> Result<CircuitDocument, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| {
        CliError::Parse(format!("{}: line {}, column {}: {e}", path.display(), e.line(), e.column()))
    })
}

fn circuit_command<F: Field>(cli: &Cli, cmd: &CircuitCommand, docs: &[CircuitDocument]) -> Result<Report, CliError> {
    let circuits: Vec<NamedCircuit<F>> = docs.iter().map(|d| d.resolve()).collect::<Result<_, _>>()?;
    match cmd {
        CircuitCommand::Compose { .. } => {
            let c = circuits[0].compose(&circuits[1])?;
            Ok(Report::ok(c.print(), serde_json::to_value(c.document()).expect("documents serialize")))
        }
        CircuitCommand::Blackbox { .. } => {
            let c = &circuits[0];
            let rel = if cli.oracle { black_box_via_extended_power(&c.circuit)? } else { black_box(&c.circuit)? };
            Ok(Report::ok(relation_text(&rel), relation_json(&rel)))
        }
        CircuitCommand::Power { .. } => {
            let c = &circuits[0];
            let q = power_functional(&c.circuit)?;
            let names = c.boundary_names();
            let mut terms = Vec::new();
            let mut json_terms = Vec::new();
            for i in 0..names.len() {
                for j in i + 1..names.len() {
                    let coeff = q.coeff(i, j);
                    if !coeff.is_zero() {
                        terms.push(format!("({coeff})({} - {})^2", names[i], names[j]));
                        json_terms.push(json!({"between": [names[i], names[j]], "coefficient": coeff.to_string()}));
                    }
                }
            }
            let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
            let text = format!("terminals: {}\nP = {body}\n", names.join(" "));
            Ok(Report::ok(text, json!({"field": F::NAME, "terminals": names, "terms": json_terms})))
        }
        CircuitCommand::Equiv { .. } => {
            let (a, b) = (&circuits[0].circuit, &circuits[1].circuit);
            let verdict = if cli.oracle {
                match (black_box_via_extended_power(a), black_box_via_extended_power(b)) {
                    (Ok(x), Ok(y)) if x.dom() == y.dom() && x.cod() == y.cod() => Ok(x == y),
                    (Ok(x), Ok(y)) => Err(Error::IncompatibleBoundary(format!(
                        "{}→{} versus {}→{}",
                        x.dom().n(),
                        x.cod().n(),
                        y.dom().n(),
                        y.cod().n()
                    ))),
                    (Err(e), _) | (_, Err(e)) => Err(e),
                }
            } else {
                circuits_equivalent(a, b)
            };
            let (holds, reason) = match verdict {
                Ok(v) => (v, None),
                Err(Error::IncompatibleBoundary(msg)) => (false, Some(msg)),
                Err(e) => return Err(e.into()),
            };
            let text = match &reason {
                None if holds => "equivalent\n".to_string(),
                None => "not equivalent\n".to_string(),
                Some(r) => format!("not equivalent: {r}\n"),
            };
            Ok(Report { holds, text, json: json!({"equivalent": holds, "reason": reason}) })
        }
    }
}

fn relation_text<F: Field>(rel: &LagrangianRelation<F>) -> String {
    format!("relation {}→{} over {}, dimension {}\n{rel}", rel.dom().n(), rel.cod().n(), F::NAME, rel.space().dim())
}

fn relation_json<F: Field>(rel: &LagrangianRelation<F>) -> Value {
    let basis = rel.space().basis();
    let rows: Vec<Vec<String>> =
        (0..basis.rows()).map(|r| basis.row(r).iter().map(ToString::to_string).collect()).collect();
    json!({
        "field": F::NAME,
        "inputs": rel.dom().n(),
        "outputs": rel.cod().n(),
        "labels": rel.labels(),
        "basis": rows,
    })
}

fn load_term(cli: &Cli, arg: &str) -> Result<SfgTerm, CliError> {
    if cli.expr {
        parse_term(arg)
    } else {
        parse_term(&read(Path::new(arg))?).map_err(|e| match e {
            CliError::Parse(m) => CliError::Parse(format!("{arg}: {m}")),
            other => other,
        })
    }
}

fn matrix_json(m: &PolyMatrix) -> Value {
    Value::from((0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn behaviour_json(b: &BehaviourRep) -> Value {
    json!({"inputs": b.inputs(), "outputs": b.outputs(), "labels": b.labels(), "kernel": matrix_json(b.kernel_matrix())})
}

fn cospan_text(c: &MatCospan) -> String {
    format!("cospan {} → {} ← {}\nleft: {}\nright: {}\n", c.inputs(), c.apex(), c.outputs(), c.left(), c.right())
}

fn sfg_command(cli: &Cli, cmd: &SfgCommand) -> Result<Report, CliError> {
    match cmd {
        SfgCommand::Denote { term } => {
            let t = load_term(cli, term)?;
            let c = t.denote()?;
            let b = c.behaviour();
            let text = format!("term: {t}\n{}behaviour [A -B]:\n{b}", cospan_text(&c));
            let json = json!({
                "term": t.to_string(),
                "cospan": {"apex": c.apex(), "left": matrix_json(c.left()), "right": matrix_json(c.right())},
                "behaviour": behaviour_json(&b),
            });
            Ok(Report::ok(text, json))
        }
        SfgCommand::Equiv { first, second } => {
            let (a, b) = (load_term(cli, first)?, load_term(cli, second)?);
            let (ta, tb) = (a.typ()?, b.typ()?);
            let (holds, reason) = if ta != tb {
                (false, Some(format!("{}→{} versus {}→{}", ta.0, ta.1, tb.0, tb.1)))
            } else {
                (a.denote()?.behaviour().equivalent(&b.denote()?.behaviour()), None)
            };
            let text = match &reason {
                None if holds => "equivalent\n".to_string(),
                None => "not equivalent\n".to_string(),
                Some(r) => format!("not equivalent: {r}\n"),
            };
            Ok(Report { holds, text, json: json!({"equivalent": holds, "reason": reason}) })
        }
        SfgCommand::Controllable { term } => {
            let c = load_term(cli, term)?.denote()?;
            let holds = c.is_controllable();
            let part = c.controllable_part();
            let text = format!(
                "{}\nbehaviour [A -B]:\n{}controllable part [A -B]:\n{}",
                if holds { "controllable" } else { "not controllable" },
                c.behaviour(),
                part.behaviour()
            );
            let json = json!({
                "controllable": holds,
                "behaviour": behaviour_json(&c.behaviour()),
                "controllable_part": behaviour_json(&part.behaviour()),
            });
            Ok(Report { holds, text, json })
        }
        SfgCommand::CheckTrace(args) => {
            let machine = Machine::new(&load_term(cli, &args.term)?)?;
            let doc: WindowDocument = serde_json::from_str(&read(&args.window)?).map_err(|e| {
                CliError::Parse(format!("{}: line {}, column {}: {e}", args.window.display(), e.line(), e.column()))
            })?;
            let window = doc
                .window
                .iter()
                .enumerate()
                .map(|(t, tick)| {
                    Ok((
                        scalars(&tick.left, &format!("window[{t}].left"))?,
                        scalars(&tick.right, &format!("window[{t}].right"))?,
                    ))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let init = doc.init.as_ref().map(|v| scalars(v, "init").map(RegisterState)).transpose()?;
            if window.is_empty() {
                return Err(CliError::Usage("the window needs at least one tick".into()));
            }
            let holds = machine.check_trace(&window, init.as_ref())?;
            let text = format!("{}\n", if holds { "realizable" } else { "not realizable" });
            Ok(Report { holds, text, json: json!({"realizable": holds, "ticks": window.len()}) })
        }
        SfgCommand::Step(args) => {
            let machine = Machine::new(&load_term(cli, &args.term)?)?;
            let state = RegisterState(list(&args.state, "--state")?);
            let boundary = (list(&args.left, "--left")?, list(&args.right, "--right")?);
            let (holds, text, json) = match machine.step(&state, &boundary)? {
                Step::Next(next) => {
                    let vals: Vec<String> = next.0.iter().map(ToString::to_string).collect();
                    (true, format!("next {next}\n"), json!({"result": "next", "state": vals}))
                }
                Step::Infeasible => (false, "infeasible\n".into(), json!({"result": "infeasible"})),
                Step::Nondeterminate => (false, "nondeterminate\n".into(), json!({"result": "nondeterminate"})),
            };
            Ok(Report { holds, text, json })
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct WindowDocument {
    #[serde(default)]
    init: Option<Vec<Scalar>>,
    window: Vec<TickDocument>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TickDocument {
    left: Vec<Scalar>,
    right: Vec<Scalar>,
}

fn rational(src: &str, ctx: &str) -> Result<Rational, CliError> {
    parse_expr(src)
        .ok()
        .and_then(|f| f.as_constant())
        .ok_or_else(|| CliError::Parse(format!("{ctx}: `{src}` is not a rational number")))
}

fn scalars(values: &[Scalar], ctx: &str) -> Result<Vec<Rational>, CliError> {
    values.iter().enumerate().map(|(k, v)| rational(&v.source(), &format!("{ctx}[{k}]"))).collect()
}

fn list(src: &str, ctx: &str) -> Result<Vec<Rational>, CliError> {
    if src.trim().is_empty() {
        return Ok(Vec::new());
    }
    src.split(',').enumerate().map(|(k, s)| rational(s.trim(), &format!("{ctx}[{k}]"))).collect()
}
