//! `concur`: validate, transform, check and analyse computation traces.
//!
//! Exit codes: 0 success, 2 semantic error, 3 parse or I/O error, 4 usage
//! error, 5 enumeration guard exceeded.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use concur::analysis::{
    find_useless_checkpoints, CheckpointMarking, CutPredicate, Engine, WidthPredicate,
};
use concur::lattice::{enumerate_event_cuts_in, enumerate_state_cuts, Order};
use concur::state::{check_interleaving_consistent, check_width_extensible, Property, PropertyReport};
use concur::trace::{self, LoadOptions, Trace, TraceError};
use concur::transform::{es_transform, se_transform, SeOutcome};
use concur::{Error, EventModel, StateModel};

const EXIT_SEMANTIC: u8 = 2;
const EXIT_PARSE: u8 = 3;
const EXIT_USAGE: u8 = 4;
const EXIT_GUARD: u8 = 5;

#[derive(Parser)]
#[command(name = "concur", version, about = "Event and state models of concurrent computations")]
struct Cli {
    /// Accept processes without events in event traces.
    #[arg(long, global = true)]
    allow_empty_process: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a trace file describes a valid model.
    Validate { path: PathBuf },
    /// Convert between event and state models.
    Transform {
        path: PathBuf,
        #[arg(long, value_enum)]
        direction: Direction,
    },
    /// Decide structural properties of a state model or poset.
    Check {
        path: PathBuf,
        /// Comma-separated subset of omega1,omega2,omega3,psi,we,ic.
        #[arg(long, value_delimiter = ',', default_value = "omega1,omega2,omega3,psi,we,ic")]
        properties: Vec<String>,
    },
    /// Stream consistent cuts as JSON lines, then a count record.
    Cuts {
        path: PathBuf,
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 1_000_000)]
        max_cuts: u64,
        #[arg(long, value_enum, default_value = "lexicographic")]
        order: CutOrder,
    },
    /// Predicate detection and checkpoint analysis.
    Analyze {
        #[command(subcommand)]
        what: Analysis,
    },
}

#[derive(Subcommand)]
enum Analysis {
    /// Find the global states satisfying a predicate.
    Predicate {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        pred: PathBuf,
        /// Report only the first satisfying global state.
        #[arg(long, conflicts_with = "count")]
        first: bool,
        /// Report only the number of satisfying global states.
        #[arg(long)]
        count: bool,
        /// Stop after examining this many global states.
        #[arg(long, default_value_t = 1_000_000)]
        max_cuts: u64,
    },
    /// Classify checkpoints as useful or useless.
    Checkpoints {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        marks: PathBuf,
        #[arg(long, value_enum, default_value = "fast")]
        engine: EngineArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    Es,
    Se,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Downsets,
    Antichains,
}

#[derive(Clone, Copy, ValueEnum)]
enum CutOrder {
    Lexicographic,
    Level,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Fast,
    Oracle,
    Both,
}

/// A failed command: exit code plus what to print.
struct Failure {
    code: u8,
    stdout: Option<Value>,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            stdout: None,
            message: message.into(),
        }
    }

    fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PARSE,
            stdout: None,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: EXIT_SEMANTIC,
            stdout: Some(json!({ "error": { "code": e.code(), "message": e.to_string() } })),
            message: e.to_string(),
        }
    }
}

impl From<TraceError> for Failure {
    fn from(e: TraceError) -> Self {
        match e {
            TraceError::Parse(m) => Failure::parse(m),
            TraceError::Model(e) => e.into(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::parse(format!("I/O error: {e}"))
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

fn load(path: &Path, options: LoadOptions) -> Result<Trace, Failure> {
    let text = read(path)?;
    trace::parse_trace(&text, options).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

fn emit(out: &mut impl Write, v: &Value) -> io::Result<()> {
    out.write_all(trace::to_canonical_string(v).as_bytes())?;
    out.flush()
}

fn emit_line(out: &mut impl Write, v: &Value) -> io::Result<()> {
    writeln!(out, "{v}")?;
    out.flush()
}

/// State view of a trace: state kind as is, poset kind through its chains.
fn as_state_model(t: Trace, command: &str) -> Result<StateModel, Failure> {
    match t {
        Trace::State(sm) => Ok(sm),
        Trace::Poset {
            poset,
            chains: Some(cp),
        } => Ok(StateModel::new(poset, cp)),
        other => Err(Failure::usage(format!(
            "{command} needs a state trace (or a poset with chains), got {}",
            other.kind()
        ))),
    }
}

fn validate(path: &Path, options: LoadOptions, out: &mut impl Write) -> Outcome {
    let t = match load(path, options) {
        Ok(t) => t,
        Err(mut f) => {
            let reason = f
                .stdout
                .take()
                .map(|v| v["error"].clone())
                .unwrap_or_else(|| json!({ "code": "parse", "message": f.message }));
            f.stdout = Some(json!({ "valid": false, "error": reason }));
            return Err(f);
        }
    };
    let mut report = json!({ "valid": true, "kind": t.kind() });
    match &t {
        Trace::Event(m) => {
            report["elements"] = json!(m.poset().len());
            report["processes"] = json!(m.n());
            report["asc"] = json!(m.is_asc());
        }
        Trace::State(sm) => {
            report["elements"] = json!(sm.poset().len());
            report["chains"] = json!(sm.n());
        }
        Trace::Poset { poset, chains } => {
            report["elements"] = json!(poset.len());
            report["width"] = json!(poset.width().0);
            if let Some(cp) = chains {
                report["chains"] = json!(cp.len());
            }
        }
    }
    emit(out, &report)?;
    Ok(())
}

fn transform(path: &Path, direction: Direction, options: LoadOptions, out: &mut impl Write) -> Outcome {
    let t = load(path, options)?;
    match direction {
        Direction::Es => {
            let Trace::Event(m) = t else {
                return Err(Failure::usage(format!(
                    "--direction es needs an event trace, got {}",
                    t.kind()
                )));
            };
            emit(out, &trace::state_to_value(&es_transform(&m)))?;
        }
        Direction::Se => {
            let Trace::State(sm) = t else {
                return Err(Failure::usage(format!(
                    "--direction se needs a state trace, got {}",
                    t.kind()
                )));
            };
            match se_transform(&sm)? {
                SeOutcome::Model(m) => emit(out, &trace::event_to_value(&m))?,
                SeOutcome::Invalid(report) => {
                    return Err(Failure {
                        code: EXIT_SEMANTIC,
                        stdout: Some(json!({ "invalid": report })),
                        message: format!("not a valid state model: {report}"),
                    });
                }
            }
        }
    }
    Ok(())
}

fn check(path: &Path, names: &[String], options: LoadOptions, out: &mut impl Write) -> Outcome {
    let mut properties = Vec::new();
    for name in names {
        let p = Property::parse(name.trim())
            .ok_or_else(|| Failure::usage(format!("unknown property `{name}`")))?;
        if !properties.contains(&p) {
            properties.push(p);
        }
    }
    let t = load(path, options)?;
    let report = match t {
        Trace::Poset {
            poset,
            chains: None,
        } => {
            let mut report = PropertyReport::default();
            for p in properties {
                match p {
                    Property::WidthExtensible => {
                        report.width_extensible = Some(check_width_extensible(&poset))
                    }
                    Property::InterleavingConsistent => {
                        report.interleaving_consistent = Some(check_interleaving_consistent(&poset)?)
                    }
                    _ => {
                        return Err(Failure::usage(
                            "a poset without chains supports only we and ic",
                        ))
                    }
                }
            }
            report
        }
        t => as_state_model(t, "check")?.report(&properties)?,
    };
    emit(out, &serde_json::to_value(report).expect("report serializes"))?;
    Ok(())
}

fn guard_exceeded(max: u64) -> Failure {
    Failure {
        code: EXIT_GUARD,
        stdout: None,
        message: format!("more than {max} cuts; raise --max-cuts to see them all"),
    }
}

fn cuts(
    path: &Path,
    family: Family,
    max_cuts: u64,
    order: CutOrder,
    options: LoadOptions,
    out: &mut impl Write,
) -> Outcome {
    let order = match order {
        CutOrder::Lexicographic => Order::Lexicographic,
        CutOrder::Level => Order::Level,
    };
    let t = load(path, options)?;
    let mut count = 0u64;
    match family {
        Family::Downsets => {
            let m = match t {
                Trace::Event(m) => m,
                Trace::State(sm) => EventModel::from_chains(sm.poset().clone(), sm.chains())?,
                Trace::Poset { poset, chains } => {
                    let cp = chains.unwrap_or_else(|| poset.minimum_chain_partition());
                    EventModel::from_chains(poset, &cp)?
                }
            };
            for cut in enumerate_event_cuts_in(&m, order) {
                if count == max_cuts {
                    return Err(guard_exceeded(max_cuts));
                }
                emit_line(out, &json!({ "events": cut.names(&m) }))?;
                count += 1;
            }
        }
        Family::Antichains => {
            let sm = match t {
                Trace::Event(_) => {
                    return Err(Failure::usage(
                        "antichains need a state or poset trace; transform the events first",
                    ))
                }
                Trace::State(sm) => sm,
                Trace::Poset { poset, chains } => match chains {
                    Some(cp) => StateModel::new(poset, cp),
                    None => StateModel::from_poset(poset),
                },
            };
            let mut stream = enumerate_state_cuts(&sm, order)?;
            while let Some(w) = stream.next() {
                if count == max_cuts {
                    return Err(guard_exceeded(max_cuts));
                }
                emit_line(out, &json!({ "states": w.names(stream.state_model()) }))?;
                count += 1;
            }
        }
    }
    emit_line(out, &json!({ "count": count }))?;
    Ok(())
}

/// How `analyze predicate` reports.
#[derive(Clone, Copy, PartialEq, Eq)]
enum PredicateMode {
    All,
    First,
    Count,
}

fn analyze_predicate(
    model: &Path,
    pred: &Path,
    mode: PredicateMode,
    max_cuts: u64,
    options: LoadOptions,
    out: &mut impl Write,
) -> Outcome {
    let sm = as_state_model(load(model, options)?, "analyze predicate")?;
    let pred: WidthPredicate = load_json(pred)?;
    let all = enumerate_state_cuts(&sm, Order::Lexicographic)?;
    let view = all.state_model().clone();
    let mut matches = 0u64;
    let mut first = None;
    for (examined, w) in (0u64..).zip(all) {
        if examined == max_cuts {
            return Err(guard_exceeded(max_cuts));
        }
        let states = w.states(&view);
        if !pred.holds(&view, &states) {
            continue;
        }
        matches += 1;
        match mode {
            PredicateMode::All => emit_line(out, &json!({ "states": w.names(&view) }))?,
            PredicateMode::First => {
                first = Some(w.names(&view));
                break;
            }
            PredicateMode::Count => {}
        }
    }
    match mode {
        PredicateMode::All => emit_line(out, &json!({ "count": matches }))?,
        PredicateMode::First => emit(out, &json!({ "found": first.is_some(), "states": first }))?,
        PredicateMode::Count => emit(out, &json!({ "count": matches }))?,
    }
    Ok(())
}

fn analyze_checkpoints(
    model: &Path,
    marks: &Path,
    engine: EngineArg,
    options: LoadOptions,
    out: &mut impl Write,
) -> Outcome {
    let sm = as_state_model(load(model, options)?, "analyze checkpoints")?;
    let marks: CheckpointMarking = load_json(marks)?;
    let engine = match engine {
        EngineArg::Fast => Engine::Fast,
        EngineArg::Oracle => Engine::Oracle,
        EngineArg::Both => Engine::Both,
    };
    let report = find_useless_checkpoints(&sm, &marks, engine)?;
    let value = serde_json::to_value(&report).expect("report serializes");
    if let Some(d) = report.disagreements.as_ref().filter(|d| !d.is_empty()) {
        return Err(Failure {
            code: EXIT_SEMANTIC,
            stdout: Some(value),
            message: format!("engines disagree on {}", d.join(", ")),
        });
    }
    emit(out, &value)?;
    Ok(())
}

fn run(cli: Cli, out: &mut impl Write) -> Outcome {
    let options = LoadOptions {
        allow_empty_process: cli.allow_empty_process,
    };
    match cli.command {
        Command::Validate { path } => validate(&path, options, out),
        Command::Transform { path, direction } => transform(&path, direction, options, out),
        Command::Check { path, properties } => check(&path, &properties, options, out),
        Command::Cuts {
            path,
            family,
            max_cuts,
            order,
        } => cuts(&path, family, max_cuts, order, options, out),
        Command::Analyze { what } => match what {
            Analysis::Predicate {
                model,
                pred,
                first,
                count,
                max_cuts,
            } => {
                let mode = if first {
                    PredicateMode::First
                } else if count {
                    PredicateMode::Count
                } else {
                    PredicateMode::All
                };
                analyze_predicate(&model, &pred, mode, max_cuts, options, out)
            }
            Analysis::Checkpoints {
                model,
                marks,
                engine,
            } => analyze_checkpoints(&model, &marks, engine, options, out),
        },
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if let Some(v) = &f.stdout {
                let _ = emit(&mut out, v);
            }
            // A closed pipe downstream is not worth a diagnostic.
            if !f.message.contains("Broken pipe") {
                eprintln!("concur: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
