//! Command-line front end: argument handling, dispatch and exit codes.

pub mod corpus;
pub mod parse;
pub mod report;

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::linalg::Field;
use crate::pipeline;

pub use parse::{parse_problem, ProblemFile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Machine,
}

#[derive(Parser, Debug)]
#[command(name = "pemb", version, about = "Exact algebraic models of Poincaré embeddings")]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value = "table", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Input {
    /// Problem file; names from the shipped corpus also work.
    file: String,
    /// Coefficient field: `rational` or a prime. Overrides the file.
    #[arg(long)]
    field: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate every declaration.
    Validate(Input),
    /// Cohomology algebra of one declared algebra.
    Cohomology {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        object: String,
    },
    /// Dimensions, connectivity and which hypotheses hold.
    Analyze(Input),
    /// CDGA model of the complement.
    Complement(Input),
    /// CDGA square in the stable range.
    StableSquare(Input),
    /// DG-module square; works for several components.
    DgmoduleSquare(Input),
    /// Cohomology of the complement from the dual of the restriction.
    Lefschetz(Input),
    /// CDGA square of truncated models.
    PuncturedSquare {
        #[command(flatten)]
        input: Input,
        /// Record that the boundary is known to be simply connected.
        #[arg(long)]
        attest_boundary_simply_connected: bool,
    },
    /// Gysin map of a single component.
    Gysin(Input),
    /// The shipped example corpus.
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
}

#[derive(Subcommand, Debug)]
enum ExamplesAction {
    /// List the shipped examples.
    List,
    /// Run an example with its default subcommand.
    Run {
        name: String,
        /// Run a different subcommand on the example.
        #[arg(long)]
        command: Option<String>,
    },
}

/// Report text and process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, code: 0 }
    }

    fn failed(mut text: String, e: &Error) -> Outcome {
        let _ = writeln!(text, "error: {e}");
        Outcome { text, code: e.exit_code() }
    }
}

fn parse_field(s: &str) -> Result<Field> {
    match s {
        "rational" | "Q" | "0" => Ok(Field::Rational),
        _ => {
            let p: u64 = s
                .parse()
                .map_err(|_| Error::Invalid(format!("--field expects `rational` or a prime, got `{s}`")))?;
            Field::prime(p)
        }
    }
}

/// Contents of a problem file; corpus names are accepted when no such file exists.
pub fn read_input(path: &str) -> Result<String> {
    match std::fs::read_to_string(path) {
        Ok(t) => Ok(t),
        Err(e) => corpus::find(path)
            .map(|ex| ex.text.to_string())
            .ok_or_else(|| Error::Invalid(format!("cannot read {path}: {e}"))),
    }
}

fn load(input: &Input) -> Result<ProblemFile> {
    let field = input.field.as_deref().map(parse_field).transpose()?;
    parse_problem(&read_input(&input.file)?, field)
}

/// Runs a command line (without the program name) and returns its report.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = std::iter::once("pemb".to_string())
        .chain(args.into_iter().map(Into::into))
        .collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome { text: e.to_string(), code };
        }
    };
    dispatch(cli.command, cli.format)
}

fn dispatch(command: Command, format: Format) -> Outcome {
    let machine = format == Format::Machine;
    match command {
        Command::Examples { action } => examples(action, format),
        Command::Validate(input) => with_file(&input, |pf| {
            Ok(if machine { report::machine_problem(pf) } else { report::validate(pf) })
        }),
        Command::Cohomology { input, object } => with_file(&input, |pf| {
            let a = pf
                .algebra(&object)
                .ok_or_else(|| Error::Invalid(format!("no algebra named `{object}`")))?;
            Ok(if machine { report::cohomology_machine(a) } else { report::cohomology(a) })
        }),
        Command::Analyze(input) => with_file(&input, |pf| {
            let a = pipeline::analyze(pf.problem()?)?;
            Ok(if machine { report::machine_problem(pf) } else { report::analysis(&a) })
        }),
        Command::Complement(input) => with_problem(&input, machine, |p| {
            let res = pipeline::complement_model(p)?;
            Ok(if machine { report::complement_machine(&res) } else { report::complement(&res) })
        }),
        Command::StableSquare(input) => with_problem(&input, machine, |p| {
            let sq = pipeline::stable_square(p)?;
            Ok(if machine { report::square_machine(&sq, p.field()) } else { report::square(&sq) })
        }),
        Command::DgmoduleSquare(input) => with_problem(&input, machine, |p| {
            let sq = pipeline::dgmodule_square(p)?;
            let mut text = if machine { report::square_machine(&sq, p.field()) } else { report::square(&sq) };
            if !machine {
                text = format!("field {}\n{text}", p.field());
            }
            Ok(text)
        }),
        Command::Lefschetz(input) => with_problem(&input, machine, |p| {
            let res = pipeline::lefschetz(p)?;
            Ok(if machine { report::lefschetz_machine(&res) } else { report::lefschetz(&res) })
        }),
        Command::PuncturedSquare { input, attest_boundary_simply_connected } => with_problem(&input, machine, |p| {
            let res = pipeline::punctured_square(p, attest_boundary_simply_connected)?;
            Ok(if machine { report::square_machine(&res.square, p.field()) } else { report::punctured(&res) })
        }),
        Command::Gysin(input) => with_problem(&input, machine, |p| {
            let g = pipeline::gysin(p)?;
            let b = p.single()?;
            let text = report::gysin(&g.map, &p.ambient.name, &b.name, g.k, &g.ambient, &g.embedded);
            Ok(if machine {
                report::gysin_machine(&g.ambient, &g.embedded, &g.restriction, &text)
            } else {
                text
            })
        }),
    }
}

fn with_file(input: &Input, f: impl FnOnce(&ProblemFile) -> Result<String>) -> Outcome {
    match load(input).and_then(|pf| f(&pf)) {
        Ok(t) => Outcome::ok(t),
        Err(e) => Outcome::failed(String::new(), &e),
    }
}

/// On failure the table format still shows the hypothesis analysis.
fn with_problem(
    input: &Input,
    machine: bool,
    f: impl FnOnce(&pipeline::EmbeddingProblem) -> Result<String>,
) -> Outcome {
    let pf = match load(input) {
        Ok(pf) => pf,
        Err(e) => return Outcome::failed(String::new(), &e),
    };
    let p = match pf.problem() {
        Ok(p) => p,
        Err(e) => return Outcome::failed(String::new(), &e),
    };
    match f(p) {
        Ok(t) => Outcome::ok(t),
        Err(e) => {
            let prefix = match (machine, pipeline::analyze(p)) {
                (false, Ok(a)) if matches!(e, Error::Hypothesis(_) | Error::NoSolution(_)) => report::analysis(&a),
                _ => String::new(),
            };
            Outcome::failed(prefix, &e)
        }
    }
}

fn examples(action: ExamplesAction, format: Format) -> Outcome {
    match action {
        ExamplesAction::List => {
            let mut text = String::new();
            for ex in corpus::CORPUS {
                let _ = writeln!(text, "{:<18} {:<14} {}", ex.name, ex.command, ex.about);
            }
            Outcome::ok(text)
        }
        ExamplesAction::Run { name, command } => {
            let Some(ex) = corpus::find(&name) else {
                return Outcome::failed(String::new(), &Error::Invalid(format!("no example named `{name}`")));
            };
            let cmd = command.unwrap_or_else(|| ex.command.to_string());
            let mut argv = vec!["pemb".to_string()];
            if format == Format::Machine {
                argv.extend(["--format".to_string(), "machine".to_string()]);
            }
            argv.extend([cmd.clone(), ex.name.to_string()]);
            if cmd == "cohomology" {
                return Outcome::failed(
                    String::new(),
                    &Error::Invalid("run `pemb cohomology <file> --object NAME` directly".into()),
                );
            }
            let mut out = match Cli::try_parse_from(&argv) {
                Ok(c) => dispatch(c.command, format),
                Err(e) => return Outcome { text: e.to_string(), code: 2 },
            };
            if format == Format::Table {
                out.text = format!("example {}: pemb {cmd} {}\n{}", ex.name, ex.name, out.text);
            }
            out
        }
    }
}
