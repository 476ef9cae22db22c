//! The `tdg` command line: solve, check, classify, generate.
//!
//! Answers travel in stdout JSON, not in the exit code, so batch harnesses
//! can tell a "no" from a failure. Exit codes: 0 clean run, 2 input or
//! validation error, 3 oracle-budget or degenerate-parameter error.
//! Output is deterministic: identical argv and files give byte-identical
//! stdout.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::dff::DistanceFactorFunction;
use crate::enmity::{enmity_structure, EnmityClass};
use crate::instance::{is_individually_rational, Instance};
use crate::io;
use crate::rational::Rational;
use crate::reductions::{
    gen_3partition, gen_clique, gen_equitable_partition, gen_independent_set,
    gen_unary_bin_packing, EquitableVariant, GeneratedInstance, GeneratorError, SourceProblem,
};
use crate::solver::{
    solve_auto_with_threads, solve_brute_force_with_threads, solve_path_instar,
    solve_single_source, SolveResult,
};

const EXIT_OK: i32 = 0;
const EXIT_INPUT: i32 = 2;
const EXIT_DEGENERATE: i32 = 3;

#[derive(Parser)]
#[command(
    name = "tdg",
    about = "Individual rationality in topological distance games: solvers and gadget generators",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether an individually rational assignment exists.
    Solve {
        /// Instance document (JSON).
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = AlgorithmChoice::Auto)]
        algorithm: AlgorithmChoice,
        /// Include the witness assignment in the output when the answer is yes.
        #[arg(long)]
        witness: bool,
        /// Worker threads for the brute-force search.
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Evaluate an assignment: per-agent utilities and the IR verdict.
    Check {
        instance: PathBuf,
        assignment: PathBuf,
    },
    /// Report the enmity classification and topology facts of an instance.
    Classify {
        instance: PathBuf,
    },
    /// Build a hard instance from an NP-hard source problem.
    Generate {
        family: Family,
        /// Source document (JSON, `{"source": {...}}`).
        source: PathBuf,
        /// Positive rational weight for the selection gadgets.
        #[arg(long, default_value = "1")]
        beta: String,
        /// Distance factor function: `reciprocal`, `exponential:1/2`,
        /// `table:1,1/2,1/4`, or `bounded:<cutoff>:1,1/2`.
        #[arg(long)]
        dff: Option<String>,
        /// Equitable Partition gadget shape.
        #[arg(long, value_enum, default_value_t = VariantChoice::Bipartite)]
        variant: VariantChoice,
        /// Output file (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Generate even when the gadget's strict preconditions fail; the
        /// result is marked equivalence-not-guaranteed.
        #[arg(long)]
        waive_preconditions: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgorithmChoice {
    Auto,
    Brute,
    #[value(name = "single-source")]
    SingleSource,
    #[value(name = "path-instar")]
    PathInstar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    #[value(name = "unary-bin-packing")]
    UnaryBinPacking,
    #[value(name = "equitable-partition")]
    EquitablePartition,
    #[value(name = "3-partition")]
    ThreePartition,
    #[value(name = "independent-set")]
    IndependentSet,
    #[value(name = "clique")]
    Clique,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantChoice {
    Bipartite,
    Instar,
    Path,
}

/// Runs the CLI on the given argv and returns the process exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return EXIT_OK;
        }
        Err(e) => {
            eprint!("{e}");
            return EXIT_INPUT;
        }
    };
    match dispatch(cli) {
        Ok(stdout) => {
            print!("{stdout}");
            EXIT_OK
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure { code: EXIT_INPUT, message: message.to_string() }
    }
}

impl From<io::ParseError> for Failure {
    fn from(e: io::ParseError) -> Self {
        Failure::input(e)
    }
}

impl From<crate::solver::SolverError> for Failure {
    fn from(e: crate::solver::SolverError) -> Self {
        Failure::input(e)
    }
}

impl From<GeneratorError> for Failure {
    fn from(e: GeneratorError) -> Self {
        let code = match e {
            GeneratorError::Precondition(_) => EXIT_INPUT,
            GeneratorError::DegenerateParameter(_) => EXIT_DEGENERATE,
        };
        Failure { code, message: e.to_string() }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

fn dispatch(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Solve { instance, algorithm, witness, threads } => {
            let inst = io::parse_instance(&read_file(&instance)?)?;
            let result = solve(&inst, algorithm, threads)?;
            Ok(render_solve(&inst, &result, witness))
        }
        Command::Check { instance, assignment } => {
            let inst = io::parse_instance(&read_file(&instance)?)?;
            let asg = io::parse_assignment(&read_file(&assignment)?, &inst)?;
            let report = is_individually_rational(&inst, &asg)
                .map_err(|e| Failure::input(e.to_string()))?;
            #[derive(Serialize)]
            struct CheckOut<'a> {
                agents: &'a [String],
                individually_rational: bool,
                utilities: Vec<String>,
            }
            let out = CheckOut {
                agents: inst.agent_names(),
                individually_rational: report.individually_rational,
                utilities: report.utilities.iter().map(Rational::to_string).collect(),
            };
            Ok(json_line(&out))
        }
        Command::Classify { instance } => {
            let inst = io::parse_instance(&read_file(&instance)?)?;
            Ok(render_classify(&inst))
        }
        Command::Generate { family, source, beta, dff, variant, output, waive_preconditions } => {
            let src = io::parse_source(&read_file(&source)?)?;
            let beta: Rational = beta
                .parse()
                .map_err(|e| Failure::input(format!("invalid --beta: {e}")))?;
            let dff = match dff {
                None => None,
                Some(spec) => Some(
                    io::parse_dff_spec(&spec)
                        .map_err(|e| Failure::input(format!("invalid --dff: {e}")))?,
                ),
            };
            let gen = generate(family, &src, &beta, dff.as_ref(), variant, waive_preconditions)?;
            let text = io::serialize_generated(&gen);
            match output {
                Some(path) => {
                    fs::write(&path, text).map_err(|e| {
                        Failure::input(format!("cannot write {}: {e}", path.display()))
                    })?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
    }
}

fn solve(
    instance: &Instance,
    algorithm: AlgorithmChoice,
    threads: usize,
) -> Result<SolveResult, Failure> {
    let result = match algorithm {
        AlgorithmChoice::Auto => solve_auto_with_threads(instance, threads)?,
        AlgorithmChoice::Brute => solve_brute_force_with_threads(instance, threads)?,
        AlgorithmChoice::SingleSource => {
            let p = match enmity_structure(instance).classification() {
                EnmityClass::NoArcs => 0,
                EnmityClass::SingleSource(p) => p,
                other => {
                    return Err(Failure::input(format!(
                        "--algorithm single-source needs a single enemy source, found {}",
                        crate::solver::describe_class(other)
                    )))
                }
            };
            solve_single_source(instance, p)?
        }
        AlgorithmChoice::PathInstar => {
            let structure = enmity_structure(instance);
            let p = match structure.arcs().first() {
                None => 0,
                Some(&(_, head)) => head,
            };
            solve_path_instar(instance, p)?
        }
    };
    Ok(result)
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string(value).expect("output serializes");
    text.push('\n');
    text
}

fn render_solve(instance: &Instance, result: &SolveResult, include_witness: bool) -> String {
    #[derive(Serialize)]
    struct SolveOut {
        answer: &'static str,
        #[serde(skip_serializing_if = "Option::is_none")]
        witness: Option<BTreeMap<String, usize>>,
        algorithm: &'static str,
        nodes: u64,
    }
    let witness = match (&result.witness, include_witness) {
        (Some(assignment), true) => Some(
            instance
                .agent_names()
                .iter()
                .enumerate()
                .map(|(i, name)| (name.clone(), assignment.vertex_of(i)))
                .collect(),
        ),
        _ => None,
    };
    let out = SolveOut {
        answer: if result.answer { "yes" } else { "no" },
        witness,
        algorithm: result.algorithm.tag(),
        nodes: result.nodes_explored,
    };
    json_line(&out)
}

fn render_classify(instance: &Instance) -> String {
    #[derive(Serialize)]
    struct ClassifyOut<'a> {
        arc_count: usize,
        classification: &'static str,
        component_diameters: Vec<usize>,
        is_path: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        pivot: Option<&'a str>,
    }
    let structure = enmity_structure(instance);
    let (classification, pivot) = match structure.classification() {
        EnmityClass::NoArcs => ("no-arcs", None),
        EnmityClass::SingleSource(p) => ("single-source", Some(instance.agent_names()[p].as_str())),
        EnmityClass::SingleSink(p) => ("single-sink", Some(instance.agent_names()[p].as_str())),
        EnmityClass::General => ("general", None),
    };
    let distances = instance.topology().shortest_distances();
    let component_diameters = instance
        .topology()
        .components()
        .iter()
        .map(|component| distances.diameter_of(component))
        .collect();
    let out = ClassifyOut {
        arc_count: structure.arc_count(),
        classification,
        component_diameters,
        is_path: instance.topology().is_path(),
        pivot,
    };
    json_line(&out)
}

fn generate(
    family: Family,
    source: &SourceProblem,
    beta: &Rational,
    dff: Option<&DistanceFactorFunction>,
    variant: VariantChoice,
    waive: bool,
) -> Result<GeneratedInstance, Failure> {
    let default_dff = DistanceFactorFunction::Reciprocal;
    let dff_or_default = dff.unwrap_or(&default_dff);
    let mismatch = |expected: &str| {
        Failure::input(format!("source document kind does not match family {expected}"))
    };
    let gen = match (family, source) {
        (Family::UnaryBinPacking, SourceProblem::UnaryBinPacking(src)) => {
            gen_unary_bin_packing(src, dff_or_default)?
        }
        (Family::UnaryBinPacking, _) => return Err(mismatch("unary-bin-packing")),
        (Family::EquitablePartition, SourceProblem::EquitablePartition(src)) => {
            let variant = match variant {
                VariantChoice::Bipartite => EquitableVariant::Bipartite,
                VariantChoice::Instar => EquitableVariant::Instar,
                VariantChoice::Path => EquitableVariant::Path,
            };
            gen_equitable_partition(src, variant, dff, waive)?
        }
        (Family::EquitablePartition, _) => return Err(mismatch("equitable-partition")),
        (Family::ThreePartition, SourceProblem::ThreePartition(src)) => {
            gen_3partition(src, dff_or_default)?
        }
        (Family::ThreePartition, _) => return Err(mismatch("3-partition")),
        (Family::IndependentSet, SourceProblem::IndependentSet(src)) => {
            gen_independent_set(src, beta, dff_or_default)?
        }
        (Family::IndependentSet, _) => return Err(mismatch("independent-set")),
        (Family::Clique, SourceProblem::Clique(src)) => gen_clique(src, beta, dff_or_default)?,
        (Family::Clique, _) => return Err(mismatch("clique")),
    };
    Ok(gen)
}
