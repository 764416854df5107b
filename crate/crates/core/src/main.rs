use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use fuzzy_abduction::operators::{property_suite, DEFAULT_SUITE_LEVELS};
use fuzzy_abduction::workbench::{self, LoadOptions, Problem};
use fuzzy_abduction::{
    abduce, build_relation, enumerate_solutions, greatest_enumerated, infer, AbductionResult, Implication,
    QuantizedSearch, TNorm,
};

/// Fuzzy abductive inference workbench.
#[derive(Parser)]
#[command(name = "fuzzab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ProblemArgs {
    /// JSON problem file.
    #[arg(long)]
    problem: PathBuf,
    /// Override the point count of every range-defined universe.
    #[arg(long)]
    grid_points: Option<usize>,
}

impl ProblemArgs {
    fn load(&self) -> anyhow::Result<Problem> {
        let options = LoadOptions {
            grid_points: self.grid_points,
        };
        Ok(workbench::load_problem_with(&self.problem, options)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Forward inference (generalized modus ponens) of a rule on an input set.
    Infer {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long)]
        rule: String,
        /// Set on the rule's antecedent universe.
        #[arg(long, alias = "observation")]
        input: String,
        /// Write consequent and inferred set as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Abduce a hypothesis on the antecedent universe from an observation.
    Abduce {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long)]
        rule: String,
        #[arg(long)]
        observation: String,
        /// Accept the hypothesis as a bound when the observation is unreachable.
        #[arg(long)]
        bound: bool,
        /// Write antecedent and hypothesis as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate every quantized exact solution of the rule's relational equation.
    Enumerate {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long)]
        rule: String,
        #[arg(long)]
        observation: String,
        #[arg(long, default_value_t = 11)]
        levels: usize,
        #[arg(long, default_value_t = 5)]
        max_points: usize,
        /// Print every solution, not only the count and pointwise maximum.
        #[arg(long)]
        all: bool,
    },
    /// Run the operator law suite.
    CheckOps {
        #[arg(long)]
        tnorm: Option<TNorm>,
        /// Omit to check every implication.
        #[arg(long)]
        implication: Option<Implication>,
        #[arg(long, default_value_t = DEFAULT_SUITE_LEVELS)]
        levels: usize,
    },
    /// Run a named diagnosis scenario from the problem file.
    Scenario {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Omit to run every scenario in file order.
        #[arg(long)]
        name: Option<String>,
        /// Write the machine-readable JSON report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit sets as CSV plot data.
    Plot {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Comma-separated set names; all on one universe.
        #[arg(long, value_delimiter = ',', required = true)]
        sets: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Outcome {
    Done,
    Unsolvable,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Unsolvable) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn write_out(path: &PathBuf, contents: &str) -> anyhow::Result<()> {
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn run(command: Command) -> anyhow::Result<Outcome> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match command {
        Command::Infer {
            problem,
            rule,
            input,
            out: csv,
        } => {
            let p = problem.load()?;
            let r = p.rule(&rule)?;
            let a_prime = p.set(&input)?;
            let b_prime = infer(r, a_prime)?;
            writeln!(out, "rule `{rule}` ({}, {}, t-norm {})", r.semantics(), r.implication(), r.tnorm())?;
            writeln!(out, "input `{input}`: {a_prime}")?;
            writeln!(out, "inferred B': {b_prime}")?;
            if let Some(path) = csv {
                let then = p.definition().rules.iter().find(|d| d.name == rule).map(|d| d.consequent.as_str());
                let csv = workbench::plot_csv(&[(then.unwrap_or("consequent"), r.consequent()), ("inferred", &b_prime)])?;
                write_out(&path, &csv)?;
            }
            Ok(Outcome::Done)
        }
        Command::Abduce {
            problem,
            rule,
            observation,
            bound,
            out: csv,
        } => {
            let p = problem.load()?;
            let r = p.rule(&rule)?;
            let obs = p.set(&observation)?;
            let result = abduce(r, obs)?;
            print_abduction(&mut out, &rule, &observation, &result)?;
            if let Some(path) = csv {
                let csv = workbench::plot_csv(&[("antecedent", r.antecedent()), ("hypothesis", &result.hypothesis)])?;
                write_out(&path, &csv)?;
            }
            if result.solvability.is_unsolvable() && !bound {
                writeln!(out, "observation is unreachable under this rule; pass --bound to accept the hypothesis as a bound")?;
                return Ok(Outcome::Unsolvable);
            }
            Ok(Outcome::Done)
        }
        Command::Enumerate {
            problem,
            rule,
            observation,
            levels,
            max_points,
            all,
        } => {
            let p = problem.load()?;
            let r = p.rule(&rule)?;
            let obs = p.set(&observation)?;
            let search = QuantizedSearch::new(levels, max_points);
            let found = enumerate_solutions(&build_relation(r), obs, r.tnorm(), search)?;
            writeln!(out, "rule `{rule}`, observation `{observation}`, {levels} levels")?;
            writeln!(out, "target (snapped by {:.6}): {}", found.snap_distance, found.target)?;
            writeln!(out, "candidates: {}  exact solutions: {}", found.candidates, found.solutions.len())?;
            if all {
                for s in &found.solutions {
                    writeln!(out, "  {s}")?;
                }
            }
            match greatest_enumerated(&found.solutions) {
                Some(g) => writeln!(out, "pointwise maximum: {g}")?,
                None => writeln!(out, "pointwise maximum: none")?,
            }
            let abduced = abduce(r, obs)?;
            writeln!(out, "{} hypothesis: {}", abduced.scheme, abduced.hypothesis)?;
            Ok(Outcome::Done)
        }
        Command::CheckOps {
            tnorm,
            implication,
            levels,
        } => {
            if levels < 2 {
                bail!("--levels must be at least 2");
            }
            let kinds: Vec<Implication> = match implication {
                Some(k) => vec![k],
                None => Implication::ALL.to_vec(),
            };
            for k in kinds {
                write!(out, "{}", property_suite(tnorm, k, levels))?;
            }
            Ok(Outcome::Done)
        }
        Command::Scenario {
            problem,
            name,
            out: json,
        } => {
            let p = problem.load()?;
            let configs: Vec<_> = match &name {
                Some(n) => vec![p.scenario(n)?.clone()],
                None => p.scenarios.values().cloned().collect(),
            };
            if configs.is_empty() {
                bail!("the problem file defines no scenarios");
            }
            let mut reports = Vec::new();
            for config in &configs {
                let report = workbench::run_scenario(&p, config)?;
                write!(out, "{report}")?;
                reports.push(report);
            }
            if let Some(path) = json {
                let text = if reports.len() == 1 {
                    reports[0].to_json()
                } else {
                    serde_json::to_string_pretty(&reports)? + "\n"
                };
                write_out(&path, &text)?;
            }
            Ok(Outcome::Done)
        }
        Command::Plot { problem, sets, out: csv } => {
            let p = problem.load()?;
            let named = sets
                .iter()
                .map(|n| p.set(n).map(|s| (n.as_str(), s)))
                .collect::<Result<Vec<_>, _>>()?;
            let text = workbench::plot_csv(&named)?;
            match csv {
                Some(path) => write_out(&path, &text)?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(Outcome::Done)
        }
    }
}

fn print_abduction(out: &mut impl std::io::Write, rule: &str, observation: &str, r: &AbductionResult) -> std::io::Result<()> {
    writeln!(out, "rule `{rule}`, observation `{observation}` ({}, t-norm {})", r.scheme, r.tnorm)?;
    writeln!(out, "hypothesis A': {}", r.hypothesis)?;
    writeln!(out, "solvability: {}", r.solvability)?;
    writeln!(
        out,
        "round trip: {} (max residual {:.6}) reproduced = {}",
        r.roundtrip.outcome(),
        r.roundtrip.max_abs_residual,
        r.roundtrip.reproduced
    )
}
