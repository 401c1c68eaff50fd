//! Command-line front end: `generate`, `solve`, `validate`, `compare`.
//!
//! Exit codes: 0 success, 1 infeasible solution, 2 usage or input error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::compare::{compare, CompareConfig};
use crate::error::{Error, Result};
use crate::evaluator::check_feasibility;
use crate::ga::{run_ga, GaConfig};
use crate::io;
use crate::sa::{run_sa, SaConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "depot-roster", version, about = "Roster regular and temporary depot workers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a synthetic instance file.
    Generate(GenerateArgs),
    /// Solve an instance with the genetic algorithm or simulated annealing.
    Solve(SolveArgs),
    /// Check a solution file against an instance.
    Validate(ValidateArgs),
    /// Run both solvers at equal evaluation budgets over several seeds.
    Compare(CompareArgs),
}

fn non_negative(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v >= 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("must be a non-negative number, got {s}"))
    }
}

fn positive(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        Ok(_) => Err("must be at least 1".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn fraction(s: &str) -> std::result::Result<f64, String> {
    let v = non_negative(s)?;
    if v <= 1.0 {
        Ok(v)
    } else {
        Err(format!("must lie in [0, 1], got {s}"))
    }
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, default_value_t = io::BENCHMARK_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = io::BENCHMARK_DAYS, value_parser = positive)]
    pub days: usize,
    #[arg(long, default_value_t = io::BENCHMARK_WORKERS)]
    pub workers: usize,
    /// Demand at the busiest hour of the profile, parcels per hour.
    #[arg(long, default_value_t = io::BENCHMARK_PEAK, value_parser = non_negative, allow_negative_numbers = true)]
    pub peak: f64,
    /// Relative uniform noise applied to every (day, hour).
    #[arg(long, default_value_t = io::BENCHMARK_NOISE, value_parser = fraction, allow_negative_numbers = true)]
    pub noise: f64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Ga,
    Sa,
}

#[derive(Debug, Args)]
pub struct GaArgs {
    #[arg(long)]
    pub pop: Option<usize>,
    #[arg(long)]
    pub gens: Option<usize>,
    #[arg(long, value_parser = fraction)]
    pub crossover: Option<f64>,
    #[arg(long, value_parser = fraction)]
    pub mutation: Option<f64>,
    #[arg(long)]
    pub tournament: Option<usize>,
    #[arg(long)]
    pub elites: Option<usize>,
}

impl GaArgs {
    fn config(&self, seed: u64) -> GaConfig {
        let d = GaConfig::default();
        GaConfig {
            population_size: self.pop.unwrap_or(d.population_size),
            generations: self.gens.unwrap_or(d.generations),
            crossover_prob: self.crossover.unwrap_or(d.crossover_prob),
            mutation_prob: self.mutation.unwrap_or(d.mutation_prob),
            tournament_size: self.tournament.unwrap_or(d.tournament_size),
            elite_count: self.elites.unwrap_or(d.elite_count),
            seed,
            ..d
        }
    }
}

#[derive(Debug, Args)]
pub struct SaArgs {
    /// Geometric cooling factor.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    /// Starting temperature; calibrated from sampled moves when absent.
    #[arg(long)]
    pub initial_temp: Option<f64>,
    #[arg(long)]
    pub min_temp: Option<f64>,
}

impl SaArgs {
    fn config(&self, seed: u64, max_evaluations: u64) -> SaConfig {
        let d = SaConfig::default();
        SaConfig {
            initial_temp: self.initial_temp,
            cooling_factor: self.alpha.unwrap_or(d.cooling_factor),
            steps_per_temperature: self.steps.unwrap_or(d.steps_per_temperature),
            min_temp: self.min_temp,
            max_evaluations,
            seed,
            record_time: false,
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, value_enum)]
    pub algo: Algo,
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub ga: GaArgs,
    #[command(flatten)]
    pub sa: SaArgs,
    /// SA evaluation budget; defaults to population size times generations.
    #[arg(long)]
    pub max_evals: Option<u64>,
    #[arg(long)]
    pub out_solution: PathBuf,
    #[arg(long)]
    pub out_trace: PathBuf,
    /// Record wall-clock milliseconds in the trace (makes it non-reproducible).
    #[arg(long)]
    pub timing: bool,
    /// Evaluate GA offspring in parallel.
    #[arg(long)]
    pub parallel: bool,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long)]
    pub solution: PathBuf,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, default_value_t = 10)]
    pub runs: usize,
    /// First seed; run i uses seed + i.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub ga: GaArgs,
    #[command(flatten)]
    pub sa: SaArgs,
    /// Directory for the per-seed `ga_seed<N>.csv` and `sa_seed<N>.csv` traces.
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    #[arg(long)]
    pub timing: bool,
    /// Run seeds one after another instead of in parallel.
    #[arg(long)]
    pub sequential: bool,
}

/// Executes a parsed command, writing reports to `out` and diagnostics to
/// `err`. Returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Generate(a) => cmd_generate(&a, out),
        Command::Solve(a) => cmd_solve(&a, out, err),
        Command::Validate(a) => cmd_validate(&a, out),
        Command::Compare(a) => cmd_compare(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::io("<stdout>", e)
}

pub fn cmd_generate(args: &GenerateArgs, out: &mut dyn Write) -> Result<i32> {
    let inst = io::generate_instance(args.seed, args.days, args.workers, args.peak, args.noise)?;
    io::write_instance(&inst, &args.out)?;
    writeln!(
        out,
        "wrote {} ({} days, {} regular workers)",
        args.out.display(),
        inst.days,
        inst.regular_pool
    )
    .map_err(io_err)?;
    Ok(EXIT_OK)
}

pub fn cmd_solve(args: &SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let inst = io::read_instance(&args.instance)?;
    let ga_cfg = GaConfig {
        record_time: args.timing,
        parallel: args.parallel,
        ..args.ga.config(args.seed)
    };
    let (solution, trace, evaluations) = match args.algo {
        Algo::Ga => {
            let o = run_ga(&inst, &ga_cfg)?;
            (o.best, o.trace, o.evaluations)
        }
        Algo::Sa => {
            let budget = args
                .max_evals
                .unwrap_or((ga_cfg.population_size * ga_cfg.generations) as u64);
            let cfg = SaConfig {
                record_time: args.timing,
                ..args.sa.config(args.seed, budget)
            };
            let o = run_sa(&inst, &cfg)?;
            (o.best, o.trace, o.evaluations)
        }
    };
    io::write_solution(&solution, &args.out_solution)?;
    io::write_trace(&trace, &args.out_trace)?;
    let algo = match args.algo {
        Algo::Ga => "ga",
        Algo::Sa => "sa",
    };
    writeln!(out, "algo={algo} objective={} evaluations={evaluations}", solution.objective).map_err(io_err)?;
    if let Err(violations) = check_feasibility(&solution, &inst) {
        for v in violations {
            let _ = writeln!(err, "{v}");
        }
        return Ok(EXIT_INFEASIBLE);
    }
    Ok(EXIT_OK)
}

pub fn cmd_validate(args: &ValidateArgs, out: &mut dyn Write) -> Result<i32> {
    let inst = io::read_instance(&args.instance)?;
    let solution = io::read_solution(&args.solution)?;
    match check_feasibility(&solution, &inst) {
        Ok(()) => {
            writeln!(out, "feasible").map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Err(violations) => {
            for v in &violations {
                writeln!(out, "{v}").map_err(io_err)?;
            }
            writeln!(out, "infeasible: {} violation(s)", violations.len()).map_err(io_err)?;
            Ok(EXIT_INFEASIBLE)
        }
    }
}

pub fn cmd_compare(args: &CompareArgs, out: &mut dyn Write) -> Result<i32> {
    let inst = io::read_instance(&args.instance)?;
    let ga = GaConfig {
        record_time: args.timing,
        ..args.ga.config(args.seed)
    };
    let sa = SaConfig {
        record_time: args.timing,
        ..args.sa.config(args.seed, ga.evaluation_budget())
    };
    let cfg = CompareConfig {
        ga,
        sa,
        runs: args.runs,
        base_seed: args.seed,
        parallel: !args.sequential,
    };
    let result = compare(&inst, &cfg)?;
    std::fs::create_dir_all(&args.out_dir).map_err(|e| Error::io(&args.out_dir, e))?;
    for r in &result.runs {
        io::write_trace(&r.ga_trace, args.out_dir.join(format!("ga_seed{}.csv", r.seed)))?;
        io::write_trace(&r.sa_trace, args.out_dir.join(format!("sa_seed{}.csv", r.seed)))?;
    }
    write!(out, "{}", result.table()).map_err(io_err)?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::error::ErrorKind;

    fn parse(args: &[&str]) -> std::result::Result<Cli, clap::Error> {
        Cli::try_parse_from(std::iter::once("depot-roster").chain(args.iter().copied()))
    }

    #[test]
    fn generate_defaults() {
        let cli = parse(&["generate", "--out", "x.toml"]).unwrap();
        let Command::Generate(a) = cli.command else { panic!() };
        assert_eq!((a.seed, a.days, a.workers), (42, 30, 200));
        assert_eq!((a.peak, a.noise), (5000.0, 0.1));
    }

    #[test]
    fn usage_errors_exit_with_two() {
        for args in [
            &["generate", "--peak", "-5", "--out", "x"][..],
            &["generate", "--noise", "2", "--out", "x"],
            &["generate", "--days", "0", "--out", "x"],
            &["solve", "--algo", "xx", "--instance", "i", "--out-solution", "s", "--out-trace", "t"],
            &["frobnicate"],
        ] {
            let e = parse(args).unwrap_err();
            assert_ne!(e.kind(), ErrorKind::DisplayHelp);
            assert_eq!(e.exit_code(), EXIT_USAGE, "{args:?}");
        }
    }

    #[test]
    fn missing_instance_file_is_an_input_error() {
        let cli = parse(&[
            "solve", "--algo", "ga", "--instance", "/nonexistent/i.toml",
            "--out-solution", "s", "--out-trace", "t",
        ])
        .unwrap();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(cli, &mut out, &mut err), EXIT_USAGE);
        assert!(String::from_utf8(err).unwrap().contains("/nonexistent/i.toml"));
    }
}
