//! GA-versus-SA comparison at equal evaluation budgets.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::Result;
use crate::ga::{run_ga, GaConfig};
use crate::model::ProblemInstance;
use crate::sa::{run_sa, SaConfig};
use crate::trace::ConvergenceTrace;

#[derive(Debug, Clone)]
pub struct CompareConfig {
    /// GA settings; `seed` is replaced per run.
    pub ga: GaConfig,
    /// SA settings; `seed` is replaced per run and `max_evaluations` is set
    /// to the GA's budget.
    pub sa: SaConfig,
    pub runs: usize,
    /// Run `i` uses seed `base_seed + i` for both solvers.
    pub base_seed: u64,
    /// Execute runs on the rayon pool. Results do not depend on this.
    pub parallel: bool,
}

impl Default for CompareConfig {
    fn default() -> Self {
        CompareConfig {
            ga: GaConfig::default(),
            sa: SaConfig::default(),
            runs: 10,
            base_seed: 0,
            parallel: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunPair {
    pub seed: u64,
    pub budget: u64,
    pub ga_objective: u64,
    pub ga_evaluations: u64,
    pub ga_trace: ConvergenceTrace,
    pub sa_objective: u64,
    pub sa_evaluations: u64,
    pub sa_trace: ConvergenceTrace,
}

#[derive(Debug, Clone)]
pub struct Comparison {
    pub runs: Vec<RunPair>,
}

pub fn median(values: &[u64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_unstable();
    let n = v.len();
    Some(if n % 2 == 1 {
        v[n / 2] as f64
    } else {
        (v[n / 2 - 1] + v[n / 2]) as f64 / 2.0
    })
}

impl Comparison {
    pub fn median_ga(&self) -> f64 {
        median(&self.runs.iter().map(|r| r.ga_objective).collect::<Vec<_>>()).unwrap_or(f64::NAN)
    }

    pub fn median_sa(&self) -> f64 {
        median(&self.runs.iter().map(|r| r.sa_objective).collect::<Vec<_>>()).unwrap_or(f64::NAN)
    }

    /// Aligned plain-text table: one row per seed, then the medians.
    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>6}  {:>8}  {:>10}  {:>8}  {:>10}  {:>8}",
            "seed", "budget", "ga_best", "ga_evals", "sa_best", "sa_evals"
        );
        for r in &self.runs {
            let _ = writeln!(
                out,
                "{:>6}  {:>8}  {:>10}  {:>8}  {:>10}  {:>8}",
                r.seed, r.budget, r.ga_objective, r.ga_evaluations, r.sa_objective, r.sa_evaluations
            );
        }
        let _ = writeln!(
            out,
            "{:>6}  {:>8}  {:>10.1}  {:>8}  {:>10.1}  {:>8}",
            "median",
            "",
            self.median_ga(),
            "",
            self.median_sa(),
            ""
        );
        out
    }
}

fn run_pair(instance: &ProblemInstance, config: &CompareConfig, seed: u64) -> Result<RunPair> {
    let ga_cfg = GaConfig {
        seed,
        ..config.ga.clone()
    };
    let budget = ga_cfg.evaluation_budget();
    let sa_cfg = SaConfig {
        seed,
        max_evaluations: budget,
        ..config.sa.clone()
    };
    let ga = run_ga(instance, &ga_cfg)?;
    let sa = run_sa(instance, &sa_cfg)?;
    Ok(RunPair {
        seed,
        budget,
        ga_objective: ga.best.objective,
        ga_evaluations: ga.evaluations,
        ga_trace: ga.trace,
        sa_objective: sa.best.objective,
        sa_evaluations: sa.evaluations,
        sa_trace: sa.trace,
    })
}

/// Runs both solvers on `config.runs` seeds with the SA budget pinned to the
/// GA's evaluation count.
pub fn compare(instance: &ProblemInstance, config: &CompareConfig) -> Result<Comparison> {
    instance.ensure_valid()?;
    config.ga.validate()?;
    let seeds: Vec<u64> = (0..config.runs as u64).map(|i| config.base_seed + i).collect();
    let runs = if config.parallel {
        seeds
            .par_iter()
            .map(|&s| run_pair(instance, config, s))
            .collect::<Result<Vec<_>>>()?
    } else {
        seeds
            .iter()
            .map(|&s| run_pair(instance, config, s))
            .collect::<Result<Vec<_>>>()?
    };
    Ok(Comparison { runs })
}
