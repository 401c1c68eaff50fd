//! Runs both metaheuristics on the benchmark instance at equal evaluation
//! budgets and prints the per-seed table plus a coarse convergence curve.
//!
//! ```bash
//! cargo run --release --example compare_solvers -- 4 100
//! ```
//!
//! Arguments are the number of seeds and GA generations (defaults 3 and 60).

use depot_roster::compare::{compare, CompareConfig};
use depot_roster::ga::GaConfig;
use depot_roster::io;

fn main() -> depot_roster::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>().ok());
    let runs = args.next().flatten().unwrap_or(3);
    let generations = args.next().flatten().unwrap_or(60);

    let inst = io::benchmark_instance();
    let cfg = CompareConfig {
        ga: GaConfig { generations, ..GaConfig::default() },
        runs,
        ..CompareConfig::default()
    };
    let result = compare(&inst, &cfg)?;
    print!("{}", result.table());

    let first = &result.runs[0];
    println!("\nseed {} best-so-far by evaluations:", first.seed);
    println!("{:>8} {:>8} {:>8}", "evals", "ga", "sa");
    let budget = first.budget;
    for k in 0..=10 {
        let at = budget * k / 10;
        let best = |t: &depot_roster::ConvergenceTrace| {
            t.records().iter().take_while(|r| r.evaluations <= at).last().map(|r| r.best_objective)
        };
        let fmt = |v: Option<u64>| v.map_or("-".to_string(), |v| v.to_string());
        println!("{at:>8} {:>8} {:>8}", fmt(best(&first.ga_trace)), fmt(best(&first.sa_trace)));
    }
    Ok(())
}
