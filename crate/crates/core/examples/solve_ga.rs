//! Runs the genetic algorithm on a two-week instance and prints progress
//! every 25 generations.
//!
//! ```bash
//! cargo run --release --example solve_ga -- 42
//! ```

use depot_roster::ga::{run_ga_observed, GaConfig};
use depot_roster::{evaluator, io};

fn main() -> depot_roster::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let inst = io::generate_instance(3, 14, 60, 1500.0, 0.1)?;
    let config = GaConfig {
        population_size: 40,
        generations: 200,
        seed,
        parallel: true,
        ..GaConfig::default()
    };
    println!("budget: {} evaluations", config.evaluation_budget());

    let outcome = run_ga_observed(&inst, &config, |gen, pop| {
        if gen % 25 == 0 {
            let best = pop.iter().map(|i| i.objective).min().unwrap_or(0);
            let mean = pop.iter().map(|i| i.objective as f64).sum::<f64>() / pop.len() as f64;
            println!("gen {gen:>4}  best {best:>6}  mean {mean:>9.1}");
        }
    })?;

    let best = &outcome.best;
    let regular_days = best.roster.assignment_count();
    println!(
        "\nbest {} person-days ({} regular, {} temporary) after {} evaluations",
        best.objective,
        regular_days,
        best.temp_plan.total(),
        outcome.evaluations
    );
    assert!(evaluator::check_feasibility(best, &inst).is_ok());
    Ok(())
}
