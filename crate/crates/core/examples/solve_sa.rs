//! Anneals the same two-week instance as `solve_ga`, showing the calibrated
//! starting temperature and the cooling schedule.
//!
//! ```bash
//! cargo run --release --example solve_sa -- 42
//! ```

use depot_roster::sa::{run_sa, temperature_schedule, SaConfig};
use depot_roster::{evaluator, io};

fn main() -> depot_roster::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let inst = io::generate_instance(3, 14, 60, 1500.0, 0.1)?;
    let config = SaConfig {
        max_evaluations: 8000,
        seed,
        ..SaConfig::default()
    };
    let outcome = run_sa(&inst, &config)?;

    let t0 = outcome.initial_temp;
    let levels = temperature_schedule(t0, config.cooling_factor, t0 * 1e-3).count();
    println!("starting temperature {t0:.3}, {levels} levels of {} moves", config.steps_per_temperature);

    let records = outcome.trace.records();
    let step = (records.len() / 10).max(1);
    for r in records.iter().step_by(step) {
        println!("move {:>6}  evaluations {:>6}  best {:>6}", r.iteration, r.evaluations, r.best_objective);
    }
    println!("\nbest {} person-days after {} evaluations", outcome.best.objective, outcome.evaluations);
    assert!(evaluator::check_feasibility(&outcome.best, &inst).is_ok());
    Ok(())
}
