//! Enumerates every roster of a two-day, two-worker instance and checks how
//! close both metaheuristics get to the true optimum.
//!
//! ```bash
//! cargo run --release --example oracle_tiny
//! ```

use depot_roster::ga::{run_ga, GaConfig};
use depot_roster::oracle::{enumerate_optimal, state_count, DEFAULT_GUARD_LIMIT};
use depot_roster::sa::{run_sa, SaConfig};
use depot_roster::{io, Error};

fn main() -> depot_roster::Result<()> {
    for seed in 1..=5 {
        let inst = io::generate_instance(seed, 2, 2, 100.0, 0.3)?;
        let exact = enumerate_optimal(&inst, DEFAULT_GUARD_LIMIT)?;
        let ga = run_ga(&inst, &GaConfig { population_size: 30, generations: 100, seed, ..Default::default() })?;
        let sa = run_sa(&inst, &SaConfig { max_evaluations: 3000, seed, ..Default::default() })?;
        println!(
            "instance {seed}: optimum {:>3} over {} rosters ({} feasible)  ga {:>3}  sa {:>3}",
            exact.objective, exact.rosters_enumerated, exact.feasible_rosters, ga.best.objective, sa.best.objective
        );
    }

    let big = io::generate_instance(1, 3, 3, 100.0, 0.3)?;
    match enumerate_optimal(&big, DEFAULT_GUARD_LIMIT) {
        Err(e @ Error::SearchSpaceTooLarge { .. }) => println!("\n3 days x 3 workers: {e}"),
        other => println!("\n3 days x 3 workers: unexpected {other:?}"),
    }
    println!("states: {}", state_count(&big));
    Ok(())
}
