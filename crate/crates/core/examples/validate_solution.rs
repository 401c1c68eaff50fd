//! Solves a small instance, writes the solution file, then corrupts it in a
//! few ways and shows what the feasibility checker reports.
//!
//! ```bash
//! cargo run --example validate_solution
//! ```

use depot_roster::evaluator::check_feasibility;
use depot_roster::ga::{run_ga, GaConfig};
use depot_roster::{io, ProblemInstance, Solution};

fn show(label: &str, sol: &Solution, inst: &ProblemInstance) {
    match check_feasibility(sol, inst) {
        Ok(()) => println!("{label}: feasible"),
        Err(vs) => {
            println!("{label}: {} violation(s)", vs.len());
            for v in vs.iter().take(4) {
                println!("  {v}");
            }
        }
    }
}

fn main() -> depot_roster::Result<()> {
    let inst = io::generate_instance(5, 10, 8, 300.0, 0.1)?;
    let good = run_ga(&inst, &GaConfig { population_size: 20, generations: 50, ..Default::default() })?.best;

    let path = std::env::temp_dir().join("depot_roster_example_solution.toml");
    io::write_solution(&good, &path)?;
    let reread = io::read_solution(&path)?;
    println!("wrote {} ({} person-days)", path.display(), reread.objective);
    show("as written", &reread, &inst);

    let mut wrong = reread.clone();
    wrong.objective -= 1;
    show("objective off by one", &wrong, &inst);

    let mut no_temps = reread.clone();
    for d in 0..inst.days {
        for t in 0..inst.shift_count() {
            no_temps.temp_plan.set(d, t, 0);
        }
    }
    no_temps.objective = no_temps.roster.assignment_count() as u64;
    show("temporaries dropped", &no_temps, &inst);

    let mut overworked = reread;
    for d in 0..inst.days {
        overworked.roster.set(d, 2, 0, true);
        overworked.roster.set(d, 3, 0, true);
    }
    overworked.objective = overworked.roster.assignment_count() as u64 + overworked.temp_plan.total();
    show("worker 0 doubled up every day", &overworked, &inst);
    Ok(())
}
