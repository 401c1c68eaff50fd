//! Hand-builds a one-day roster, lets the decoder hire temporaries for what
//! the regulars leave uncovered, and prints the hourly coverage.
//!
//! ```bash
//! cargo run --example decode_temp_plan
//! ```

use depot_roster::evaluator::{coverage, decode_temp_plan, objective};
use depot_roster::{ProblemInstance, RegularRoster};

fn main() -> depot_roster::Result<()> {
    let mut inst = ProblemInstance::zero_demand(1, 3);
    inst.demand[0] = vec![
        20, 20, 20, 20, 20, 40, 60, 80, 100, 120, 150, 140, 110, 100, 100, 110, 130, 150, 140, 100, 70, 50, 30, 20,
    ];

    // one regular on the early shift, one on the day shift, one on the late shift
    let mut roster = RegularRoster::for_instance(&inst);
    roster.set(0, 0, 0, true);
    roster.set(0, 2, 1, true);
    roster.set(0, 5, 2, true);

    let plan = decode_temp_plan(&roster, &inst)?;
    let report = coverage(&roster, &plan, &inst)?;

    println!("temps per shift:");
    for (t, shift) in inst.catalog.shifts().iter().enumerate() {
        println!("  shift {t} {shift}: {} regulars, {} temps", roster.shift_headcounts(0)[t], plan.get(0, t));
    }
    println!("\nhour demand capacity slack");
    for h in 0..24 {
        let (w, c) = (inst.demand[0][h], report.capacity[0][h]);
        println!("  {h:>4} {w:>6} {c:>8} {:>5}", c - w);
    }
    println!("\nperson-days: {}", objective(&roster, &plan)?);
    Ok(())
}
