//! Takes a roster that breaks every regular-worker rule and runs the repair
//! stages one at a time, listing the violations left after each.
//!
//! ```bash
//! cargo run --example repair_roster
//! ```

use depot_roster::evaluator::roster_violations;
use depot_roster::repair::{repair_attendance_cap, repair_consecutive_days, repair_one_shift_per_day};
use depot_roster::{ProblemInstance, RegularRoster};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn report(stage: &str, roster: &RegularRoster, inst: &ProblemInstance) {
    let v = roster_violations(roster, inst);
    println!("{stage}: {} assignments, {} violation(s)", roster.assignment_count(), v.len());
    for line in v.iter().take(6) {
        println!("  {line}");
    }
    if v.len() > 6 {
        println!("  ...");
    }
}

fn main() {
    let inst = ProblemInstance::zero_demand(30, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(11);

    // worker 0 on shifts 1 and 4 every day, worker 1 on shift 2 every day,
    // worker 2 on alternate days only
    let mut roster = RegularRoster::for_instance(&inst);
    for d in 0..inst.days {
        roster.set(d, 1, 0, true);
        roster.set(d, 4, 0, true);
        roster.set(d, 2, 1, true);
        if d % 2 == 0 {
            roster.set(d, 0, 2, true);
        }
    }
    report("start", &roster, &inst);

    repair_one_shift_per_day(&mut roster, &mut rng);
    report("one shift per day", &roster, &inst);

    repair_consecutive_days(&mut roster);
    report("consecutive days", &roster, &inst);

    repair_attendance_cap(&mut roster, &inst, &mut rng);
    report("attendance cap", &roster, &inst);

    for s in 0..inst.regular_pool {
        let days: String = (0..inst.days).map(|d| if roster.works(d, s) { '#' } else { '.' }).collect();
        println!("worker {s} {days} {}", roster.working_days(s));
    }
}
