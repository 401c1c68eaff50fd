//! Repair operators that turn any roster into one satisfying the
//! one-shift-per-day, consecutive-day, and attendance constraints.
//!
//! Every operator only clears assignments; none ever sets a bit. Each is the
//! identity on input that already satisfies its constraint, and none consumes
//! randomness in that case.

use rand::seq::index;
use rand::Rng;

use crate::evaluator::MAX_CONSECUTIVE_DAYS;
use crate::model::{ProblemInstance, RegularRoster};

/// Keeps one uniformly chosen shift for every worker-day that has several.
pub fn repair_one_shift_per_day<R: Rng + ?Sized>(roster: &mut RegularRoster, rng: &mut R) {
    for d in 0..roster.days() {
        for m in roster.day_mut(d) {
            let n = m.count_ones();
            if n > 1 {
                let keep = rng.random_range(0..n);
                let mut bits = *m;
                for _ in 0..keep {
                    bits &= bits - 1;
                }
                *m = 1 << bits.trailing_zeros();
            }
        }
    }
}

/// Forward scan per worker: the day on which a run of working days reaches
/// length 8 is cleared and the run count restarts.
pub fn repair_consecutive_days(roster: &mut RegularRoster) {
    for s in 0..roster.workers() {
        let mut run = 0;
        for d in 0..roster.days() {
            if roster.works(d, s) {
                run += 1;
                if run > MAX_CONSECUTIVE_DAYS {
                    roster.set_mask(d, s, 0);
                    run = 0;
                }
            } else {
                run = 0;
            }
        }
    }
}

/// Removes uniformly chosen working days from every worker above
/// `floor(attendance_cap * D)` until they sit exactly at the cap.
pub fn repair_attendance_cap<R: Rng + ?Sized>(
    roster: &mut RegularRoster,
    instance: &ProblemInstance,
    rng: &mut R,
) {
    let cap = instance.max_working_days();
    let mut working = Vec::with_capacity(roster.days());
    for s in 0..roster.workers() {
        working.clear();
        working.extend((0..roster.days()).filter(|&d| roster.works(d, s)));
        if working.len() > cap {
            for i in index::sample(rng, working.len(), working.len() - cap) {
                roster.set_mask(working[i], s, 0);
            }
        }
    }
}

/// One shift per day, then consecutive days, then attendance. Later stages
/// only clear whole days, so they cannot undo what earlier stages fixed.
pub fn repair_all<R: Rng + ?Sized>(roster: &mut RegularRoster, instance: &ProblemInstance, rng: &mut R) {
    repair_one_shift_per_day(roster, rng);
    repair_consecutive_days(roster);
    repair_attendance_cap(roster, instance, rng);
}
