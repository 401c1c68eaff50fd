//! Pieces shared by the genetic algorithm and the annealer: the evaluated
//! individual and the random starting roster.

use rand::Rng;

use crate::evaluator::decode_unchecked;
use crate::model::{ProblemInstance, RegularRoster, Solution, TempPlan};
use crate::repair::repair_all;

/// A roster together with its decoded temp plan and objective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Individual {
    pub roster: RegularRoster,
    pub temp_plan: TempPlan,
    pub objective: u64,
}

impl Individual {
    /// Decodes and scores `roster`. The roster must fit `instance`.
    pub fn evaluate(roster: RegularRoster, instance: &ProblemInstance) -> Self {
        assert!(roster.fits(instance), "roster does not fit instance");
        let temp_plan = decode_unchecked(&roster, instance);
        let objective = roster.assignment_count() + temp_plan.total();
        Individual {
            roster,
            temp_plan,
            objective,
        }
    }

    pub fn into_solution(self) -> Solution {
        Solution {
            roster: self.roster,
            temp_plan: self.temp_plan,
            objective: self.objective,
        }
    }
}

/// Draws one categorical worker-day gene: `0` is off, otherwise the bitmask
/// of a single uniformly chosen shift. Off has probability `off_prob`.
pub(crate) fn random_gene<R: Rng + ?Sized>(shifts: usize, off_prob: f64, rng: &mut R) -> u8 {
    if rng.random_bool(off_prob) {
        0
    } else {
        1 << rng.random_range(0..shifts)
    }
}

/// Uniform draw among the `shifts + 1` gene states.
pub(crate) fn uniform_gene<R: Rng + ?Sized>(shifts: usize, rng: &mut R) -> u8 {
    match rng.random_range(0..=shifts) {
        0 => 0,
        k => 1 << (k - 1),
    }
}

/// Starting roster: each worker-day is off with probability 1/2, otherwise on
/// a uniformly random shift; the result is repaired.
pub fn random_roster<R: Rng + ?Sized>(instance: &ProblemInstance, rng: &mut R) -> RegularRoster {
    let mut roster = RegularRoster::for_instance(instance);
    let shifts = instance.shift_count();
    for d in 0..instance.days {
        for m in roster.day_mut(d) {
            *m = random_gene(shifts, 0.5, rng);
        }
    }
    repair_all(&mut roster, instance, rng);
    roster
}
