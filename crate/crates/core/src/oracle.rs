//! Exhaustive solver for tiny instances.
//!
//! The oracle searches the same space as the metaheuristics: every roster
//! with at most one shift per worker-day that satisfies the consecutive-day
//! and attendance limits, with temps supplied by
//! [`decode_temp_plan`](crate::evaluator::decode_temp_plan). Because that
//! decoder is greedy, the oracle optimum is exact for the decoded search
//! space and an upper bound on the optimum of the full integer program over
//! rosters and temp counts jointly.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::evaluator::roster_violations;
use crate::model::{ProblemInstance, RegularRoster, Solution};
use crate::search::Individual;

pub const DEFAULT_GUARD_LIMIT: u128 = 10_000_000;

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub objective: u64,
    /// The lexicographically first optimal roster, genes read day-major
    /// (day 0 worker 0, day 0 worker 1, ...) with off < shift 0 < shift 1 < ...
    pub solution: Solution,
    pub rosters_enumerated: u128,
    pub feasible_rosters: u128,
}

/// Number of rosters with at most one shift per worker-day,
/// `(shifts + 1)^(workers * days)`, saturating.
pub fn state_count(instance: &ProblemInstance) -> u128 {
    let base = instance.shift_count() as u128 + 1;
    let genes = (instance.days * instance.regular_pool) as u32;
    base.checked_pow(genes).unwrap_or(u128::MAX)
}

fn gene_mask(code: u8) -> u8 {
    if code == 0 {
        0
    } else {
        1 << (code - 1)
    }
}

struct BranchBest {
    objective: u64,
    codes: Vec<u8>,
    individual: Individual,
    enumerated: u128,
    feasible: u128,
}

/// Enumerates every roster in lexicographic gene order under `first` as the
/// leading gene code.
fn search_branch(instance: &ProblemInstance, first: u8, genes: usize) -> Option<BranchBest> {
    let base = instance.shift_count() as u8 + 1;
    let workers = instance.regular_pool;
    let mut codes = vec![0u8; genes];
    codes[0] = first;
    let mut roster = RegularRoster::for_instance(instance);
    roster.set_mask(0, 0, gene_mask(first));
    let mut best: Option<BranchBest> = None;
    let mut enumerated = 0u128;
    let mut feasible = 0u128;
    loop {
        enumerated += 1;
        if roster_violations(&roster, instance).is_empty() {
            feasible += 1;
            let ind = Individual::evaluate(roster.clone(), instance);
            if best.as_ref().is_none_or(|b| ind.objective < b.objective) {
                best = Some(BranchBest {
                    objective: ind.objective,
                    codes: codes.clone(),
                    individual: ind,
                    enumerated: 0,
                    feasible: 0,
                });
            }
        }
        // odometer over genes 1.., last gene fastest
        let mut g = genes;
        loop {
            g -= 1;
            if g == 0 {
                return best.map(|b| BranchBest {
                    enumerated,
                    feasible,
                    ..b
                });
            }
            codes[g] += 1;
            if codes[g] == base {
                codes[g] = 0;
                roster.set_mask(g / workers, g % workers, 0);
            } else {
                roster.set_mask(g / workers, g % workers, gene_mask(codes[g]));
                break;
            }
        }
    }
}

/// Finds the minimum person-day roster by exhaustive enumeration.
///
/// Refuses with [`Error::SearchSpaceTooLarge`] when
/// `(shifts + 1)^(workers * days)` exceeds `guard_limit`. Branches on the
/// first gene run in parallel and are reduced by (objective, gene codes), so
/// the answer does not depend on scheduling.
pub fn enumerate_optimal(instance: &ProblemInstance, guard_limit: u128) -> Result<OracleResult> {
    instance.ensure_valid()?;
    let states = state_count(instance);
    if states > guard_limit {
        return Err(Error::SearchSpaceTooLarge {
            states,
            limit: guard_limit,
        });
    }
    let genes = instance.days * instance.regular_pool;
    if genes == 0 {
        let ind = Individual::evaluate(RegularRoster::for_instance(instance), instance);
        return Ok(OracleResult {
            objective: ind.objective,
            solution: ind.into_solution(),
            rosters_enumerated: 1,
            feasible_rosters: 1,
        });
    }
    let base = instance.shift_count() as u8 + 1;
    let branches: Vec<BranchBest> = (0..base)
        .into_par_iter()
        .filter_map(|first| search_branch(instance, first, genes))
        .collect();
    let enumerated = branches.iter().map(|b| b.enumerated).sum();
    let feasible = branches.iter().map(|b| b.feasible).sum();
    let best = branches
        .into_iter()
        .min_by(|a, b| (a.objective, &a.codes).cmp(&(b.objective, &b.codes)))
        .expect("the empty roster is always feasible");
    Ok(OracleResult {
        objective: best.objective,
        solution: best.individual.into_solution(),
        rosters_enumerated: enumerated,
        feasible_rosters: feasible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluator::check_feasibility;

    fn single(demand_hour3: i64, cap: f64) -> ProblemInstance {
        let mut inst = ProblemInstance::zero_demand(1, 1);
        inst.params.attendance_cap = cap;
        inst.demand[0][3] = demand_hour3;
        inst
    }

    #[test]
    fn one_worker_one_day() {
        // a full attendance cap lets the single regular work the single day
        let r = enumerate_optimal(&single(20, 1.0), DEFAULT_GUARD_LIMIT).unwrap();
        assert_eq!(r.objective, 1);
        assert_eq!(r.rosters_enumerated, 7);

        let r = enumerate_optimal(&single(45, 1.0), DEFAULT_GUARD_LIMIT).unwrap();
        assert_eq!(r.objective, 2);
        assert!(r.solution.roster.get(0, 0, 0));
        assert_eq!(r.solution.temp_plan.total(), 1);

        // with the default cap floor(0.85) = 0 days, only temps remain
        let r = enumerate_optimal(&single(45, 0.85), DEFAULT_GUARD_LIMIT).unwrap();
        assert_eq!(r.objective, 3);
        assert_eq!(r.feasible_rosters, 1);
    }

    #[test]
    fn zero_demand_optimum_is_empty() {
        let inst = ProblemInstance::zero_demand(2, 2);
        let r = enumerate_optimal(&inst, DEFAULT_GUARD_LIMIT).unwrap();
        assert_eq!(r.objective, 0);
        assert_eq!(r.solution.roster, RegularRoster::for_instance(&inst));
        assert_eq!(r.rosters_enumerated, 2401);
    }

    #[test]
    fn guard_refuses_large_spaces() {
        let inst = ProblemInstance::zero_demand(3, 3);
        match enumerate_optimal(&inst, DEFAULT_GUARD_LIMIT) {
            Err(Error::SearchSpaceTooLarge { states, limit }) => {
                assert_eq!(states, 7u128.pow(9));
                assert_eq!(limit, DEFAULT_GUARD_LIMIT);
            }
            other => panic!("expected refusal, got {other:?}"),
        }
        assert_eq!(state_count(&ProblemInstance::zero_demand(30, 200)), u128::MAX);
    }

    #[test]
    fn lexicographic_tie_break() {
        // demand 25 at hour 23 of day 0: one regular on shift 5 is optimal for
        // either worker; codes [0, 6, 0, 0] (worker 1) precede [6, 0, 0, 0]
        let mut inst = ProblemInstance::zero_demand(2, 2);
        inst.demand[0][23] = 25;
        let r = enumerate_optimal(&inst, DEFAULT_GUARD_LIMIT).unwrap();
        assert_eq!(r.objective, 1);
        assert!(r.solution.roster.get(0, 5, 1));
        assert_eq!(r.solution.roster.assignment_count(), 1);
        assert_eq!(check_feasibility(&r.solution, &inst), Ok(()));
    }
}
