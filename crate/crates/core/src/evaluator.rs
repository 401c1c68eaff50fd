//! Hourly coverage, the temporary-worker decoder, the person-day objective,
//! and full-solution feasibility checks.
//!
//! Everything here is a pure function of its inputs.

use std::fmt;

use crate::error::{Error, Result};
use crate::model::{ProblemInstance, RegularRoster, Solution, TempPlan, HOURS_PER_DAY, MAX_SHIFTS};

/// A regular worker may not work more than this many days in a row.
pub const MAX_CONSECUTIVE_DAYS: usize = 7;

/// Deliverable throughput and unmet demand per (day, hour).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageReport {
    pub capacity: Vec<Vec<i64>>,
    pub shortfall: Vec<Vec<i64>>,
}

fn hourly_capacity(
    instance: &ProblemInstance,
    regulars: &[u32; MAX_SHIFTS],
    temps: &[u32],
) -> [i64; HOURS_PER_DAY] {
    let reg = instance.params.regular_rate as i64;
    let tmp = instance.params.temp_rate as i64;
    let mut cap = [0i64; HOURS_PER_DAY];
    for (h, c) in cap.iter_mut().enumerate() {
        for &t in instance.catalog.covering_unchecked(h) {
            *c += reg * regulars[t] as i64 + tmp * temps[t] as i64;
        }
    }
    cap
}

/// Parcels per hour the regular roster alone can sort, `D x 24`.
pub fn regular_capacity(roster: &RegularRoster, instance: &ProblemInstance) -> Result<Vec<Vec<i64>>> {
    roster.ensure_fits(instance)?;
    let none = vec![0u32; instance.shift_count()];
    Ok((0..instance.days)
        .map(|d| hourly_capacity(instance, &roster.shift_headcounts(d), &none).to_vec())
        .collect())
}

/// Capacity and shortfall of a roster together with a temporary plan.
pub fn coverage(roster: &RegularRoster, plan: &TempPlan, instance: &ProblemInstance) -> Result<CoverageReport> {
    roster.ensure_fits(instance)?;
    ensure_plan_fits(plan, instance)?;
    let mut capacity = Vec::with_capacity(instance.days);
    let mut shortfall = Vec::with_capacity(instance.days);
    for d in 0..instance.days {
        let cap = hourly_capacity(instance, &roster.shift_headcounts(d), plan.day(d));
        shortfall.push(
            cap.iter()
                .zip(&instance.demand[d])
                .map(|(&c, &want)| (want - c).max(0))
                .collect(),
        );
        capacity.push(cap.to_vec());
    }
    Ok(CoverageReport { capacity, shortfall })
}

/// Derives the temporary plan that fills every hourly shortfall left by the
/// regular roster.
///
/// Each day is scanned hour by hour. When hour `h` still lacks capacity,
/// `ceil(shortfall / temp_rate)` temps are hired on the shift covering `h`
/// that ends latest (lowest index on ties), and their capacity is credited to
/// every hour of that shift before the scan continues. The result covers all
/// demand and is deterministic, but is not guaranteed to be the smallest
/// possible plan.
pub fn decode_temp_plan(roster: &RegularRoster, instance: &ProblemInstance) -> Result<TempPlan> {
    roster.ensure_fits(instance)?;
    if instance.demand.len() != instance.days || instance.demand.iter().any(|r| r.len() != HOURS_PER_DAY) {
        return Err(Error::Dimension("demand matrix is not D x 24".into()));
    }
    Ok(decode_unchecked(roster, instance))
}

pub(crate) fn decode_unchecked(roster: &RegularRoster, instance: &ProblemInstance) -> TempPlan {
    let shifts = instance.shift_count();
    let temp_rate = instance.params.temp_rate as i64;
    let none = [0u32; MAX_SHIFTS];
    let mut plan = TempPlan::new(instance.days, shifts);
    for d in 0..instance.days {
        let mut cap = hourly_capacity(instance, &roster.shift_headcounts(d), &none[..shifts]);
        let demand = &instance.demand[d];
        for h in 0..HOURS_PER_DAY {
            let short = demand[h] - cap[h];
            if short > 0 {
                let k = (short + temp_rate - 1) / temp_rate;
                let t = instance.catalog.latest_cover(h);
                plan.add(d, t, k as u32);
                for hh in instance.catalog.shifts()[t].hours() {
                    cap[hh] += k * temp_rate;
                }
            }
        }
    }
    plan
}

/// Person-days: every roster entry plus every hired temp.
pub fn objective(roster: &RegularRoster, plan: &TempPlan) -> Result<u64> {
    if roster.days() != plan.days() || roster.shift_count() != plan.shift_count() {
        return Err(Error::Dimension(format!(
            "roster is {} days x {} shifts but plan is {} x {}",
            roster.days(),
            roster.shift_count(),
            plan.days(),
            plan.shift_count()
        )));
    }
    Ok(roster.assignment_count() + plan.total())
}

/// Decodes the temp plan for a roster and scores it. One call is one unit of
/// evaluation budget for the solvers.
pub fn evaluate(roster: &RegularRoster, instance: &ProblemInstance) -> Result<(TempPlan, u64)> {
    let plan = decode_temp_plan(roster, instance)?;
    let obj = roster.assignment_count() + plan.total();
    Ok((plan, obj))
}

/// Builds a complete, self-consistent solution from a roster.
pub fn solve_roster(roster: RegularRoster, instance: &ProblemInstance) -> Result<Solution> {
    let (temp_plan, objective) = evaluate(&roster, instance)?;
    Ok(Solution {
        roster,
        temp_plan,
        objective,
    })
}

fn ensure_plan_fits(plan: &TempPlan, instance: &ProblemInstance) -> Result<()> {
    if plan.days() == instance.days && plan.shift_count() == instance.shift_count() {
        Ok(())
    } else {
        Err(Error::Dimension(format!(
            "temp plan is {}x{} but instance is {}x{}",
            plan.days(),
            plan.shift_count(),
            instance.days,
            instance.shift_count()
        )))
    }
}

/// A constraint broken by a solution. Variants are listed in check order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Dimension(String),
    /// (a) capacity below demand.
    Coverage { day: usize, hour: usize, demand: i64, capacity: i64 },
    /// (b) more than one shift on one day.
    MultipleShifts { day: usize, worker: usize, shifts: Vec<usize> },
    /// (c) a run of more than [`MAX_CONSECUTIVE_DAYS`] working days.
    ConsecutiveDays { worker: usize, start_day: usize, length: usize },
    /// (d) more working days than the attendance cap allows.
    AttendanceCap { worker: usize, days: usize, cap: usize },
    /// (e) stated objective disagrees with the roster and plan.
    ObjectiveMismatch { stated: u64, actual: u64 },
}

impl Violation {
    /// The check letter, `'a'` through `'e'`; dimension problems report `'-'`.
    pub fn check(&self) -> char {
        match self {
            Violation::Dimension(_) => '-',
            Violation::Coverage { .. } => 'a',
            Violation::MultipleShifts { .. } => 'b',
            Violation::ConsecutiveDays { .. } => 'c',
            Violation::AttendanceCap { .. } => 'd',
            Violation::ObjectiveMismatch { .. } => 'e',
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Dimension(msg) => write!(f, "dimension: {msg}"),
            Violation::Coverage { day, hour, demand, capacity } => write!(
                f,
                "(a) coverage: day {day} hour {hour} demand {demand} exceeds capacity {capacity}"
            ),
            Violation::MultipleShifts { day, worker, shifts } => {
                write!(f, "(b) one shift per day: worker {worker} on day {day} has shifts {shifts:?}")
            }
            Violation::ConsecutiveDays { worker, start_day, length } => write!(
                f,
                "(c) consecutive days: worker {worker} works {length} days in a row from day {start_day}"
            ),
            Violation::AttendanceCap { worker, days, cap } => {
                write!(f, "(d) attendance: worker {worker} works {days} days, cap is {cap}")
            }
            Violation::ObjectiveMismatch { stated, actual } => {
                write!(f, "(e) objective: stated {stated}, roster and plan give {actual}")
            }
        }
    }
}

/// Checks (b), (c) and (d), the constraints that involve only the roster.
pub fn roster_violations(roster: &RegularRoster, instance: &ProblemInstance) -> Vec<Violation> {
    let mut out = Vec::new();
    if let Err(e) = roster.ensure_fits(instance) {
        out.push(Violation::Dimension(e.to_string()));
        return out;
    }
    for d in 0..roster.days() {
        for s in 0..roster.workers() {
            let m = roster.mask(d, s);
            if m.count_ones() > 1 {
                let shifts = (0..roster.shift_count()).filter(|&t| m >> t & 1 == 1).collect();
                out.push(Violation::MultipleShifts { day: d, worker: s, shifts });
            }
        }
    }
    for s in 0..roster.workers() {
        let mut run = 0;
        for d in 0..=roster.days() {
            if d < roster.days() && roster.works(d, s) {
                run += 1;
            } else {
                if run > MAX_CONSECUTIVE_DAYS {
                    out.push(Violation::ConsecutiveDays {
                        worker: s,
                        start_day: d - run,
                        length: run,
                    });
                }
                run = 0;
            }
        }
    }
    let cap = instance.max_working_days();
    for s in 0..roster.workers() {
        let days = roster.working_days(s);
        if days > cap {
            out.push(Violation::AttendanceCap { worker: s, days, cap });
        }
    }
    out
}

/// Runs checks (a) through (e) in order and returns every violation found.
pub fn check_feasibility(solution: &Solution, instance: &ProblemInstance) -> std::result::Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    if let Err(v) = instance.validate() {
        out.extend(v.into_iter().map(|v| Violation::Dimension(v.to_string())));
        return Err(out);
    }
    let report = match coverage(&solution.roster, &solution.temp_plan, instance) {
        Ok(r) => r,
        Err(e) => return Err(vec![Violation::Dimension(e.to_string())]),
    };
    for (d, row) in report.shortfall.iter().enumerate() {
        for (h, &short) in row.iter().enumerate() {
            if short > 0 {
                out.push(Violation::Coverage {
                    day: d,
                    hour: h,
                    demand: instance.demand[d][h],
                    capacity: report.capacity[d][h],
                });
            }
        }
    }
    out.extend(roster_violations(&solution.roster, instance));
    let actual = solution.roster.assignment_count() + solution.temp_plan.total();
    if actual != solution.objective {
        out.push(Violation::ObjectiveMismatch {
            stated: solution.objective,
            actual,
        });
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_day(workers: usize) -> ProblemInstance {
        ProblemInstance::zero_demand(1, workers)
    }

    #[test]
    fn regular_capacity_examples() {
        let inst = one_day(3);
        let mut r = RegularRoster::for_instance(&inst);
        r.set(0, 1, 0, true);
        r.set(0, 1, 1, true);
        r.set(0, 2, 2, true);
        assert_eq!(regular_capacity(&r, &inst).unwrap()[0][10], 75);

        let empty = RegularRoster::for_instance(&inst);
        assert!(regular_capacity(&empty, &inst).unwrap()[0].iter().all(|&c| c == 0));

        let mut early = RegularRoster::for_instance(&inst);
        early.set(0, 0, 0, true);
        let cap = regular_capacity(&early, &inst).unwrap();
        assert_eq!(cap[0][7], 25);
        assert_eq!(cap[0][9], 0);
    }

    #[test]
    fn capacity_rejects_mismatched_roster() {
        let inst = one_day(3);
        let r = RegularRoster::new(2, 6, 3);
        assert!(matches!(regular_capacity(&r, &inst), Err(Error::Dimension(_))));
    }

    #[test]
    fn decode_single_hour_forces_ceiling() {
        let mut inst = one_day(0);
        inst.demand[0][2] = 130;
        let plan = decode_temp_plan(&RegularRoster::for_instance(&inst), &inst).unwrap();
        assert_eq!(plan.day(0), &[7, 0, 0, 0, 0, 0]);
        let roster = RegularRoster::for_instance(&inst);
        assert_eq!(objective(&roster, &plan).unwrap(), 7);
    }

    #[test]
    fn decode_prefers_latest_ending_cover() {
        let mut inst = one_day(0);
        inst.demand[0][6] = 50;
        inst.demand[0][9] = 50;
        let plan = decode_temp_plan(&RegularRoster::for_instance(&inst), &inst).unwrap();
        assert_eq!(plan.day(0), &[0, 3, 0, 0, 0, 0]);
        assert_eq!(plan.total(), 3);
    }

    #[test]
    fn decode_adds_nothing_when_regulars_suffice() {
        let mut inst = one_day(4);
        for h in 0..24 {
            inst.demand[0][h] = 20;
        }
        let mut r = RegularRoster::for_instance(&inst);
        r.set(0, 0, 0, true);
        r.set(0, 2, 1, true);
        r.set(0, 5, 2, true);
        let plan = decode_temp_plan(&r, &inst).unwrap();
        assert_eq!(plan.total(), 0);
    }

    #[test]
    fn objective_examples() {
        let mut r = RegularRoster::new(5, 6, 4);
        let mut set = 0;
        'outer: for d in 0..5 {
            for s in 0..4 {
                r.set(d, (d + s) % 6, s, true);
                set += 1;
                if set == 10 {
                    break 'outer;
                }
            }
        }
        let mut plan = TempPlan::new(5, 6);
        plan.set(0, 0, 2);
        plan.set(3, 4, 3);
        assert_eq!(objective(&r, &plan).unwrap(), 15);
        assert_eq!(objective(&RegularRoster::new(5, 6, 4), &TempPlan::new(5, 6)).unwrap(), 0);
        assert!(objective(&r, &TempPlan::new(4, 6)).is_err());
    }

    #[test]
    fn decoded_solution_is_feasible() {
        let mut inst = ProblemInstance::zero_demand(2, 3);
        inst.demand[0] = (0..24).map(|h| 10 * h as i64).collect();
        inst.demand[1] = (0..24).map(|h| 300 - 10 * h as i64).collect();
        let mut r = RegularRoster::for_instance(&inst);
        r.set(0, 3, 0, true);
        r.set(1, 1, 1, true);
        let sol = solve_roster(r, &inst).unwrap();
        assert_eq!(check_feasibility(&sol, &inst), Ok(()));
    }

    #[test]
    fn multiple_shifts_reported_at_coordinates() {
        let inst = ProblemInstance::zero_demand(10, 5);
        let mut r = RegularRoster::for_instance(&inst);
        r.set(4, 1, 2, true);
        r.set(4, 3, 2, true);
        let mut sol = solve_roster(r, &inst).unwrap();
        sol.objective = 2;
        let v = check_feasibility(&sol, &inst).unwrap_err();
        assert_eq!(
            v,
            vec![Violation::MultipleShifts { day: 4, worker: 2, shifts: vec![1, 3] }]
        );
    }

    #[test]
    fn eight_day_run_reported_from_first_day() {
        let inst = ProblemInstance::zero_demand(12, 1);
        let mut r = RegularRoster::for_instance(&inst);
        // days 1..8 in one-based terms
        for d in 0..8 {
            r.set(d, 2, 0, true);
        }
        let v = roster_violations(&r, &inst);
        assert_eq!(v, vec![Violation::ConsecutiveDays { worker: 0, start_day: 0, length: 8 }]);

        r.set(7, 2, 0, false);
        assert!(roster_violations(&r, &inst).is_empty());
    }

    #[test]
    fn run_reaching_last_day_is_checked() {
        let inst = ProblemInstance::zero_demand(10, 1);
        let mut r = RegularRoster::for_instance(&inst);
        for d in 2..10 {
            r.set(d, 0, 0, true);
        }
        let v = roster_violations(&r, &inst);
        assert!(v.contains(&Violation::ConsecutiveDays { worker: 0, start_day: 2, length: 8 }));
    }

    #[test]
    fn attendance_and_objective_checks() {
        let inst = ProblemInstance::zero_demand(10, 1);
        let mut r = RegularRoster::for_instance(&inst);
        for d in (0..10).filter(|&d| d != 8) {
            r.set(d, 0, 0, true);
        }
        let mut sol = solve_roster(r, &inst).unwrap();
        sol.objective += 1;
        let v = check_feasibility(&sol, &inst).unwrap_err();
        let checks: Vec<char> = v.iter().map(Violation::check).collect();
        assert_eq!(checks, ['c', 'd', 'e']);
        assert!(v.contains(&Violation::AttendanceCap { worker: 0, days: 9, cap: 8 }));
    }

    #[test]
    fn coverage_shortfall_reported() {
        let mut inst = one_day(1);
        inst.demand[0][3] = 30;
        let r = RegularRoster::for_instance(&inst);
        let sol = Solution {
            roster: r,
            temp_plan: TempPlan::new(1, 6),
            objective: 0,
        };
        let v = check_feasibility(&sol, &inst).unwrap_err();
        assert_eq!(v, vec![Violation::Coverage { day: 0, hour: 3, demand: 30, capacity: 0 }]);
    }
}
