//! Simulated annealing with a single-gene neighbourhood, Metropolis
//! acceptance, and geometric cooling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ga::GaConfig;
use crate::model::{ProblemInstance, RegularRoster, Solution};
use crate::repair::repair_all;
use crate::search::{random_roster, Individual};
use crate::trace::{ConvergenceTrace, Stopwatch, TraceRecord};

/// Neighbours sampled when calibrating the starting temperature.
pub const CALIBRATION_SAMPLES: usize = 100;
/// Target acceptance probability for the median uphill move at the start.
pub const CALIBRATION_ACCEPTANCE: f64 = 0.8;

#[derive(Debug, Clone, PartialEq)]
pub struct SaConfig {
    /// `None` calibrates from sampled neighbours of the starting roster.
    pub initial_temp: Option<f64>,
    pub cooling_factor: f64,
    pub steps_per_temperature: usize,
    /// `None` means `1e-3 * initial_temp`.
    pub min_temp: Option<f64>,
    pub max_evaluations: u64,
    pub seed: u64,
    pub record_time: bool,
}

impl Default for SaConfig {
    fn default() -> Self {
        let ga = GaConfig::default();
        SaConfig {
            initial_temp: None,
            cooling_factor: 0.95,
            steps_per_temperature: 50,
            min_temp: None,
            max_evaluations: (ga.population_size * ga.generations) as u64,
            seed: 0,
            record_time: false,
        }
    }
}

impl SaConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.cooling_factor > 0.0 && self.cooling_factor < 1.0) {
            return Err(Error::Parameter(format!(
                "cooling factor must lie in (0, 1), got {}",
                self.cooling_factor
            )));
        }
        if self.steps_per_temperature == 0 {
            return Err(Error::Parameter("steps_per_temperature must be at least 1".into()));
        }
        if self.max_evaluations == 0 {
            return Err(Error::Parameter("max_evaluations must be at least 1".into()));
        }
        for (name, t) in [("initial_temp", self.initial_temp), ("min_temp", self.min_temp)] {
            if let Some(t) = t {
                if !(t > 0.0 && t.is_finite()) {
                    return Err(Error::Parameter(format!("{name} must be positive, got {t}")));
                }
            }
        }
        Ok(())
    }
}

/// Resamples one uniformly chosen worker-day gene to a different state
/// (off or another shift), without repair. Returns the `(day, worker)` hit.
pub fn perturb<R: Rng + ?Sized>(roster: &mut RegularRoster, rng: &mut R) -> (usize, usize) {
    let day = rng.random_range(0..roster.days());
    let worker = rng.random_range(0..roster.workers());
    let current = roster.mask(day, worker);
    let states = roster.shift_count() + 1;
    // state 0 is off, state k is shift k-1
    let current_state = if current.count_ones() == 1 {
        current.trailing_zeros() as usize + 1
    } else if current == 0 {
        0
    } else {
        states
    };
    let mut pick = rng.random_range(0..states - usize::from(current_state < states));
    if pick >= current_state {
        pick += 1;
    }
    roster.set_mask(day, worker, if pick == 0 { 0 } else { 1 << (pick - 1) });
    (day, worker)
}

/// One neighbourhood move: perturb a single gene, repair, evaluate.
pub fn neighbor<R: Rng + ?Sized>(current: &Individual, instance: &ProblemInstance, rng: &mut R) -> Individual {
    let mut roster = current.roster.clone();
    perturb(&mut roster, rng);
    repair_all(&mut roster, instance, rng);
    Individual::evaluate(roster, instance)
}

/// Metropolis probability of accepting an objective change of `delta` at
/// temperature `temp`.
pub fn acceptance_probability(delta: i64, temp: f64) -> Result<f64> {
    if temp.is_nan() || temp <= 0.0 {
        return Err(Error::Parameter(format!("temperature must be positive, got {temp}")));
    }
    Ok(if delta <= 0 {
        1.0
    } else {
        (-(delta as f64) / temp).exp()
    })
}

/// Improvements and ties are always accepted without drawing; worse moves are
/// accepted when a uniform draw falls below `exp(-delta / temp)`.
pub fn accept<R: Rng + ?Sized>(delta: i64, temp: f64, rng: &mut R) -> Result<bool> {
    let p = acceptance_probability(delta, temp)?;
    Ok(delta <= 0 || rng.random::<f64>() < p)
}

/// Temperature at which an uphill move of size `median_uphill` is accepted
/// with probability [`CALIBRATION_ACCEPTANCE`].
pub fn calibrated_temperature(median_uphill: f64) -> f64 {
    -median_uphill / CALIBRATION_ACCEPTANCE.ln()
}

fn median(sorted: &[i64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2] as f64
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) as f64 / 2.0
    }
}

/// Geometric schedule `t0, alpha*t0, alpha^2*t0, ...` down to `min_temp`.
pub fn temperature_schedule(t0: f64, alpha: f64, min_temp: f64) -> impl Iterator<Item = f64> {
    std::iter::successors(Some(t0), move |t| Some(t * alpha)).take_while(move |&t| t >= min_temp)
}

#[derive(Debug, Clone)]
pub struct SaOutcome {
    pub best: Solution,
    pub trace: ConvergenceTrace,
    pub evaluations: u64,
    pub initial_temp: f64,
}

/// Anneals from one random repaired roster.
///
/// Runs `steps_per_temperature` moves per temperature level, cooling by
/// `cooling_factor` after each level, and stops when the temperature drops
/// below `min_temp` or `max_evaluations` is spent. Calibration samples count
/// against the budget. The trace has a record for the starting point and one
/// per move.
pub fn run_sa(instance: &ProblemInstance, config: &SaConfig) -> Result<SaOutcome> {
    instance.ensure_valid()?;
    config.validate()?;
    let clock = Stopwatch::start(config.record_time);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let mut current = Individual::evaluate(random_roster(instance, &mut rng), instance);
    let mut evaluations = 1u64;
    let mut best = current.clone();
    let mut trace = ConvergenceTrace::new();
    trace.push(TraceRecord {
        iteration: 0,
        evaluations,
        best_objective: best.objective,
        elapsed_ms: clock.elapsed_ms(),
    });

    let t0 = match config.initial_temp {
        Some(t) => t,
        None => {
            let room = config.max_evaluations.saturating_sub(evaluations);
            let samples = CALIBRATION_SAMPLES.min(room as usize);
            let mut uphill = Vec::with_capacity(samples);
            for _ in 0..samples {
                let cand = neighbor(&current, instance, &mut rng);
                evaluations += 1;
                let delta = cand.objective as i64 - current.objective as i64;
                if delta > 0 {
                    uphill.push(delta);
                }
                if cand.objective < best.objective {
                    best = cand;
                }
            }
            if uphill.is_empty() {
                1.0
            } else {
                uphill.sort_unstable();
                calibrated_temperature(median(&uphill))
            }
        }
    };
    let min_temp = config.min_temp.unwrap_or(1e-3 * t0);

    let mut iteration = 0u64;
    'cooling: for temp in temperature_schedule(t0, config.cooling_factor, min_temp) {
        for _ in 0..config.steps_per_temperature {
            if evaluations >= config.max_evaluations {
                break 'cooling;
            }
            let cand = neighbor(&current, instance, &mut rng);
            evaluations += 1;
            iteration += 1;
            let delta = cand.objective as i64 - current.objective as i64;
            if accept(delta, temp, &mut rng)? {
                current = cand;
                if current.objective < best.objective {
                    best = current.clone();
                }
            }
            trace.push(TraceRecord {
                iteration,
                evaluations,
                best_objective: best.objective,
                elapsed_ms: clock.elapsed_ms(),
            });
        }
    }

    Ok(SaOutcome {
        best: best.into_solution(),
        trace,
        evaluations,
        initial_temp: t0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluator::check_feasibility;
    use crate::io::generate_instance;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn config_validation() {
        assert!(SaConfig::default().validate().is_ok());
        assert_eq!(SaConfig::default().max_evaluations, 15_000);
        for bad in [
            SaConfig { cooling_factor: 1.0, ..Default::default() },
            SaConfig { cooling_factor: 0.0, ..Default::default() },
            SaConfig { steps_per_temperature: 0, ..Default::default() },
            SaConfig { initial_temp: Some(0.0), ..Default::default() },
            SaConfig { min_temp: Some(-1.0), ..Default::default() },
        ] {
            assert!(bad.validate().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn perturb_always_changes_state() {
        let mut g = rng(1);
        for _ in 0..500 {
            let mut r = RegularRoster::new(1, 6, 1);
            r.set_mask(0, 0, [0u8, 1, 2, 4, 8, 16, 32][g.random_range(0..7)]);
            let before = r.mask(0, 0);
            perturb(&mut r, &mut g);
            assert_ne!(r.mask(0, 0), before);
            assert!(r.mask(0, 0).count_ones() <= 1);
        }
    }

    #[test]
    fn perturb_reaches_every_other_state() {
        let mut g = rng(2);
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..300 {
            let mut r = RegularRoster::new(1, 6, 1);
            r.set_mask(0, 0, 4);
            perturb(&mut r, &mut g);
            seen.insert(r.mask(0, 0));
        }
        assert_eq!(seen.into_iter().collect::<Vec<_>>(), [0, 1, 2, 8, 16, 32]);
    }

    #[test]
    fn neighbor_of_empty_zero_demand_roster_costs_one() {
        let inst = ProblemInstance::zero_demand(10, 3);
        let current = Individual::evaluate(RegularRoster::for_instance(&inst), &inst);
        let mut g = rng(3);
        for _ in 0..50 {
            let n = neighbor(&current, &inst, &mut g);
            assert_eq!(n.objective, 1);
        }
    }

    #[test]
    fn neighbors_are_feasible() {
        let inst = generate_instance(3, 10, 5, 150.0, 0.3).unwrap();
        let mut g = rng(4);
        let mut cur = Individual::evaluate(random_roster(&inst, &mut g), &inst);
        for _ in 0..200 {
            cur = neighbor(&cur, &inst, &mut g);
            assert_eq!(check_feasibility(&cur.clone().into_solution(), &inst), Ok(()));
        }
    }

    #[test]
    fn acceptance_examples() {
        let mut g = rng(5);
        assert!(accept(-5, 0.01, &mut g).unwrap());
        assert!(accept(0, 0.01, &mut g).unwrap());
        let p = acceptance_probability(10, 10.0).unwrap();
        assert!((p - 0.36787944117144233).abs() < 1e-12);
        assert!(accept(1, 0.0, &mut g).is_err());
        assert!(accept(1, -2.0, &mut g).is_err());
        assert!(acceptance_probability(1, f64::NAN).is_err());
    }

    #[test]
    fn acceptance_vanishes_when_cold() {
        assert_eq!(acceptance_probability(1, 1e-12).unwrap(), 0.0);
        let mut g = rng(6);
        assert!((0..1000).all(|_| !accept(1, 1e-12, &mut g).unwrap()));
    }

    #[test]
    fn acceptance_rate_matches_probability() {
        let mut g = rng(7);
        let n = 20_000;
        let hits = (0..n).filter(|_| accept(10, 10.0, &mut g).unwrap()).count();
        let rate = hits as f64 / n as f64;
        assert!((rate - (-1f64).exp()).abs() < 0.015, "{rate}");
    }

    #[test]
    fn calibration_hits_target() {
        let t = calibrated_temperature(3.0);
        assert!((acceptance_probability(3, t).unwrap() - 0.8).abs() < 1e-12);
    }

    #[test]
    fn schedule_strictly_decreasing_and_positive() {
        let temps: Vec<f64> = temperature_schedule(5.0, 0.95, 5e-3).collect();
        assert!(temps.len() > 100);
        assert!(temps.windows(2).all(|w| w[1] < w[0]));
        assert!(temps.iter().all(|&t| t >= 5e-3));
        assert_eq!(temps.len(), 135);
    }

    #[test]
    fn single_evaluation_budget() {
        let inst = generate_instance(1, 5, 3, 80.0, 0.1).unwrap();
        let cfg = SaConfig { max_evaluations: 1, seed: 4, ..Default::default() };
        let out = run_sa(&inst, &cfg).unwrap();
        assert_eq!(out.trace.len(), 1);
        assert_eq!(out.evaluations, 1);
        let mut g = rng(4);
        let first = Individual::evaluate(random_roster(&inst, &mut g), &inst);
        assert_eq!(out.best, first.into_solution());
    }

    #[test]
    fn run_respects_budget_and_is_deterministic() {
        let inst = generate_instance(8, 10, 6, 150.0, 0.2).unwrap();
        let cfg = SaConfig { max_evaluations: 700, seed: 7, ..Default::default() };
        let out = run_sa(&inst, &cfg).unwrap();
        assert!(out.evaluations <= 700);
        assert!(out.trace.is_non_increasing());
        assert_eq!(out.trace.final_objective(), Some(out.best.objective));
        assert_eq!(check_feasibility(&out.best, &inst), Ok(()));
        let again = run_sa(&inst, &cfg).unwrap();
        assert_eq!(again.best, out.best);
        assert_eq!(again.trace, out.trace);
    }

    #[test]
    fn stops_at_min_temp() {
        let inst = generate_instance(8, 4, 3, 100.0, 0.2).unwrap();
        let cfg = SaConfig {
            initial_temp: Some(1.0),
            min_temp: Some(0.5),
            steps_per_temperature: 10,
            max_evaluations: 10_000,
            ..Default::default()
        };
        let out = run_sa(&inst, &cfg).unwrap();
        // levels 1.0, 0.95, ..., 0.95^13 = 0.513
        assert_eq!(out.evaluations, 1 + 14 * 10);
    }
}
