//! Generational genetic algorithm over day-chromosome rosters.
//!
//! An individual's genotype is its [`RegularRoster`]: one chromosome per day,
//! each holding a categorical gene (off or one shift) per regular worker. The
//! temporary plan is never part of the genotype; it is decoded from the
//! roster on evaluation.
//!
//! All variation (selection, crossover, mutation, repair) draws from a single
//! seeded generator in a fixed order. Evaluation is pure, so it can run in
//! parallel without changing the result.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{ProblemInstance, RegularRoster, Solution};
use crate::repair::repair_all;
use crate::search::{random_roster, uniform_gene, Individual};
use crate::trace::{ConvergenceTrace, Stopwatch, TraceRecord};

#[derive(Debug, Clone, PartialEq)]
pub struct GaConfig {
    pub population_size: usize,
    pub generations: usize,
    pub crossover_prob: f64,
    /// Probability that a single worker-day gene is resampled.
    pub mutation_prob: f64,
    pub tournament_size: usize,
    pub elite_count: usize,
    pub seed: u64,
    /// Evaluate offspring on the rayon pool.
    pub parallel: bool,
    /// Fill `elapsed_ms` in the trace.
    pub record_time: bool,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            population_size: 50,
            generations: 300,
            crossover_prob: 0.9,
            mutation_prob: 0.01,
            tournament_size: 2,
            elite_count: 1,
            seed: 0,
            parallel: false,
            record_time: false,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population_size < 2 {
            return Err(Error::Parameter("population_size must be at least 2".into()));
        }
        if self.elite_count >= self.population_size {
            return Err(Error::Parameter("elite_count must be below population_size".into()));
        }
        if self.tournament_size == 0 {
            return Err(Error::Parameter("tournament_size must be at least 1".into()));
        }
        for (name, p) in [("crossover_prob", self.crossover_prob), ("mutation_prob", self.mutation_prob)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Parameter(format!("{name} must lie in [0, 1], got {p}")));
            }
        }
        Ok(())
    }

    /// Evaluations a full run spends: the initial population plus every
    /// non-elite offspring of every generation.
    pub fn evaluation_budget(&self) -> u64 {
        (self.population_size + self.generations * (self.population_size - self.elite_count)) as u64
    }
}

fn evaluate_all(rosters: Vec<RegularRoster>, instance: &ProblemInstance, parallel: bool) -> Vec<Individual> {
    if parallel {
        rosters
            .into_par_iter()
            .map(|r| Individual::evaluate(r, instance))
            .collect()
    } else {
        rosters
            .into_iter()
            .map(|r| Individual::evaluate(r, instance))
            .collect()
    }
}

fn init_with<R: Rng + ?Sized>(instance: &ProblemInstance, config: &GaConfig, rng: &mut R) -> Vec<Individual> {
    let rosters = (0..config.population_size)
        .map(|_| random_roster(instance, rng))
        .collect();
    evaluate_all(rosters, instance, config.parallel)
}

/// Random repaired rosters, decoded and evaluated. Deterministic in
/// `config.seed`.
pub fn init_population(instance: &ProblemInstance, config: &GaConfig) -> Result<Vec<Individual>> {
    instance.ensure_valid()?;
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    Ok(init_with(instance, config, &mut rng))
}

/// Exchanges the listed day chromosomes between two rosters in place.
pub fn swap_days(a: &mut RegularRoster, b: &mut RegularRoster, days: &[usize]) {
    assert_eq!(
        (a.days(), a.workers()),
        (b.days(), b.workers()),
        "rosters must share a shape"
    );
    for &d in days {
        a.day_mut(d).swap_with_slice(b.day_mut(d));
    }
}

/// `floor(D/2)` distinct days drawn uniformly, ascending.
pub fn crossover_days<R: Rng + ?Sized>(days: usize, rng: &mut R) -> Vec<usize> {
    let mut picked = index::sample(rng, days, days / 2).into_vec();
    picked.sort_unstable();
    picked
}

fn crossover_rosters<R: Rng + ?Sized>(
    a: &RegularRoster,
    b: &RegularRoster,
    instance: &ProblemInstance,
    rng: &mut R,
) -> (RegularRoster, RegularRoster) {
    let days = crossover_days(a.days(), rng);
    let (mut ca, mut cb) = (a.clone(), b.clone());
    swap_days(&mut ca, &mut cb, &days);
    repair_all(&mut ca, instance, rng);
    repair_all(&mut cb, instance, rng);
    (ca, cb)
}

/// Day-block crossover: the children swap half the day chromosomes, then are
/// repaired and re-evaluated.
pub fn crossover<R: Rng + ?Sized>(
    parent_a: &Individual,
    parent_b: &Individual,
    instance: &ProblemInstance,
    rng: &mut R,
) -> (Individual, Individual) {
    let (a, b) = crossover_rosters(&parent_a.roster, &parent_b.roster, instance, rng);
    (Individual::evaluate(a, instance), Individual::evaluate(b, instance))
}

/// Resamples each gene with probability `prob` among off and every shift,
/// uniformly. No repair.
pub fn resample_genes<R: Rng + ?Sized>(roster: &mut RegularRoster, prob: f64, rng: &mut R) {
    if prob <= 0.0 {
        return;
    }
    let shifts = roster.shift_count();
    for d in 0..roster.days() {
        for m in roster.day_mut(d) {
            if rng.random_bool(prob) {
                *m = uniform_gene(shifts, rng);
            }
        }
    }
}

fn mutate_roster<R: Rng + ?Sized>(
    roster: &mut RegularRoster,
    instance: &ProblemInstance,
    prob: f64,
    rng: &mut R,
) {
    resample_genes(roster, prob, rng);
    repair_all(roster, instance, rng);
}

/// Gene-wise resampling followed by repair and re-evaluation.
pub fn mutate<R: Rng + ?Sized>(
    individual: &Individual,
    instance: &ProblemInstance,
    config: &GaConfig,
    rng: &mut R,
) -> Individual {
    let mut roster = individual.roster.clone();
    mutate_roster(&mut roster, instance, config.mutation_prob, rng);
    Individual::evaluate(roster, instance)
}

/// Draws `tournament_size` members with replacement and returns the index of
/// the one with the lowest objective (earliest index on ties).
pub fn select_tournament<R: Rng + ?Sized>(
    population: &[Individual],
    config: &GaConfig,
    rng: &mut R,
) -> Result<usize> {
    if population.is_empty() {
        return Err(Error::Parameter("tournament over an empty population".into()));
    }
    let mut winner = rng.random_range(0..population.len());
    for _ in 1..config.tournament_size {
        let c = rng.random_range(0..population.len());
        if (population[c].objective, c) < (population[winner].objective, winner) {
            winner = c;
        }
    }
    Ok(winner)
}

fn best_index(population: &[Individual]) -> usize {
    population
        .iter()
        .enumerate()
        .min_by_key(|(i, ind)| (ind.objective, *i))
        .map(|(i, _)| i)
        .expect("non-empty population")
}

#[derive(Debug, Clone)]
pub struct GaOutcome {
    pub best: Solution,
    pub trace: ConvergenceTrace,
    pub evaluations: u64,
}

/// Runs the generational loop and returns the best individual ever seen.
///
/// Each generation copies the `elite_count` best individuals unchanged and
/// breeds the rest: two tournament winners are crossed with probability
/// `crossover_prob` (otherwise cloned), and each child is mutated. The trace
/// has one record per generation, generation 0 included.
pub fn run_ga(instance: &ProblemInstance, config: &GaConfig) -> Result<GaOutcome> {
    run_ga_observed(instance, config, |_, _| {})
}

/// [`run_ga`] with a callback that sees every generation's population,
/// generation 0 first.
pub fn run_ga_observed<F>(instance: &ProblemInstance, config: &GaConfig, mut observe: F) -> Result<GaOutcome>
where
    F: FnMut(usize, &[Individual]),
{
    instance.ensure_valid()?;
    config.validate()?;
    let clock = Stopwatch::start(config.record_time);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let mut population = init_with(instance, config, &mut rng);
    let mut evaluations = population.len() as u64;
    let mut best = population[best_index(&population)].clone();
    let mut trace = ConvergenceTrace::new();
    trace.push(TraceRecord {
        iteration: 0,
        evaluations,
        best_objective: best.objective,
        elapsed_ms: clock.elapsed_ms(),
    });
    observe(0, &population);

    for generation in 1..=config.generations {
        let mut ranked: Vec<usize> = (0..population.len()).collect();
        ranked.sort_by_key(|&i| (population[i].objective, i));
        let mut next: Vec<Individual> = ranked[..config.elite_count]
            .iter()
            .map(|&i| population[i].clone())
            .collect();

        let wanted = config.population_size - next.len();
        let mut offspring = Vec::with_capacity(wanted + 1);
        while offspring.len() < wanted {
            let a = &population[select_tournament(&population, config, &mut rng)?];
            let b = &population[select_tournament(&population, config, &mut rng)?];
            let (mut ca, mut cb) = if rng.random_bool(config.crossover_prob) {
                crossover_rosters(&a.roster, &b.roster, instance, &mut rng)
            } else {
                (a.roster.clone(), b.roster.clone())
            };
            mutate_roster(&mut ca, instance, config.mutation_prob, &mut rng);
            offspring.push(ca);
            if offspring.len() < wanted {
                mutate_roster(&mut cb, instance, config.mutation_prob, &mut rng);
                offspring.push(cb);
            }
        }
        evaluations += offspring.len() as u64;
        next.extend(evaluate_all(offspring, instance, config.parallel));
        population = next;

        let i = best_index(&population);
        if population[i].objective < best.objective {
            best = population[i].clone();
        }
        trace.push(TraceRecord {
            iteration: generation as u64,
            evaluations,
            best_objective: best.objective,
            elapsed_ms: clock.elapsed_ms(),
        });
        observe(generation, &population);
    }

    Ok(GaOutcome {
        best: best.into_solution(),
        trace,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluator::{check_feasibility, roster_violations};
    use crate::io::generate_instance;

    fn small() -> ProblemInstance {
        generate_instance(5, 10, 6, 120.0, 0.2).unwrap()
    }

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn config_validation() {
        assert!(GaConfig::default().validate().is_ok());
        let bad = [
            GaConfig { population_size: 1, elite_count: 0, ..Default::default() },
            GaConfig { elite_count: 50, ..Default::default() },
            GaConfig { crossover_prob: 1.5, ..Default::default() },
            GaConfig { mutation_prob: -0.1, ..Default::default() },
            GaConfig { tournament_size: 0, ..Default::default() },
        ];
        for c in bad {
            assert!(c.validate().is_err(), "{c:?}");
        }
        assert_eq!(GaConfig::default().evaluation_budget(), 50 + 300 * 49);
    }

    #[test]
    fn initial_population_is_feasible_and_seeded() {
        let inst = small();
        let cfg = GaConfig { population_size: 12, ..Default::default() };
        let pop = init_population(&inst, &cfg).unwrap();
        assert_eq!(pop.len(), 12);
        for ind in &pop {
            let sol = ind.clone().into_solution();
            assert_eq!(check_feasibility(&sol, &inst), Ok(()));
        }
        assert_eq!(pop, init_population(&inst, &cfg).unwrap());
    }

    #[test]
    fn zero_demand_population_costs_only_regulars() {
        let inst = ProblemInstance::zero_demand(10, 6);
        let pop = init_population(&inst, &GaConfig { population_size: 5, ..Default::default() }).unwrap();
        for ind in pop {
            assert_eq!(ind.temp_plan.total(), 0);
            assert_eq!(ind.objective, ind.roster.assignment_count());
        }
    }

    #[test]
    fn swapping_identical_parents_is_identity() {
        let inst = small();
        let a = random_roster(&inst, &mut rng(1));
        let (mut x, mut y) = (a.clone(), a.clone());
        swap_days(&mut x, &mut y, &crossover_days(10, &mut rng(2)));
        assert_eq!(x, a);
        assert_eq!(y, a);
    }

    #[test]
    fn swap_first_half() {
        let inst = ProblemInstance::zero_demand(30, 4);
        let a = random_roster(&inst, &mut rng(1));
        let b = random_roster(&inst, &mut rng(2));
        let (mut ca, mut cb) = (a.clone(), b.clone());
        let days: Vec<usize> = (0..15).collect();
        swap_days(&mut ca, &mut cb, &days);
        for d in 0..30 {
            let (from_a, from_b) = if d < 15 { (&b, &a) } else { (&a, &b) };
            assert_eq!(ca.day(d), from_a.day(d));
            assert_eq!(cb.day(d), from_b.day(d));
        }
    }

    #[test]
    fn crossover_picks_half_the_days() {
        let mut g = rng(3);
        for days in [1, 2, 7, 30] {
            let picked = crossover_days(days, &mut g);
            assert_eq!(picked.len(), days / 2);
            assert!(picked.windows(2).all(|w| w[0] < w[1]));
            assert!(picked.iter().all(|&d| d < days));
        }
    }

    #[test]
    fn crossover_and_mutation_outputs_are_feasible() {
        let inst = small();
        let mut g = rng(4);
        let cfg = GaConfig { mutation_prob: 0.3, ..Default::default() };
        let a = Individual::evaluate(random_roster(&inst, &mut g), &inst);
        let b = Individual::evaluate(random_roster(&inst, &mut g), &inst);
        for _ in 0..20 {
            let (x, y) = crossover(&a, &b, &inst, &mut g);
            let z = mutate(&x, &inst, &cfg, &mut g);
            for ind in [x, y, z] {
                assert!(roster_violations(&ind.roster, &inst).is_empty());
                assert_eq!(check_feasibility(&ind.into_solution(), &inst), Ok(()));
            }
        }
    }

    #[test]
    fn zero_mutation_is_identity() {
        let inst = small();
        let a = Individual::evaluate(random_roster(&inst, &mut rng(5)), &inst);
        let cfg = GaConfig { mutation_prob: 0.0, ..Default::default() };
        assert_eq!(mutate(&a, &inst, &cfg, &mut rng(6)), a);
    }

    #[test]
    fn full_mutation_resamples_uniformly() {
        let mut r = RegularRoster::new(100, 6, 70);
        resample_genes(&mut r, 1.0, &mut rng(7));
        let total = (100 * 70) as f64;
        let off = (0..100).flat_map(|d| r.day(d).to_vec()).filter(|&m| m == 0).count() as f64;
        // 1/7 with a 4-sigma band (sigma ~ 0.0042)
        assert!((off / total - 1.0 / 7.0).abs() < 0.017, "{}", off / total);
        assert!((0..100).all(|d| r.day(d).iter().all(|m| m.count_ones() <= 1)));
    }

    #[test]
    fn tournament_examples() {
        let inst = ProblemInstance::zero_demand(2, 2);
        let mk = |obj: u64| Individual {
            roster: RegularRoster::for_instance(&inst),
            temp_plan: crate::model::TempPlan::new(2, 6),
            objective: obj,
        };
        let cfg = GaConfig::default();
        let empty: Vec<Individual> = vec![];
        assert!(select_tournament(&empty, &cfg, &mut rng(0)).is_err());
        assert_eq!(select_tournament(&[mk(9)], &cfg, &mut rng(0)).unwrap(), 0);

        let pair = [mk(55), mk(40)];
        let big = GaConfig { tournament_size: 64, ..cfg.clone() };
        assert_eq!(select_tournament(&pair, &big, &mut rng(1)).unwrap(), 1);

        let one = GaConfig { tournament_size: 1, ..cfg };
        let pop: Vec<Individual> = (0..4).map(mk).collect();
        let mut hits = [0; 4];
        let mut g = rng(2);
        for _ in 0..4000 {
            hits[select_tournament(&pop, &one, &mut g).unwrap()] += 1;
        }
        assert!(hits.iter().all(|&h| (850..1150).contains(&h)), "{hits:?}");
    }

    #[test]
    fn tournament_ties_go_to_earlier_index() {
        let inst = ProblemInstance::zero_demand(1, 1);
        let pop: Vec<Individual> = (0..3)
            .map(|_| Individual::evaluate(RegularRoster::for_instance(&inst), &inst))
            .collect();
        let cfg = GaConfig { tournament_size: 200, ..Default::default() };
        assert_eq!(select_tournament(&pop, &cfg, &mut rng(3)).unwrap(), 0);
    }

    #[test]
    fn zero_generations_returns_initial_best() {
        let inst = small();
        let cfg = GaConfig { population_size: 8, generations: 0, ..Default::default() };
        let out = run_ga(&inst, &cfg).unwrap();
        let pop = init_population(&inst, &cfg).unwrap();
        assert_eq!(out.trace.len(), 1);
        assert_eq!(out.best.objective, pop.iter().map(|i| i.objective).min().unwrap());
        assert_eq!(out.evaluations, 8);
    }

    #[test]
    fn run_is_deterministic_elitist_and_feasible() {
        let inst = small();
        let cfg = GaConfig { population_size: 10, generations: 25, seed: 9, ..Default::default() };
        let mut sampled = 0;
        let out = run_ga_observed(&inst, &cfg, |g, pop| {
            assert_eq!(pop.len(), 10);
            if g % 5 == 0 {
                for ind in pop {
                    assert_eq!(check_feasibility(&ind.clone().into_solution(), &inst), Ok(()));
                }
                sampled += 1;
            }
        })
        .unwrap();
        assert_eq!(sampled, 6);
        assert_eq!(out.trace.len(), 26);
        assert!(out.trace.is_non_increasing());
        assert_eq!(out.evaluations, cfg.evaluation_budget());
        assert_eq!(out.trace.final_objective(), Some(out.best.objective));
        assert_eq!(check_feasibility(&out.best, &inst), Ok(()));

        let again = run_ga(&inst, &cfg).unwrap();
        assert_eq!(again.best, out.best);
        assert_eq!(again.trace, out.trace);
    }

    #[test]
    fn parallel_evaluation_matches_sequential() {
        let inst = small();
        let cfg = GaConfig { population_size: 16, generations: 10, seed: 2, ..Default::default() };
        let seq = run_ga(&inst, &cfg).unwrap();
        let par = run_ga(&inst, &GaConfig { parallel: true, ..cfg }).unwrap();
        assert_eq!(seq.best, par.best);
        assert_eq!(seq.trace, par.trace);
    }
}
