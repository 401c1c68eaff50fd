//! Rostering of regular and temporary workers at a parcel sorting depot.
//!
//! The day is split into six overlapping eight-hour shifts. Regular workers
//! sort 25 parcels an hour, temporary workers 20. A plan assigns each regular
//! worker at most one shift per day, never more than seven days in a row, and
//! no more than 85% of the horizon; temporary workers are hired per
//! (day, shift) to cover whatever hourly demand the regulars leave. The goal
//! is the fewest person-days.
//!
//! Solvers work on the regular roster only. [`evaluator::decode_temp_plan`]
//! derives the temporary plan, and [`repair`] keeps every roster inside the
//! regular-worker constraints.
//!
//! - [`ga::run_ga`]: generational genetic algorithm with day-block crossover.
//! - [`sa::run_sa`]: simulated annealing with single-gene moves.
//! - [`oracle::enumerate_optimal`]: exhaustive search for tiny instances.
//! - [`compare::compare`]: both metaheuristics at equal evaluation budgets.
//!
//! ```
//! use depot_roster::{evaluator, ga, io};
//!
//! let instance = io::generate_instance(7, 4, 3, 120.0, 0.1).unwrap();
//! let config = ga::GaConfig { population_size: 10, generations: 5, ..Default::default() };
//! let outcome = ga::run_ga(&instance, &config).unwrap();
//! assert!(evaluator::check_feasibility(&outcome.best, &instance).is_ok());
//! ```

pub mod cli;
pub mod compare;
pub mod error;
pub mod evaluator;
pub mod ga;
pub mod io;
pub mod model;
pub mod oracle;
pub mod repair;
pub mod sa;
pub mod search;
pub mod trace;

pub use error::{Error, Result};
pub use model::{EfficiencyParams, ProblemInstance, RegularRoster, Shift, ShiftCatalog, Solution, TempPlan};
pub use search::Individual;
pub use trace::{ConvergenceTrace, TraceRecord};
