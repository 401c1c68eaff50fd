//! Synthetic instances and the on-disk formats.
//!
//! Instances and solutions are TOML with explicit field names; traces are
//! comma-separated rows with the header
//! `iteration,evaluations,best_objective,elapsed_ms`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    EfficiencyParams, ProblemInstance, RegularRoster, Shift, ShiftCatalog, Solution, TempPlan, HOURS_PER_DAY,
};
use crate::trace::{ConvergenceTrace, TraceRecord};

/// Relative hourly demand: quiet overnight, a morning peak at 10:00 and an
/// evening peak at 18:00.
pub const DEMAND_PROFILE: [f64; HOURS_PER_DAY] = [
    0.15, 0.12, 0.10, 0.10, 0.12, 0.20, 0.35, 0.55, 0.75, 0.92, 1.00, 0.95, //
    0.80, 0.65, 0.60, 0.65, 0.75, 0.88, 0.97, 0.93, 0.78, 0.55, 0.35, 0.22,
];

pub const BENCHMARK_SEED: u64 = 42;
pub const BENCHMARK_DAYS: usize = 30;
pub const BENCHMARK_WORKERS: usize = 200;
/// High enough that the regular pool cannot staff the daily peaks alone.
pub const BENCHMARK_PEAK: f64 = 5000.0;
pub const BENCHMARK_NOISE: f64 = 0.1;

/// The standard 30-day, 200-worker benchmark.
pub fn benchmark_instance() -> ProblemInstance {
    generate_instance(
        BENCHMARK_SEED,
        BENCHMARK_DAYS,
        BENCHMARK_WORKERS,
        BENCHMARK_PEAK,
        BENCHMARK_NOISE,
    )
    .expect("benchmark parameters are valid")
}

/// Builds an instance with the depot catalog and default rates whose demand is
/// `round(peak * profile(h) * (1 + u))`, `u` uniform in `[-noise, noise]`
/// per (day, hour).
pub fn generate_instance(
    seed: u64,
    days: usize,
    regular_pool: usize,
    peak_demand: f64,
    noise_fraction: f64,
) -> Result<ProblemInstance> {
    if !(peak_demand >= 0.0 && peak_demand.is_finite()) {
        return Err(Error::Parameter(format!("peak demand must be >= 0, got {peak_demand}")));
    }
    if !(0.0..=1.0).contains(&noise_fraction) {
        return Err(Error::Parameter(format!(
            "noise fraction must lie in [0, 1], got {noise_fraction}"
        )));
    }
    if days == 0 {
        return Err(Error::Parameter("days must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let demand = (0..days)
        .map(|_| {
            DEMAND_PROFILE
                .iter()
                .map(|&p| {
                    let noise = if noise_fraction > 0.0 {
                        rng.random_range(-noise_fraction..=noise_fraction)
                    } else {
                        0.0
                    };
                    ((peak_demand * p * (1.0 + noise)).round() as i64).max(0)
                })
                .collect()
        })
        .collect();
    Ok(ProblemInstance {
        days,
        regular_pool,
        catalog: ShiftCatalog::default(),
        params: EfficiencyParams::default(),
        demand,
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    days: usize,
    regular_pool: usize,
    shifts: Option<Vec<[u8; 2]>>,
    regular_rate: Option<u32>,
    temp_rate: Option<u32>,
    attendance_cap: Option<f64>,
    demand: Vec<toml::Spanned<Vec<i64>>>,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

fn toml_error(path: &Path, text: &str, e: toml::de::Error) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line: e.span().map_or(0, |s| line_of(text, s.start)),
        message: e.message().to_string(),
    }
}

/// Renders an instance in the instance file format, one demand row per line.
pub fn instance_to_string(instance: &ProblemInstance) -> String {
    let mut out = String::from("# depot-roster instance\n");
    let _ = writeln!(out, "days = {}", instance.days);
    let _ = writeln!(out, "regular_pool = {}", instance.regular_pool);
    let shifts: Vec<String> = instance
        .catalog
        .shifts()
        .iter()
        .map(|s| format!("[{}, {}]", s.start, s.end))
        .collect();
    let _ = writeln!(out, "shifts = [{}]", shifts.join(", "));
    let _ = writeln!(out, "regular_rate = {}", instance.params.regular_rate);
    let _ = writeln!(out, "temp_rate = {}", instance.params.temp_rate);
    let _ = writeln!(out, "attendance_cap = {:?}", instance.params.attendance_cap);
    out.push_str("demand = [\n");
    for row in &instance.demand {
        let cells: Vec<String> = row.iter().map(i64::to_string).collect();
        let _ = writeln!(out, "  [{}],", cells.join(", "));
    }
    out.push_str("]\n");
    out
}

/// Parses instance text. Missing rate, cap, or shift fields fall back to the
/// defaults; each fallback is reported in the returned warnings.
pub fn parse_instance(text: &str, path: &Path) -> Result<(ProblemInstance, Vec<String>)> {
    let file: InstanceFile = toml::from_str(text).map_err(|e| toml_error(path, text, e))?;
    let defaults = EfficiencyParams::default();
    let mut warnings = Vec::new();
    let mut warn = |name: &str, default: &dyn std::fmt::Debug| {
        warnings.push(format!("{}: `{name}` missing, using {default:?}", path.display()));
    };
    let params = EfficiencyParams {
        regular_rate: file.regular_rate.unwrap_or_else(|| {
            warn("regular_rate", &defaults.regular_rate);
            defaults.regular_rate
        }),
        temp_rate: file.temp_rate.unwrap_or_else(|| {
            warn("temp_rate", &defaults.temp_rate);
            defaults.temp_rate
        }),
        attendance_cap: file.attendance_cap.unwrap_or_else(|| {
            warn("attendance_cap", &defaults.attendance_cap);
            defaults.attendance_cap
        }),
    };
    let catalog = match file.shifts {
        Some(shifts) => ShiftCatalog::new(shifts.into_iter().map(|[a, b]| Shift::new(a, b)).collect()).map_err(
            |e| Error::Parse {
                path: path.to_path_buf(),
                line: 0,
                message: format!("shifts: {e}"),
            },
        )?,
        None => {
            warnings.push(format!("{}: `shifts` missing, using the depot catalog", path.display()));
            ShiftCatalog::default()
        }
    };
    let mut demand = Vec::with_capacity(file.demand.len());
    for row in file.demand {
        let line = line_of(text, row.span().start);
        let row = row.into_inner();
        if row.len() != HOURS_PER_DAY {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                line,
                message: format!("demand: expected {HOURS_PER_DAY} hourly values, found {}", row.len()),
            });
        }
        demand.push(row);
    }
    let instance = ProblemInstance {
        days: file.days,
        regular_pool: file.regular_pool,
        catalog,
        params,
        demand,
    };
    instance.ensure_valid()?;
    Ok((instance, warnings))
}

pub fn read_instance(path: impl AsRef<Path>) -> Result<ProblemInstance> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let (instance, warnings) = parse_instance(&text, path)?;
    for w in warnings {
        log::warn!("{w}");
    }
    Ok(instance)
}

pub fn write_instance(instance: &ProblemInstance, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, instance_to_string(instance)).map_err(|e| Error::io(path, e))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SolutionFile {
    objective: u64,
    days: usize,
    shifts: usize,
    regular_pool: usize,
    #[serde(default, rename = "assignment")]
    assignments: Vec<AssignmentEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AssignmentEntry {
    day: usize,
    shift: usize,
    workers: Vec<usize>,
    temps: u32,
}

/// Renders a solution: the header fields, then one `[[assignment]]` table per
/// (day, shift) that has regulars or temps, in day-then-shift order.
pub fn solution_to_string(solution: &Solution) -> String {
    let r = &solution.roster;
    let mut assignments = Vec::new();
    for day in 0..r.days() {
        for shift in 0..r.shift_count() {
            let workers: Vec<usize> = (0..r.workers()).filter(|&s| r.get(day, shift, s)).collect();
            let temps = solution.temp_plan.get(day, shift);
            if !workers.is_empty() || temps > 0 {
                assignments.push(AssignmentEntry {
                    day,
                    shift,
                    workers,
                    temps,
                });
            }
        }
    }
    let file = SolutionFile {
        objective: solution.objective,
        days: r.days(),
        shifts: r.shift_count(),
        regular_pool: r.workers(),
        assignments,
    };
    let body = toml::to_string(&file).expect("solution serializes");
    format!("# depot-roster solution\n{body}")
}

/// Parses solution text. The stated objective is kept as written so that a
/// validator can compare it with the roster.
pub fn parse_solution(text: &str, path: &Path) -> Result<Solution> {
    let file: SolutionFile = toml::from_str(text).map_err(|e| toml_error(path, text, e))?;
    let bad = |message: String| Error::Parse {
        path: path.to_path_buf(),
        line: 0,
        message,
    };
    if file.shifts == 0 || file.shifts > crate::model::MAX_SHIFTS {
        return Err(bad(format!("shifts must lie in 1..={}", crate::model::MAX_SHIFTS)));
    }
    let mut roster = RegularRoster::new(file.days, file.shifts, file.regular_pool);
    let mut plan = TempPlan::new(file.days, file.shifts);
    for a in file.assignments {
        if a.day >= file.days || a.shift >= file.shifts {
            return Err(bad(format!("assignment day {} shift {} out of range", a.day, a.shift)));
        }
        for &w in &a.workers {
            if w >= file.regular_pool {
                return Err(bad(format!("worker {w} out of range (pool of {})", file.regular_pool)));
            }
            roster.set(a.day, a.shift, w, true);
        }
        plan.add(a.day, a.shift, a.temps);
    }
    Ok(Solution {
        roster,
        temp_plan: plan,
        objective: file.objective,
    })
}

pub fn write_solution(solution: &Solution, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, solution_to_string(solution)).map_err(|e| Error::io(path, e))
}

pub fn read_solution(path: impl AsRef<Path>) -> Result<Solution> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_solution(&text, path)
}

fn csv_error(path: &Path) -> impl Fn(csv::Error) -> Error + '_ {
    move |source| Error::Csv {
        path: PathBuf::from(path),
        source,
    }
}

pub fn write_trace(trace: &ConvergenceTrace, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut w = csv::Writer::from_path(path).map_err(csv_error(path))?;
    if trace.is_empty() {
        w.write_record(["iteration", "evaluations", "best_objective", "elapsed_ms"])
            .map_err(csv_error(path))?;
    }
    for r in trace.records() {
        w.serialize(r).map_err(csv_error(path))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn read_trace(path: impl AsRef<Path>) -> Result<ConvergenceTrace> {
    let path = path.as_ref();
    let mut r = csv::Reader::from_path(path).map_err(csv_error(path))?;
    let records = r
        .deserialize::<TraceRecord>()
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(csv_error(path))?;
    Ok(ConvergenceTrace::from_records(records))
}
