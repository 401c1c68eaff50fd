//! Domain types: the daily shift catalog, instance parameters, and the
//! regular roster / temporary plan pair that makes up a solution.

use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};

pub const HOURS_PER_DAY: usize = 24;

/// Rosters store one shift bitmask per worker-day, so a catalog may hold at
/// most this many shifts.
pub const MAX_SHIFTS: usize = 8;

/// A half-open interval `[start, end)` of whole hours within one day.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shift {
    pub start: u8,
    pub end: u8,
}

impl Shift {
    pub const fn new(start: u8, end: u8) -> Self {
        Shift { start, end }
    }

    pub fn hours(&self) -> Range<usize> {
        self.start as usize..self.end as usize
    }

    pub fn contains(&self, hour: usize) -> bool {
        self.hours().contains(&hour)
    }

    pub fn len(&self) -> usize {
        (self.end - self.start) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.start >= self.end
    }
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:02}:00-{:02}:00", self.start, self.end)
    }
}

const DEPOT_SHIFTS: [Shift; 6] = [
    Shift::new(0, 8),
    Shift::new(5, 13),
    Shift::new(8, 16),
    Shift::new(12, 20),
    Shift::new(14, 22),
    Shift::new(16, 24),
];

/// The ordered set of daily shifts. Every hour of the day is covered by at
/// least one shift; the covering lists are precomputed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftCatalog {
    shifts: Vec<Shift>,
    covering: Vec<Vec<usize>>,
    /// Per hour, the covering shift with the latest end (lowest index on ties).
    latest_cover: Vec<usize>,
}

impl Default for ShiftCatalog {
    fn default() -> Self {
        ShiftCatalog::new(DEPOT_SHIFTS.to_vec()).expect("depot catalog is valid")
    }
}

impl ShiftCatalog {
    /// Builds a catalog from explicit intervals. Rejects empty or
    /// out-of-day intervals, more than [`MAX_SHIFTS`] shifts, and catalogs
    /// that leave an hour uncovered.
    pub fn new(shifts: Vec<Shift>) -> Result<Self> {
        if shifts.is_empty() || shifts.len() > MAX_SHIFTS {
            return Err(Error::Parameter(format!(
                "catalog must have 1..={MAX_SHIFTS} shifts, got {}",
                shifts.len()
            )));
        }
        for (i, s) in shifts.iter().enumerate() {
            if s.is_empty() || s.end as usize > HOURS_PER_DAY {
                return Err(Error::Parameter(format!(
                    "shift {i} [{}, {}) is not a non-empty interval within 0..24",
                    s.start, s.end
                )));
            }
        }
        let covering: Vec<Vec<usize>> = (0..HOURS_PER_DAY)
            .map(|h| {
                shifts
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| s.contains(h))
                    .map(|(t, _)| t)
                    .collect()
            })
            .collect();
        if let Some(h) = covering.iter().position(Vec::is_empty) {
            return Err(Error::Parameter(format!("hour {h} is not covered by any shift")));
        }
        let latest_cover = covering
            .iter()
            .map(|ts| {
                // max_by_key keeps the last maximum, so scan in reverse to prefer low indices
                *ts.iter()
                    .rev()
                    .max_by_key(|&&t| shifts[t].end)
                    .expect("non-empty")
            })
            .collect();
        Ok(ShiftCatalog {
            shifts,
            covering,
            latest_cover,
        })
    }

    pub fn len(&self) -> usize {
        self.shifts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shifts.is_empty()
    }

    pub fn shifts(&self) -> &[Shift] {
        &self.shifts
    }

    pub fn shift(&self, shift_id: usize) -> Result<Shift> {
        self.shifts.get(shift_id).copied().ok_or(Error::Index {
            what: "shift",
            index: shift_id,
            len: self.shifts.len(),
        })
    }

    /// Hours worked by a shift, ascending.
    pub fn shift_hours(&self, shift_id: usize) -> Result<Vec<usize>> {
        Ok(self.shift(shift_id)?.hours().collect())
    }

    /// Shifts whose interval contains `hour`, ascending by index.
    pub fn shifts_covering(&self, hour: usize) -> Result<&[usize]> {
        self.covering
            .get(hour)
            .map(Vec::as_slice)
            .ok_or(Error::Index {
                what: "hour",
                index: hour,
                len: HOURS_PER_DAY,
            })
    }

    pub(crate) fn covering_unchecked(&self, hour: usize) -> &[usize] {
        &self.covering[hour]
    }

    pub(crate) fn latest_cover(&self, hour: usize) -> usize {
        self.latest_cover[hour]
    }
}

/// Hourly throughput of the two worker kinds and the regular attendance cap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EfficiencyParams {
    /// Parcels per hour sorted by one regular worker.
    pub regular_rate: u32,
    /// Parcels per hour sorted by one temporary worker.
    pub temp_rate: u32,
    /// Maximum fraction of the horizon a regular worker may attend.
    pub attendance_cap: f64,
}

impl Default for EfficiencyParams {
    fn default() -> Self {
        EfficiencyParams {
            regular_rate: 25,
            temp_rate: 20,
            attendance_cap: 0.85,
        }
    }
}

impl EfficiencyParams {
    pub fn validate(&self) -> Result<()> {
        if self.regular_rate == 0 || self.temp_rate == 0 {
            return Err(Error::Parameter("worker rates must be positive".into()));
        }
        if !(self.attendance_cap > 0.0 && self.attendance_cap <= 1.0) {
            return Err(Error::Parameter(format!(
                "attendance cap must lie in (0, 1], got {}",
                self.attendance_cap
            )));
        }
        Ok(())
    }

    /// Largest number of working days allowed per regular worker over a
    /// horizon of `days`: `floor(attendance_cap * days)`.
    pub fn max_working_days(&self, days: usize) -> usize {
        // the epsilon keeps e.g. 0.9 * 10 from flooring to 8
        (self.attendance_cap * days as f64 + 1e-9).floor() as usize
    }
}

/// One depot planning problem. Fields are public so files and tests can build
/// arbitrary (possibly invalid) instances; [`ProblemInstance::validate`]
/// reports what is wrong with one.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInstance {
    pub days: usize,
    pub regular_pool: usize,
    pub catalog: ShiftCatalog,
    pub params: EfficiencyParams,
    /// `demand[day][hour]`, parcels that must be sorted in that hour.
    pub demand: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum InstanceViolation {
    NoDays,
    DemandRowCount { expected: usize, found: usize },
    DemandRowLength { day: usize, found: usize },
    NegativeDemand { day: usize, hour: usize, value: i64 },
    Params(String),
}

impl fmt::Display for InstanceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceViolation::NoDays => write!(f, "horizon must have at least one day"),
            InstanceViolation::DemandRowCount { expected, found } => {
                write!(f, "demand row count: expected {expected} days, found {found}")
            }
            InstanceViolation::DemandRowLength { day, found } => write!(
                f,
                "demand row length: day {day} has {found} values, expected {HOURS_PER_DAY}"
            ),
            InstanceViolation::NegativeDemand { day, hour, value } => {
                write!(f, "negative demand: {value} at day {day} hour {hour}")
            }
            InstanceViolation::Params(msg) => write!(f, "parameters: {msg}"),
        }
    }
}

impl ProblemInstance {
    /// An instance with the depot catalog, default rates, and zero demand.
    pub fn zero_demand(days: usize, regular_pool: usize) -> Self {
        ProblemInstance {
            days,
            regular_pool,
            catalog: ShiftCatalog::default(),
            params: EfficiencyParams::default(),
            demand: vec![vec![0; HOURS_PER_DAY]; days],
        }
    }

    pub fn validate(&self) -> std::result::Result<(), Vec<InstanceViolation>> {
        validate_instance(self)
    }

    /// Like [`validate`](Self::validate) but as an [`Error`].
    pub fn ensure_valid(&self) -> Result<()> {
        self.validate().map_err(Error::InvalidInstance)
    }

    pub fn shift_count(&self) -> usize {
        self.catalog.len()
    }

    /// `floor(attendance_cap * days)`.
    pub fn max_working_days(&self) -> usize {
        self.params.max_working_days(self.days)
    }
}

/// Checks an instance for structural problems. Returns every violation found.
pub fn validate_instance(instance: &ProblemInstance) -> std::result::Result<(), Vec<InstanceViolation>> {
    let mut out = Vec::new();
    if instance.days == 0 {
        out.push(InstanceViolation::NoDays);
    }
    if let Err(e) = instance.params.validate() {
        out.push(InstanceViolation::Params(e.to_string()));
    }
    if instance.demand.len() != instance.days {
        out.push(InstanceViolation::DemandRowCount {
            expected: instance.days,
            found: instance.demand.len(),
        });
    }
    for (day, row) in instance.demand.iter().enumerate() {
        if row.len() != HOURS_PER_DAY {
            out.push(InstanceViolation::DemandRowLength {
                day,
                found: row.len(),
            });
        }
        for (hour, &value) in row.iter().enumerate() {
            if value < 0 {
                out.push(InstanceViolation::NegativeDemand { day, hour, value });
            }
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// Binary assignment `x[day][shift][worker]` for the regular pool.
///
/// Stored as one shift bitmask per (day, worker), day-major, so that a day's
/// chromosome is a contiguous slice of `workers` masks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RegularRoster {
    days: usize,
    shifts: usize,
    workers: usize,
    masks: Vec<u8>,
}

impl RegularRoster {
    pub fn new(days: usize, shifts: usize, workers: usize) -> Self {
        assert!(shifts <= MAX_SHIFTS, "at most {MAX_SHIFTS} shifts per day");
        RegularRoster {
            days,
            shifts,
            workers,
            masks: vec![0; days * workers],
        }
    }

    pub fn for_instance(instance: &ProblemInstance) -> Self {
        RegularRoster::new(instance.days, instance.shift_count(), instance.regular_pool)
    }

    pub fn days(&self) -> usize {
        self.days
    }

    pub fn shift_count(&self) -> usize {
        self.shifts
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    pub fn get(&self, day: usize, shift: usize, worker: usize) -> bool {
        debug_assert!(shift < self.shifts);
        self.mask(day, worker) >> shift & 1 == 1
    }

    pub fn set(&mut self, day: usize, shift: usize, worker: usize, on: bool) {
        assert!(shift < self.shifts, "shift {shift} out of range");
        let m = &mut self.masks[day * self.workers + worker];
        if on {
            *m |= 1 << shift;
        } else {
            *m &= !(1 << shift);
        }
    }

    /// Bitmask of the shifts `worker` is assigned on `day`.
    pub fn mask(&self, day: usize, worker: usize) -> u8 {
        assert!(worker < self.workers, "worker {worker} out of range");
        self.masks[day * self.workers + worker]
    }

    pub fn set_mask(&mut self, day: usize, worker: usize, mask: u8) {
        assert!(worker < self.workers, "worker {worker} out of range");
        debug_assert!(self.shifts == MAX_SHIFTS || mask >> self.shifts == 0);
        self.masks[day * self.workers + worker] = mask;
    }

    pub fn works(&self, day: usize, worker: usize) -> bool {
        self.mask(day, worker) != 0
    }

    /// The day chromosome: one mask per worker.
    pub fn day(&self, day: usize) -> &[u8] {
        &self.masks[day * self.workers..(day + 1) * self.workers]
    }

    pub fn day_mut(&mut self, day: usize) -> &mut [u8] {
        &mut self.masks[day * self.workers..(day + 1) * self.workers]
    }

    /// Number of set entries, `sum x[d][t][s]`.
    pub fn assignment_count(&self) -> u64 {
        self.masks.iter().map(|m| m.count_ones() as u64).sum()
    }

    /// Number of days on which `worker` has any shift.
    pub fn working_days(&self, worker: usize) -> usize {
        (0..self.days).filter(|&d| self.works(d, worker)).count()
    }

    /// Regulars assigned to each shift on `day`.
    pub fn shift_headcounts(&self, day: usize) -> [u32; MAX_SHIFTS] {
        let mut counts = [0u32; MAX_SHIFTS];
        for &m in self.day(day) {
            let mut bits = m;
            while bits != 0 {
                counts[bits.trailing_zeros() as usize] += 1;
                bits &= bits - 1;
            }
        }
        counts
    }

    /// True when the roster has the instance's `D x shifts x S` shape.
    pub fn fits(&self, instance: &ProblemInstance) -> bool {
        self.days == instance.days
            && self.shifts == instance.shift_count()
            && self.workers == instance.regular_pool
    }

    pub(crate) fn ensure_fits(&self, instance: &ProblemInstance) -> Result<()> {
        if self.fits(instance) {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "roster is {}x{}x{} but instance is {}x{}x{}",
                self.days,
                self.shifts,
                self.workers,
                instance.days,
                instance.shift_count(),
                instance.regular_pool
            )))
        }
    }
}

/// Number of temporary workers hired per (day, shift).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TempPlan {
    days: usize,
    shifts: usize,
    counts: Vec<u32>,
}

impl TempPlan {
    pub fn new(days: usize, shifts: usize) -> Self {
        TempPlan {
            days,
            shifts,
            counts: vec![0; days * shifts],
        }
    }

    pub fn days(&self) -> usize {
        self.days
    }

    pub fn shift_count(&self) -> usize {
        self.shifts
    }

    pub fn get(&self, day: usize, shift: usize) -> u32 {
        assert!(shift < self.shifts, "shift {shift} out of range");
        self.counts[day * self.shifts + shift]
    }

    pub fn set(&mut self, day: usize, shift: usize, count: u32) {
        assert!(shift < self.shifts, "shift {shift} out of range");
        self.counts[day * self.shifts + shift] = count;
    }

    pub fn add(&mut self, day: usize, shift: usize, count: u32) {
        assert!(shift < self.shifts, "shift {shift} out of range");
        self.counts[day * self.shifts + shift] += count;
    }

    pub fn day(&self, day: usize) -> &[u32] {
        &self.counts[day * self.shifts..(day + 1) * self.shifts]
    }

    /// `sum y[d][t]`.
    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }
}

/// A roster, its temporary plan, and the claimed objective in person-days.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub roster: RegularRoster,
    pub temp_plan: TempPlan,
    pub objective: u64,
}
