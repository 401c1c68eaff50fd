use std::time::Instant;

use serde::{Deserialize, Serialize};

/// One row of a convergence trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub iteration: u64,
    /// Decode + objective calls spent so far.
    pub evaluations: u64,
    pub best_objective: u64,
    /// Wall-clock milliseconds since the run started; `None` unless timing
    /// was requested, which keeps traces reproducible byte for byte.
    pub elapsed_ms: Option<u64>,
}

/// Best-so-far objective over the course of one solver run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConvergenceTrace {
    records: Vec<TraceRecord>,
}

impl ConvergenceTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_records(records: Vec<TraceRecord>) -> Self {
        ConvergenceTrace { records }
    }

    pub fn push(&mut self, record: TraceRecord) {
        self.records.push(record);
    }

    pub fn records(&self) -> &[TraceRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn final_objective(&self) -> Option<u64> {
        self.records.last().map(|r| r.best_objective)
    }

    pub fn is_non_increasing(&self) -> bool {
        self.records
            .windows(2)
            .all(|w| w[1].best_objective <= w[0].best_objective)
    }
}

/// Optional wall clock for trace timestamps.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Stopwatch(Option<Instant>);

impl Stopwatch {
    pub(crate) fn start(enabled: bool) -> Self {
        Stopwatch(enabled.then(Instant::now))
    }

    pub(crate) fn elapsed_ms(&self) -> Option<u64> {
        self.0.map(|t| t.elapsed().as_millis() as u64)
    }
}
