//! Seeded workloads comparing bisection against the linear-scan baseline.
//!
//! Reports keep exact counters apart from wall-clock timing. Counters depend
//! only on the [`WorkloadSpec`], so equal seeds give identical counters.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bitcore::BitString;
use crate::error::{Error, Result};
use crate::labelset::{LabelledSet, DEFAULT_BITMAP_CAP};
use crate::search::{bisection_decide, naive_scan_decide};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WorkloadSpec {
    pub width: usize,
    pub query_count: u64,
    pub seed: u64,
    /// Probability that a point of the random set is a member.
    pub set_density: f64,
}

impl WorkloadSpec {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.set_density) {
            return Err(Error::Format(format!(
                "set density {} outside [0, 1]",
                self.set_density
            )));
        }
        if self.query_count == 0 {
            return Err(Error::Format("query count must be positive".into()));
        }
        if self.width > DEFAULT_BITMAP_CAP {
            return Err(Error::BitmapCap {
                width: self.width,
                cap: DEFAULT_BITMAP_CAP,
            });
        }
        Ok(())
    }

    /// The random set and query list the workload runs on.
    pub fn generate(&self) -> Result<(LabelledSet, Vec<BitString>)> {
        self.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let set = LabelledSet::random(self.width, self.set_density, &mut rng)?;
        let queries = (0..self.query_count)
            .map(|_| BitString::from_index(self.width, rng.gen_range(0..set.universe_size())))
            .collect();
        Ok((set, queries))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CounterStats {
    pub min: u64,
    pub max: u64,
    pub mean: f64,
    pub total: u64,
}

impl CounterStats {
    fn from_counts(counts: &[u64]) -> Self {
        let total: u64 = counts.iter().sum();
        CounterStats {
            min: counts.iter().copied().min().unwrap_or(0),
            max: counts.iter().copied().max().unwrap_or(0),
            mean: total as f64 / counts.len().max(1) as f64,
            total,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counters {
    pub member_count: u64,
    /// Queries answered 1.
    pub positive_results: u64,
    pub bisection_bits_read: CounterStats,
    pub naive_scan_comparisons: CounterStats,
    /// Both deciders returned the same label for every query.
    pub agreement: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timing {
    pub bisection_ns: u128,
    pub naive_scan_ns: u128,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchReport {
    pub workload: WorkloadSpec,
    pub counters: Counters,
    pub timing: Timing,
}

impl BenchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON without the timing section.
    pub fn counters_json(&self) -> String {
        let value = serde_json::json!({"workload": self.workload, "counters": self.counters});
        serde_json::to_string_pretty(&value).expect("report serializes")
    }
}

/// Runs every query through both deciders. Queries are evaluated in parallel
/// over the shared set; per-query counters are aggregated afterwards.
pub fn run_workload(spec: &WorkloadSpec) -> Result<BenchReport> {
    let (set, queries) = spec.generate()?;

    let start = Instant::now();
    let bisection = queries
        .par_iter()
        .map(|q| bisection_decide(&set, q))
        .collect::<Result<Vec<_>>>()?;
    let bisection_ns = start.elapsed().as_nanos();

    let start = Instant::now();
    let scans = queries
        .par_iter()
        .map(|q| naive_scan_decide(&set, q))
        .collect::<Result<Vec<_>>>()?;
    let naive_scan_ns = start.elapsed().as_nanos();

    let bits: Vec<u64> = bisection.iter().map(|t| t.bits_read).collect();
    let comparisons: Vec<u64> = scans.iter().map(|t| t.comparisons).collect();
    let agreement = bisection
        .iter()
        .zip(&scans)
        .all(|(b, s)| b.result == s.result);

    Ok(BenchReport {
        workload: spec.clone(),
        counters: Counters {
            member_count: set.member_count().expect("bench sets are bitmaps"),
            positive_results: bisection.iter().filter(|t| t.result).count() as u64,
            bisection_bits_read: CounterStats::from_counts(&bits),
            naive_scan_comparisons: CounterStats::from_counts(&comparisons),
            agreement,
        },
        timing: Timing {
            bisection_ns,
            naive_scan_ns,
        },
    })
}
