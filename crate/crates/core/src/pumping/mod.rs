//! Boundedness of runs, Rackoff-style extraction, pumping cycles, and
//! lifting Z-runs to runs in wide sequential VAS.

mod lift;
mod pump;
mod rackoff;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

pub use lift::{lift_z_run, short_z_run};
pub use pump::{
    extract_pumpable, find_pump_certificate, pump_bound, pump_witness, pumpability_polynomial, pumpable,
    rackoff_polynomial, Direction, PumpCertificate, PumpExtraction,
};
pub use rackoff::{rackoff_extract, rackoff_schedule, RackoffExtraction, RackoffSchedule};

use crate::geometry::{CollinearSign, CollinearityReport};
use crate::model::{Configuration, Run, Vass};
use crate::{Error, Result};

/// ub(π, B): coordinates reaching at least B somewhere on a run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UbReport {
    pub threshold: BigInt,
    pub ub_set: BTreeSet<usize>,
    /// Index of the first configuration (0 = start) reaching the threshold.
    pub first_exceed: BTreeMap<usize, usize>,
}

impl UbReport {
    pub fn len(&self) -> usize {
        self.ub_set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ub_set.is_empty()
    }

    /// Coordinates below the threshold throughout.
    pub fn bounded(&self, dim: usize) -> Vec<usize> {
        (0..dim).filter(|i| !self.ub_set.contains(i)).collect()
    }
}

pub fn ub_of_configurations(configs: &[Configuration], threshold: &BigInt) -> UbReport {
    let mut first_exceed = BTreeMap::new();
    for (k, c) in configs.iter().enumerate() {
        for (i, x) in c.vector.iter().enumerate() {
            if x >= threshold {
                first_exceed.entry(i).or_insert(k);
            }
        }
    }
    UbReport {
        threshold: threshold.clone(),
        ub_set: first_exceed.keys().copied().collect(),
        first_exceed,
    }
}

pub fn ub_set(vass: &Vass, run: &Run, threshold: &BigInt) -> UbReport {
    ub_of_configurations(&run.configurations(vass), threshold)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitMode {
    Almost,
    Quasi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitKind {
    AlmostUnbounded,
    AlmostBounded,
    QuasiUnbounded,
    QuasiBounded,
}

/// π = π₁π₂ with π₁ the first `split_index` transitions; both parts share the
/// configuration at the split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunSplit {
    pub kind: SplitKind,
    pub split_index: usize,
    pub threshold_used: BigInt,
    pub part_reports: [UbReport; 2],
}

/// The defining predicate of each kind for one part, given its ub-report.
pub fn part_satisfies(kind: SplitKind, dim: usize, report: &UbReport, col: &CollinearityReport) -> bool {
    let d = dim as i64;
    let ub = report.len() as i64;
    match kind {
        SplitKind::AlmostUnbounded => ub >= d - 1,
        SplitKind::AlmostBounded => ub <= d - 2,
        SplitKind::QuasiUnbounded => pairwise_positive(&report.bounded(dim), col),
        SplitKind::QuasiBounded => has_noncollinear_pair(&report.bounded(dim), col),
    }
}

fn pairwise_positive(coords: &[usize], col: &CollinearityReport) -> bool {
    coords.iter().enumerate().all(|(a, &i)| {
        coords[a + 1..].iter().all(|&j| {
            col.pairs
                .get(&(i, j))
                .is_some_and(|p| p.sign == CollinearSign::Positive)
        })
    })
}

fn has_noncollinear_pair(coords: &[usize], col: &CollinearityReport) -> bool {
    coords
        .iter()
        .enumerate()
        .any(|(a, &i)| coords[a + 1..].iter().any(|&j| !col.pairs.contains_key(&(i, j))))
}

impl RunSplit {
    /// Recomputes both parts from the run and checks the kind's predicate.
    pub fn holds_for(&self, vass: &Vass, run: &Run, col: &CollinearityReport) -> bool {
        let configs = run.configurations(vass);
        if self.split_index > run.len() {
            return false;
        }
        let parts = [&configs[..=self.split_index], &configs[self.split_index..]];
        parts.iter().all(|p| {
            let r = ub_of_configurations(p, &self.threshold_used);
            part_satisfies(self.kind, vass.dim(), &r, col)
        })
    }
}

/// Splits a run per the longest-prefix argument: either both parts are
/// (almost / quasi) unbounded at B, or both are bounded at B + size(V).
pub fn dichotomy_split(
    vass: &Vass,
    run: &Run,
    threshold: &BigInt,
    mode: SplitMode,
    col: &CollinearityReport,
) -> Result<RunSplit> {
    if mode == SplitMode::Quasi && col.negative_pairs().next().is_some() {
        return Err(Error::Precondition(
            "quasi split needs no negatively collinear pairs".into(),
        ));
    }
    let (unbounded, bounded) = match mode {
        SplitMode::Almost => (SplitKind::AlmostUnbounded, SplitKind::AlmostBounded),
        SplitMode::Quasi => (SplitKind::QuasiUnbounded, SplitKind::QuasiBounded),
    };
    let d = vass.dim();
    let configs = run.configurations(vass);
    let ub_at = |range: &[Configuration], b: &BigInt| ub_of_configurations(range, b);
    let make = |kind: SplitKind, k: usize, b: &BigInt| RunSplit {
        kind,
        split_index: k,
        threshold_used: b.clone(),
        part_reports: [ub_at(&configs[..=k], b), ub_at(&configs[k..], b)],
    };
    // Prefixes "still bounded" at B; the empty prefix decides the base case.
    let prefix_bounded = |k: usize| part_satisfies(bounded, d, &ub_at(&configs[..=k], threshold), col);
    if !prefix_bounded(0) {
        return Ok(make(unbounded, 0, threshold));
    }
    // Boundedness of prefixes is monotone, so the longest one is found by scan.
    let mut longest = 0;
    while longest < run.len() && prefix_bounded(longest + 1) {
        longest += 1;
    }
    let raised = threshold + vass.size();
    if longest == run.len() {
        return Ok(make(bounded, run.len(), &raised));
    }
    let k = longest + 1;
    if part_satisfies(unbounded, d, &ub_at(&configs[k..], threshold), col) {
        return Ok(make(unbounded, k, threshold));
    }
    Ok(make(bounded, k, &raised))
}

#[cfg(test)]
mod tests;
