//! Critical-divisor enumeration split across threads by first coordinate.

use std::thread;

use hilbnef_core::chern::Slice;
use hilbnef_core::gieseker::{critical_divisors, CriticalDivisorSet};
use hilbnef_core::lattice::{effective_first_coordinate_range, enumerate_effective_below_slab};
use hilbnef_core::{DivisorClass, Result};

pub const WORKERS_VAR: &str = "HILBNEF_WORKERS";

/// `HILBNEF_WORKERS` if set to a positive integer, else the available parallelism.
pub fn worker_count() -> usize {
    std::env::var(WORKERS_VAR)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| thread::available_parallelism().map_or(1, |n| n.get()))
}

pub fn critical_set(slice: &Slice, workers: usize) -> Result<CriticalDivisorSet> {
    if slice.is_degenerate() || workers <= 1 {
        return critical_divisors(slice);
    }
    let bound = slice.dot(&slice.h, &-&slice.d_twist);
    let Some((lo, hi)) = effective_first_coordinate_range(&slice.surface, &slice.h, &bound)? else {
        return CriticalDivisorSet::from_effective_below(slice, Vec::new());
    };
    let firsts: Vec<i64> = (lo..=hi).collect();
    let parts: Vec<Result<Vec<DivisorClass>>> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers.min(firsts.len()))
            .map(|w| {
                let firsts = &firsts;
                let bound = &bound;
                scope.spawn(move || {
                    let mut out = Vec::new();
                    for &first in firsts.iter().skip(w).step_by(workers) {
                        out.extend(enumerate_effective_below_slab(
                            &slice.surface,
                            &slice.h,
                            bound,
                            first,
                        )?);
                    }
                    Ok(out)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut below = Vec::new();
    for p in parts {
        below.extend(p?);
    }
    CriticalDivisorSet::from_effective_below(slice, below)
}
