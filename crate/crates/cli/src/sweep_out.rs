//! Sweep execution (with worker fan-out) and the CSV formats consumed by
//! external plotting tools.
//!
//! Every float is written with 17 significant digits so reruns diff
//! byte-for-byte. Records derive from counter-based per-index streams, so
//! the worker count never changes the output.

use std::fmt::Write as _;
use std::thread;

use aqs_core::detection::{sweep_record, EnvelopeBin, GridSpec, SweepRecord};
use aqs_core::scheme::SchemeConfig;

use crate::Failure;

/// `{:.16e}` renders 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Worker cap: `AQSLAB_THREADS` when set, else available parallelism.
pub fn worker_count() -> usize {
    let cap = std::env::var("AQSLAB_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n >= 1);
    let avail = thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    cap.unwrap_or(avail).max(1)
}

/// Seeded sweep fanned out over `workers` threads; identical to the serial
/// sweep for any worker count.
pub fn parallel_sweep(
    scheme: &SchemeConfig,
    n: u64,
    seed: u64,
    grid: GridSpec,
    refine_tol: f64,
    workers: usize,
) -> Result<Vec<SweepRecord>, Failure> {
    if n == 0 {
        return Err(Failure::BadInput("--n must be at least 1".into()));
    }
    let workers = workers.clamp(1, n.max(1) as usize);
    let chunk = n.div_ceil(workers as u64);
    let results: Vec<Result<Vec<SweepRecord>, String>> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers as u64)
            .map(|w| {
                let scheme = *scheme;
                scope.spawn(move || {
                    let lo = w * chunk;
                    let hi = ((w + 1) * chunk).min(n);
                    (lo..hi)
                        .map(|i| {
                            sweep_record(&scheme, seed, i, grid, refine_tol)
                                .map_err(|e| e.to_string())
                        })
                        .collect()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });
    let mut records = Vec::with_capacity(n as usize);
    for part in results {
        records.extend(part.map_err(Failure::BadInput)?);
    }
    Ok(records)
}

pub fn sweep_csv(records: &[SweepRecord]) -> String {
    let mut out = String::from("index,q0,q1,q2,q3,d_q,p_q,theta_min,phi_min\n");
    for r in records {
        let [q0, q1, q2, q3] = r.attack_coeffs.as_array();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.seed_index,
            fmt_f64(q0),
            fmt_f64(q1),
            fmt_f64(q2),
            fmt_f64(q3),
            fmt_f64(r.d_q),
            fmt_f64(r.p_q),
            fmt_f64(r.argmin.theta),
            fmt_f64(r.argmin.phi),
        );
    }
    out
}

pub fn envelope_csv(bins: &[EnvelopeBin]) -> String {
    let mut out = String::from("d_lo,d_hi,p_min,count\n");
    for b in bins {
        let p = match b.p_min {
            Some(p) => fmt_f64(p),
            None => "nan".to_string(),
        };
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_f64(b.d_lo),
            fmt_f64(b.d_hi),
            p,
            b.support_count
        );
    }
    out
}
