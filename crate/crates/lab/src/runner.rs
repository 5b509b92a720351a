//! Search execution with optional fan-out across threads.
//!
//! `LEIBNIZ_LAB_THREADS` caps the worker count (default 1). Trials are
//! split into contiguous chunks merged in order, and per-trial seeds are
//! counter-based, so the fanned-out result is identical to the sequential
//! one.

use std::time::Instant;

use leibniz_core::harness::{
    finish_search, search, search_range, Report, SearchConfig, SearchPartial,
};

use crate::AnyError;

const THREADS_ENV: &str = "LEIBNIZ_LAB_THREADS";

fn worker_count() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .map(|v| v.clamp(1, 64))
        .unwrap_or(1)
}

pub fn run_search(config: &SearchConfig) -> Result<Report, AnyError> {
    let start = Instant::now();
    let workers = worker_count().min(config.trials.max(1) as usize);
    let mut report = if workers <= 1 {
        search(config)?
    } else {
        let chunk = config.trials.div_ceil(workers as u64);
        let ranges: Vec<_> = (0..workers as u64)
            .map(|w| (w * chunk).min(config.trials)..((w + 1) * chunk).min(config.trials))
            .filter(|r| !r.is_empty())
            .collect();
        let partials: Vec<Result<SearchPartial, leibniz_core::Error>> =
            std::thread::scope(|scope| {
                let handles: Vec<_> = ranges
                    .into_iter()
                    .map(|range| scope.spawn(move || search_range(config, range)))
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("search worker panicked"))
                    .collect()
            });
        let mut merged: Option<SearchPartial> = None;
        for partial in partials {
            let partial = partial?;
            merged = Some(match merged {
                None => partial,
                Some(prev) => prev.merge(partial),
            });
        }
        finish_search(config, merged.expect("at least one chunk"))
    };
    stamp(&mut report, start);
    Ok(report)
}

pub fn stamp(report: &mut Report, start: Instant) {
    report.runtime_ms = start.elapsed().as_millis() as u64;
    report.tool_version = env!("CARGO_PKG_VERSION").to_string();
}

pub fn stamp_all(reports: &mut [Report], start: Instant) {
    let runtime = start.elapsed().as_millis() as u64;
    for report in reports {
        report.runtime_ms = runtime;
        report.tool_version = env!("CARGO_PKG_VERSION").to_string();
    }
}
