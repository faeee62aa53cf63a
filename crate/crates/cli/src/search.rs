//! Threaded driver for multi-walker searches.
//!
//! Walkers are fully independent (their seeds derive from the search seed,
//! never from scheduling), so this driver distributes walker indices over a
//! thread pool and reduces the complete reports with the same rule as the
//! sequential reference: minimum best rank, ties to the lowest walker index.
//! The result is byte-identical to `bms_core::walk::parallel_search` for
//! every thread count.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use bms_core::scheme::Scheme;
use bms_core::walk::{mix_seed, random_walk, WalkConfig, WalkError, WalkReport};

/// Runs `walkers` independent walks on up to `threads` OS threads and
/// returns the winning report.
pub fn parallel_search_threaded(
    s: &Scheme,
    cfg: &WalkConfig,
    walkers: usize,
    threads: usize,
) -> Result<WalkReport, WalkError> {
    if walkers == 0 {
        return Err(WalkError::BadConfig("walkers must be at least 1"));
    }
    let threads = threads.clamp(1, walkers);
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<(usize, Result<WalkReport, WalkError>)>> =
        Mutex::new(Vec::with_capacity(walkers));

    thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let w = next.fetch_add(1, Ordering::Relaxed);
                if w >= walkers {
                    break;
                }
                let wcfg = WalkConfig {
                    seed: mix_seed(cfg.seed, w as u64),
                    ..*cfg
                };
                let report = random_walk(s, &wcfg);
                results.lock().unwrap().push((w, report));
            });
        }
    });

    let mut results = results.into_inner().unwrap();
    results.sort_by_key(|(w, _)| *w);
    let mut winner: Option<WalkReport> = None;
    for (_, result) in results {
        let report = result?;
        let better = match &winner {
            None => true,
            Some(best) => report.best_rank < best.best_rank,
        };
        if better {
            winner = Some(report);
        }
    }
    Ok(winner.expect("at least one walker ran"))
}

/// A sensible default thread count for the current machine.
pub fn default_threads() -> usize {
    thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}
