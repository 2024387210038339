//! Deterministic parallel Monte-Carlo driving. Every sample owns an RNG
//! stream derived from `(seed, sample index)`, and results merge by
//! summation, so the outcome is independent of the thread count and of
//! scheduling. The `BAXTER_LAB_THREADS` environment variable caps
//! parallelism.

use baxter_core::continuum::{sample_pattern_indicator, size_window, PatternEstimate};
use baxter_core::walk::WalkError;
use baxter_core::Permutation;

use crate::seeded_rng;

/// Worker count: `BAXTER_LAB_THREADS` if set, otherwise the available
/// parallelism capped at 8.
pub fn thread_cap() -> usize {
    if let Ok(v) = std::env::var("BAXTER_LAB_THREADS") {
        if let Ok(n) = v.trim().parse::<usize>() {
            return n.max(1);
        }
    }
    std::thread::available_parallelism()
        .map(|n| n.get().min(8))
        .unwrap_or(1)
}

/// Parallel version of pattern-probability estimation: sample `i` runs on
/// the RNG stream `i`, success counts are summed.
pub fn estimate_pattern_parallel(
    pattern: &Permutation,
    n: usize,
    samples: u64,
    max_attempts: u64,
    seed: u64,
) -> Result<PatternEstimate, WalkError> {
    let threads = thread_cap().min(samples.max(1) as usize).max(1);
    let (n_min, n_max) = size_window(n);
    if n_min < pattern.len() {
        return Err(WalkError::BadWindow);
    }
    let successes = std::thread::scope(|scope| -> Result<u64, WalkError> {
        let mut handles = Vec::new();
        for t in 0..threads {
            let pattern = pattern.clone();
            let handle = scope.spawn(move || -> Result<u64, WalkError> {
                let mut local = 0u64;
                let mut i = t as u64;
                while i < samples {
                    let mut rng = seeded_rng(seed, i);
                    if sample_pattern_indicator(&pattern, n_min, n_max, max_attempts, &mut rng)? {
                        local += 1;
                    }
                    i += threads as u64;
                }
                Ok(local)
            });
            handles.push(handle);
        }
        let mut total = 0u64;
        for h in handles {
            total += h.join().expect("worker panicked")?;
        }
        Ok(total)
    })?;
    Ok(PatternEstimate::from_counts(pattern, n, samples, successes))
}
