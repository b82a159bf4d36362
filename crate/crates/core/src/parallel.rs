//! Order-preserving parallel map over replica indices.
//!
//! Results always come back in index order, so any reduction done afterwards
//! is independent of the number of worker threads.

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "BENFORD_WALK_THREADS";

#[cfg(feature = "parallel")]
pub fn map_indexed<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..count).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T, F>(count: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..count).map(f).collect()
}

/// Configures the global worker pool from `BENFORD_WALK_THREADS`.
/// Unset or unparsable values leave the default (hardware parallelism).
pub fn init_from_env() {
    #[cfg(feature = "parallel")]
    if let Some(n) = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        // A second initialization is harmless; the first pool wins.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}
