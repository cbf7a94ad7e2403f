//! Deterministic work scheduling: experiments are partitioned into
//! fixed-size chunks whose random streams derive from (seed, domain,
//! chunk index) alone, so the mapping below may run on any number of
//! threads — results are merged in chunk order and cannot depend on
//! scheduling, only wall time can.

use rayon::prelude::*;

/// Applies `f` to 0..count and returns the results in index order.
/// `workers == 1` runs inline; otherwise a scoped rayon pool with
/// exactly `workers` threads is used. The output is identical either
/// way because `f` must depend only on its index.
pub(crate) fn map_indexed<T, F>(workers: usize, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    if workers <= 1 || count <= 1 {
        return (0..count).map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.min(count))
        .build();
    match pool {
        Ok(pool) => pool.install(|| (0..count).into_par_iter().map(|i| f(i)).collect()),
        // Thread creation can fail in constrained sandboxes; fall back
        // to the sequential path, which produces the same results.
        Err(_) => (0..count).map(f).collect(),
    }
}

/// Splits `total` items into chunks of `chunk_size` (the last may be
/// short) and returns (chunk count, a closure mapping chunk index to its
/// item count). Chunk boundaries are a pure function of the two
/// arguments, never of worker count.
pub(crate) fn chunk_plan(total: u64, chunk_size: u64) -> (usize, impl Fn(usize) -> u64) {
    debug_assert!(chunk_size > 0);
    let chunks = total.div_ceil(chunk_size) as usize;
    (chunks, move |idx: usize| {
        let start = idx as u64 * chunk_size;
        chunk_size.min(total - start)
    })
}
