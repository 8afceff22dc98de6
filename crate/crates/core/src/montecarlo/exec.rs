//! Deterministic work partitioning.
//!
//! Trials are cut into fixed-size batches. Batch `b` of a run keyed `key`
//! draws from `ChaCha8Rng::seed_from_u64(key)` on stream `b`, so its random
//! numbers do not depend on which worker runs it. Batch results are
//! collected in batch order and reduced sequentially, which makes every
//! estimate bit-identical for any worker count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Trials per batch.
pub const BATCH_SIZE: u64 = 4096;

/// How batches are scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    /// One batch after another on the calling thread.
    Sequential,
    /// Rayon work stealing over `workers` threads; 0 uses the global pool.
    /// Falls back to sequential when built without the `parallel` feature.
    Parallel { workers: usize },
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel { workers: 0 }
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// `Some(1)` and `None` map to sequential and default scheduling.
    pub fn with_workers(workers: Option<usize>) -> Execution {
        match workers {
            Some(1) => Execution::Sequential,
            Some(n) => Execution::Parallel { workers: n },
            None => Execution::default(),
        }
    }
}

/// SplitMix64 finaliser.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Run key for one sweep point, derived from the master seed and the axis
/// value (not its index) so any subset of points reproduces the superset.
pub fn point_key(master_seed: u64, axis_value: f64) -> u64 {
    // Normalise -0.0 so equal values share a key.
    let bits = if axis_value == 0.0 {
        0
    } else {
        axis_value.to_bits()
    };
    mix64(mix64(master_seed) ^ bits)
}

/// Random stream of one batch.
pub fn batch_rng(key: u64, batch: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(key);
    rng.set_stream(batch);
    rng
}

/// Runs `f(batch_index, batch_len, rng)` over `ceil(trials / batch_size)`
/// batches and returns the results in batch order. The last batch may be
/// short.
pub fn map_batches<T, F>(trials: u64, batch_size: u64, key: u64, exec: Execution, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64, u64, &mut ChaCha8Rng) -> T + Sync,
{
    if trials == 0 || batch_size == 0 {
        return Err(Error::Unsupported("trial and batch counts must be >= 1".into()));
    }
    let batches = trials.div_ceil(batch_size);
    let run = |b: u64| {
        let len = batch_size.min(trials - b * batch_size);
        f(b, len, &mut batch_rng(key, b))
    };
    match exec {
        Execution::Sequential => Ok((0..batches).map(run).collect()),
        Execution::Parallel { workers } => parallel(batches, workers, run),
    }
}

#[cfg(feature = "parallel")]
fn parallel<T, F>(batches: u64, workers: usize, run: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> T + Sync,
{
    use rayon::prelude::*;
    let go = || (0..batches).into_par_iter().map(&run).collect();
    if workers == 0 {
        Ok(go())
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::Unsupported(format!("cannot start worker pool: {e}")))?;
        Ok(pool.install(go))
    }
}

#[cfg(not(feature = "parallel"))]
fn parallel<T, F>(batches: u64, _workers: usize, run: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> T + Sync,
{
    Ok((0..batches).map(run).collect())
}
