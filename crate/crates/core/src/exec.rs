//! Data-parallel loop helpers with a sequential fallback.
//!
//! With the `parallel` feature disabled, [`Execution::Parallel`] silently runs
//! sequentially, so callers never need to branch on the feature themselves.

use crate::error::Result;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Run `f(index, chunk)` over consecutive `chunk`-sized pieces of `out`; the
/// last piece may be shorter.
pub fn try_for_each_chunk<F>(exec: Execution, out: &mut [f64], chunk: usize, f: F) -> Result<()>
where
    F: Fn(usize, &mut [f64]) -> Result<()> + Sync + Send,
{
    debug_assert!(chunk > 0);
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        // Lowest failing index wins so error reports do not depend on scheduling.
        let first = out
            .par_chunks_mut(chunk)
            .enumerate()
            .filter_map(|(k, c)| f(k, c).err().map(|e| (k, e)))
            .min_by_key(|(k, _)| *k);
        return match first {
            Some((_, e)) => Err(e),
            None => Ok(()),
        };
    }
    let _ = exec;
    out.chunks_mut(chunk)
        .enumerate()
        .try_for_each(|(k, c)| f(k, c))
}

pub fn for_each_chunk<F>(exec: Execution, out: &mut [f64], chunk: usize, f: F)
where
    F: Fn(usize, &mut [f64]) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        out.par_chunks_mut(chunk)
            .enumerate()
            .for_each(|(k, c)| f(k, c));
        return;
    }
    let _ = exec;
    out.chunks_mut(chunk).enumerate().for_each(|(k, c)| f(k, c));
}

/// Maximum of `f(k)` over `0..n` (`0.0` when `n == 0`).
///
/// `max` is exact and order independent, so the parallel and sequential
/// paths return bit-identical results.
pub fn try_max<F>(exec: Execution, n: usize, f: F) -> Result<f64>
where
    F: Fn(usize) -> Result<f64> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n)
            .into_par_iter()
            .map(&f)
            .try_reduce(|| 0.0, |a, b| Ok(a.max(b)));
    }
    let _ = exec;
    let mut best = 0.0_f64;
    for k in 0..n {
        best = best.max(f(k)?);
    }
    Ok(best)
}
