//! Data-parallel helpers with a sequential fallback.
//!
//! Every helper takes a runtime `parallel` flag; without the `parallel`
//! feature the flag is ignored and work runs on the calling thread. Results
//! are always returned in input order so callers can reduce deterministically.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, preserving order.
pub(crate) fn map<T, R, F>(items: &[T], parallel: bool, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return items.par_iter().map(f).collect();
    }
    let _ = parallel;
    items.iter().map(f).collect()
}

/// Maps `f` over `0..n`, preserving order.
pub(crate) fn map_range<R, F>(n: usize, parallel: bool, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = parallel;
    (0..n).map(f).collect()
}

/// Index of the first item (in input order) satisfying `pred`.
pub(crate) fn position_first<T, F>(items: &[T], parallel: bool, pred: F) -> Option<usize>
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return items.par_iter().position_first(pred);
    }
    let _ = parallel;
    items.iter().position(pred)
}

/// Whether this build can actually run work on more than one thread.
pub fn parallel_available() -> bool {
    cfg!(feature = "parallel")
}
