//! Indexed map helper that runs on rayon when the `parallel` feature is
//! enabled and falls back to a plain sequential loop otherwise. Callers
//! derive every sample from its index, so results never depend on thread
//! scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub(crate) fn map_indexed<T: Send>(
    n: usize,
    parallel: bool,
    f: impl Fn(usize) -> T + Sync + Send,
) -> Vec<T> {
    if parallel {
        // Batch small items so task overhead stays amortized.
        (0..n).into_par_iter().with_min_len(16).map(f).collect()
    } else {
        (0..n).map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indexed<T>(n: usize, _parallel: bool, f: impl Fn(usize) -> T) -> Vec<T> {
    (0..n).map(f).collect()
}
