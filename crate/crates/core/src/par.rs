//! Feature-gated execution helpers.
//!
//! Every helper has a sequential twin with identical output ordering, so
//! builds without the `parallel` feature are drop-in equivalent.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `0..n`, preserving index order in the output.
pub(crate) fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_indexed_seq(n, f)
    }
}

/// Sequential reference for [`map_indexed`]; always available so benches can
/// compare the two paths.
pub(crate) fn map_indexed_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

/// True iff `pred` holds for some index in `0..n`.
pub(crate) fn any_indexed<F>(n: u64, pred: F) -> bool
where
    F: Fn(u64) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().any(pred)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).any(pred)
    }
}
