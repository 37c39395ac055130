//! Execution strategy for the subset-scan kernels.
//!
//! Every hot loop in the crate is a scan over a contiguous candidate index
//! range in canonical order. The kernels here run such scans either
//! sequentially or (with the `rayon` feature) data-parallel, with identical
//! results: `first_match` uses an ordered reduction, so the *first* match in
//! index order wins regardless of thread scheduling.

#[cfg(feature = "rayon")]
use rayon::prelude::*;

/// How to drive a candidate scan.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Parallel for large scans when the `rayon` feature is enabled,
    /// sequential otherwise.
    #[default]
    Auto,
    Sequential,
    #[cfg(feature = "rayon")]
    Parallel,
}

/// Scans below this length stay sequential under `Strategy::Auto`.
#[cfg(feature = "rayon")]
const PAR_MIN_LEN: u64 = 512;

/// Index of the first `i` in `0..len` accepted by `pred`, in index order.
pub fn first_match<F>(len: u64, strategy: Strategy, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync,
{
    match strategy {
        Strategy::Sequential => (0..len).find(|&i| pred(i)),
        #[cfg(feature = "rayon")]
        Strategy::Parallel => (0..len).into_par_iter().find_first(|&i| pred(i)),
        Strategy::Auto => {
            #[cfg(feature = "rayon")]
            if len >= PAR_MIN_LEN {
                return (0..len).into_par_iter().find_first(|&i| pred(i));
            }
            (0..len).find(|&i| pred(i))
        }
    }
}

/// Applies `f` to every index in `0..len` and collects the hits in index
/// order.
pub fn collect_matches<T, F>(len: u64, strategy: Strategy, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync,
{
    #[cfg(feature = "rayon")]
    let parallel = match strategy {
        Strategy::Sequential => false,
        Strategy::Parallel => true,
        Strategy::Auto => len >= PAR_MIN_LEN,
    };
    #[cfg(not(feature = "rayon"))]
    let parallel = {
        let _ = strategy;
        false
    };

    if parallel {
        #[cfg(feature = "rayon")]
        {
            let mut hits: Vec<(u64, T)> = (0..len)
                .into_par_iter()
                .filter_map(|i| f(i).map(|t| (i, t)))
                .collect();
            hits.sort_by_key(|&(i, _)| i);
            return hits.into_iter().map(|(_, t)| t).collect();
        }
    }
    (0..len).filter_map(f).collect()
}
