//! Brute-force ground truth: enumerate all stable models of a small
//! program by exhaustive subset search over the rule heads.
//!
//! Stable models are subsets of `h(P)`, so scanning head subsets is
//! complete; the value of this module is its obvious correctness, not
//! speed.

use crate::atomset::AtomSet;
use crate::combinatorics::{binomial, unrank_combination};
use crate::error::Error;
use crate::exec::{collect_matches, Strategy};
use crate::fixpoint::Propagator;
use crate::program::Program;

/// Default cap on `|h(P)|`; the search space is `2^|h(P)|`.
pub const ORACLE_DEFAULT_HEAD_CAP: usize = 20;

/// All stable models of `p`, sorted by (size, lexicographic id order).
pub fn enumerate_stable_models(p: &Program, cap: usize) -> Result<Vec<AtomSet>, Error> {
    enumerate_stable_models_with(p, cap, Strategy::Auto)
}

pub fn enumerate_stable_models_with(
    p: &Program,
    cap: usize,
    strategy: Strategy,
) -> Result<Vec<AtomSet>, Error> {
    let heads: Vec<u32> = p.heads().to_vec();
    if heads.len() > cap {
        return Err(Error::CapExceeded {
            what: "oracle head-set size",
            limit: cap as u64,
            actual: heads.len() as u64,
        });
    }
    let prop = Propagator::new(p);
    let mut models = Vec::new();
    for s in 0..=heads.len() {
        let count = binomial(heads.len() as u64, s as u64).expect("capped head count");
        let mut level = collect_matches(count, strategy, |rank| {
            let mut idx = Vec::with_capacity(s);
            unrank_combination(heads.len(), s, rank, &mut idx);
            let m = AtomSet::from_indices(p.universe(), idx.iter().map(|&i| heads[i]));
            (prop.least_model_blocked(&m) == m).then_some(m)
        });
        models.append(&mut level);
    }
    Ok(models)
}

/// Size of the smallest stable model, or `None` when none exists.
pub fn min_stable_size(p: &Program, cap: usize) -> Result<Option<usize>, Error> {
    Ok(enumerate_stable_models(p, cap)?.first().map(AtomSet::len))
}

/// Size of the largest stable model, or `None` when none exists.
pub fn max_stable_size(p: &Program, cap: usize) -> Result<Option<usize>, Error> {
    Ok(enumerate_stable_models(p, cap)?.last().map(AtomSet::len))
}
