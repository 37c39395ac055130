//! Large stable models: decide whether `P` has a stable model of size at
//! least `|P| - k`, in time linear in the program size for each fixed `k`.
//!
//! Pipeline: drop negations on non-head atoms (`star_transform`, which
//! preserves the rule count), keep only rules with at most `k` negated
//! body atoms (`bounded_neg_subprogram`), and bail out with NO when the
//! surviving program still has more than `k + k^2` distinct negated
//! atoms — a qualifying stable model would bound that quantity. Otherwise
//! every stable model is induced by the subset of negated atoms it
//! contains, so at most `2^(k+k^2)` candidate subsets remain, each checked
//! with one linear-time least-model computation.

use crate::atomset::AtomSet;
use crate::combinatorics::{binomial, unrank_combination};
use crate::error::Error;
use crate::exec::{first_match, Strategy};
use crate::fixpoint::Propagator;
use crate::program::Program;

/// Negated-atom counts above this make the `2^|Neg|` scan unrepresentable;
/// far beyond feasible runtime anyway.
const NEG_ENUM_CAP: usize = 62;

/// Outcome of [`solve_lsm`].
#[derive(Clone, Debug)]
pub struct LsmAnswer {
    /// Witness stable model when the answer is yes.
    pub model: Option<AtomSet>,
    /// `|P|` after parse-time deduplication; the size threshold is
    /// `|P| - k`.
    pub rules: usize,
    /// `|Neg(Q^k)|` of the transformed program.
    pub neg_count: usize,
    /// Candidate subsets up to and including the accepted one, in
    /// canonical order (all of them on a NO answer).
    pub subsets_tried: u64,
}

impl LsmAnswer {
    pub fn is_yes(&self) -> bool {
        self.model.is_some()
    }
}

pub fn solve_lsm(p: &Program, k: u32) -> Result<LsmAnswer, Error> {
    solve_lsm_with(p, k, Strategy::Auto)
}

pub fn solve_lsm_with(p: &Program, k: u32, strategy: Strategy) -> Result<LsmAnswer, Error> {
    let threshold = p.rule_count().saturating_sub(k as usize);

    let q = p.star_transform();
    debug_assert_eq!(q.rule_count(), p.rule_count());
    let qk = q.bounded_neg_subprogram(k);

    let negs: Vec<u32> = qk.negated_atoms().to_vec();
    let bound = (k + k * k) as usize;
    if negs.len() > bound {
        return Ok(LsmAnswer {
            model: None,
            rules: p.rule_count(),
            neg_count: negs.len(),
            subsets_tried: 0,
        });
    }
    if negs.len() > NEG_ENUM_CAP {
        return Err(Error::CapExceeded {
            what: "lsm negated-atom enumeration",
            limit: NEG_ENUM_CAP as u64,
            actual: negs.len() as u64,
        });
    }

    let prop = Propagator::new(&qk);
    let neg_all = qk.negated_atoms();

    // accepts B' iff it induces a stable model of Q^k above the threshold
    let candidate = |bprime: &AtomSet| -> Option<AtomSet> {
        let m = prop.least_model_blocked(bprime);
        if !bprime.is_subset_of(&m) {
            return None;
        }
        let mut rest = neg_all.clone();
        rest.difference_with(bprime);
        if !rest.is_disjoint_from(&m) {
            return None;
        }
        (m.len() >= threshold).then_some(m)
    };

    let mut tried_before: u64 = 0;
    for s in 0..=negs.len() {
        let count = binomial(negs.len() as u64, s as u64).expect("neg count capped");
        let hit = first_match(count, strategy, |rank| {
            let mut idx = Vec::with_capacity(s);
            unrank_combination(negs.len(), s, rank, &mut idx);
            let bprime = AtomSet::from_indices(qk.universe(), idx.iter().map(|&i| negs[i]));
            candidate(&bprime).is_some()
        });
        if let Some(rank) = hit {
            let mut idx = Vec::with_capacity(s);
            unrank_combination(negs.len(), s, rank, &mut idx);
            let bprime = AtomSet::from_indices(qk.universe(), idx.iter().map(|&i| negs[i]));
            let m = candidate(&bprime).expect("re-evaluation of accepted candidate");
            assert!(
                p.is_stable(&m) && m.len() >= threshold,
                "lsm witness failed re-verification"
            );
            assert!(negs.len() <= bound);
            return Ok(LsmAnswer {
                model: Some(m),
                rules: p.rule_count(),
                neg_count: negs.len(),
                subsets_tried: tried_before + rank + 1,
            });
        }
        tried_before += count;
    }

    Ok(LsmAnswer {
        model: None,
        rules: p.rule_count(),
        neg_count: negs.len(),
        subsets_tried: tried_before,
    })
}
