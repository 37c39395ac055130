//! Small stable models: decide whether `P` has a stable model of size at
//! most `k`.
//!
//! After handling the empty model and dropping improper rules, the solver
//! scans candidate bases `A` with `|A| <= k - 1` and asks whether some
//! `A`-based stable model `A ∪ {a}` exists. For a fixed base this reduces
//! to table lookups: `F(a)` (a rule could derive an atom outside
//! `A ∪ {a}`), `G(a)` (some rule can derive `a` itself) and `H(r, a)` (the
//! Horn projection `r` of some rule survives the reduct), combined with
//! the existence of a Horn program over `A` with least model exactly `A`.
//!
//! Two decision procedures are provided for that last condition:
//! `Literal` scans every qualifying Horn program over `A` (capped at
//! `|A| <= 3`); `Optimized` (the default) runs a single least-model test
//! on the largest candidate rule set, which is equivalent because the
//! least model is monotone in the rule set. Their agreement is a tested
//! invariant.

use std::collections::HashMap;

use crate::atomset::AtomSet;
use crate::combinatorics::{binomial, unrank_combination};
use crate::error::Error;
use crate::exec::{first_match, Strategy};
use crate::program::{AtomId, HornProgram, Program, Rule};

/// Default cap for materializing `R(A)`; `|R(A)| = |A| * 2^(|A|-1)`.
pub const HORN_RULES_DEFAULT_CAP: usize = 4;

/// Cap for scanning the set of base programs; `|P(A)|` grows doubly
/// exponentially in `|A|`.
pub const BASE_PROGRAMS_CAP: usize = 3;

/// How `a_based_exists` decides the base-program condition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ExistsMode {
    /// Scan all Horn programs over `A` with least model `A` (desk scale,
    /// `|A| <= 3`).
    Literal,
    /// Single least-model test over the maximal candidate rule set.
    #[default]
    Optimized,
}

#[derive(Clone, Copy, Debug)]
pub struct SsmOptions {
    pub mode: ExistsMode,
    /// Restrict bases to head atoms. Safe because every stable model is a
    /// subset of `h(P)`; validated against the unpruned scan in tests.
    pub prune_to_heads: bool,
    pub strategy: Strategy,
}

impl Default for SsmOptions {
    fn default() -> Self {
        SsmOptions {
            mode: ExistsMode::Optimized,
            prune_to_heads: true,
            strategy: Strategy::Auto,
        }
    }
}

/// Outcome of [`solve_ssm`].
#[derive(Clone, Debug)]
pub struct SsmAnswer {
    /// Witness stable model of size `<= k` when the answer is yes.
    pub model: Option<AtomSet>,
    /// Bases up to and including the accepting one, in canonical order
    /// (all of them on a NO answer).
    pub bases_examined: u64,
}

impl SsmAnswer {
    pub fn is_yes(&self) -> bool {
        self.model.is_some()
    }
}

/// `P(A)`: rules not blocked by `A` whose positive body lies inside `A`.
/// The result is an `A`-program.
pub fn restrict_to_base(p: &Program, a: &AtomSet) -> Program {
    debug_assert!(p.rules().iter().all(Rule::is_proper));
    p.with_rules(
        p.rules()
            .iter()
            .filter(|r| !r.blocked_by(a) && r.pos_subset_of(a))
            .cloned()
            .collect(),
    )
}

/// `P'(A)` and the forbidden companion set `B = {a_r}`: rules not blocked
/// by `A`, head outside `A`, with exactly one positive body atom outside
/// `A`.
pub fn one_step_rules(p: &Program, a: &AtomSet) -> (Program, AtomSet) {
    let mut rules = Vec::new();
    let mut forbidden = AtomSet::new(p.universe());
    for r in p.rules() {
        if r.blocked_by(a) || a.contains(r.head().raw()) {
            continue;
        }
        let mut outside = r.pos().iter().filter(|x| !a.contains(x.raw()));
        if let (Some(first), None) = (outside.next(), outside.next()) {
            forbidden.insert(first.raw());
            rules.push(r.clone());
        }
    }
    (p.with_rules(rules), forbidden)
}

/// Abstract Horn rule over a base, as (head position, body bitmask) over
/// the sorted base atoms.
type MaskRule = (usize, u64);

fn canonical_mask_rules(base_len: usize) -> Vec<MaskRule> {
    let mut out = Vec::new();
    for head in 0..base_len {
        for mask in 0..(1u64 << (base_len - 1)) {
            out.push((head, spread_mask(mask, head)));
        }
    }
    out
}

/// Maps a compact body mask over `A \ {head}` onto base positions.
fn spread_mask(compact: u64, head: usize) -> u64 {
    let low = compact & ((1u64 << head) - 1);
    let high = (compact >> head) << (head + 1);
    low | high
}

fn mask_least_model(rules: &[MaskRule], selected: impl Fn(usize) -> bool) -> u64 {
    let mut derived = 0u64;
    loop {
        let mut changed = false;
        for (i, &(head, body)) in rules.iter().enumerate() {
            if selected(i) && body & !derived == 0 && derived & (1 << head) == 0 {
                derived |= 1 << head;
                changed = true;
            }
        }
        if !changed {
            return derived;
        }
    }
}

/// `R(A)`: all proper Horn rules over the atoms of `a`, in canonical
/// order (heads ascending, then body subsets in mask order). The position
/// in the returned list is the rule id used by [`FghTables::h_by_index`].
pub fn horn_rules_over(p: &Program, a: &AtomSet) -> Result<Vec<Rule>, Error> {
    horn_rules_over_capped(p, a, HORN_RULES_DEFAULT_CAP)
}

pub fn horn_rules_over_capped(p: &Program, a: &AtomSet, cap: usize) -> Result<Vec<Rule>, Error> {
    let ids = a.to_vec();
    if ids.len() > cap {
        return Err(Error::CapExceeded {
            what: "horn-rule base size",
            limit: cap as u64,
            actual: ids.len() as u64,
        });
    }
    let _ = p;
    Ok(canonical_mask_rules(ids.len())
        .into_iter()
        .map(|(head, body)| {
            let pos = (0..ids.len())
                .filter(|&i| body & (1 << i) != 0)
                .map(|i| AtomId(ids[i]))
                .collect();
            Rule::new(AtomId(ids[head]), pos, Vec::new())
        })
        .collect())
}

/// All Horn programs `Q ⊆ R(A)` with `LM(Q) = A`. Doubly exponential in
/// `|A|`, so capped at `|A| <= 3`.
pub fn base_programs(p: &Program, a: &AtomSet) -> Result<Vec<HornProgram>, Error> {
    let rules = horn_rules_over_capped(p, a, BASE_PROGRAMS_CAP)?;
    let masks = base_program_masks(a.len());
    Ok(masks
        .into_iter()
        .map(|q| {
            let selected = rules
                .iter()
                .enumerate()
                .filter(|(i, _)| q & (1 << i) != 0)
                .map(|(_, r)| r.clone())
                .collect();
            HornProgram::from_program(p.with_rules(selected))
        })
        .collect())
}

/// Subset masks of the canonical `R(A)` whose least model is all of `A`,
/// ascending.
fn base_program_masks(base_len: usize) -> Vec<u64> {
    let rules = canonical_mask_rules(base_len);
    let full = if base_len == 0 { 0 } else { (1u64 << base_len) - 1 };
    (0..(1u64 << rules.len()))
        .filter(|&q| mask_least_model(&rules, |i| q & (1 << i) != 0) == full)
        .collect()
}

/// The `F`, `G` and `H` tables of an `A`-program, computed in one pass
/// over the rules.
///
/// `F(a) = 1` iff some rule could derive an atom outside `A ∪ {a}` in the
/// reduct w.r.t. `A ∪ {a}`; computed via membership counters over the
/// family `{ {h(s)} ∪ b^-(s) : h(s) ∉ A }`. `G(a)` counts rules deriving
/// `a` itself. `H(r, a) = 1` iff some rule with Horn projection `r`
/// survives that reduct; rows are stored sparsely as the intersection of
/// the negative bodies per projection.
pub struct FghTables {
    base: AtomSet,
    base_ids: Vec<u32>,
    f_ones: AtomSet,
    g: Vec<u32>,
    groups: HashMap<(u32, u64), AtomSet>,
}

impl FghTables {
    pub fn base(&self) -> &AtomSet {
        &self.base
    }

    pub fn f(&self, atom: u32) -> bool {
        self.f_ones.contains(atom)
    }

    pub fn g(&self, atom: u32) -> u32 {
        self.g[atom as usize]
    }

    /// `H(r, a)` for a Horn rule over the base (e.g. from
    /// [`horn_rules_over`]). Rules not over the base have no preimage and
    /// yield 0.
    pub fn h(&self, rule: &Rule, atom: u32) -> bool {
        match self.key_of(rule) {
            Some(key) => self.h_by_key(key, atom),
            None => false,
        }
    }

    /// `H` keyed by the canonical rule index of [`horn_rules_over`].
    pub fn h_by_index(&self, index: usize, atom: u32) -> bool {
        let per_head = 1usize << (self.base_ids.len().saturating_sub(1));
        let (head, compact) = (index / per_head, (index % per_head) as u64);
        debug_assert!(head < self.base_ids.len());
        let key = (self.base_ids[head], spread_mask(compact, head));
        self.h_by_key(key, atom)
    }

    fn h_by_key(&self, key: (u32, u64), atom: u32) -> bool {
        match self.groups.get(&key) {
            Some(inter) => !inter.contains(atom),
            None => false,
        }
    }

    fn key_of(&self, rule: &Rule) -> Option<(u32, u64)> {
        if !rule.is_horn() {
            return None;
        }
        let mut mask = 0u64;
        for p in rule.pos() {
            mask |= 1u64 << self.base_ids.binary_search(&p.raw()).ok()?;
        }
        self.base_ids.binary_search(&rule.head().raw()).ok()?;
        Some((rule.head().raw(), mask))
    }

    /// Least model over the rows with `H(r, atom) = 1`, compared against
    /// the full base. Rows absent from the program never fire, so the
    /// sparse groups suffice.
    fn row_least_model_is_base(&self, atom: u32) -> bool {
        let n = self.base_ids.len();
        let rules: Vec<MaskRule> = self
            .groups
            .iter()
            .filter(|(_, inter)| !inter.contains(atom))
            .map(|(&(head, body), _)| {
                let pos = self
                    .base_ids
                    .binary_search(&head)
                    .expect("group heads lie in the base");
                (pos, body)
            })
            .collect();
        let full = if n == 0 { 0 } else { (1u64 << n) - 1 };
        mask_least_model(&rules, |_| true) == full
    }
}

/// Builds the tables for an `A`-program `pa` with base `a`.
pub fn compute_tables(pa: &Program, a: &AtomSet) -> FghTables {
    debug_assert!(pa
        .rules()
        .iter()
        .all(|r| !r.blocked_by(a) && r.pos_subset_of(a)));
    let universe = pa.universe();
    let base_ids = a.to_vec();

    let mut counters = vec![0u32; universe];
    let mut family = 0u32;
    let mut g = vec![0u32; universe];
    let mut groups: HashMap<(u32, u64), AtomSet> = HashMap::new();

    for r in pa.rules() {
        let head = r.head();
        let head_negated = r.neg().binary_search(&head).is_ok();
        if !head_negated {
            g[head.index()] += 1;
        }
        if a.contains(head.raw()) {
            let mut mask = 0u64;
            for p in r.pos() {
                let pos = base_ids
                    .binary_search(&p.raw())
                    .expect("A-program positive bodies lie in the base");
                mask |= 1u64 << pos;
            }
            let negset = AtomSet::from_indices(universe, r.neg().iter().map(|x| x.raw()));
            groups
                .entry((head.raw(), mask))
                .and_modify(|inter| inter.intersect_with(&negset))
                .or_insert(negset);
        } else {
            family += 1;
            for x in r.neg() {
                counters[x.index()] += 1;
            }
            if !head_negated {
                counters[head.index()] += 1;
            }
        }
    }

    let mut f_ones = AtomSet::new(universe);
    for (i, &c) in counters.iter().enumerate() {
        if c < family {
            f_ones.insert(i as u32);
        }
    }

    FghTables {
        base: a.clone(),
        base_ids,
        f_ones,
        g,
        groups,
    }
}

/// Does `pa` have the `A`-based stable model `A ∪ {atom}`?
///
/// Both modes test `F(atom) = 0`, `G(atom) > 0` and the existence of a
/// base program all of whose rules have `H = 1`; they agree on every
/// input where the literal mode is defined.
pub fn a_based_exists(
    pa: &Program,
    a: &AtomSet,
    atom: AtomId,
    tables: &FghTables,
    mode: ExistsMode,
) -> Result<bool, Error> {
    debug_assert!(pa.atoms_set().contains(atom.raw()) && !a.contains(atom.raw()));
    if tables.f(atom.raw()) || tables.g(atom.raw()) == 0 {
        return Ok(false);
    }
    match mode {
        ExistsMode::Optimized => Ok(tables.row_least_model_is_base(atom.raw())),
        ExistsMode::Literal => {
            let n = a.len();
            if n > BASE_PROGRAMS_CAP {
                return Err(Error::CapExceeded {
                    what: "literal-mode base size",
                    limit: BASE_PROGRAMS_CAP as u64,
                    actual: n as u64,
                });
            }
            let rules = canonical_mask_rules(n);
            let mut ok_rows = 0u64;
            for (i, _) in rules.iter().enumerate() {
                if tables.h_by_index(i, atom.raw()) {
                    ok_rows |= 1 << i;
                }
            }
            Ok(base_program_masks(n).iter().any(|&q| q & !ok_rows == 0))
        }
    }
}

pub fn solve_ssm(p: &Program, k: u32) -> Result<SsmAnswer, Error> {
    solve_ssm_with(p, k, SsmOptions::default())
}

pub fn solve_ssm_with(p: &Program, k: u32, opts: SsmOptions) -> Result<SsmAnswer, Error> {
    let empty = AtomSet::new(p.universe());
    if p.is_stable(&empty) {
        return Ok(SsmAnswer {
            model: Some(empty),
            bases_examined: 0,
        });
    }
    if k == 0 {
        return Ok(SsmAnswer {
            model: None,
            bases_examined: 0,
        });
    }
    let pf = p.proper_filter();
    let pool: Vec<u32> = if opts.prune_to_heads {
        pf.heads().to_vec()
    } else {
        pf.atoms_set().to_vec()
    };
    let max_base = (k as usize - 1).min(pool.len());
    if opts.mode == ExistsMode::Literal && max_base > BASE_PROGRAMS_CAP {
        return Err(Error::CapExceeded {
            what: "literal-mode base size",
            limit: BASE_PROGRAMS_CAP as u64,
            actual: max_base as u64,
        });
    }

    // first companion atom (canonical order) for which the base accepts
    let check_base = |a_set: &AtomSet| -> Option<u32> {
        let pa = restrict_to_base(&pf, a_set);
        let mut forbidden = AtomSet::new(pf.universe());
        for r in pf.rules() {
            if r.blocked_by(a_set) || a_set.contains(r.head().raw()) {
                continue;
            }
            let mut outside = r.pos().iter().filter(|x| !a_set.contains(x.raw()));
            if let (Some(first), None) = (outside.next(), outside.next()) {
                forbidden.insert(first.raw());
            }
        }
        let tables = compute_tables(&pa, a_set);
        let hit = pa.atoms_set().iter().find(|&cand| {
            !a_set.contains(cand)
                && !forbidden.contains(cand)
                && a_based_exists(&pa, a_set, AtomId(cand), &tables, opts.mode)
                    .expect("base size checked against the literal cap")
        });
        hit
    };

    let mut examined_before = 0u64;
    for s in 0..=max_base {
        let count = binomial(pool.len() as u64, s as u64).ok_or(Error::CapExceeded {
            what: "ssm base enumeration",
            limit: u64::MAX,
            actual: u64::MAX,
        })?;
        let hit = first_match(count, opts.strategy, |rank| {
            let mut idx = Vec::with_capacity(s);
            unrank_combination(pool.len(), s, rank, &mut idx);
            let a_set = AtomSet::from_indices(pf.universe(), idx.iter().map(|&i| pool[i]));
            check_base(&a_set).is_some()
        });
        if let Some(rank) = hit {
            let mut idx = Vec::with_capacity(s);
            unrank_combination(pool.len(), s, rank, &mut idx);
            let a_set = AtomSet::from_indices(pf.universe(), idx.iter().map(|&i| pool[i]));
            let cand = check_base(&a_set).expect("re-evaluation of accepted base");
            let mut witness = a_set;
            witness.insert(cand);
            assert!(
                p.is_stable(&witness) && witness.len() <= k as usize,
                "ssm witness failed re-verification"
            );
            return Ok(SsmAnswer {
                model: Some(witness),
                bases_examined: examined_before + rank + 1,
            });
        }
        examined_before += count;
    }

    Ok(SsmAnswer {
        model: None,
        bases_examined: examined_before,
    })
}
