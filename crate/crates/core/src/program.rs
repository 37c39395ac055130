//! Ground normal logic programs: atom interning, rules, the reduct, least
//! models, stability checks and the rule-level transformations the solvers
//! build on.
//!
//! Programs are rule *sets*: exact duplicate rules are removed when a
//! program is parsed or built, and the reported rule count `|P|` is
//! measured after that removal. Derived programs (subprograms and
//! rewrites) share the parent's atom table, so every [`AtomSet`] stays
//! valid across transformations.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::atomset::AtomSet;
use crate::error::Error;
use crate::fixpoint::Propagator;

/// Dense index of an interned atom.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct AtomId(pub(crate) u32);

impl AtomId {
    pub fn from_raw(raw: u32) -> AtomId {
        AtomId(raw)
    }

    pub fn raw(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Bijective name-to-id interner. Ids are assigned in first-occurrence
/// order.
#[derive(Debug, Default)]
pub struct AtomTable {
    names: Vec<String>,
    index: HashMap<String, AtomId>,
}

impl AtomTable {
    pub fn intern(&mut self, name: &str) -> AtomId {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = AtomId(self.names.len() as u32);
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        id
    }

    pub fn lookup(&self, name: &str) -> Option<AtomId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: AtomId) -> &str {
        &self.names[id.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// A rule `head :- pos, not neg`. Bodies are kept as sorted, duplicate-free
/// id lists.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Rule {
    head: AtomId,
    pos: Vec<AtomId>,
    neg: Vec<AtomId>,
}

impl Rule {
    pub fn new(head: AtomId, mut pos: Vec<AtomId>, mut neg: Vec<AtomId>) -> Self {
        pos.sort_unstable();
        pos.dedup();
        neg.sort_unstable();
        neg.dedup();
        Rule { head, pos, neg }
    }

    pub fn head(&self) -> AtomId {
        self.head
    }

    pub fn pos(&self) -> &[AtomId] {
        &self.pos
    }

    pub fn neg(&self) -> &[AtomId] {
        &self.neg
    }

    pub fn is_horn(&self) -> bool {
        self.neg.is_empty()
    }

    /// P1 (`head not in pos`) and P2 (`pos` and `neg` disjoint).
    pub fn is_proper(&self) -> bool {
        self.pos.binary_search(&self.head).is_err() && disjoint_sorted(&self.pos, &self.neg)
    }

    /// True when some negated body atom is in `set`.
    pub fn blocked_by(&self, set: &AtomSet) -> bool {
        self.neg.iter().any(|a| set.contains(a.raw()))
    }

    pub fn pos_subset_of(&self, set: &AtomSet) -> bool {
        self.pos.iter().all(|a| set.contains(a.raw()))
    }
}

fn disjoint_sorted(a: &[AtomId], b: &[AtomId]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return false,
        }
    }
    true
}

/// A ground normal logic program over an interned atom universe.
#[derive(Clone, Debug)]
pub struct Program {
    atoms: Arc<AtomTable>,
    rules: Vec<Rule>,
    at_set: AtomSet,
    head_set: AtomSet,
    neg_set: AtomSet,
    size: usize,
}

impl Program {
    pub(crate) fn from_parts(atoms: Arc<AtomTable>, rules: Vec<Rule>) -> Self {
        let universe = atoms.len();
        let mut at_set = AtomSet::new(universe);
        let mut head_set = AtomSet::new(universe);
        let mut neg_set = AtomSet::new(universe);
        let mut size = 0;
        for r in &rules {
            size += 1 + r.pos.len() + r.neg.len();
            at_set.insert(r.head.raw());
            head_set.insert(r.head.raw());
            for a in &r.pos {
                at_set.insert(a.raw());
            }
            for a in &r.neg {
                at_set.insert(a.raw());
                neg_set.insert(a.raw());
            }
        }
        Program {
            atoms,
            rules,
            at_set,
            head_set,
            neg_set,
            size,
        }
    }

    /// Same atom universe, different rule list. Rule order and multiplicity
    /// are preserved as given.
    pub(crate) fn with_rules(&self, rules: Vec<Rule>) -> Program {
        Program::from_parts(Arc::clone(&self.atoms), rules)
    }

    pub fn atom_table(&self) -> &AtomTable {
        &self.atoms
    }

    /// Size of the interned universe; bitset width for every [`AtomSet`]
    /// tied to this program. For derived subprograms this can exceed
    /// `atom_count()`.
    pub fn universe(&self) -> usize {
        self.atoms.len()
    }

    /// `n`: number of atoms occurring in the rules.
    pub fn atom_count(&self) -> usize {
        self.at_set.len()
    }

    /// `|P|`: number of rules.
    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    /// `size(P)` (`m`): total number of atom occurrences across all rules.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// `At(P)`: atoms occurring in the rules.
    pub fn atoms_set(&self) -> &AtomSet {
        &self.at_set
    }

    /// `h(P)`: atoms appearing as rule heads.
    pub fn heads(&self) -> &AtomSet {
        &self.head_set
    }

    /// `Neg(P)`: atoms appearing negated in rule bodies.
    pub fn negated_atoms(&self) -> &AtomSet {
        &self.neg_set
    }

    pub fn atom_name(&self, id: AtomId) -> &str {
        self.atoms.name(id)
    }

    pub fn atom_id(&self, name: &str) -> Option<AtomId> {
        self.atoms.lookup(name)
    }

    /// Builds a model from atom names, rejecting names outside the
    /// program's universe.
    pub fn model_from_names<I, S>(&self, names: I) -> Result<AtomSet, Error>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut m = AtomSet::new(self.universe());
        for n in names {
            let id = self
                .atom_id(n.as_ref())
                .ok_or_else(|| Error::UnknownAtom(n.as_ref().to_string()))?;
            m.insert(id.raw());
        }
        Ok(m)
    }

    /// Member names of `set`, sorted lexicographically.
    pub fn sorted_names(&self, set: &AtomSet) -> Vec<String> {
        let mut v: Vec<String> = set
            .iter()
            .map(|i| self.atoms.name(AtomId(i)).to_string())
            .collect();
        v.sort();
        v
    }

    /// The Gelfond-Lifschitz reduct `P^M`: rules blocked by `M` are
    /// dropped, negated atoms are stripped from the rest, and duplicates
    /// collapse to set semantics.
    pub fn reduct(&self, m: &AtomSet) -> HornProgram {
        let mut seen = HashSet::new();
        let mut rules = Vec::new();
        for r in &self.rules {
            if r.blocked_by(m) {
                continue;
            }
            let horn = Rule::new(r.head, r.pos.clone(), Vec::new());
            if seen.insert((horn.head, horn.pos.clone())) {
                rules.push(horn);
            }
        }
        HornProgram(self.with_rules(rules))
    }

    /// `M` is stable iff `M ⊆ At(P)` and `LM(P^M) = M`.
    pub fn is_stable(&self, m: &AtomSet) -> bool {
        if !m.is_subset_of(&self.at_set) {
            return false;
        }
        Propagator::new(self).least_model_blocked(m) == *m
    }

    /// Rules whose body is satisfied by `M`.
    pub fn generating_rules(&self, m: &AtomSet) -> Vec<&Rule> {
        self.rules
            .iter()
            .filter(|r| r.pos_subset_of(m) && !r.blocked_by(m))
            .collect()
    }

    /// Subprogram of all proper rules (P1 and P2 hold).
    pub fn proper_filter(&self) -> Program {
        self.with_rules(self.rules.iter().filter(|r| r.is_proper()).cloned().collect())
    }

    /// `P*`: drops every `not a` whose atom heads no rule. Preserves rule
    /// count and order, so `|P*| = |P|`; afterwards `Neg(P*) ⊆ h(P*)`.
    pub fn star_transform(&self) -> Program {
        let rules = self
            .rules
            .iter()
            .map(|r| {
                let neg = r
                    .neg
                    .iter()
                    .copied()
                    .filter(|a| self.head_set.contains(a.raw()))
                    .collect();
                Rule::new(r.head, r.pos.clone(), neg)
            })
            .collect();
        self.with_rules(rules)
    }

    /// `P^k`: the rules with at most `k` negated body atoms.
    pub fn bounded_neg_subprogram(&self, k: u32) -> Program {
        self.with_rules(
            self.rules
                .iter()
                .filter(|r| r.neg.len() <= k as usize)
                .cloned()
                .collect(),
        )
    }

    pub fn rule_to_string(&self, r: &Rule) -> String {
        let mut s = self.atoms.name(r.head).to_string();
        if !r.pos.is_empty() || !r.neg.is_empty() {
            s.push_str(" :- ");
            let mut parts: Vec<String> = r.pos.iter().map(|a| self.atoms.name(*a).to_string()).collect();
            parts.extend(r.neg.iter().map(|a| format!("not {}", self.atoms.name(*a))));
            s.push_str(&parts.join(", "));
        }
        s.push('.');
        s
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{}", self.rule_to_string(r))?;
        }
        Ok(())
    }
}

/// A negation-free program; the target of the reduct.
#[derive(Clone, Debug)]
pub struct HornProgram(Program);

impl HornProgram {
    pub(crate) fn from_program(p: Program) -> Self {
        debug_assert!(p.rules.iter().all(Rule::is_horn));
        HornProgram(p)
    }

    pub fn as_program(&self) -> &Program {
        &self.0
    }

    pub fn rule_count(&self) -> usize {
        self.0.rule_count()
    }

    pub fn rules(&self) -> &[Rule] {
        self.0.rules()
    }

    /// `LM(P)`: least fixpoint of the one-step consequence operator,
    /// computed by counter-based unit propagation in time linear in the
    /// program size.
    pub fn least_model(&self) -> AtomSet {
        let empty = AtomSet::new(self.0.universe());
        Propagator::new(&self.0).least_model_blocked(&empty)
    }
}

impl fmt::Display for HornProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Programmatic program construction with the same normalization as the
/// text parser: body duplicates removed per rule, exact duplicate rules
/// dropped, first-occurrence atom interning.
#[derive(Default)]
pub struct ProgramBuilder {
    atoms: AtomTable,
    rules: Vec<Rule>,
    seen: HashSet<Rule>,
}

impl ProgramBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn atom(&mut self, name: &str) -> AtomId {
        self.atoms.intern(name)
    }

    pub fn rule(&mut self, head: AtomId, pos: &[AtomId], neg: &[AtomId]) {
        let r = Rule::new(head, pos.to_vec(), neg.to_vec());
        if self.seen.insert(r.clone()) {
            self.rules.push(r);
        }
    }

    pub fn fact(&mut self, head: AtomId) {
        self.rule(head, &[], &[]);
    }

    pub fn finish(self) -> Program {
        Program::from_parts(Arc::new(self.atoms), self.rules)
    }
}
