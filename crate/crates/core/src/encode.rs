//! Executable reductions between bounded stable models and bounded-weight
//! satisfiability.
//!
//! `encode_t`/`encode_tc` translate a program `P` and bound `k` into a
//! formula whose models of weight at most `(k+1)(k^2+2k)` correspond to
//! stable models of `P` of size at most `k`. The encoding tracks, per
//! atom `q`, the round of the least-model computation in which `q` is
//! first derived: `c(q)` (derived within `k+1` rounds), `c(q,i)` (derived
//! exactly in round `i`), `c^-(q,i)` (derived before round `i`), plus
//! weight-padding atoms `d(q,i)` that force non-stable-model atoms to be
//! expensive. `encode_tc` emits the same theory as a strictly 3-normalized
//! clause form.
//!
//! `encode_pc` goes the other way: a clause set `C` becomes a program
//! `P^C` whose stable models of size at most `2k` correspond to nonempty
//! models of `C` with at most `k` atoms.

use std::collections::HashSet;

use crate::atomset::AtomSet;
use crate::error::Error;
use crate::formula::{Assignment, Formula, Node, VarPool};
use crate::program::{AtomId, Program, ProgramBuilder, Rule};

/// Fresh-atom name used by the head of every clause rule in `encode_pc`.
pub const PC_FRESH_ATOM: &str = "__f";

/// One encoding atom of `encode_t`/`encode_tc`, with its mangled name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EncodedAtom {
    /// `c(q)`: q is derived within the first k+1 rounds.
    Derived { q: String },
    /// `c(q,i)`: q is first derived exactly in round i (1 <= i <= k+1).
    DerivedAt { q: String, i: u32 },
    /// `c^-(q,i)`: q is derived before round i (2 <= i <= k+1).
    DerivedBefore { q: String, i: u32 },
    /// `d(q,i)`: weight padding tied to `c(q)` (1 <= i <= k^2+2k).
    Pad { q: String, i: u32 },
}

impl EncodedAtom {
    pub fn name(&self) -> String {
        match self {
            EncodedAtom::Derived { q } => format!("c__{q}"),
            EncodedAtom::DerivedAt { q, i } => format!("c__{q}__{i}"),
            EncodedAtom::DerivedBefore { q, i } => format!("cm__{q}__{i}"),
            EncodedAtom::Pad { q, i } => format!("d__{q}__{i}"),
        }
    }
}

/// Number of encoding atoms: `n * (k^2 + 4k + 2)`.
pub fn encoding_atom_count(p: &Program, k: u32) -> usize {
    p.atom_count() * stride(k)
}

/// Model weight bound of the encoding: `(k+1)(k^2+2k)`.
pub fn weight_bound(k: u32) -> u64 {
    (k as u64 + 1) * (k as u64 * k as u64 + 2 * k as u64)
}

fn stride(k: u32) -> usize {
    (k as usize) * (k as usize) + 4 * (k as usize) + 2
}

/// Variable layout shared by the encoders, the witness builder and the
/// decoder. Atoms are laid out per source atom (ascending id): `c(q)`,
/// `c(q,1..k+1)`, `c^-(q,2..k+1)`, `d(q,1..k^2+2k)`.
struct EncCtx {
    k: u32,
    at_ids: Vec<u32>,
    pool: VarPool,
}

impl EncCtx {
    fn new(p: &Program, k: u32) -> Result<EncCtx, Error> {
        let at_ids = p.atoms_set().to_vec();
        let mut pool = VarPool::default();
        for &id in &at_ids {
            let q = p.atom_name(AtomId(id));
            pool.intern(&EncodedAtom::Derived { q: q.into() }.name());
            for i in 1..=k + 1 {
                pool.intern(&EncodedAtom::DerivedAt { q: q.into(), i }.name());
            }
            for i in 2..=k + 1 {
                pool.intern(&EncodedAtom::DerivedBefore { q: q.into(), i }.name());
            }
            for i in 1..=k * k + 2 * k {
                pool.intern(&EncodedAtom::Pad { q: q.into(), i }.name());
            }
        }
        // distinct source atoms must map to distinct encoding atoms;
        // names like `a__1` next to `a` would fold two of them together
        if pool.len() != at_ids.len() * stride(k) {
            let name = at_ids
                .iter()
                .map(|&id| p.atom_name(AtomId(id)))
                .find(|q| q.rsplit_once("__").is_some_and(|(_, s)| s.parse::<u32>().is_ok()))
                .unwrap_or("?");
            return Err(Error::NameCollision(name.to_string()));
        }
        Ok(EncCtx { k, at_ids, pool })
    }

    fn qpos(&self, atom: u32) -> usize {
        self.at_ids.binary_search(&atom).expect("atom occurs in the program")
    }

    fn c(&self, atom: u32) -> u32 {
        (self.qpos(atom) * stride(self.k)) as u32
    }

    fn c_at(&self, atom: u32, i: u32) -> u32 {
        debug_assert!(1 <= i && i <= self.k + 1);
        (self.qpos(atom) * stride(self.k)) as u32 + i
    }

    fn c_before(&self, atom: u32, i: u32) -> u32 {
        debug_assert!(2 <= i && i <= self.k + 1);
        (self.qpos(atom) * stride(self.k)) as u32 + self.k + 1 + (i - 1)
    }

    fn d(&self, atom: u32, i: u32) -> u32 {
        debug_assert!(1 <= i && i <= self.k * self.k + 2 * self.k);
        (self.qpos(atom) * stride(self.k)) as u32 + 2 * self.k + 2 + (i - 1)
    }
}

fn lit(var: u32) -> Node {
    Node::Lit { var, negated: false }
}

fn nlit(var: u32) -> Node {
    Node::Lit { var, negated: true }
}

/// `F_3(r, i)`: rule `r` fires `q` exactly in round `i`. A product of
/// literals for `i >= 2`; in round 1 it degenerates to the empty
/// disjunction (false) when the positive body is nonempty, or to a
/// product over the negative body alone (the empty conjunction, i.e.
/// true, for a fact).
fn f3(ctx: &EncCtx, r: &Rule, i: u32) -> Node {
    if i == 1 {
        if !r.pos().is_empty() {
            return Node::Or(Vec::new());
        }
        return Node::And(r.neg().iter().map(|b| nlit(ctx.c(b.raw()))).collect());
    }
    let mut lits = Vec::with_capacity(r.pos().len() + r.neg().len() + 1);
    for a in r.pos() {
        lits.push(lit(ctx.c_before(a.raw(), i)));
    }
    for b in r.neg() {
        lits.push(nlit(ctx.c(b.raw())));
    }
    lits.push(nlit(ctx.c_before(r.head().raw(), i)));
    Node::And(lits)
}

/// Negation of an `F_3` product, pushed onto the literals.
fn negate_product(n: &Node) -> Node {
    match n {
        Node::And(lits) => Node::Or(
            lits.iter()
                .map(|l| match l {
                    Node::Lit { var, negated } => Node::Lit {
                        var: *var,
                        negated: !negated,
                    },
                    _ => unreachable!("products contain only literals"),
                })
                .collect(),
        ),
        Node::Or(empty) if empty.is_empty() => Node::And(Vec::new()),
        _ => unreachable!("not a product"),
    }
}

fn rules_by_head(p: &Program) -> Vec<Vec<&Rule>> {
    let mut by_head: Vec<Vec<&Rule>> = vec![Vec::new(); p.universe()];
    for r in p.rules() {
        by_head[r.head().index()].push(r);
    }
    by_head
}

/// The theory `T(P)`: every biconditional emitted as a pair of
/// implications, conjoined at the top level.
pub fn encode_t(p: &Program, k: u32) -> Result<Formula, Error> {
    let ctx = EncCtx::new(p, k)?;
    let by_head = rules_by_head(p);
    let mut top: Vec<Node> = Vec::new();

    for &q in &ctx.at_ids {
        // F_1(q,i): c^-(q,i) <-> c(q,1) v .. v c(q,i-1)
        for i in 2..=k + 1 {
            let cm = ctx.c_before(q, i);
            let mut fwd = vec![nlit(cm)];
            fwd.extend((1..i).map(|j| lit(ctx.c_at(q, j))));
            top.push(Node::Or(fwd));
            for j in 1..i {
                top.push(Node::Or(vec![nlit(ctx.c_at(q, j)), lit(cm)]));
            }
        }
        // F_2(q): c(q) <-> c(q,1) v .. v c(q,k+1)
        let cq = ctx.c(q);
        let mut fwd = vec![nlit(cq)];
        fwd.extend((1..=k + 1).map(|j| lit(ctx.c_at(q, j))));
        top.push(Node::Or(fwd));
        for j in 1..=k + 1 {
            top.push(Node::Or(vec![nlit(ctx.c_at(q, j)), lit(cq)]));
        }
        // F_4(q,i): c(q,i) <-> F_3(r_1,i) v .. v F_3(r_v,i)
        for i in 1..=k + 1 {
            let ci = ctx.c_at(q, i);
            let products: Vec<Node> = by_head[AtomId(q).index()]
                .iter()
                .map(|r| f3(&ctx, r, i))
                .collect();
            let mut fwd = vec![nlit(ci)];
            fwd.extend(products.iter().cloned());
            top.push(Node::Or(fwd));
            for prod in &products {
                top.push(Node::Or(vec![negate_product(prod), lit(ci)]));
            }
        }
        // c(q) <-> d(q,i)
        for i in 1..=k * k + 2 * k {
            let di = ctx.d(q, i);
            top.push(Node::Or(vec![nlit(cq), lit(di)]));
            top.push(Node::Or(vec![nlit(di), lit(cq)]));
        }
    }

    Ok(Formula::new(ctx.pool, Node::And(top)))
}

/// The clause form `T^c(P)`: the same theory as [`encode_t`], emitted as
/// a strict product of sums of products of literals (3-normalized).
/// Tautological clauses and false disjuncts introduced by degenerate
/// `F_3` values are folded away; all remaining disjuncts are wrapped as
/// products.
pub fn encode_tc(p: &Program, k: u32) -> Result<Formula, Error> {
    let ctx = EncCtx::new(p, k)?;
    let by_head = rules_by_head(p);
    let mut top: Vec<Node> = Vec::new();

    let unit = |l: Node| Node::And(vec![l]);
    let mut clause = |disjuncts: Vec<Node>| {
        top.push(Node::Or(disjuncts));
    };

    for &q in &ctx.at_ids {
        let cq = ctx.c(q);
        // C_0(q)
        for i in 1..=k * k + 2 * k {
            let di = ctx.d(q, i);
            clause(vec![unit(nlit(cq)), unit(lit(di))]);
            clause(vec![unit(nlit(di)), unit(lit(cq))]);
        }
        // C_1(q,i)
        for i in 2..=k + 1 {
            let cm = ctx.c_before(q, i);
            let mut big = vec![unit(nlit(cm))];
            big.extend((1..i).map(|j| unit(lit(ctx.c_at(q, j)))));
            clause(big);
            for j in 1..i {
                clause(vec![unit(nlit(ctx.c_at(q, j))), unit(lit(cm))]);
            }
        }
        // C_2(q)
        let mut big = vec![unit(nlit(cq))];
        big.extend((1..=k + 1).map(|j| unit(lit(ctx.c_at(q, j)))));
        clause(big);
        for j in 1..=k + 1 {
            clause(vec![unit(nlit(ctx.c_at(q, j))), unit(lit(cq))]);
        }
        // C_4(q,i)
        for i in 1..=k + 1 {
            let ci = ctx.c_at(q, i);
            let products: Vec<Node> = by_head[AtomId(q).index()]
                .iter()
                .map(|r| f3(&ctx, r, i))
                .collect();

            let mut big = vec![unit(nlit(ci))];
            let mut tautology = false;
            for prod in &products {
                match prod {
                    Node::Or(e) if e.is_empty() => {} // false disjunct
                    Node::And(lits) if lits.is_empty() => tautology = true,
                    other => big.push(other.clone()),
                }
            }
            if !tautology {
                clause(big);
            }
            for prod in &products {
                match prod {
                    // false product: the reverse implication is vacuous
                    Node::Or(e) if e.is_empty() => {}
                    Node::And(lits) if lits.is_empty() => clause(vec![unit(lit(ci))]),
                    Node::And(lits) => {
                        let mut c: Vec<Node> = lits
                            .iter()
                            .map(|l| match l {
                                Node::Lit { var, negated } => unit(Node::Lit {
                                    var: *var,
                                    negated: !negated,
                                }),
                                _ => unreachable!("products contain only literals"),
                            })
                            .collect();
                        c.push(unit(lit(ci)));
                        clause(c);
                    }
                    _ => unreachable!("not a product"),
                }
            }
        }
    }

    Ok(Formula::new(ctx.pool, Node::And(top)))
}

/// Derivation rounds of the least-model computation of `P^M`: for each
/// atom of `M`, the first iteration of the consequence operator that
/// produces it.
fn derivation_rounds(p: &Program, m: &AtomSet) -> Vec<(u32, u32)> {
    let reduct = p.reduct(m);
    let mut round_of: Vec<Option<u32>> = vec![None; p.universe()];
    let mut derived = AtomSet::new(p.universe());
    let mut round = 0;
    loop {
        round += 1;
        let mut new_atoms = Vec::new();
        for r in reduct.rules() {
            if round_of[r.head().index()].is_none() && r.pos_subset_of(&derived) {
                new_atoms.push(r.head().raw());
            }
        }
        if new_atoms.is_empty() {
            break;
        }
        for a in new_atoms {
            round_of[a as usize] = Some(round);
            derived.insert(a);
        }
    }
    m.iter()
        .map(|q| (q, round_of[q as usize].expect("stable model atoms are derivable")))
        .collect()
}

/// The satisfying assignment `U_M` certifying a stable model `M` of size
/// at most `k` against `encode_t(P, k)`: `c(q)` and `c(q, s_q)` for the
/// first-derivation round `s_q` of each `q` in `M`, `c^-(q, i)` for the
/// later rounds, and the full `d(q, *)` pad.
pub fn build_witness(p: &Program, m: &AtomSet, k: u32) -> Result<Assignment, Error> {
    if m.len() > k as usize {
        return Err(Error::Precondition(format!(
            "witness model has {} atoms, bound is {k}",
            m.len()
        )));
    }
    if !p.is_stable(m) {
        return Err(Error::Precondition(
            "witness model is not a stable model of the program".into(),
        ));
    }
    let ctx = EncCtx::new(p, k)?;
    let mut u = AtomSet::new(ctx.pool.len());
    for (q, s_q) in derivation_rounds(p, m) {
        debug_assert!(s_q <= k + 1);
        u.insert(ctx.c(q));
        u.insert(ctx.c_at(q, s_q));
        for i in s_q + 1..=k + 1 {
            u.insert(ctx.c_before(q, i));
        }
        for i in 1..=k * k + 2 * k {
            u.insert(ctx.d(q, i));
        }
    }
    assert!(
        (u.len() as u64) <= weight_bound(k),
        "witness weight exceeds the bound"
    );
    debug_assert!(encode_t(p, k)?.evaluate(&u), "witness fails the encoding");
    Ok(u)
}

/// `M(U)`: the source atoms whose `c(q)` marker is true in `u`. Rejects
/// assignments whose true atoms do not name encoding atoms of `p`.
pub fn decode_witness(p: &Program, f: &Formula, u: &Assignment) -> Result<AtomSet, Error> {
    let mut m = AtomSet::new(p.universe());
    for var in u.iter() {
        let name = f.var_name(var);
        let rest = if let Some(rest) = name.strip_prefix("cm__") {
            rest
        } else if let Some(rest) = name.strip_prefix("d__") {
            rest
        } else if let Some(rest) = name.strip_prefix("c__") {
            // exact atom names win over the `q__i` reading (collisions
            // between the two are rejected at encode time)
            if let Some(id) = p.atom_id(rest) {
                if p.atoms_set().contains(id.raw()) {
                    m.insert(id.raw());
                    continue;
                }
            }
            rest
        } else {
            return Err(Error::UnknownAtom(name.to_string()));
        };
        // indexed kinds: q__i with a numeric suffix and q in the program
        let valid = rest.rsplit_once("__").is_some_and(|(q, idx)| {
            idx.parse::<u32>().is_ok()
                && p.atom_id(q).is_some_and(|id| p.atoms_set().contains(id.raw()))
        });
        if !valid {
            return Err(Error::UnknownAtom(name.to_string()));
        }
    }
    Ok(m)
}

/// A CNF clause set over named atoms.
#[derive(Clone, Debug)]
pub struct ClauseSet {
    atom_names: Vec<String>,
    clauses: Vec<Vec<(u32, bool)>>,
}

impl ClauseSet {
    /// `clauses` hold `(atom index, negated)` literals over `atom_names`.
    pub fn new(atom_names: Vec<String>, clauses: Vec<Vec<(u32, bool)>>) -> Result<Self, Error> {
        for c in &clauses {
            for &(v, _) in c {
                if v as usize >= atom_names.len() {
                    return Err(Error::UnknownAtom(format!("variable index {v}")));
                }
            }
        }
        Ok(ClauseSet { atom_names, clauses })
    }

    pub fn atom_count(&self) -> usize {
        self.atom_names.len()
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    pub fn atom_names(&self) -> &[String] {
        &self.atom_names
    }

    pub fn clauses(&self) -> &[Vec<(u32, bool)>] {
        &self.clauses
    }

    /// CNF view of the clause set, for the weighted-sat oracle.
    pub fn to_formula(&self) -> Formula {
        let mut pool = VarPool::default();
        for n in &self.atom_names {
            pool.intern(n);
        }
        let root = Node::And(
            self.clauses
                .iter()
                .map(|c| {
                    Node::Or(
                        c.iter()
                            .map(|&(v, negated)| Node::Lit { var: v, negated })
                            .collect(),
                    )
                })
                .collect(),
        );
        Formula::new(pool, root)
    }
}

/// The program `P^C = S ∪ P_1 ∪ P_2` for a clause set `C` and bound
/// `k >= 1`.
///
/// `S` holds `k` copies of a one-of-`r` choice block over fresh atoms
/// `x__i`, `P_1` projects each chosen copy onto its source atom, and
/// `P_2` adds one constraint-style rule per clause with the fresh head
/// [`PC_FRESH_ATOM`]. `C` has a nonempty model with at most `k` atoms iff
/// the result has a stable model with at most `2k` atoms.
pub fn encode_pc(cs: &ClauseSet, k: u32) -> Result<Program, Error> {
    if k == 0 {
        return Err(Error::Precondition("encode_pc requires k >= 1".into()));
    }
    if let Some(idx) = cs.clauses.iter().position(Vec::is_empty) {
        return Err(Error::EmptyClause(idx));
    }
    let r = cs.atom_count();

    let mut names = HashSet::new();
    let mut claim = |name: String| -> Result<String, Error> {
        if !names.insert(name.clone()) {
            return Err(Error::NameCollision(name));
        }
        Ok(name)
    };
    for n in &cs.atom_names {
        claim(n.clone())?;
    }
    let copy_names: Vec<Vec<String>> = (1..=k)
        .map(|i| {
            cs.atom_names
                .iter()
                .map(|n| claim(format!("{n}__{i}")))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    claim(PC_FRESH_ATOM.to_string())?;

    let mut b = ProgramBuilder::new();
    let copies: Vec<Vec<AtomId>> = copy_names
        .iter()
        .map(|row| row.iter().map(|n| b.atom(n)).collect())
        .collect();

    // S_i: each copy atom defeats all others of its copy
    for copy in &copies {
        for j in 0..r {
            let neg: Vec<AtomId> = (0..r).filter(|&j2| j2 != j).map(|j2| copy[j2]).collect();
            b.rule(copy[j], &[], &neg);
        }
    }
    // P_1: x_j :- x_j(i)
    let sources: Vec<AtomId> = cs.atom_names.iter().map(|n| b.atom(n)).collect();
    for j in 0..r {
        for copy in &copies {
            b.rule(sources[j], &[copy[j]], &[]);
        }
    }
    // P_2: f :- b_1, .., b_t, not a_1, .., not a_s, not f
    let fresh = b.atom(PC_FRESH_ATOM);
    for clause in &cs.clauses {
        let pos: Vec<AtomId> = clause
            .iter()
            .filter(|&&(_, negated)| negated)
            .map(|&(v, _)| sources[v as usize])
            .collect();
        let mut neg: Vec<AtomId> = clause
            .iter()
            .filter(|&&(_, negated)| !negated)
            .map(|&(v, _)| sources[v as usize])
            .collect();
        neg.push(fresh);
        b.rule(fresh, &pos, &neg);
    }

    let p = b.finish();
    debug_assert!(p.rule_count() <= 2 * k as usize * r + cs.clause_count());
    Ok(p)
}
