//! Shared instance generators for the integration and acceptance suites.
//! Everything is seeded, so test corpora are reproducible.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use stablek::encode::ClauseSet;
use stablek::{Program, ProgramBuilder};

/// Random program over at most `max_atoms` single-letter atoms with
/// `1..=max_rules` rules of at most `max_body` body literals each.
pub fn random_program(
    rng: &mut ChaCha8Rng,
    max_atoms: usize,
    max_rules: usize,
    max_body: usize,
) -> Program {
    let n = rng.random_range(1..=max_atoms);
    let mut b = ProgramBuilder::new();
    let ids: Vec<_> = (0..n)
        .map(|i| b.atom(&((b'a' + i as u8) as char).to_string()))
        .collect();
    let rules = rng.random_range(1..=max_rules);
    for _ in 0..rules {
        let head = ids[rng.random_range(0..n)];
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for _ in 0..rng.random_range(0..=max_body) {
            let atom = ids[rng.random_range(0..n)];
            if rng.random_bool(0.5) {
                pos.push(atom);
            } else {
                neg.push(atom);
            }
        }
        b.rule(head, &pos, &neg);
    }
    b.finish()
}

/// Random clause set with no empty clauses.
pub fn random_clause_set(
    rng: &mut ChaCha8Rng,
    max_atoms: usize,
    max_clauses: usize,
    max_lits: usize,
) -> ClauseSet {
    let n = rng.random_range(1..=max_atoms);
    let names: Vec<String> = (1..=n).map(|j| format!("x{j}")).collect();
    let clauses = (0..rng.random_range(1..=max_clauses))
        .map(|_| {
            let mut lits: Vec<(u32, bool)> = Vec::new();
            for _ in 0..rng.random_range(1..=max_lits) {
                lits.push((rng.random_range(0..n) as u32, rng.random_bool(0.5)));
            }
            lits
        })
        .collect();
    ClauseSet::new(names, clauses).expect("indices in range")
}

/// Every possible rule over `n_atoms` atoms as (head index, positive body
/// mask, negative body mask).
pub fn all_rules_over(n_atoms: usize) -> Vec<(usize, u32, u32)> {
    let mut out = Vec::new();
    for head in 0..n_atoms {
        for pos in 0..(1u32 << n_atoms) {
            for neg in 0..(1u32 << n_atoms) {
                out.push((head, pos, neg));
            }
        }
    }
    out
}

/// Builds a program over single-letter atoms from rule specs produced by
/// [`all_rules_over`].
pub fn build_program(n_atoms: usize, rules: &[(usize, u32, u32)]) -> Program {
    let mut b = ProgramBuilder::new();
    let ids: Vec<_> = (0..n_atoms)
        .map(|i| b.atom(&((b'a' + i as u8) as char).to_string()))
        .collect();
    for &(head, pos, neg) in rules {
        let pos: Vec<_> = (0..n_atoms)
            .filter(|i| pos & (1 << i) != 0)
            .map(|i| ids[i])
            .collect();
        let neg: Vec<_> = (0..n_atoms)
            .filter(|i| neg & (1 << i) != 0)
            .map(|i| ids[i])
            .collect();
        b.rule(ids[head], &pos, &neg);
    }
    b.finish()
}

/// The chain family: `a1.`, `a(i+1) :- a(i)`, plus one blocked rule
/// `x :- not a1`. Unique stable model `{a1..aN}`.
pub fn chain(n: usize) -> Program {
    let mut b = ProgramBuilder::new();
    let atoms: Vec<_> = (1..=n).map(|i| b.atom(&format!("a{i}"))).collect();
    let x = b.atom("x");
    b.fact(atoms[0]);
    for w in atoms.windows(2) {
        b.rule(w[1], &[w[0]], &[]);
    }
    b.rule(x, &[], &[atoms[0]]);
    b.finish()
}

/// The negative-clique family: each atom defeats all others; the stable
/// models are exactly the singletons.
pub fn negclique(n: usize) -> Program {
    let mut b = ProgramBuilder::new();
    let atoms: Vec<_> = (1..=n).map(|j| b.atom(&format!("x{j}"))).collect();
    for j in 0..n {
        let neg: Vec<_> = (0..n).filter(|&j2| j2 != j).map(|j2| atoms[j2]).collect();
        b.rule(atoms[j], &[], &neg);
    }
    b.finish()
}
