//! Generated benchmark families. Instances are built in-process so runs
//! are reproducible without fixture files.

use stablek::{Program, ProgramBuilder};

/// `a1.`, `a(i+1) :- a(i)` for i < n, plus `x :- not a1`. One stable
/// model, `{a1..an}`; n+1 rules.
pub fn chain(n: usize) -> Program {
    assert!(n >= 1);
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

/// Each of n atoms defeats all others: `xj :- not x1, .., not xn`
/// (skipping `xj`). The stable models are exactly the n singletons.
pub fn negclique(n: usize) -> Program {
    assert!(n >= 1);
    let mut b = ProgramBuilder::new();
    let atoms: Vec<_> = (1..=n).map(|j| b.atom(&format!("x{j}"))).collect();
    for j in 0..n {
        let neg: Vec<_> = (0..n).filter(|&j2| j2 != j).map(|j2| atoms[j2]).collect();
        b.rule(atoms[j], &[], &neg);
    }
    b.finish()
}
