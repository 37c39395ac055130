//! Counter-based least-model computation.
//!
//! The propagator is built once per program and reused across candidate
//! scans: each call walks the rules once to mark blocked ones, seeds the
//! queue with satisfied-body rules, and then unit-propagates with per-rule
//! counters of unsatisfied positive body atoms. Each call is linear in the
//! program size.

use crate::atomset::AtomSet;
use crate::program::Program;

pub(crate) struct Propagator<'p> {
    program: &'p Program,
    /// rule index -> |pos| template for the counters
    pos_len: Vec<u32>,
    /// atom index -> rules with that atom in the positive body
    watchers: Vec<Vec<u32>>,
}

impl<'p> Propagator<'p> {
    pub fn new(program: &'p Program) -> Self {
        let mut watchers = vec![Vec::new(); program.universe()];
        let mut pos_len = Vec::with_capacity(program.rule_count());
        for (ri, r) in program.rules().iter().enumerate() {
            pos_len.push(r.pos().len() as u32);
            for a in r.pos() {
                watchers[a.index()].push(ri as u32);
            }
        }
        Propagator {
            program,
            pos_len,
            watchers,
        }
    }

    /// Least model of the reduct of the program w.r.t. `blockers`: rules
    /// whose negative body meets `blockers` are dropped, the rest
    /// contribute their positive bodies.
    pub fn least_model_blocked(&self, blockers: &AtomSet) -> AtomSet {
        let rules = self.program.rules();
        let mut counts = self.pos_len.clone();
        let mut blocked = vec![false; rules.len()];
        let mut derived = AtomSet::new(self.program.universe());
        let mut queue: Vec<u32> = Vec::new();

        for (ri, r) in rules.iter().enumerate() {
            if r.blocked_by(blockers) {
                blocked[ri] = true;
            } else if counts[ri] == 0 && !derived.contains(r.head().raw()) {
                derived.insert(r.head().raw());
                queue.push(r.head().raw());
            }
        }

        while let Some(atom) = queue.pop() {
            for &ri in &self.watchers[atom as usize] {
                let ri = ri as usize;
                if blocked[ri] {
                    continue;
                }
                counts[ri] -= 1;
                if counts[ri] == 0 {
                    let h = rules[ri].head().raw();
                    if !derived.contains(h) {
                        derived.insert(h);
                        queue.push(h);
                    }
                }
            }
        }
        derived
    }
}
