//! Acceptance suite: oracle-equivalence, table-correctness, encoding and
//! scaling checks, one test per criterion. Each test prints a PASS line;
//! run with `cargo test --test acceptance -- --nocapture` to see them.

mod common;

use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use stablek::combinatorics::{binomial, unrank_combination};
use stablek::encode::{build_witness, decode_witness, encode_pc, encode_t, encode_tc, weight_bound};
use stablek::formula::{ws_exists_with, WsMode};
use stablek::oracle::{enumerate_stable_models, max_stable_size, min_stable_size};
use stablek::ssm::{a_based_exists, compute_tables, horn_rules_over, restrict_to_base, ExistsMode};
use stablek::{solve_lsm, solve_ssm, AtomId, AtomSet, Program, Strategy};

const CORPUS_SEED: u64 = 0x5eed_ab1e;

/// The shared random corpus of criteria 1-3: programs with at most 6
/// atoms, 8 rules and 3 body literals.
fn corpus(count: usize) -> Vec<Program> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    (0..count)
        .map(|_| common::random_program(&mut rng, 6, 8, 3))
        .collect()
}

fn ws_bounded(f: &stablek::Formula, k: u64) -> bool {
    ws_exists_with(f, k as u32, WsMode::AtMost, 24, Strategy::Sequential)
        .expect("within oracle cap")
        .is_some()
}

#[test]
fn criterion_1_ssm_oracle_equivalence() {
    let start = Instant::now();
    let programs = corpus(500);
    let checks: usize = programs
        .par_iter()
        .map(|p| {
            let min = min_stable_size(p, 20).expect("head cap");
            for k in 0..=3u32 {
                let ans = solve_ssm(p, k).expect("no caps in optimized mode");
                let want = min.is_some_and(|s| s <= k as usize);
                assert_eq!(ans.is_yes(), want, "ssm/oracle mismatch at k={k} on\n{p}");
                if let Some(m) = &ans.model {
                    assert!(
                        p.is_stable(m) && m.len() <= k as usize,
                        "invalid ssm witness at k={k} on\n{p}"
                    );
                }
            }
            4
        })
        .sum();
    println!(
        "acceptance criterion 1 (SSM oracle equivalence): PASS ({checks} checks over 500 programs, {:?})",
        start.elapsed()
    );
}

#[test]
fn criterion_2_lsm_oracle_equivalence() {
    let start = Instant::now();
    let programs = corpus(500);
    let checks: usize = programs
        .par_iter()
        .map(|p| {
            let max = max_stable_size(p, 20).expect("head cap");
            for k in 0..=2u32 {
                let ans = solve_lsm(p, k).expect("no caps at this scale");
                let threshold = p.rule_count().saturating_sub(k as usize);
                let want = max.is_some_and(|s| s >= threshold);
                assert_eq!(ans.is_yes(), want, "lsm/oracle mismatch at k={k} on\n{p}");
                if let Some(m) = &ans.model {
                    assert!(
                        p.is_stable(m) && m.len() >= threshold,
                        "invalid lsm witness at k={k} on\n{p}"
                    );
                }
            }
            3
        })
        .sum();
    println!(
        "acceptance criterion 2 (LSM oracle equivalence): PASS ({checks} checks over 500 programs, {:?})",
        start.elapsed()
    );
}

#[test]
fn criterion_3_lemma_negation_bound_on_yes_instances() {
    let start = Instant::now();
    let programs = corpus(500);
    let yes: usize = programs
        .par_iter()
        .map(|p| {
            let mut count = 0;
            for k in 0..=2u32 {
                let ans = solve_lsm(p, k).expect("no caps at this scale");
                if ans.is_yes() {
                    assert!(
                        ans.neg_count as u32 <= k + k * k,
                        "negated-atom bound violated at k={k} on\n{p}"
                    );
                    count += 1;
                }
            }
            count
        })
        .sum();
    println!(
        "acceptance criterion 3 (negation bound on LSM yes-instances): PASS ({yes} yes-instances, 0 violations, {:?})",
        start.elapsed()
    );
}

/// Random (A-program, base, candidate) triple with `|A| <= 3`.
fn random_a_program_triple(rng: &mut ChaCha8Rng) -> Option<(Program, AtomSet, AtomId)> {
    let p = common::random_program(rng, 5, 6, 3).proper_filter();
    if p.rule_count() == 0 {
        return None;
    }
    let at: Vec<u32> = p.atoms_set().to_vec();
    let asize = rng.random_range(0..=3.min(at.len()));
    let picked = sample(rng, at.len(), asize);
    let a_set = AtomSet::from_indices(p.universe(), picked.iter().map(|i| at[i]));
    let pa = restrict_to_base(&p, &a_set);
    let mut candidates: Vec<u32> = pa.atoms_set().to_vec();
    candidates.retain(|&c| !a_set.contains(c));
    if candidates.is_empty() {
        return None;
    }
    let atom = AtomId::from_raw(candidates[rng.random_range(0..candidates.len())]);
    Some((pa, a_set, atom))
}

#[test]
fn criterion_4_literal_and_optimized_modes_agree() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ 4);
    let mut done = 0;
    let mut attempts = 0;
    while done < 200 {
        attempts += 1;
        assert!(attempts < 100_000, "triple sampling stalled");
        let Some((pa, a_set, atom)) = random_a_program_triple(&mut rng) else {
            continue;
        };
        let tables = compute_tables(&pa, &a_set);
        let literal =
            a_based_exists(&pa, &a_set, atom, &tables, ExistsMode::Literal).expect("|A| <= 3");
        let optimized =
            a_based_exists(&pa, &a_set, atom, &tables, ExistsMode::Optimized).expect("no cap");
        assert_eq!(
            literal,
            optimized,
            "mode mismatch for base {:?}, atom {} on\n{pa}",
            pa.sorted_names(&a_set),
            pa.atom_name(atom),
        );
        done += 1;
    }
    println!(
        "acceptance criterion 4 (literal vs optimized existence test): PASS (200 triples agree, {:?})",
        start.elapsed()
    );
}

#[test]
fn criterion_5_fgh_tables_match_definitions() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ 5);
    let mut done = 0;
    let mut attempts = 0;
    let mut cells = 0usize;
    while done < 200 {
        attempts += 1;
        assert!(attempts < 100_000, "A-program sampling stalled");
        let p = common::random_program(&mut rng, 5, 6, 3).proper_filter();
        if p.rule_count() == 0 {
            continue;
        }
        let at: Vec<u32> = p.atoms_set().to_vec();
        let asize = rng.random_range(0..=3.min(at.len()));
        let picked = sample(&mut rng, at.len(), asize);
        let a_set = AtomSet::from_indices(p.universe(), picked.iter().map(|i| at[i]));
        let pa = restrict_to_base(&p, &a_set);
        let tables = compute_tables(&pa, &a_set);

        for u in 0..pa.universe() as u32 {
            if a_set.contains(u) {
                continue;
            }
            let uid = AtomId::from_raw(u);
            let brute_f = pa.rules().iter().any(|s| {
                s.head() != uid
                    && !a_set.contains(s.head().raw())
                    && !s.neg().contains(&uid)
            });
            assert_eq!(tables.f(u), brute_f, "F({u}) mismatch on\n{pa}");
            let brute_g = pa
                .rules()
                .iter()
                .filter(|s| s.head() == uid && !s.neg().contains(&uid))
                .count() as u32;
            assert_eq!(tables.g(u), brute_g, "G({u}) mismatch on\n{pa}");
            cells += 2;
        }
        for r in horn_rules_over(&pa, &a_set).expect("|A| <= 3") {
            for u in 0..pa.universe() as u32 {
                if a_set.contains(u) {
                    continue;
                }
                let uid = AtomId::from_raw(u);
                let brute_h = pa.rules().iter().any(|s| {
                    s.head() == r.head() && s.pos() == r.pos() && !s.neg().contains(&uid)
                });
                assert_eq!(tables.h(&r, u), brute_h, "H mismatch on\n{pa}");
                cells += 1;
            }
        }
        done += 1;
    }
    println!(
        "acceptance criterion 5 (F/G/H tables vs definitions): PASS (200 A-programs, {cells} cells, {:?})",
        start.elapsed()
    );
}

/// All programs over `n_atoms` named atoms with 1..=max_rules rules,
/// enumerated as subsets of the full rule space.
fn exhaustive_programs(n_atoms: usize, max_rules: usize) -> Vec<Program> {
    let space = common::all_rules_over(n_atoms);
    let mut out = Vec::new();
    for size in 1..=max_rules {
        let count = binomial(space.len() as u64, size as u64).expect("small space");
        let mut idx = Vec::new();
        for rank in 0..count {
            unrank_combination(space.len(), size, rank, &mut idx);
            let rules: Vec<_> = idx.iter().map(|&i| space[i]).collect();
            out.push(common::build_program(n_atoms, &rules));
        }
    }
    out
}

#[test]
fn criterion_6_encoding_biconditional() {
    let start = Instant::now();

    // k = 1, exhaustive over two-atom rule spaces (a program using only
    // one of the atoms covers the n = 1 case)
    let programs = exhaustive_programs(2, 4);
    let exhaustive_count = programs.len();
    programs.par_iter().for_each(|p| {
        let yes_ssm = solve_ssm(p, 1).expect("no caps").is_yes();
        let t = encode_t(p, 1).expect("plain names");
        assert_eq!(
            yes_ssm,
            ws_bounded(&t, weight_bound(1)),
            "k=1 biconditional failed on\n{p}"
        );
    });

    // k = 1, seeded sample of three-atom programs
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ 6);
    let sampled: Vec<Program> = (0..1500)
        .map(|_| common::random_program(&mut rng, 3, 4, 3))
        .collect();
    sampled.par_iter().for_each(|p| {
        let yes_ssm = solve_ssm(p, 1).expect("no caps").is_yes();
        let t = encode_t(p, 1).expect("plain names");
        assert_eq!(
            yes_ssm,
            ws_bounded(&t, weight_bound(1)),
            "k=1 biconditional failed on\n{p}"
        );
    });

    // k = 2, constructive direction over the random corpus
    let witnesses: usize = corpus(300)
        .par_iter()
        .map(|p| {
            let mut count = 0;
            let t = encode_t(p, 2).expect("plain names");
            for m in enumerate_stable_models(p, 20).expect("head cap") {
                if m.len() <= 2 {
                    let u = build_witness(p, &m, 2).expect("stable and small");
                    assert!(t.evaluate(&u), "witness fails encoding on\n{p}");
                    assert!(u.len() as u64 <= weight_bound(2), "witness too heavy on\n{p}");
                    count += 1;
                }
            }
            count
        })
        .sum();

    // k = 2, decode direction where the full space is searchable
    // (single-atom programs: 14 encoding atoms)
    let mut decoded = 0;
    for p in exhaustive_programs(1, 4) {
        let t = encode_t(&p, 2).expect("plain names");
        let found = ws_exists_with(&t, weight_bound(2) as u32, WsMode::AtMost, 24, Strategy::Auto)
            .expect("14 vars");
        assert_eq!(
            found.is_some(),
            solve_ssm(&p, 2).expect("no caps").is_yes(),
            "k=2 biconditional failed on\n{p}"
        );
        if let Some(u) = found {
            let m = decode_witness(&p, &t, &u).expect("well-formed assignment");
            assert!(p.is_stable(&m) && m.len() <= 2, "decoded model not stable on\n{p}");
            decoded += 1;
        }
    }

    println!(
        "acceptance criterion 6 (encoding biconditional): PASS ({exhaustive_count} exhaustive + 1500 sampled at k=1, {witnesses} witnesses and {decoded} decodes at k=2, {:?})",
        start.elapsed()
    );
}

#[test]
fn criterion_7_t_and_tc_are_equivalent() {
    let start = Instant::now();

    // exhaustive over all 2^14 assignments for sampled two-atom programs
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ 7);
    let mut programs: Vec<Program> = (0..56)
        .map(|_| common::random_program(&mut rng, 2, 4, 3))
        .collect();
    for text in [
        "a :- not b. b :- not a.",
        "a. b :- a.",
        "a :- not a.",
        "a :- a, b, not a, not b. b.",
    ] {
        programs.push(stablek::parse_program(text).expect("fixture"));
    }
    programs.par_iter().for_each(|p| {
        let t = encode_t(p, 1).expect("plain names");
        let tc = encode_tc(p, 1).expect("plain names");
        assert_eq!(tc.normalization_depth().expect("strict clause form"), 3);
        let nvars = t.var_count();
        assert!(nvars <= 14);
        for bits in 0..(1u64 << nvars) {
            let a = AtomSet::from_indices(nvars, (0..nvars as u32).filter(|i| bits & (1 << i) != 0));
            assert_eq!(t.evaluate(&a), tc.evaluate(&a), "T/Tc differ on\n{p}");
        }
    });

    // randomized assignments for three-atom programs (21 encoding atoms)
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ 0x77);
    let wide: Vec<(Program, u64)> = (0..20)
        .map(|i| (common::random_program(&mut rng, 3, 4, 3), CORPUS_SEED ^ i))
        .collect();
    wide.par_iter().for_each(|(p, seed)| {
        let t = encode_t(p, 1).expect("plain names");
        let tc = encode_tc(p, 1).expect("plain names");
        assert_eq!(tc.normalization_depth().expect("strict clause form"), 3);
        let nvars = t.var_count();
        let mut rng = ChaCha8Rng::seed_from_u64(*seed);
        for _ in 0..100_000 {
            let bits: u64 = rng.random_range(0..(1u64 << nvars));
            let a = AtomSet::from_indices(nvars, (0..nvars as u32).filter(|i| bits & (1 << i) != 0));
            assert_eq!(t.evaluate(&a), tc.evaluate(&a), "T/Tc differ on\n{p}");
        }
    });

    println!(
        "acceptance criterion 7 (T and T^c equivalent, T^c 3-normalized): PASS (60 exhaustive + 20 randomized programs, {:?})",
        start.elapsed()
    );
}

#[test]
fn criterion_8_pc_reduction_biconditional() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ 8);
    let sets: Vec<_> = (0..300)
        .map(|_| common::random_clause_set(&mut rng, 4, 4, 3))
        .collect();
    sets.par_iter().for_each(|cs| {
        let f = cs.to_formula();
        for k in 1..=2u32 {
            let lhs = (1..=k).any(|j| {
                ws_exists_with(&f, j, WsMode::Exact, 24, Strategy::Sequential)
                    .expect("small formula")
                    .is_some()
            });
            let pc = encode_pc(cs, k).expect("generated names are fresh");
            let models = enumerate_stable_models(&pc, 20).expect("head cap");
            let fresh = pc
                .atom_id(stablek::encode::PC_FRESH_ATOM)
                .expect("fresh atom interned");
            for m in &models {
                assert!(!m.contains(fresh.raw()), "fresh atom in a stable model of\n{pc}");
            }
            let rhs = models.first().is_some_and(|m| m.len() <= 2 * k as usize);
            assert_eq!(lhs, rhs, "P^C biconditional failed at k={k} for\n{pc}");
        }
    });
    println!(
        "acceptance criterion 8 (clause-set reduction biconditional): PASS (300 clause sets x k in {{1,2}}, {:?})",
        start.elapsed()
    );
}

fn median_solve_time(p: &Program, k: u32, runs: usize) -> Duration {
    // warm-up
    for _ in 0..2 {
        assert!(solve_lsm(p, k).expect("no caps").is_yes());
    }
    let mut times: Vec<Duration> = (0..runs)
        .map(|_| {
            let t0 = Instant::now();
            let ans = solve_lsm(p, k).expect("no caps");
            let dt = t0.elapsed();
            assert!(ans.is_yes());
            dt
        })
        .collect();
    times.sort();
    times[runs / 2]
}

#[test]
fn criterion_9_lsm_scaling_is_roughly_linear() {
    let start = Instant::now();
    let sizes = [1_000usize, 2_000, 4_000, 10_000];
    let medians: Vec<(usize, Duration)> = sizes
        .iter()
        .map(|&n| (n, median_solve_time(&common::chain(n), 2, 9)))
        .collect();
    for pair in medians.windows(2) {
        let (n1, t1) = pair[0];
        let (n2, t2) = pair[1];
        let ratio = t2.as_secs_f64() / t1.as_secs_f64().max(1e-9);
        assert!(
            ratio <= 3.0,
            "LSM time grew {ratio:.2}x from chain({n1})={t1:?} to chain({n2})={t2:?}"
        );
    }
    let detail: Vec<String> = medians
        .iter()
        .map(|(n, t)| format!("chain({n})={t:?}"))
        .collect();
    println!(
        "acceptance criterion 9 (fixed-k LSM scaling): PASS ({}, {:?})",
        detail.join(", "),
        start.elapsed()
    );
}
