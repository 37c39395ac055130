//! Solvers and encoders for bounded-size stable models of ground normal
//! logic programs.
//!
//! The crate decides two parameterized questions about a propositional
//! program `P` with `|P|` rules:
//!
//! * **LSM(k)** — does `P` have a stable model of size at least `|P| - k`?
//!   Decided in time linear in the program size for each fixed `k`
//!   ([`solve_lsm`]).
//! * **SSM(k)** — does `P` have a stable model of size at most `k`?
//!   Decided by enumerating candidate bases `A` with `|A| <= k - 1` and
//!   testing for `A`-based stable models via the F/G/H tables
//!   ([`solve_ssm`]).
//!
//! Both solvers return witnesses that are re-verified against the stable
//! model definition before being reported. A brute-force [`oracle`] and a
//! bounded-weight satisfiability search ([`formula::ws_exists`]) provide
//! independent ground truth for tests, and [`encode`] materializes the
//! program-to-formula and clauses-to-program reductions connecting the two
//! problems.
//!
//! Candidate enumeration is deterministic (increasing size, then
//! lexicographic) regardless of the execution [`Strategy`]; with the
//! `rayon` feature (on by default) large scans run data-parallel while
//! preserving first-witness semantics.

pub mod atomset;
pub mod combinatorics;
pub mod dimacs;
pub mod encode;
mod error;
pub mod exec;
mod fixpoint;
pub mod formula;
pub mod lsm;
pub mod oracle;
mod parse;
pub mod program;
pub mod ssm;

pub use atomset::AtomSet;
pub use error::{Error, ParseError, ParseErrorKind};
pub use exec::Strategy;
pub use formula::{ws_exists, Assignment, Formula, WsMode};
pub use lsm::{solve_lsm, solve_lsm_with, LsmAnswer};
pub use parse::parse_program;
pub use program::{AtomId, HornProgram, Program, ProgramBuilder, Rule};
pub use ssm::{solve_ssm, solve_ssm_with, ExistsMode, SsmAnswer, SsmOptions};
