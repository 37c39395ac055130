//! `stablek`: decide and witness small and large stable models of ground
//! logic programs, and emit the associated formula/program encodings.
//!
//! Exit codes: 0 = yes/success, 1 = no, 2 = usage or input error,
//! 3 = a desk-scale cap was exceeded. Machine-readable JSON goes to
//! stdout; timings and diagnostics go to stderr so identical inputs
//! produce byte-identical stdout.

mod families;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use stablek::dimacs::parse_dimacs;
use stablek::encode::{encode_pc, encode_t, encode_tc, encoding_atom_count, weight_bound};
use stablek::oracle::enumerate_stable_models;
use stablek::ssm::{ExistsMode, SsmOptions};
use stablek::{parse_program, solve_lsm, solve_ssm_with, Error, Program};

#[derive(Parser)]
#[command(name = "stablek", version, about = "Bounded-size stable model solvers")]
struct Cli {
    /// Pretty-print the JSON report
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a set of atoms is a stable model of a program
    Check {
        file: PathBuf,
        /// Comma-separated atom names; omit for the empty model
        #[arg(long, value_delimiter = ',')]
        model: Vec<String>,
    },
    /// Enumerate all stable models by brute force
    Enumerate {
        file: PathBuf,
        /// Maximum head-set size the oracle accepts
        #[arg(long, default_value_t = 20)]
        cap: usize,
    },
    /// Decide whether a stable model of size at most k exists
    #[command(name = "solve-ssm")]
    SolveSsm {
        file: PathBuf,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::Optimized)]
        mode: ModeArg,
    },
    /// Decide whether a stable model of size at least |P|-k exists
    #[command(name = "solve-lsm")]
    SolveLsm {
        file: PathBuf,
        #[arg(long)]
        k: u32,
    },
    /// Emit a formula or program encoding
    Encode {
        #[command(subcommand)]
        target: EncodeTarget,
    },
    /// Time a solver on a generated instance family
    Bench {
        #[arg(value_enum)]
        solver: SolverArg,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Comma-separated instance sizes
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum EncodeTarget {
    /// Program to formula (biconditional blocks)
    T {
        #[arg(long)]
        k: u32,
        file: PathBuf,
    },
    /// Program to 3-normalized clause form
    Tc {
        #[arg(long)]
        k: u32,
        file: PathBuf,
    },
    /// DIMACS CNF clause set to logic program
    Pc {
        #[arg(long)]
        k: u32,
        file: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Literal,
    Optimized,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolverArg {
    Ssm,
    Lsm,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Chain,
    Negclique,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::CapExceeded { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::Check { file, model } => {
            let (p, parse_ms) = load_program(file)?;
            let names: Vec<&String> = model.iter().filter(|s| !s.is_empty()).collect();
            let m = p.model_from_names(names)?;
            let t0 = Instant::now();
            let stable = p.is_stable(&m);
            log_timing(parse_ms, t0.elapsed().as_secs_f64() * 1e3);
            let report = json!({
                "subcommand": "check",
                "answer": if stable { "yes" } else { "no" },
                "model": p.sorted_names(&m),
                "rules": p.rule_count(),
                "n": p.atom_count(),
                "m": p.size(),
                "neg": p.negated_atoms().len(),
            });
            emit(cli, &report);
            Ok(answer_code(stable))
        }
        Command::Enumerate { file, cap } => {
            let (p, parse_ms) = load_program(file)?;
            let t0 = Instant::now();
            let models = enumerate_stable_models(&p, *cap)?;
            log_timing(parse_ms, t0.elapsed().as_secs_f64() * 1e3);
            let names: Vec<Vec<String>> = models.iter().map(|m| p.sorted_names(m)).collect();
            let report = json!({ "models": names, "count": names.len() });
            emit(cli, &report);
            Ok(ExitCode::SUCCESS)
        }
        Command::SolveSsm { file, k, mode } => {
            let (p, parse_ms) = load_program(file)?;
            let opts = SsmOptions {
                mode: match mode {
                    ModeArg::Literal => ExistsMode::Literal,
                    ModeArg::Optimized => ExistsMode::Optimized,
                },
                ..SsmOptions::default()
            };
            let t0 = Instant::now();
            let ans = solve_ssm_with(&p, *k, opts)?;
            log_timing(parse_ms, t0.elapsed().as_secs_f64() * 1e3);
            let mut report = json!({
                "subcommand": "solve-ssm",
                "answer": if ans.is_yes() { "yes" } else { "no" },
                "k": k,
                "rules": p.rule_count(),
                "n": p.atom_count(),
                "m": p.size(),
                "bases_examined": ans.bases_examined,
            });
            if let Some(m) = &ans.model {
                report["model"] = json!(p.sorted_names(m));
                report["size"] = json!(m.len());
            }
            emit(cli, &report);
            Ok(answer_code(ans.is_yes()))
        }
        Command::SolveLsm { file, k } => {
            let (p, parse_ms) = load_program(file)?;
            let t0 = Instant::now();
            let ans = solve_lsm(&p, *k)?;
            log_timing(parse_ms, t0.elapsed().as_secs_f64() * 1e3);
            let mut report = json!({
                "subcommand": "solve-lsm",
                "answer": if ans.is_yes() { "yes" } else { "no" },
                "k": k,
                "rules": ans.rules,
                "n": p.atom_count(),
                "m": p.size(),
                "neg": ans.neg_count,
                "subsets_tried": ans.subsets_tried,
            });
            if let Some(m) = &ans.model {
                report["model"] = json!(p.sorted_names(m));
                report["size"] = json!(m.len());
            }
            emit(cli, &report);
            Ok(answer_code(ans.is_yes()))
        }
        Command::Encode { target } => {
            match target {
                EncodeTarget::T { k, file } | EncodeTarget::Tc { k, file } => {
                    let clausal = matches!(target, EncodeTarget::Tc { .. });
                    let (p, parse_ms) = load_program(file)?;
                    let t0 = Instant::now();
                    let f = if clausal {
                        encode_tc(&p, *k)?
                    } else {
                        encode_t(&p, *k)?
                    };
                    log_timing(parse_ms, t0.elapsed().as_secs_f64() * 1e3);
                    let report = json!({
                        "formula": f.to_json_value(),
                        "weight_bound": weight_bound(*k),
                        "atoms": encoding_atom_count(&p, *k),
                    });
                    emit(cli, &report);
                }
                EncodeTarget::Pc { k, file } => {
                    let text = read_input(file)?;
                    let t0 = Instant::now();
                    let cs = parse_dimacs(&text)?;
                    let parse_ms = t0.elapsed().as_secs_f64() * 1e3;
                    let t1 = Instant::now();
                    let p = encode_pc(&cs, *k)?;
                    log_timing(parse_ms, t1.elapsed().as_secs_f64() * 1e3);
                    print!("{p}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench {
            solver,
            k,
            family,
            sizes,
        } => {
            let mut runs = Vec::new();
            for &n in sizes {
                if n == 0 {
                    return Err(Error::Precondition("bench sizes must be at least 1".into()));
                }
                let p = match family {
                    FamilyArg::Chain => families::chain(n),
                    FamilyArg::Negclique => families::negclique(n),
                };
                let t0 = Instant::now();
                let yes = match solver {
                    SolverArg::Lsm => solve_lsm(&p, *k)?.is_yes(),
                    SolverArg::Ssm => solve_ssm_with(&p, *k, SsmOptions::default())?.is_yes(),
                };
                let wall_ms = t0.elapsed().as_secs_f64() * 1e3;
                runs.push(json!({
                    "size": n,
                    "rules": p.rule_count(),
                    "answer": if yes { "yes" } else { "no" },
                    "wall_ms": wall_ms,
                }));
            }
            let report = json!({
                "subcommand": "bench",
                "solver": match solver { SolverArg::Ssm => "ssm", SolverArg::Lsm => "lsm" },
                "family": match family { FamilyArg::Chain => "chain", FamilyArg::Negclique => "negclique" },
                "k": k,
                "runs": runs,
            });
            emit(cli, &report);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn read_input(file: &PathBuf) -> Result<String, Error> {
    fs::read_to_string(file).map_err(|e| Error::Precondition(format!("{}: {e}", file.display())))
}

fn load_program(file: &PathBuf) -> Result<(Program, f64), Error> {
    let text = read_input(file)?;
    let t0 = Instant::now();
    let p = parse_program(&text)?;
    Ok((p, t0.elapsed().as_secs_f64() * 1e3))
}

fn log_timing(parse_ms: f64, solve_ms: f64) {
    eprintln!("timing: parse={parse_ms:.3}ms solve={solve_ms:.3}ms");
}

fn emit(cli: &Cli, report: &Value) {
    if cli.pretty {
        println!("{}", serde_json::to_string_pretty(report).expect("serializable"));
    } else {
        println!("{report}");
    }
}

fn answer_code(yes: bool) -> ExitCode {
    if yes {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
