//! DIMACS CNF reader producing a [`ClauseSet`] with atoms named
//! `x1..xr`.

use crate::encode::ClauseSet;
use crate::error::Error;

/// Parses DIMACS CNF text: `c` comment lines, a `p cnf <vars> <clauses>`
/// header, then 0-terminated clauses. The header's clause count is not
/// enforced.
pub fn parse_dimacs(text: &str) -> Result<ClauseSet, Error> {
    let mut num_vars: Option<usize> = None;
    let mut clauses: Vec<Vec<(u32, bool)>> = Vec::new();
    let mut current: Vec<(u32, bool)> = Vec::new();
    let mut open_clause_line = 0;

    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            if num_vars.is_some() {
                return Err(Error::Dimacs {
                    line: lineno,
                    msg: "duplicate header".into(),
                });
            }
            let mut it = line.split_whitespace();
            let (_, fmt) = (it.next(), it.next());
            if fmt != Some("cnf") {
                return Err(Error::Dimacs {
                    line: lineno,
                    msg: "header must be `p cnf <vars> <clauses>`".into(),
                });
            }
            let vars: usize = it
                .next()
                .and_then(|v| v.parse().ok())
                .ok_or(Error::Dimacs {
                    line: lineno,
                    msg: "bad variable count".into(),
                })?;
            num_vars = Some(vars);
            continue;
        }
        let vars = num_vars.ok_or(Error::Dimacs {
            line: lineno,
            msg: "clause before `p cnf` header".into(),
        })?;
        for tok in line.split_whitespace() {
            let v: i64 = tok.parse().map_err(|_| Error::Dimacs {
                line: lineno,
                msg: format!("bad literal `{tok}`"),
            })?;
            if v == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                let var = v.unsigned_abs();
                if var as usize > vars {
                    return Err(Error::Dimacs {
                        line: lineno,
                        msg: format!("literal {v} outside 1..={vars}"),
                    });
                }
                if current.is_empty() {
                    open_clause_line = lineno;
                }
                current.push(((var - 1) as u32, v < 0));
            }
        }
    }
    if !current.is_empty() {
        return Err(Error::Dimacs {
            line: open_clause_line,
            msg: "unterminated clause".into(),
        });
    }
    let names = (1..=num_vars.unwrap_or(0)).map(|j| format!("x{j}")).collect();
    ClauseSet::new(names, clauses)
}
