//! Text front-end for ground programs.
//!
//! Grammar (UTF-8, whitespace-insensitive, `%` comments to end of line):
//!
//! ```text
//! program := rule*
//! rule    := atom ( ":-" lit ("," lit)* )? "."
//! lit     := "not"? atom
//! atom    := [A-Za-z_][A-Za-z0-9_]*
//! ```
//!
//! `not` is a keyword and cannot name an atom. Names starting with `c__`,
//! `cm__`, `d__` or `__f` are reserved for the encoders and rejected.

use std::sync::Arc;

use crate::error::{ParseError, ParseErrorKind};
use crate::program::{AtomId, AtomTable, Program, Rule};

pub(crate) const RESERVED_PREFIXES: [&str; 4] = ["c__", "cm__", "d__", "__f"];

#[derive(Debug, PartialEq)]
enum Token {
    Ident(String),
    Not,
    ColonDash,
    Comma,
    Dot,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn error(&self, line: usize, col: usize, msg: impl Into<String>) -> ParseError {
        ParseError {
            line,
            col,
            kind: ParseErrorKind::Syntax(msg.into()),
        }
    }

    /// Next token with its start position, or `None` at end of input.
    fn next_token(&mut self) -> Result<Option<(Token, usize, usize)>, ParseError> {
        loop {
            match self.chars.peek() {
                None => return Ok(None),
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('%') => {
                    while let Some(c) = self.bump() {
                        if c == '\n' {
                            break;
                        }
                    }
                }
                _ => break,
            }
        }
        let (line, col) = (self.line, self.col);
        let c = self.bump().expect("peeked");
        let tok = match c {
            '.' => Token::Dot,
            ',' => Token::Comma,
            ':' => {
                if self.chars.peek() == Some(&'-') {
                    self.bump();
                    Token::ColonDash
                } else {
                    return Err(self.error(line, col, "expected `:-`"));
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                name.push(c);
                while let Some(&n) = self.chars.peek() {
                    if n.is_ascii_alphanumeric() || n == '_' {
                        name.push(n);
                        self.bump();
                    } else {
                        break;
                    }
                }
                if name == "not" {
                    Token::Not
                } else {
                    Token::Ident(name)
                }
            }
            other => return Err(self.error(line, col, format!("unexpected character `{other}`"))),
        };
        Ok(Some((tok, line, col)))
    }
}

/// Parses program text into a [`Program`]: atoms interned in
/// first-occurrence order, duplicate body atoms and duplicate rules
/// removed, rule order preserved.
pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    let mut lx = Lexer::new(text);
    let mut atoms = AtomTable::default();
    let mut rules: Vec<Rule> = Vec::new();
    let mut seen: std::collections::HashSet<Rule> = std::collections::HashSet::new();

    let intern =
        |atoms: &mut AtomTable, name: String, line: usize, col: usize| -> Result<AtomId, ParseError> {
            if RESERVED_PREFIXES.iter().any(|p| name.starts_with(p)) {
                return Err(ParseError {
                    line,
                    col,
                    kind: ParseErrorKind::ReservedName(name),
                });
            }
            Ok(atoms.intern(&name))
        };

    loop {
        let (tok, line, col) = match lx.next_token()? {
            None => break,
            Some(t) => t,
        };
        let head = match tok {
            Token::Ident(name) => intern(&mut atoms, name, line, col)?,
            Token::ColonDash => {
                return Err(ParseError {
                    line,
                    col,
                    kind: ParseErrorKind::EmptyHead,
                })
            }
            other => {
                return Err(lx.error(line, col, format!("expected rule head, found {other:?}")))
            }
        };

        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let (tok, line, col) = lx
            .next_token()?
            .ok_or_else(|| lx.error(lx.line, lx.col, "expected `.` or `:-`, found end of input"))?;
        match tok {
            Token::Dot => {}
            Token::ColonDash => loop {
                let (tok, line, col) = lx.next_token()?.ok_or_else(|| {
                    lx.error(lx.line, lx.col, "expected body literal, found end of input")
                })?;
                let (negated, name, line, col) = match tok {
                    Token::Not => {
                        let (tok, l2, c2) = lx.next_token()?.ok_or_else(|| {
                            lx.error(lx.line, lx.col, "expected atom after `not`")
                        })?;
                        match tok {
                            Token::Ident(name) => (true, name, l2, c2),
                            other => {
                                return Err(lx.error(
                                    l2,
                                    c2,
                                    format!("expected atom after `not`, found {other:?}"),
                                ))
                            }
                        }
                    }
                    Token::Ident(name) => (false, name, line, col),
                    other => {
                        return Err(
                            lx.error(line, col, format!("expected body literal, found {other:?}"))
                        )
                    }
                };
                let id = intern(&mut atoms, name, line, col)?;
                if negated {
                    neg.push(id);
                } else {
                    pos.push(id);
                }
                let (tok, line, col) = lx
                    .next_token()?
                    .ok_or_else(|| lx.error(lx.line, lx.col, "expected `,` or `.`"))?;
                match tok {
                    Token::Comma => continue,
                    Token::Dot => break,
                    other => {
                        return Err(lx.error(line, col, format!("expected `,` or `.`, found {other:?}")))
                    }
                }
            },
            other => {
                return Err(lx.error(line, col, format!("expected `.` or `:-`, found {other:?}")))
            }
        }

        let rule = Rule::new(head, pos, neg);
        if seen.insert(rule.clone()) {
            rules.push(rule);
        }
    }

    Ok(Program::from_parts(Arc::new(atoms), rules))
}
