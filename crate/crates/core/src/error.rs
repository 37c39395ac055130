use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    /// A desk-scale oracle or enumeration refused an oversized input.
    #[error("{what} cap exceeded: {actual} > {limit}")]
    CapExceeded {
        what: &'static str,
        limit: u64,
        actual: u64,
    },

    #[error("unknown atom `{0}`")]
    UnknownAtom(String),

    #[error("atom name `{0}` collides with a generated name")]
    NameCollision(String),

    #[error("clause {0} has no literals")]
    EmptyClause(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("formula is not in alternating normal form: {0}")]
    NotNormalized(String),

    #[error("invalid formula JSON: {0}")]
    FormulaJson(String),

    #[error("DIMACS error at line {line}: {msg}")]
    Dimacs { line: usize, msg: String },
}

/// Program-text parse error with source position (1-based line and column).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("rule with empty head")]
    EmptyHead,
    #[error("atom name `{0}` uses a reserved prefix")]
    ReservedName(String),
}
