//! Error types shared across the crate.

use std::fmt;

use thiserror::Error;

/// Byte range within an input string, end exclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(start: usize, end: usize) -> Self {
        SourceSpan { start, end }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

/// Syntax error with the offending byte range.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("syntax error at {span}: {message}")]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
}

impl ParseError {
    pub fn new(span: SourceSpan, message: impl Into<String>) -> Self {
        ParseError {
            span,
            message: message.into(),
        }
    }
}

/// Error in a multi-line input (formula files, knowledge bases).
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct LineError {
    /// 1-based line number.
    pub line: usize,
    pub message: String,
}

impl LineError {
    pub fn new(line: usize, message: impl fmt::Display) -> Self {
        LineError {
            line,
            message: message.to_string(),
        }
    }
}

/// Evaluation failure.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    /// The formula or term lies outside the fragment the evaluator handles.
    #[error("outside the two-valued fragment: {0}")]
    Fragment(String),
    #[error("variable `{0}` is not bound")]
    UnboundVariable(String),
    /// A two-valued evaluation reached an undefined (U) value.
    #[error("two-valued evaluation reached an undefined value: {0}")]
    NonClassicalModel(String),
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("constant `{0}` is not in the domain")]
    Domain(String),
    #[error("predicate `{pred}` has arity {expected}, applied to {got} arguments")]
    Arity {
        pred: String,
        expected: usize,
        got: usize,
    },
    /// Malformed quantifier binder (empty or duplicated variables).
    #[error("invalid bound-variable list: {0}")]
    InvalidBinder(String),
    /// A closed formula was required.
    #[error("formula must be closed, free variables: {0}")]
    OpenFormula(String),
}

/// Model construction, loading, or transformation failure.
#[derive(Debug, Error)]
pub enum ModelError {
    #[error("model document: {0}")]
    Format(String),
    #[error("constant `{constant}` in tuple for predicate `{pred}` is not in the domain")]
    Domain { pred: String, constant: String },
    #[error("tuple {tuple:?} for predicate `{pred}` has {got} elements, arity is {expected}")]
    Arity {
        pred: String,
        tuple: Vec<String>,
        expected: usize,
        got: usize,
    },
    #[error("restriction by `{0}` leaves the domain empty")]
    EmptyRestriction(String),
    #[error("enumeration would yield {count} models, over the cap of {cap}")]
    Budget { count: String, cap: u64 },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Rule application failure.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum RuleError {
    #[error("premises do not match schema {rule}: {detail}")]
    SchemaMismatch { rule: String, detail: String },
    #[error("side condition of {rule} violated: {detail}")]
    SideCondition { rule: String, detail: String },
}
