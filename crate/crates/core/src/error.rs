use std::fmt;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("recursion operator index {0} is outside 1..=9")]
    InvalidOperatorIndex(u32),

    #[error("not a symmetry characteristic: residual is {residual}")]
    NotASymmetry { residual: String },

    #[error("not a conserved vector: on-shell divergence is {divergence}")]
    NotConserved { divergence: String },

    #[error(
        "vector field has a U-independent η part ({0}); only fields linear in U are supported here"
    )]
    Inhomogeneous(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("malformed relation fixture: {0}")]
    Fixture(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Syntax or typing error with the byte offset where it was detected.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken {
        found: String,
        expected: &'static str,
    },
    UnexpectedEnd {
        expected: &'static str,
    },
    UnknownSymbol(String),
    BadExponent(String),
    InvalidOperator(String),
    Nonlinear,
    Inhomogeneous,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: ", self.pos)?;
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::UnexpectedToken { found, expected } => {
                write!(f, "expected {expected}, found {found:?}")
            }
            ParseErrorKind::UnexpectedEnd { expected } => {
                write!(f, "expected {expected}, found end of input")
            }
            ParseErrorKind::UnknownSymbol(s) => write!(f, "unknown symbol {s:?}"),
            ParseErrorKind::BadExponent(s) => write!(f, "bad exponent {s:?}"),
            ParseErrorKind::InvalidOperator(s) => {
                write!(
                    f,
                    "unknown recursion operator {s:?} (use R1..R9, or I for the identity)"
                )
            }
            ParseErrorKind::Nonlinear => write!(f, "product of two U-terms is not linear in U"),
            ParseErrorKind::Inhomogeneous => {
                write!(f, "sum mixes a U-free polynomial with U-terms")
            }
        }
    }
}
