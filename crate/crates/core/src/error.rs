use core::fmt;

use crate::syntax::Dialect;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Malformed pattern text; `pos` is a character offset.
    Syntax {
        pos: usize,
        msg: &'static str,
    },
    /// A symbol in a pattern or subject is not part of the declared alphabet.
    UnknownSymbol {
        symbol: char,
        pos: usize,
    },
    /// Backreferences combined with intersection or complement.
    MixedDialect,
    /// The engine does not accept patterns of this dialect.
    Dialect {
        engine: &'static str,
        found: Dialect,
    },
    DuplicateCapture(u32),
    DanglingBackref(u32),
    /// Structural invariant of the AST violated (e.g. a one-element list).
    Malformed(&'static str),
    InvalidAlphabet(&'static str),
    LengthMismatch {
        left: usize,
        right: usize,
    },
    EmptyInstance,
    InvalidInstance(&'static str),
    Range {
        what: &'static str,
        value: usize,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Syntax { pos, msg } => write!(f, "syntax error at {pos}: {msg}"),
            Error::UnknownSymbol { symbol, pos } => {
                write!(f, "symbol {symbol:?} at {pos} is not in the alphabet")
            }
            Error::MixedDialect => f.write_str("captures and backreferences cannot be mixed with '&' or '~'"),
            Error::Dialect { engine, found } => {
                write!(f, "{engine} engine does not support {found} patterns")
            }
            Error::DuplicateCapture(i) => write!(f, "capture index {i} used more than once"),
            Error::DanglingBackref(i) => write!(f, "backreference \\{i} has no capture group"),
            Error::Malformed(msg) => write!(f, "malformed pattern: {msg}"),
            Error::InvalidAlphabet(msg) => write!(f, "invalid alphabet: {msg}"),
            Error::LengthMismatch { left, right } => {
                write!(f, "relations over different lengths ({left} vs {right})")
            }
            Error::EmptyInstance => f.write_str("instance has no vectors"),
            Error::InvalidInstance(msg) => write!(f, "invalid instance: {msg}"),
            Error::Range { what, value } => write!(f, "{what} out of range: {value}"),
        }
    }
}

impl core::error::Error for Error {}
