use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime modulus")]
    NotPrime(u32),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable '{name}' at offset {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("input is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("Groebner step budget of {budget} reduction steps exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("boundary generators are not contained in the cycle module")]
    ContainmentFailure,
    #[error("zero module has no depth")]
    ZeroModule,
    #[error("the unit ideal has no grade")]
    UnitIdeal,
    #[error("oracle slice of {rows}x{cols} exceeds the memory budget")]
    SliceTooLarge { rows: usize, cols: usize },
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("ideal file error at line {line}: {message}")]
    IdealFile { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// True when the error comes from malformed or unsupported input rather
    /// than from the computation.
    pub fn is_input(&self) -> bool {
        matches!(
            self,
            Error::NotPrime(_)
                | Error::InvalidRing(_)
                | Error::Syntax { .. }
                | Error::UnknownVariable { .. }
                | Error::NotHomogeneous(_)
                | Error::UnitIdeal
                | Error::IdealFile { .. }
        )
    }
}
