use alloc::string::String;

/// Errors raised by the group, character and linear-algebra layers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("degree {degree} exceeds the limit {max} for {operation}")]
    DegreeTooLarge {
        degree: u32,
        max: u32,
        operation: &'static str,
    },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: u32, right: u32 },
    #[error("subset {subset} is not contained in {{1,…,{degree}}}")]
    SubsetOutOfRange { subset: String, degree: u32 },
    #[error("invalid subgroup degree {m} for CL({n}); the subgroup must be CL(n) or CL(n-1)")]
    InvalidSubgroup { n: u32, m: u32 },
    #[error("element {element} does not lie in the subgroup CL({m})")]
    NotInSubgroup { element: String, m: u32 },
    #[error("irrep {label} does not exist for CL({degree}): {reason}")]
    InvalidIrrep {
        label: String,
        degree: u32,
        reason: &'static str,
    },
    #[error("not a character: multiplicity of {irrep} is {value}")]
    NotACharacter { irrep: String, value: String },
    #[error("character sum {value} is not a non-negative integer")]
    NonIntegralMultiplicity { value: String },
    #[error("cannot parse {input:?}: expected {expected}")]
    Parse {
        input: String,
        expected: &'static str,
    },
    #[error("identity check failed: {0}")]
    Check(String),
    #[error("vector is not invariant under the diagonal subgroup")]
    NotInvariant,
    #[error("no phase reproduces the character of {label}")]
    PhaseUnresolved { label: String },
    #[error("{value} has no square root in Q(i, √2)")]
    NoSquareRoot { value: String },
    #[error("dimension mismatch: {0}")]
    Shape(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
