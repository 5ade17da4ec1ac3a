use thiserror::Error;

/// Errors raised by the engine.
///
/// Index fields are 1-based, matching the textual and JSON formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableMismatch { left: usize, right: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("axis {axis} out of range for {nvars} variables")]
    AxisOutOfRange { axis: usize, nvars: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("polynomial division is not exact")]
    InexactDivision,

    #[error("matrix is singular")]
    Singular,

    #[error("determinant {det} is not a nonzero constant")]
    NotUnimodular { det: String },

    #[error("structure constants are not antisymmetric at ({i},{j},{k})")]
    NotAntisymmetric { i: usize, j: usize, k: usize },

    #[error("Jacobi identity fails for ({i},{j},{k}) in component {l}")]
    JacobiFails { i: usize, j: usize, k: usize, l: usize },

    #[error("bracket entry ({i},{j}) is invalid: {reason}")]
    InvalidBracket { i: usize, j: usize, reason: String },

    #[error("algebra is not nilpotent: lower central series stabilizes at dimension {stable_dim}")]
    NotNilpotent { stable_dim: usize },

    #[error("algebra is not solvable: derived series stabilizes at dimension {stable_dim}")]
    NotSolvable { stable_dim: usize },

    #[error("basis violates the flag condition: c({i},{j};{k}) is nonzero with {k} <= max({i},{j})")]
    FlagConditionFails { i: usize, j: usize, k: usize },

    #[error("invalid split: {0}")]
    SplitInvalid(String),

    #[error("ad action is not nilpotent within {steps} steps")]
    NotNilpotentAction { steps: usize },

    #[error("compatibility equations fail at (p,q,k) = ({p},{q},{k})")]
    CompatibilityFails { p: usize, q: usize, k: usize },

    #[error("column {column} is not a closed form: no polynomial potential exists")]
    NotClosed { column: usize },

    #[error("first nonzero column did not advance past {column}")]
    NoProgress { column: usize },

    #[error("Jacobian determinant {det} is not a nonzero constant")]
    NonConstantJacobian { det: String },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
