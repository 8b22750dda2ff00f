use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    MixedFields,
    #[error("invalid field specification: {0}")]
    InvalidField(String),
    #[error("cannot parse scalar literal {0:?}")]
    ScalarParse(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("swap position {pos} out of range for {total} tensor factors")]
    PositionOutOfRange { total: usize, pos: usize },
    #[error("morphism is not idempotent")]
    NotIdempotent,
    #[error("matrix is singular: rank {rank} of {size} (deficiency {})", size - rank)]
    Singular { rank: usize, size: usize },
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("not a groupoid: {0}")]
    NotAGroupoid(String),
    #[error("not an inverse-property loop: {0}")]
    NotIPLoop(String),
    #[error("structure carries no antipode")]
    MissingAntipode,
    #[error("base monoid axiom failed: {0}")]
    MonoidAxiomFailure(String),
    #[error("module law failed: {0}")]
    ModuleLawFailure(String),
    #[error("premises fail: {}", .0.join(", "))]
    PremiseFailure(Vec<String>),
    #[error("the two dual routes disagree: {0}")]
    CrossCheckMismatch(String),
    #[error("syntax error at offset {offset}: expected {expected}")]
    Syntax { offset: usize, expected: String },
    #[error("unknown atom {name:?} at offset {offset}")]
    UnknownAtom { offset: usize, name: String },
    #[error("malformed structure file: {0}")]
    Format(String),
}
