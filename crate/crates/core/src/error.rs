use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),

    #[error("unknown group type `{0}`")]
    UnknownType(String),

    #[error("generator {letter} out of range for rank {rank}")]
    GeneratorOutOfRange { letter: usize, rank: usize },

    #[error("group enumeration exceeded size cap of {cap} elements")]
    SizeCapExceeded { cap: usize },

    #[error("braid closure exceeded node budget of {budget}")]
    BraidBudgetExceeded { budget: usize },

    #[error("face budget of {budget} exceeded")]
    FaceBudgetExceeded { budget: usize },

    #[error("word {0} is not reduced")]
    NotReduced(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("subword complex is void: no subword of {word} is a reduced word for {element}")]
    VoidComplex { word: String, element: String },

    #[error("posets have different ground sets")]
    GroundMismatch,

    #[error("element {0} is not in the ground set")]
    NotInGround(String),

    #[error("relation is not a partial order: {0}")]
    NotPartialOrder(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
