use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("width mismatch: expected {expected}, found {found}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("invalid monomial: {0}")]
    InvalidMonomial(String),
    #[error("element does not belong to the module: {0}")]
    ParentMismatch(String),
    #[error("zero element where a nonzero one is required")]
    ZeroElement,
    #[error("empty generating set")]
    EmptyInput,
    #[error("input is not a Gröbner basis")]
    NotGroebner,
    #[error("generator {0} is not monic")]
    NotMonic(usize),
    #[error("generator {0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("operation requires a graded resolution")]
    NotGraded,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
