use thiserror::Error;

/// Errors raised by category and topos constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToposError {
    #[error("cannot compose {left} after {right}: target of the right map is {right_target}, source of the left map is {left_source}")]
    Composition {
        left: String,
        right: String,
        left_source: String,
        right_target: String,
    },

    #[error("maps are not parallel: {0}")]
    NotParallel(String),

    #[error("maps do not share a codomain: {0}")]
    MismatchedTargets(String),

    #[error("morphism is not monic: {0}")]
    NotMonic(String),

    #[error("no map into the classifier makes a pullback square for {0}")]
    ClassifierViolation(String),

    #[error("capability unavailable: {0}")]
    Capability(String),

    #[error("resource limit exceeded: {what} (limit {limit})")]
    Resource { what: String, limit: usize },

    #[error("cone does not factor: {0}")]
    NoFactorization(String),

    #[error("invalid object: {0}")]
    InvalidObject(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("symbol `{symbol}` expects {expected} arguments, got {found}")]
    Arity {
        symbol: String,
        expected: usize,
        found: usize,
    },

    #[error("inconsistent data: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = ToposError> = std::result::Result<T, E>;
