use thiserror::Error;

/// Errors raised by constructors and operations whose preconditions can fail.
///
/// Failures of a *checked statement* (a lemma instance, a commutator identity,
/// a centrality test) are not errors: they are reported as data in the
/// corresponding report structs.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported root system descriptor {series}{rank}")]
    UnsupportedSeries { series: String, rank: usize },
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("root {0:?} does not belong to the root system")]
    NotARoot(Vec<i32>),
    #[error("invalid projection data: {0}")]
    InvalidProjection(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("factorization failed: {0}")]
    Factorization(String),
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),
    #[error("no faithful classical representation for type {0}")]
    NoClassicalRep(String),
    #[error("budget exceeded: {what} ({limit})")]
    Budget { what: String, limit: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
