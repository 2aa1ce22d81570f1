use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("the zero polynomial has no well-defined root count")]
    ZeroPolynomial,

    #[error("polynomial of degree {degree} exceeds the factorization bound {max}")]
    DegreeTooLarge { degree: usize, max: usize },

    #[error("torus check {check} failed: {detail}")]
    InvalidTorus { check: &'static str, detail: String },

    #[error("group closure exceeded {max_order} elements (infinite or too large)")]
    GroupTooLarge { max_order: usize },

    #[error("operation is undefined on the identity element")]
    IdentityElement,

    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),

    #[error("polarization is not invariant under the group; average it first with invariant_polarization")]
    NonInvariantPolarization,

    #[error("polarization form is singular")]
    SingularPolarization,

    #[error("not positive definite: {0}")]
    NotPositiveDefinite(String),

    #[error("{0} is a perfect square")]
    SquareDiscriminant(i64),

    #[error("generator is not hyperbolic on the factor: {0}")]
    NotHyperbolic(String),

    #[error("class is not ample: {0}")]
    NotAmple(String),

    #[error("no admissible dual point among {candidates} candidates")]
    EtaExhausted { candidates: usize },

    #[error("element is not in the span of the basis: {0}")]
    NotInSpan(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}
