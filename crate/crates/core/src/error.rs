use thiserror::Error;

use crate::report::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown object `{0}`")]
    UnknownObject(String),

    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),

    #[error("element `{element}` is not in the set at `{object}`")]
    UnknownElement { object: String, element: String },

    #[error("identifier `{0}` uses the reserved identity prefix `id_`")]
    ReservedId(String),

    #[error("invalid identifier `{0}`")]
    InvalidId(String),

    #[error("invalid category: {0}")]
    InvalidCategory(ValidationReport),

    #[error("invalid functor: {0}")]
    InvalidFunctor(ValidationReport),

    #[error("cycle among distinct elements: {}", .0.join(" -> "))]
    Cycle(Vec<String>),

    #[error("table is not total: missing product {0} * {1}")]
    PartialTable(String, String),

    #[error("`{0}` is not a two-sided unit")]
    NotUnital(String),

    #[error("not associative: ({0} * {1}) * {2} != {0} * ({1} * {2})")]
    NotAssociative(String, String, String),

    #[error("{count} morphisms exceeds the limit of {limit}")]
    TooLarge { count: usize, limit: usize },

    #[error("search space estimate {estimate} exceeds guard {guard}")]
    GuardExceeded { estimate: u128, guard: u128 },

    #[error("materialization too large: {size} elements at `{object}` exceeds cap {cap}")]
    MaterializationTooLarge { object: String, size: usize, cap: usize },

    #[error("functors live over different categories")]
    BaseMismatch,

    #[error("functors have different variance")]
    VarianceMismatch,

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("morphism `{morphism}` does not have the required endpoint `{object}`")]
    WrongEndpoint { morphism: String, object: String },

    #[error("source is not the hom-functor of `{0}`")]
    NotRepresentable(String),

    #[error("relation is not reflexive at `{0}`")]
    NotReflexive(String),

    #[error("relation is not transitive: {0} <= {1} <= {2}")]
    NotTransitive(String, String, String),

    #[error("relation is not antisymmetric: {0} and {1}")]
    NotAntisymmetric(String, String),

    #[error("map is not monotone: {0} <= {1} but images are not ordered")]
    NotMonotone(String, String),

    #[error("map is not total: {0}")]
    NonTotalMap(String),
}
