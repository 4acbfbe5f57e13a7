//! Finite category computations around the Yoneda correspondence.
//!
//! * [`fincat`]: categories as validated composition tables, plus builders
//!   (discrete, poset, monoid, free on a DAG, opposite).
//! * [`functors`]: set-valued functors of either variance, hom-functors and
//!   the subset functor acting by direct image.
//! * [`nat`]: naturality checks, exhaustive enumeration of natural
//!   transformations, and the Yoneda maps with a bijection certificate.
//! * [`image`]: the image transformation `h^A ⇒ Sub F`, its brute-force
//!   oracle, coarse classes and dependence sets.
//! * [`strata`]: the `≤_L` preorder on hom-sets, poset quotients,
//!   Alexandroff topologies and stratification maps.
//! * [`dot`]: Graphviz export.
//!
//! Composition is written `g ∘ f` (apply `f` first) throughout. All values
//! are immutable once built and can be shared across threads.

pub mod corpus;
pub mod dot;
pub mod error;
pub mod fincat;
pub mod functors;
pub mod image;
pub mod nat;
pub mod report;
pub mod strata;

pub use error::{Error, Result};
pub use fincat::{opposite, CategoryFile, CategoryTable, FiniteCategory, Mor, Ob};
pub use functors::{FunctorFile, SetValuedFunctor, Variance};
pub use nat::{NaturalTransformation, SearchOptions};
pub use report::{Rule, ValidationReport, Violation};
