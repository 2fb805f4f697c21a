//! Exact computation of the Erdős-Burgess constant `I(S)` of a finite product
//! of cyclic semigroups `S = C(k_1;n_1) × … × C(k_r;n_r)`, the Davenport
//! constant of its group part, and the structure of long idempotent-sum free
//! sequences over a single cyclic semigroup.
//!
//! Every constant is available from closed-form rules and from an
//! independent exhaustive search, so the two can be checked against each
//! other.

pub mod arith;
pub mod cache;
pub mod constants;
pub mod error;
pub mod search;
pub mod semigroup;
pub mod sequences;
pub mod structure;

pub use error::{Error, Result};
pub use search::{Budget, SearchStats};
pub use semigroup::{parse_spec, CyclicSpec, Element, GroupSpec, ProductSpec};
pub use sequences::{GroupSeq, Seq};
