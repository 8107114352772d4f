//! Exact arithmetic: finite fields, finite groups, group-ring matrices and
//! representations.

pub mod field;
pub mod group;
pub mod group_ring;
pub mod matrix;
pub mod repr;

pub use field::{Elem, FiniteField};
pub use group::FiniteGroup;
pub use group_ring::{GroupRingElement, GroupRingMatrix};
pub use matrix::FieldMatrix;
pub use repr::{Representation, ScalarRepresentation};
