//! Oriented spatial trivalent graph diagrams, their text format, validation
//! and local moves.

mod build;
mod iso;
mod model;
mod moves;
mod parse;
mod validate;

pub use build::{braid_closure, splice, theta_curve, trivial_handlebody};
pub use iso::{canonical_relabel, is_isomorphic};
pub use model::{ArcId, Crossing, Diagram, Sign, Slot, Vertex};
pub use moves::{
    applicable_moves, apply_move, random_move_walk, IhKind, MoveKind, MoveSpec, R3Variant, TwistVariant, WalkReport,
};
#[cfg(test)]
pub(crate) use parse::parse_diagram_unchecked;
pub use parse::{parse_diagram, serialize_diagram};
pub use validate::{validate, Violation, ViolationKind};
