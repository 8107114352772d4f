//! Finite quandles and G-families of quandles.

mod family;
mod table;

pub use family::{
    alexander_family, alexander_family_scalar, companion_matrix, cyclic_alexander_family, family_op,
    zk_family_from_quandle, zk_family_with_order, AlexanderFamily, GFamily, TableFamily,
};
pub use table::{quandle_type, Quandle};
