pub mod algebra;
pub mod bounds;
pub mod catalog;
pub mod coloring;
pub mod descriptors;
pub mod diagram;
pub mod error;
pub mod flows;
pub mod quandle;
mod search;

pub use error::{Error, Result};
