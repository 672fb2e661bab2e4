pub mod basin;
pub mod classes;
pub mod cli;
pub mod counting;
pub mod duplication;
pub mod error;
pub mod exponent;
pub mod graph;
pub mod lab;
pub mod separations;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
