pub mod algebra;
pub mod error;
pub mod graph;
pub mod iso;
pub mod json;
pub mod provers;
pub mod tseitin;

pub use error::{Error, Result};
