pub mod algebra;
pub mod cli;
pub mod cone;
pub mod duality;
pub mod error;
pub mod graded;
pub mod linalg;
pub mod module;
pub mod pipeline;

pub use error::{Error, Result};
