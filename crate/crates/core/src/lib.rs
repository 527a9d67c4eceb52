pub mod error;
pub mod field;
pub mod circuit;
pub mod dirichlet;
pub mod finset;
pub mod linalg;
pub mod lti;
pub mod symplectic;

pub use error::{Error, Result};
