pub mod budget;
pub mod cache;
pub mod cli;
pub mod dags;
pub mod encodings;
pub mod error;
pub mod ground;
pub mod inequalities;
pub mod linalg;
pub mod polyhedra;
pub mod rational;
pub mod score_equivalence;
pub mod supermodular;
pub mod verify;

pub use error::{Error, Result};
