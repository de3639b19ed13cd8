pub mod error;
pub mod fock;
pub mod gaussian;
pub mod matkit;
pub mod measures;
pub mod states;
pub mod tolerances;

pub use error::{Error, Result};
