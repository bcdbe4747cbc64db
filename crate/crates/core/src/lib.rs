pub mod algebra;
pub mod character;
pub mod cli;
pub mod error;
pub mod expint;
pub mod gauss;
pub mod laurent;
pub mod sieve;

pub use error::{Error, Result};
