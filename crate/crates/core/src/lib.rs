pub mod error;
pub mod numerics;

pub use error::{Error, Result};
pub mod assemblies;
pub mod cli;
pub mod multivar;
pub mod poleseries;
pub mod verify;
pub mod weights;
