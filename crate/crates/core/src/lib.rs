pub mod bounds;
pub mod certifier;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod exactfield;
pub mod families;
pub mod io;
pub mod search;
pub mod suite;

pub use error::{Error, Result};
