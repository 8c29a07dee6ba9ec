//! File formats, threaded field evaluation and the `triplelink` command.

pub mod cli;
mod error;
pub mod files;
pub mod grid;
pub mod pipeline;
pub mod registry;

pub use error::{Error, Result};
