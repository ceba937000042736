//! Batch front end for `hly-core`: JSON presentations in, JSON reports out.

pub mod cli;
pub mod commands;
pub mod output;
pub mod presentation;

pub use cli::Cli;
pub use commands::{run, Outcome};
pub use presentation::{Block, ParseError, ParseOptions, Presentation};
