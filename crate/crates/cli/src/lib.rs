//! Configuration, model construction and subcommands of the `ilat` tool.

pub mod config;
pub mod error;
pub mod model;
pub mod run;
