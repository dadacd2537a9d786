//! Command-line front end for `holofrft-core`: signal/field files, the
//! `holofrft` subcommands and the verification suite.

pub mod commands;
pub mod config;
pub mod io;
pub mod verify;

pub use commands::{exit_code_for, run, ExitStatus};
pub use config::Cli;
