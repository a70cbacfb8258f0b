//! File formats and subcommands of the `invdef` driver.

pub mod commands;
pub mod fingerprint;
pub mod files;
