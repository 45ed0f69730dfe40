//! Specification-file parsing, subcommands and the output document behind the `twogroup` binary.

pub mod commands;
pub mod error;
pub mod output;
pub mod spec_file;
