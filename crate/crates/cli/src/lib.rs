//! Library side of the `relpsi` binary: argument definitions, command
//! execution, and the JSON report types.

pub mod cli;
pub mod commands;
pub mod report;
