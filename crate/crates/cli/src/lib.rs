//! Library side of the `hodgekit` command-line tool: the problem-file
//! format, the subcommands and output rendering.

pub mod app;
pub mod commands;
pub mod problem;
pub mod render;
