//! Library half of the `cup` command: catalog files and the subcommand
//! logic, kept free of process concerns so it can be tested in-process.

pub mod app;
pub mod store;
