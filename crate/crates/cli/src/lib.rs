//! Command-line front end: argument parsing, dispatch, report documents and
//! the acceptance suites.

pub mod args;
pub mod error;
pub mod report;
pub mod run;
pub mod solution_json;
pub mod suite;
