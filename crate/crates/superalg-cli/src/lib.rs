//! Library surface of the command-line front end, exposed so integration
//! tests can drive commands directly and compare golden reports.

pub mod commands;
pub mod report;
pub mod scenario;
