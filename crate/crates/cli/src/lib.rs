//! Spec parsing, analysis pipeline and reports for the `kleppner` binary.

pub mod build;
pub mod catalog;
pub mod report;
pub mod run;
pub mod spec;
