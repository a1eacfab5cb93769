//! Library half of the `canram` binary: coloring ingestion, report
//! assembly/rendering, the command implementations, and the selftest
//! suites. Kept as a library so integration tests can drive commands
//! in-process and compare with the spawned binary.

pub mod commands;
pub mod input;
pub mod report;
pub mod selftest;
