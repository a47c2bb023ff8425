//! Support library for the `wclust` command-line tool: metric tables,
//! comparison statistics, experiment drivers, and deterministic CSV /
//! JSON emission. Kept as a library so integration tests can drive the
//! pipelines directly.

pub mod experiments;
pub mod export;
pub mod metrics;
pub mod report;
pub mod threshold;
