//! File formats, reports, and command logic behind the `planeform` binary.

pub mod commands;
pub mod report;
pub mod scenario;
pub mod shape;
pub mod trace;
