//! Diagrammatic certificates for persistently foliar knots.
//!
//! The pipeline reads a knot as a PD code, a braid word or a weighted planar
//! tree, collapses its twist regions to a four-valent plane graph, builds
//! the two weighted side graphs on the checkerboard faces and checks the
//! weight and connectivity hypotheses. An independent route through the
//! Tait graphs cross-checks every verdict. The `surgery` module holds the
//! exact slope arithmetic used by the augmentation planner and the
//! Borromean classifier.

pub mod arborescent;
pub mod batch;
pub mod braid;
pub mod build;
pub mod catalog;
pub mod criterion;
pub mod diagram;
pub mod dot;
pub mod generate;
pub mod jones;
pub mod map;
pub mod side;
pub mod surgery;
pub mod tait;
pub mod twist;

pub use criterion::{check_main, Reason, Status, Verdict};
pub use diagram::{parse_pd, Crossing, DiagramError, Face, LinkDiagram};
