//! Labelled cube complexes over the Salvetti complex, their construction by
//! folding and square completion, and queries against finished cores.

mod build;
mod check;
mod complex;
mod trace;

pub use build::{build_core, build_core_with, BuildOptions};
pub use check::{check_local_isometry, LinkReport, Violation};
pub use complex::{BuildStats, CoreFile, CoreStatus, Corner, Dir, Edge, EdgeRecord, LabeledCubeComplex, Square, SubgroupCore};
pub use trace::{enumerate_elements, enumerate_loops, membership, trace_closes, Tracer};
