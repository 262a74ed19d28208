//! Colored simplex paths, cube walks, expansions and the reduction of
//! admissible paths to zero paths.

pub mod census;
pub mod cube;
pub mod expansion;
pub mod format;
pub mod moves;
pub mod path;
pub mod reducer;
pub mod symmetry;
pub mod tuple;

pub use census::{census, enumerate_atomic};
pub use cube::{CubeVertex, CubeViolation};
pub use expansion::{EdgeExpansion, Expansion, ExpansionError, LabelArray, VertexExpansion};
pub use moves::{MoveKind, MoveOutcome};
pub use path::{HeightStats, PathError, Simplex, SimplexPath};
pub use reducer::{reduce, replay, ReduceConfig, Trace, TraceStep, VerificationReport};
pub use symmetry::{canonicalize, permute, reflect, ColorPermutation};
