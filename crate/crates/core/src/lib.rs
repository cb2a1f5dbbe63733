//! Two- and three-step nilpotent Lie algebras built from Schreier coset
//! graphs of finite permutation groups, with exact verification of their
//! structure and tools for comparing their metrics.

pub mod gassmann;
pub mod group;
pub mod isometry;
pub mod lie;
pub mod linalg;
pub mod perm;
pub mod schreier;
pub mod spec;
pub mod surd;

pub use group::{FiniteGroup, GeneratorSystem};
pub use isometry::{search_isometry, Fingerprint, SearchConfig, SearchResult, Verdict};
pub use lie::{three_step, two_step, NilpotentLieAlgebra, TAssignment};
pub use perm::Permutation;
pub use schreier::{build_schreier, SchreierGraph};
pub use spec::{parse_spec, ProblemSpec};
