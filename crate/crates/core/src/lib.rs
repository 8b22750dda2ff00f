//! Exact structure-constant engine for weak Hopf quasigroups and weak Hopf
//! coquasigroups over a symmetric base: identity checking, idempotent
//! splittings, Galois/fusion morphisms and antipode synthesis.

pub mod error;
pub mod dsl;
pub mod exact;
pub mod matrix;
pub mod moncat;
pub mod projections;
pub mod splitting;
pub mod galois;
pub mod report;
pub mod structure;
pub mod synthesis;

pub use error::{Error, Result};
pub use exact::{Field, Scalar};
pub use matrix::Matrix;
pub use moncat::{chain, mor_equal, tensor_all, Mor, Splitting};
pub use report::Check;
pub use structure::{dualize, perturb, validate_premises, Mode, WeakStructure};
pub use synthesis::{classify, dual_synthesis, synthesize_antipode, verify_axioms, Status, Verdict};
