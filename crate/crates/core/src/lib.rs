//! Exact quantum representations of surface mapping class groups at roots of
//! unity, and a Nielsen–Thurston classifier built on them.

pub mod charvar;
pub mod classify;
pub mod cyclo;
pub mod homology;
pub mod matrix;
pub mod recoupling;
pub mod scalar;
pub mod tl;
pub mod tqft;

pub use charvar::{Quat, SU2Point};
pub use classify::{classify, Classifier, SearchConfig, Verdict, VerdictKind};
pub use cyclo::{CycloError, CycloNum, Level};
pub use scalar::{RootCtx, Scalar};

/// Representation over the cyclotomic field.
pub type ExactRep = tqft::LevelRep<CycloNum>;
/// Representation at the embedding A = e^{iπ/2r}.
pub type FloatRep = tqft::LevelRep<num_complex::Complex64>;
