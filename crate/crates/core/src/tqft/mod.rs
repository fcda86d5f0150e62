//! Quantum representations of the genus 1 and genus 2 mapping class groups
//! in the skein model.

mod basis;
mod relations;
mod rep;
mod words;

pub use basis::{verlinde_dim, SpineBasis};
pub use relations::{proportional, relation_suite, RelationCheck, UNITARY_TOL};
pub use rep::LevelRep;
pub use words::{BaseCurve, CurveSpec, Genus, Letter, MCWord, WordError};
