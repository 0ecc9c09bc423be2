//! Enumeration of primitive extensions of degree `p^n` of a local field.
//!
//! A primitive extension `E/K` of degree `p^n` corresponds to a simple
//! `F_p[G_n]`-submodule `D` of dimension `n` inside the Kummer module
//! `L_n^x / L_n^{xp}` (characteristic 0) or the Artin-Schreier module
//! `L_n / (x^p - x)(L_n)` (characteristic p), where `L_n` is an explicit
//! tamely ramified tower over `K` with group `G_n`. The filtration position
//! of `D` gives the differental exponent of `E`.
//!
//! Pipeline: [`tower`] builds `L_n`, [`class_module`] materializes the class
//! module with its Galois action, [`modrep`] finds the simple submodules and
//! [`enumerator`] turns them into [`enumerator::ExtensionRecord`]s.

pub mod class_module;
pub mod enumerator;
pub mod exec;
pub mod ff;
pub mod linalg;
pub mod local_ring;
pub mod modrep;
pub mod poly;
pub mod tower;
pub mod verify;

pub use class_module::{ClassModule, ClassVector};
pub use enumerator::{enumerate_primitive, list_representations, EnumerateOptions, ExtensionRecord};
pub use exec::Exec;
pub use tower::{BaseFieldSpec, Characteristic, GroupElt, PrecisionPolicy, TameTower};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("iteration cap exceeded: {0}")]
    IterationCap(String),
    #[error("element lies outside the truncated class module: {0}")]
    OutsideModule(String),
    #[error("instance too large: {0}")]
    TooLarge(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
