//! Ordered Bratteli diagrams, their adic dynamics, and the distribution of
//! return times to shrinking cylinder sets.

pub mod diagram;
pub mod dynamics;
pub mod error;
pub mod generators;
pub mod limitlaw;
pub mod matrix;
pub mod spectral;

pub use diagram::{Cuts, EdgeRef, LevelSpec, OrderedBratteliDiagram, PathPrefix, ValidationReport};
pub use error::{Error, Result};
pub use matrix::Matrix;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/diagrams.md")]
    mod diagrams {}
    #[doc = include_str!("../../../book/src/dynamics.md")]
    mod dynamics {}
    #[doc = include_str!("../../../book/src/measures.md")]
    mod measures {}
    #[doc = include_str!("../../../book/src/entrance-laws.md")]
    mod entrance_laws {}
    #[doc = include_str!("../../../book/src/joint-laws.md")]
    mod joint_laws {}
    #[doc = include_str!("../../../book/src/generators.md")]
    mod generators {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/discrepancies.md")]
    mod discrepancies {}
}
