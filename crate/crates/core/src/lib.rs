//! Exact, finite-dimensional verification of Zhang twists of group-graded
//! algebras, the internal Hom of graded modules, and the reconstruction of a
//! twist from an enriched equivalence of module categories.

pub mod enriched;
pub mod equivalence;
pub mod error;
pub mod exactmath;
pub mod fixtures;
pub mod graded;
pub mod groups;
pub mod io;
pub mod report;
pub mod twist;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/graded.md")]
    pub mod graded {}
    #[doc = include_str!("../../../book/src/twists.md")]
    pub mod twists {}
    #[doc = include_str!("../../../book/src/internal-hom.md")]
    pub mod internal_hom {}
    #[doc = include_str!("../../../book/src/equivalences.md")]
    pub mod equivalences {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
