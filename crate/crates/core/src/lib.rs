//! Isoperimetric profiles, growth functions and the U-transform for
//! finitely generated groups.

pub mod cayley;
pub mod error;
pub mod groups;
pub mod isoperimetry;
pub mod subsets;
pub mod transform;

pub use cayley::{growth_table, Ball, FiniteCayley, GrowthTable, InverseGrowth};
pub use error::{Error, Result};
pub use groups::{Element, Group, GroupSpec};
pub use subsets::FiniteSubset;
