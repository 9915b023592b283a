//! Executable hardness reductions with certificate transformers.
//!
//! [`dds`] maps clique node deletion to defensive domination; [`appendix`]
//! maps two-level 3-CNF to clique node deletion.

pub mod appendix;
pub mod cnd;
pub mod dds;
pub mod formula;

pub use cnd::CndInstance;
pub use dds::{cnd_to_dds, DdsInstance, EllMode};
pub use formula::{parse_formula, random_formula, E2Formula, E2Outcome};
