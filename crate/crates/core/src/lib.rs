//! Dual graphs of nodal curves, admissible covers, the gluing constructions
//! bounding the gonality of a nodal curve by that of its normalization or
//! components, Hurwitz boundary strata, and a brute-force oracle for small
//! instances.

pub mod canon;
pub mod constructions;
pub mod cover;
pub mod curve;
pub mod dot;
pub mod error;
pub mod fixtures;
pub mod oracle;
pub mod samples;
pub mod strata;

pub use cover::{AdmissibleCover, Mode, TargetPoint, TargetTree, ValidationReport};
pub use curve::{CurveGraph, LegPolicy, NodeClass};
pub use error::{Error, Result};
