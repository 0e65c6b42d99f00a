//! Canal and tubular hypersurfaces generated by non-null curves in
//! Lorentz-Minkowski 4-space.
//!
//! The crate builds the hypersurfaces, computes their fundamental forms,
//! shape operator and curvatures by closed forms and by a finite-difference
//! oracle, and checks structural relations between the curvatures.

pub mod analysis;
pub mod canal;
pub mod curvature;
pub mod curve;
pub mod expr;
pub mod io;
pub mod minkowski;
pub mod radius;
mod tables;

pub use canal::{CanalConfig, CanalError, CanalSurface, SurfacePatch, Variant};
pub use curvature::{CurvatureError, CurvatureReport, Route};
pub use curve::{CurveError, CurveSpec, DerivativeMode, FrenetFrame};
pub use expr::{Expr, ExprError};
pub use io::{JobConfig, JobError};
pub use analysis::{AnalysisError, TheoremReport};
pub use minkowski::{CausalCharacter, Vec4};
pub use radius::{RadiusError, RadiusProfile};
