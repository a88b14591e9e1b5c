//! Requirement scenes, the boundary-condition checker and the reductions
//! built on it.

mod bc;
mod check;
mod model;

pub use bc::{BcKind, BcVerdict, BoundaryCondition};
pub use check::Checker;
pub use model::{NamedFormula, Scene};
