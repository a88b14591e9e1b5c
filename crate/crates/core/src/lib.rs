//! Boundary-condition identification for LTL goal models.

pub mod buchi;
pub mod error;
pub mod fixtures;
pub mod gen;
pub mod ltl;
pub mod report;
pub mod sat;
pub mod scene;
pub mod semantic;
pub mod syntac;

pub use error::{Error, Result};
pub use ltl::{parse, Atom, Cube, Formula, LassoTrace, ParseError, TraceFormula};
