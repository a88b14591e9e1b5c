//! LTL syntax, parsing, printing and normal forms.

mod cube;
mod formula;
mod parser;
mod trace;

pub use cube::Cube;
pub use formula::{Atom, Formula};
pub use parser::{parse, ParseError};
pub use trace::{in_trace_fragment, LassoTrace, TraceFormula};
