use std::fmt;

use serde::Serialize;

use crate::ltl::{Atom, Formula, LassoTrace, TraceFormula};

/// Outcome of checking the three clauses of the boundary-condition
/// definition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BcVerdict {
    pub is_bc: bool,
    /// `Dom & G & f` is unsatisfiable.
    pub logical_inconsistency: bool,
    /// Entry `i`: `Dom & G_-i & f` is satisfiable.
    pub minimality: Vec<bool>,
    /// `f` is not equivalent to `!G`.
    pub non_triviality: bool,
}

impl BcVerdict {
    pub fn new(
        logical_inconsistency: bool,
        minimality: Vec<bool>,
        non_triviality: bool,
    ) -> BcVerdict {
        BcVerdict {
            is_bc: logical_inconsistency && minimality.iter().all(|&m| m) && non_triviality,
            logical_inconsistency,
            minimality,
            non_triviality,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BcKind {
    Syntactic,
    TraceFormula,
    Word,
}

impl fmt::Display for BcKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BcKind::Syntactic => "syntactic",
            BcKind::TraceFormula => "trace_formula",
            BcKind::Word => "word",
        })
    }
}

/// A boundary condition found by one of the algorithms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryCondition {
    pub kind: BcKind,
    /// Absent for word results.
    pub formula: Option<Formula>,
    /// The lasso form of a trace-formula result.
    pub trace: Option<TraceFormula>,
    pub word: Option<LassoTrace>,
    /// Names of the goals the condition was computed for.
    pub scope: Vec<String>,
    pub conflict_atom: Option<Atom>,
    pub verdict: Option<BcVerdict>,
}

impl BoundaryCondition {
    pub fn syntactic(formula: Formula, scope: Vec<String>) -> BoundaryCondition {
        BoundaryCondition {
            kind: BcKind::Syntactic,
            formula: Some(formula),
            trace: None,
            word: None,
            scope,
            conflict_atom: None,
            verdict: None,
        }
    }

    pub fn trace_formula(
        trace: TraceFormula,
        scope: Vec<String>,
        conflict_atom: Option<Atom>,
    ) -> BoundaryCondition {
        BoundaryCondition {
            kind: BcKind::TraceFormula,
            formula: Some(trace.to_ltl()),
            trace: Some(trace),
            word: None,
            scope,
            conflict_atom,
            verdict: None,
        }
    }

    pub fn word(
        word: LassoTrace,
        scope: Vec<String>,
        conflict_atom: Option<Atom>,
    ) -> BoundaryCondition {
        BoundaryCondition {
            kind: BcKind::Word,
            formula: None,
            trace: None,
            word: Some(word),
            scope,
            conflict_atom,
            verdict: None,
        }
    }

    /// The formula as printed in reports: trace formulas in their lasso
    /// layout, other formulas canonically.
    pub fn formula_text(&self) -> Option<String> {
        match (&self.trace, &self.formula) {
            (Some(t), _) => Some(t.to_string()),
            (None, Some(f)) => Some(f.to_string()),
            _ => None,
        }
    }
}

impl fmt::Display for BoundaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.formula_text(), &self.word) {
            (Some(text), _) => f.write_str(&text)?,
            (None, Some(w)) => write!(f, "{w}")?,
            (None, None) => f.write_str("?")?,
        }
        write!(f, " [{}; {}", self.kind, self.scope.join(", "))?;
        if let Some(a) = &self.conflict_atom {
            write!(f, "; conflict {a}")?;
        }
        f.write_str("]")
    }
}
