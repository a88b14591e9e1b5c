use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// Atomic proposition name.
pub type Atom = Arc<str>;

/// LTL abstract syntax.
///
/// `Implies`, `Globally` and `Finally` are kept as written so that printed
/// formulas stay close to their source; [`Formula::desugar`] rewrites them
/// into the core connectives.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Next(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    Release(Box<Formula>, Box<Formula>),
    Globally(Box<Formula>),
    Finally(Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(Arc::from(name))
    }

    pub fn literal(name: &Atom, positive: bool) -> Formula {
        let a = Formula::Atom(name.clone());
        if positive {
            a
        } else {
            Formula::not(a)
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn next(f: Formula) -> Formula {
        Formula::Next(Box::new(f))
    }

    pub fn until(a: Formula, b: Formula) -> Formula {
        Formula::Until(Box::new(a), Box::new(b))
    }

    pub fn release(a: Formula, b: Formula) -> Formula {
        Formula::Release(Box::new(a), Box::new(b))
    }

    pub fn globally(f: Formula) -> Formula {
        Formula::Globally(Box::new(f))
    }

    pub fn finally(f: Formula) -> Formula {
        Formula::Finally(Box::new(f))
    }

    /// Left-nested conjunction; the empty conjunction is `true`.
    pub fn conj<I: IntoIterator<Item = Formula>>(parts: I) -> Formula {
        parts
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::True)
    }

    /// Left-nested disjunction; the empty disjunction is `false`.
    pub fn disj<I: IntoIterator<Item = Formula>>(parts: I) -> Formula {
        parts
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::False)
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::True | Formula::False | Formula::Atom(_))
    }

    pub fn is_literal(&self) -> bool {
        match self {
            Formula::Atom(_) => true,
            Formula::Not(inner) => matches!(**inner, Formula::Atom(_)),
            _ => false,
        }
    }

    /// Atoms occurring in the formula, sorted.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::Not(f) | Formula::Next(f) | Formula::Globally(f) | Formula::Finally(f) => {
                f.collect_atoms(out)
            }
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Until(a, b)
            | Formula::Release(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Rewrites `->`, `G` and `F` into `|`, `R` and `U`.
    pub fn desugar(&self) -> Formula {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => self.clone(),
            Formula::Not(f) => Formula::not(f.desugar()),
            Formula::Next(f) => Formula::next(f.desugar()),
            Formula::And(a, b) => Formula::and(a.desugar(), b.desugar()),
            Formula::Or(a, b) => Formula::or(a.desugar(), b.desugar()),
            Formula::Until(a, b) => Formula::until(a.desugar(), b.desugar()),
            Formula::Release(a, b) => Formula::release(a.desugar(), b.desugar()),
            Formula::Implies(a, b) => Formula::or(Formula::not(a.desugar()), b.desugar()),
            Formula::Globally(f) => Formula::release(Formula::False, f.desugar()),
            Formula::Finally(f) => Formula::until(Formula::True, f.desugar()),
        }
    }

    /// Inverse of [`Formula::desugar`] on the shapes it produces.
    pub fn resugar(&self) -> Formula {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => self.clone(),
            Formula::Not(f) => Formula::not(f.resugar()),
            Formula::Next(f) => Formula::next(f.resugar()),
            Formula::And(a, b) => Formula::and(a.resugar(), b.resugar()),
            Formula::Or(a, b) => match &**a {
                Formula::Not(inner) => Formula::implies(inner.resugar(), b.resugar()),
                _ => Formula::or(a.resugar(), b.resugar()),
            },
            Formula::Until(a, b) if **a == Formula::True => Formula::finally(b.resugar()),
            Formula::Release(a, b) if **a == Formula::False => Formula::globally(b.resugar()),
            Formula::Until(a, b) => Formula::until(a.resugar(), b.resugar()),
            Formula::Release(a, b) => Formula::release(a.resugar(), b.resugar()),
            Formula::Implies(a, b) => Formula::implies(a.resugar(), b.resugar()),
            Formula::Globally(f) => Formula::globally(f.resugar()),
            Formula::Finally(f) => Formula::finally(f.resugar()),
        }
    }

    /// Number of AST nodes after desugaring.
    pub fn size(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => 1,
            Formula::Not(f) | Formula::Next(f) => 1 + f.size(),
            // G a = false R a, F a = true U a
            Formula::Globally(f) | Formula::Finally(f) => 2 + f.size(),
            // a -> b = !a | b
            Formula::Implies(a, b) => 2 + a.size() + b.size(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Until(a, b)
            | Formula::Release(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Negation normal form over `true false a !a & | X U R`.
    pub fn nnf(&self) -> Formula {
        self.nnf_polarity(true)
    }

    fn nnf_polarity(&self, positive: bool) -> Formula {
        use Formula::*;
        match (self, positive) {
            (True, true) | (False, false) => True,
            (True, false) | (False, true) => False,
            (Atom(_), true) => self.clone(),
            (Atom(_), false) => Formula::not(self.clone()),
            (Not(f), p) => f.nnf_polarity(!p),
            (And(a, b), true) => Formula::and(a.nnf_polarity(true), b.nnf_polarity(true)),
            (And(a, b), false) => Formula::or(a.nnf_polarity(false), b.nnf_polarity(false)),
            (Or(a, b), true) => Formula::or(a.nnf_polarity(true), b.nnf_polarity(true)),
            (Or(a, b), false) => Formula::and(a.nnf_polarity(false), b.nnf_polarity(false)),
            (Implies(a, b), true) => Formula::or(a.nnf_polarity(false), b.nnf_polarity(true)),
            (Implies(a, b), false) => Formula::and(a.nnf_polarity(true), b.nnf_polarity(false)),
            (Next(f), p) => Formula::next(f.nnf_polarity(p)),
            (Until(a, b), true) => Formula::until(a.nnf_polarity(true), b.nnf_polarity(true)),
            (Until(a, b), false) => Formula::release(a.nnf_polarity(false), b.nnf_polarity(false)),
            (Release(a, b), true) => Formula::release(a.nnf_polarity(true), b.nnf_polarity(true)),
            (Release(a, b), false) => Formula::until(a.nnf_polarity(false), b.nnf_polarity(false)),
            (Globally(f), true) => Formula::release(False, f.nnf_polarity(true)),
            (Globally(f), false) => Formula::until(True, f.nnf_polarity(false)),
            (Finally(f), true) => Formula::until(True, f.nnf_polarity(true)),
            (Finally(f), false) => Formula::release(False, f.nnf_polarity(false)),
        }
    }

    /// Pushes negations down to the atoms but keeps `G` and `F` as written.
    /// Implications become disjunctions.
    pub fn push_negations(&self) -> Formula {
        self.push_polarity(true)
    }

    fn push_polarity(&self, positive: bool) -> Formula {
        use Formula::*;
        match (self, positive) {
            (True, true) | (False, false) => True,
            (True, false) | (False, true) => False,
            (Atom(_), true) => self.clone(),
            (Atom(_), false) => Formula::not(self.clone()),
            (Not(f), p) => f.push_polarity(!p),
            (And(a, b), true) => Formula::and(a.push_polarity(true), b.push_polarity(true)),
            (And(a, b), false) => Formula::or(a.push_polarity(false), b.push_polarity(false)),
            (Or(a, b), true) => Formula::or(a.push_polarity(true), b.push_polarity(true)),
            (Or(a, b), false) => Formula::and(a.push_polarity(false), b.push_polarity(false)),
            (Implies(a, b), true) => Formula::or(a.push_polarity(false), b.push_polarity(true)),
            (Implies(a, b), false) => Formula::and(a.push_polarity(true), b.push_polarity(false)),
            (Next(f), p) => Formula::next(f.push_polarity(p)),
            (Until(a, b), true) => Formula::until(a.push_polarity(true), b.push_polarity(true)),
            (Until(a, b), false) => {
                Formula::release(a.push_polarity(false), b.push_polarity(false))
            }
            (Release(a, b), true) => Formula::release(a.push_polarity(true), b.push_polarity(true)),
            (Release(a, b), false) => {
                Formula::until(a.push_polarity(false), b.push_polarity(false))
            }
            (Globally(f), true) => Formula::globally(f.push_polarity(true)),
            (Globally(f), false) => Formula::finally(f.push_polarity(false)),
            (Finally(f), true) => Formula::finally(f.push_polarity(true)),
            (Finally(f), false) => Formula::globally(f.push_polarity(false)),
        }
    }

    /// True when negations occur only directly above atoms and no sugar remains.
    pub fn is_nnf(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => true,
            Formula::Not(f) => matches!(**f, Formula::Atom(_)),
            Formula::Next(f) => f.is_nnf(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Until(a, b)
            | Formula::Release(a, b) => a.is_nnf() && b.is_nnf(),
            Formula::Implies(..) | Formula::Globally(_) | Formula::Finally(_) => false,
        }
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, op: &Formula, bare: bool) -> fmt::Result {
    if bare {
        write!(f, "{op}")
    } else {
        write!(f, "({op})")
    }
}

/// Canonical concrete syntax. Binary operands other than atoms and negated
/// atoms are parenthesized, so the output re-parses to the same tree
/// regardless of precedence.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Atom(a) => f.write_str(a),
            Formula::Not(inner) => {
                f.write_str("!")?;
                write_operand(f, inner, inner.is_atomic() || is_unary(inner))
            }
            Formula::Next(inner) => unary(f, "X", inner),
            Formula::Globally(inner) => unary(f, "G", inner),
            Formula::Finally(inner) => unary(f, "F", inner),
            Formula::And(a, b) => binary(f, a, "&", b),
            Formula::Or(a, b) => binary(f, a, "|", b),
            Formula::Implies(a, b) => binary(f, a, "->", b),
            Formula::Until(a, b) => binary(f, a, "U", b),
            Formula::Release(a, b) => binary(f, a, "R", b),
        }
    }
}

fn is_unary(f: &Formula) -> bool {
    matches!(
        f,
        Formula::Not(_) | Formula::Next(_) | Formula::Globally(_) | Formula::Finally(_)
    )
}

fn unary(f: &mut fmt::Formatter<'_>, op: &str, inner: &Formula) -> fmt::Result {
    write!(f, "{op} ")?;
    write_operand(f, inner, inner.is_atomic() || is_unary(inner))
}

fn binary(f: &mut fmt::Formatter<'_>, a: &Formula, op: &str, b: &Formula) -> fmt::Result {
    write_operand(f, a, a.is_atomic() || a.is_literal())?;
    write!(f, " {op} ")?;
    write_operand(f, b, b.is_atomic() || b.is_literal())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: &str) -> Formula {
        Formula::atom(n)
    }

    #[test]
    fn prints_canonical_forms() {
        let g = Formula::globally(Formula::implies(a("h"), Formula::next(a("p"))));
        assert_eq!(g.to_string(), "G (h -> (X p))");
        let f = Formula::and(a("a"), Formula::or(a("b"), a("c")));
        assert_eq!(f.to_string(), "a & (b | c)");
        assert_eq!(Formula::True.to_string(), "true");
        assert_eq!(Formula::not(Formula::not(a("x"))).to_string(), "!!x");
    }

    #[test]
    fn nnf_dualities() {
        let until = Formula::not(Formula::until(a("a"), a("b")));
        assert_eq!(
            until.nnf(),
            Formula::release(Formula::not(a("a")), Formula::not(a("b")))
        );
        assert_eq!(
            Formula::not(Formula::next(a("a"))).nnf(),
            Formula::next(Formula::not(a("a")))
        );
        assert_eq!(Formula::not(Formula::not(a("a"))).nnf(), a("a"));
        assert!(Formula::not(Formula::globally(a("a"))).nnf().is_nnf());
    }

    #[test]
    fn sizes_count_desugared_nodes() {
        assert_eq!(a("a").size(), 1);
        assert_eq!(Formula::and(a("a"), a("b")).size(), 3);
        assert_eq!(Formula::globally(a("a")).size(), 3);
        assert_eq!(Formula::globally(a("a")).desugar().size(), 3);
        let imp = Formula::implies(a("a"), a("b"));
        assert_eq!(imp.size(), imp.desugar().size());
    }

    #[test]
    fn push_negations_keeps_temporal_sugar() {
        let g1 = Formula::globally(Formula::implies(a("call"), Formula::finally(a("open"))));
        let pushed = Formula::not(g1).push_negations();
        assert_eq!(
            pushed,
            Formula::finally(Formula::and(
                a("call"),
                Formula::globally(Formula::not(a("open")))
            ))
        );
    }

    #[test]
    fn resugar_inverts_desugar() {
        let f = Formula::and(
            Formula::globally(Formula::implies(a("h"), Formula::next(a("p")))),
            Formula::finally(a("m")),
        );
        assert_eq!(f.desugar().resugar(), f);
    }
}
