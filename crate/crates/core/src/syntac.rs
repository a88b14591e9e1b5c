//! Boundary conditions by special-case substitution in `!G`.
//!
//! For each goal `g_i`, a special case `sc` of `!g_i` (a formula that
//! strictly implies it) is built from a fixed set of templates. When
//! `sc & Dom & G_-i` is satisfiable, the disjunction of `!g_j` for `j != i`
//! with `sc` in place of `!g_i` is a boundary condition.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::ltl::{Atom, Formula};
use crate::scene::{BoundaryCondition, Checker, Scene};

/// Atom used by the templates that strengthen with a fresh proposition: the
/// alphabetically first atom of `Dom` and `G_-i` that does not occur in
/// `g_i`.
pub fn fresh_atom(s: &Scene, i: usize) -> Option<Atom> {
    let own = s.goals().get(i)?.formula.atoms();
    let mut others: BTreeSet<Atom> = s.domain().iter().flat_map(|d| d.formula.atoms()).collect();
    for (j, g) in s.goals().iter().enumerate() {
        if j != i {
            others.extend(g.formula.atoms());
        }
    }
    others.into_iter().find(|a| !own.contains(a))
}

/// Template candidates for a special case of `f`, in preference order.
/// `f` is the negated goal with negations pushed to the atoms, sugared or
/// not. Candidates are not checked here.
pub fn template_candidates(f: &Formula, fresh: Option<&Atom>) -> Vec<Formula> {
    let with_fresh = |g: Formula| match fresh {
        Some(p) => vec![Formula::and(g, Formula::Atom(p.clone()))],
        None => Vec::new(),
    };
    match f {
        Formula::True => fresh
            .map(|p| vec![Formula::Atom(p.clone())])
            .unwrap_or_default(),
        Formula::Atom(_) | Formula::Not(_) if f.is_literal() => with_fresh(f.clone()),
        Formula::And(..) => with_fresh(f.clone()),
        Formula::Or(a, b) => vec![(**a).clone(), (**b).clone()],
        Formula::Globally(_) => with_fresh(f.clone()),
        Formula::Release(a, _) if **a == Formula::False => with_fresh(f.clone()),
        Formula::Finally(b) => vec![(**b).clone(), Formula::next((**b).clone())],
        Formula::Until(a, b) if **a == Formula::True => {
            vec![(**b).clone(), Formula::next((**b).clone())]
        }
        Formula::Until(a, b) => vec![
            (**b).clone(),
            Formula::and((**a).clone(), Formula::next((**b).clone())),
        ],
        Formula::Release(a, b) => vec![
            Formula::and((**b).clone(), Formula::next((**a).clone())),
            (**a).clone(),
        ],
        _ => Vec::new(),
    }
}

/// The special cases of `!g_i` the templates yield, each verified to
/// strictly imply `!g_i`, in preference order.
pub fn special_cases(checker: &Checker, i: usize) -> Result<Vec<Formula>> {
    let s = checker.scene();
    let negated = Formula::not(s.goal(i)?.formula.clone());
    let f = negated.push_negations();
    let fresh = fresh_atom(s, i);
    let mut out = Vec::new();
    for sc in template_candidates(&f, fresh.as_ref()) {
        let solver = checker.solver();
        if solver.implies(&sc, &negated)? && !solver.implies(&negated, &sc)? {
            out.push(sc);
        }
    }
    Ok(out)
}

/// The first verified special case of `!g_i`, if any.
pub fn special_case_by_template(checker: &Checker, i: usize) -> Result<Option<Formula>> {
    Ok(special_cases(checker, i)?.into_iter().next())
}

/// `!g_1 | ... | sc | ... | !g_n` with `sc` at position `i`.
pub fn syntactic_substitution(s: &Scene, i: usize, sc: Formula) -> Result<Formula> {
    s.goal(i)?;
    let mut sc = Some(sc);
    Ok(Formula::disj(s.goals().iter().enumerate().map(|(j, g)| {
        if j == i {
            sc.take().expect("used once")
        } else {
            Formula::not(g.formula.clone())
        }
    })))
}

#[derive(Clone, Copy, Debug)]
pub struct SyntacOptions {
    /// Apply contrasty reduction to the result.
    pub reduce: bool,
    /// Re-check every result against the definition and drop failures.
    pub validate: bool,
}

impl Default for SyntacOptions {
    fn default() -> SyntacOptions {
        SyntacOptions {
            reduce: true,
            validate: true,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SyntacOutcome {
    pub bcs: Vec<BoundaryCondition>,
    /// Names of goals implied by the rest of the scene; when nonempty the
    /// scene has no boundary condition and `bcs` is empty.
    pub extra_goals: Vec<String>,
}

pub fn syntacbc(checker: &Checker, opts: SyntacOptions) -> Result<SyntacOutcome> {
    let s = checker.scene();
    let extra = checker.extra_goals()?;
    if !extra.is_empty() {
        return Ok(SyntacOutcome {
            bcs: Vec::new(),
            extra_goals: extra.iter().map(|&i| s.goals()[i].name.clone()).collect(),
        });
    }
    let scope = s.goal_names();
    let mut bcs = Vec::new();
    for i in 0..s.goals().len() {
        // The primary template, then its alternative if the primary fails
        // the satisfiability guard.
        for sc in special_cases(checker, i)?.into_iter().take(2) {
            if !checker.sat_without_goal(i, &sc)?.is_sat() {
                continue;
            }
            let mut bc =
                BoundaryCondition::syntactic(syntactic_substitution(s, i, sc)?, scope.clone());
            if opts.validate {
                let verdict = checker.validate(bc.formula.as_ref().expect("syntactic"))?;
                if !verdict.is_bc {
                    break;
                }
                bc.verdict = Some(verdict);
            }
            bcs.push(bc);
            break;
        }
    }
    if opts.reduce {
        bcs = checker.contrasty_reduce(bcs)?;
    }
    Ok(SyntacOutcome {
        bcs,
        extra_goals: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::parse;
    use crate::sat::Solver;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn template_shapes() {
        let q = Atom::from("q");
        assert_eq!(template_candidates(&p("a | b"), None), vec![p("a"), p("b")]);
        assert_eq!(template_candidates(&Formula::True, Some(&q)), vec![p("q")]);
        assert_eq!(template_candidates(&p("!a"), Some(&q)), vec![p("!a & q")]);
        assert_eq!(template_candidates(&p("G a"), None), Vec::<Formula>::new());
        assert_eq!(
            template_candidates(&p("a U b"), None),
            vec![p("b"), p("a & X b")]
        );
        assert_eq!(
            template_candidates(&p("F !(m -> X !p)"), None)[0],
            p("!(m -> X !p)")
        );
        assert_eq!(template_candidates(&p("true U c").nnf(), None)[0], p("c"));
    }

    #[test]
    fn mpc_substitution() {
        let s = Scene::parse(
            "[scene]\nname = \"mpc\"\natoms = [h, m, p]\n[goals]\ng1 = \"G (h -> X p)\"\ng2 = \"G (m -> X !p)\"\n",
        )
        .unwrap();
        let f = syntactic_substitution(&s, 1, p("!(m -> X !p)")).unwrap();
        assert_eq!(f, p("!G (h -> X p) | !(m -> X !p)"));
        let solver = Solver::default();
        let c = Checker::new(&s, &solver);
        assert!(solver
            .equiv(
                &special_case_by_template(&c, 0).unwrap().unwrap(),
                &p("!(h -> X p)")
            )
            .unwrap());
    }

    #[test]
    fn single_goal_substitution_is_the_special_case() {
        let s = Scene::parse("[scene]\nname = \"x\"\natoms = [a]\n[goals]\ng = \"G a\"\n").unwrap();
        assert_eq!(syntactic_substitution(&s, 0, p("!a")).unwrap(), p("!a"));
        assert_eq!(fresh_atom(&s, 0), None);
    }
}
