//! LTL satisfiability, implication and equivalence, plus an independent
//! brute-force oracle.

mod eval;

use std::sync::atomic::{AtomicU64, Ordering};

pub use eval::{lasso_eval, lasso_eval_general};

use eval::Masks;

use crate::buchi::{intersection, translate, witness, BuchiAutomaton, Limits};
use crate::error::{Error, Result};
use crate::ltl::{Atom, Cube, Formula, LassoTrace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatResult {
    Unsat,
    Sat(LassoTrace),
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatResult::Sat(_))
    }

    pub fn witness(&self) -> Option<&LassoTrace> {
        match self {
            SatResult::Sat(w) => Some(w),
            SatResult::Unsat => None,
        }
    }
}

/// Automaton-based decision procedure. Counts the emptiness checks it runs.
#[derive(Debug, Default)]
pub struct Solver {
    limits: Limits,
    calls: AtomicU64,
}

impl Solver {
    pub fn new(limits: Limits) -> Solver {
        Solver {
            limits,
            calls: AtomicU64::new(0),
        }
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// Number of satisfiability checks run so far.
    pub fn sat_calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn translate(&self, f: &Formula) -> Result<BuchiAutomaton> {
        translate(f, &self.limits)
    }

    pub fn is_sat(&self, f: &Formula) -> Result<SatResult> {
        self.calls.fetch_add(1, Ordering::Relaxed);
        let a = translate(f, &self.limits)?;
        checked(witness(&a), f)
    }

    /// Satisfiability of `f` together with the formula `base` was
    /// translated from.
    pub fn is_sat_with(
        &self,
        base: &BuchiAutomaton,
        base_formula: &Formula,
        f: &Formula,
    ) -> Result<SatResult> {
        self.calls.fetch_add(1, Ordering::Relaxed);
        let a = translate(f, &self.limits)?;
        let p = intersection(base, &a, &self.limits)?;
        checked(witness(&p), &Formula::and(base_formula.clone(), f.clone()))
    }

    pub fn implies(&self, f: &Formula, g: &Formula) -> Result<bool> {
        let r = self.is_sat(&Formula::and(f.clone(), Formula::not(g.clone())))?;
        Ok(!r.is_sat())
    }

    pub fn equiv(&self, f: &Formula, g: &Formula) -> Result<bool> {
        Ok(self.implies(f, g)? && self.implies(g, f)?)
    }
}

fn checked(w: Option<LassoTrace>, f: &Formula) -> Result<SatResult> {
    match w {
        None => Ok(SatResult::Unsat),
        Some(w) if lasso_eval(&w, f) => Ok(SatResult::Sat(compact(w, f))),
        Some(w) => Err(Error::Internal(format!("witness {w} does not satisfy {f}"))),
    }
}

/// Moves stem letters into the cycle while the word still satisfies `f`:
/// `u s (v c)^w` becomes `u ((s & c) v)^w`.
fn compact(mut w: LassoTrace, f: &Formula) -> LassoTrace {
    while let Some(s) = w.stem.last() {
        let Some(merged) = s.conjoin(w.cycle.last().expect("nonempty cycle")) else {
            break;
        };
        let mut cycle = vec![merged];
        cycle.extend_from_slice(&w.cycle[..w.cycle.len() - 1]);
        let shorter = LassoTrace::new(w.stem[..w.stem.len() - 1].to_vec(), cycle);
        if !lasso_eval(&shorter, f) {
            break;
        }
        w = shorter;
    }
    w
}

pub fn is_sat(f: &Formula) -> Result<SatResult> {
    Solver::default().is_sat(f)
}

pub fn implies(f: &Formula, g: &Formula) -> Result<bool> {
    Solver::default().implies(f, g)
}

pub fn equiv(f: &Formula, g: &Formula) -> Result<bool> {
    Solver::default().equiv(f, g)
}

/// Every complete assignment to `atoms`, in binary counting order with the
/// first atom as the most significant bit.
pub fn letters(atoms: &[Atom]) -> Vec<Cube> {
    let k = atoms.len();
    (0..1usize << k)
        .map(|bits| {
            let mut c = Cube::top();
            for (i, a) in atoms.iter().enumerate() {
                let positive = bits >> (k - 1 - i) & 1 == 1;
                c.insert(a.clone(), positive).expect("fresh atoms");
            }
            c
        })
        .collect()
}

/// Calls `visit` on every lasso over `letters` with `|stem| + |loop| <= bound`,
/// shortest first, then by stem length, then lexicographically, until it
/// returns `true`.
pub fn enumerate_lassos(
    letters: &[Cube],
    bound: usize,
    mut visit: impl FnMut(&LassoTrace) -> bool,
) -> Option<LassoTrace> {
    let base = letters.len();
    if base == 0 {
        return None;
    }
    for len in 1..=bound {
        let mut digits = vec![0usize; len];
        loop {
            let cubes: Vec<Cube> = digits.iter().map(|&d| letters[d].clone()).collect();
            for stem in 0..len {
                let w = LassoTrace::new(cubes[..stem].to_vec(), cubes[stem..].to_vec());
                if visit(&w) {
                    return Some(w);
                }
            }
            if !increment(&mut digits, base) {
                break;
            }
        }
    }
    None
}

/// Searches every lasso with at most `bound` positions over complete
/// assignments to the atoms of `f` and returns the first model found, in the
/// order of [`enumerate_lassos`]. `None` does not mean `f` is unsatisfiable.
pub fn bounded_sat_search(f: &Formula, bound: usize) -> Option<LassoTrace> {
    let atoms: Vec<Atom> = f.atoms().into_iter().collect();
    let k = atoms.len();
    let all = letters(&atoms);
    let base = all.len();
    for len in 1..=bound.min(64) {
        let mut digits = vec![0usize; len];
        loop {
            let masks = atoms
                .iter()
                .enumerate()
                .map(|(j, a)| {
                    let m = digits
                        .iter()
                        .enumerate()
                        .filter(|&(_, &d)| d >> (k - 1 - j) & 1 == 1)
                        .fold(0u64, |m, (i, _)| m | 1 << i);
                    (a.clone(), m)
                })
                .collect();
            let mut eval = Masks::new(len, 0, masks);
            for stem in 0..len {
                eval.set_loop_start(stem);
                if eval.eval(f) & 1 == 1 {
                    let cubes: Vec<Cube> = digits.iter().map(|&d| all[d].clone()).collect();
                    return Some(LassoTrace::new(
                        cubes[..stem].to_vec(),
                        cubes[stem..].to_vec(),
                    ));
                }
            }
            if !increment(&mut digits, base) {
                break;
            }
        }
    }
    None
}

/// Advances `digits` as a base-`base` counter; `false` after wrapping.
fn increment(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::parse;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn sat_examples() {
        assert!(!is_sat(&p("G a & F !a")).unwrap().is_sat());
        assert!(is_sat(&p("G (h -> X p) & G (m -> X !p)")).unwrap().is_sat());
        assert!(!is_sat(&p("(h & m) & G (h -> X p) & G (m -> X !p)"))
            .unwrap()
            .is_sat());
    }

    #[test]
    fn implication_examples() {
        assert!(implies(&p("a"), &p("a | b")).unwrap());
        assert!(!implies(&p("a | b"), &p("a")).unwrap());
        assert!(implies(&p("h & m"), &p("!(G (h -> X p) & G (m -> X !p))")).unwrap());
        assert!(equiv(&p("G a"), &p("!F !a")).unwrap());
        assert!(!equiv(&p("a"), &p("a & b")).unwrap());
    }

    #[test]
    fn counts_calls() {
        let s = Solver::default();
        s.equiv(&p("a"), &p("a")).unwrap();
        assert_eq!(s.sat_calls(), 2);
    }

    #[test]
    fn bounded_search_examples() {
        let w = bounded_sat_search(&p("a"), 1).unwrap();
        assert!(w.stem.is_empty());
        assert_eq!(w.cycle, vec![Cube::parse_literals(["a"]).unwrap()]);
        assert!(bounded_sat_search(&p("G a & F !a"), 4).is_none());
        let f = p("F (h & m) & !(h & m)");
        assert!(lasso_eval(&bounded_sat_search(&f, 2).unwrap(), &f));
        assert!(bounded_sat_search(&f, 1).is_none());
    }

    #[test]
    fn enumeration_counts() {
        let ls = letters(&[Atom::from("a")]);
        let mut n = 0;
        enumerate_lassos(&ls, 3, |_| {
            n += 1;
            false
        });
        // sum over len of len * 2^len
        assert_eq!(n, 2 + 2 * 4 + 3 * 8);
    }
}
