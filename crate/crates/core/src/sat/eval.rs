//! Exact evaluation of LTL on ultimately periodic words.
//!
//! A lasso with `n` distinct positions is a finite graph in which every
//! position has one successor. Each subformula is evaluated at every
//! position; `U` and `F` take the least fixpoint of their unfolding and `R`
//! and `G` the greatest, which gives the exact truth value.

use crate::ltl::{Atom, Formula, LassoTrace};

/// Truth value of `f` at position 0 of `w`. Atoms absent from a cube are
/// false.
pub fn lasso_eval(w: &LassoTrace, f: &Formula) -> bool {
    if w.len() <= 64 {
        let mut atoms: Vec<(Atom, u64)> = Vec::new();
        for a in f.atoms() {
            let mut m = 0;
            for i in 0..w.len() {
                if w.at(i).get(&a) == Some(true) {
                    m |= 1 << i;
                }
            }
            atoms.push((a, m));
        }
        Masks::new(w.len(), w.stem.len(), atoms).eval(f) & 1 == 1
    } else {
        eval_general(w, f)[0]
    }
}

/// Positions of a lasso packed into a `u64`, bit `i` for position `i`.
pub(crate) struct Masks {
    full: u64,
    last: u32,
    loop_start: u32,
    atoms: Vec<(Atom, u64)>,
}

impl Masks {
    /// A lasso of `len <= 64` positions whose loop starts at `loop_start`,
    /// with the positions where each atom holds.
    pub(crate) fn new(len: usize, loop_start: usize, atoms: Vec<(Atom, u64)>) -> Masks {
        debug_assert!((1..=64).contains(&len) && loop_start < len);
        let full = if len == 64 {
            u64::MAX
        } else {
            (1u64 << len) - 1
        };
        Masks {
            full,
            last: len as u32 - 1,
            loop_start: loop_start as u32,
            atoms,
        }
    }

    pub(crate) fn set_loop_start(&mut self, loop_start: usize) {
        self.loop_start = loop_start as u32;
    }

    /// Bit `i` of the result is bit `succ(i)` of `v`.
    fn next(&self, v: u64) -> u64 {
        let wrap = (v >> self.loop_start) & 1;
        (v >> 1) | (wrap << self.last)
    }

    pub(crate) fn eval(&self, f: &Formula) -> u64 {
        match f {
            Formula::True => self.full,
            Formula::False => 0,
            Formula::Atom(a) => self
                .atoms
                .iter()
                .find(|(b, _)| b == a)
                .map_or(0, |&(_, m)| m),
            Formula::Not(g) => !self.eval(g) & self.full,
            Formula::And(a, b) => self.eval(a) & self.eval(b),
            Formula::Or(a, b) => self.eval(a) | self.eval(b),
            Formula::Implies(a, b) => (!self.eval(a) & self.full) | self.eval(b),
            Formula::Next(g) => self.next(self.eval(g)),
            Formula::Until(a, b) => self.lfp(self.eval(a), self.eval(b)),
            Formula::Finally(g) => self.lfp(self.full, self.eval(g)),
            Formula::Release(a, b) => self.gfp(self.eval(a), self.eval(b)),
            Formula::Globally(g) => self.gfp(0, self.eval(g)),
        }
    }

    /// Least `u` with `u = b | (a & next(u))`.
    fn lfp(&self, a: u64, b: u64) -> u64 {
        let mut u = 0;
        loop {
            let v = b | (a & self.next(u));
            if v == u {
                return u;
            }
            u = v;
        }
    }

    /// Greatest `r` with `r = b & (a | next(r))`.
    fn gfp(&self, a: u64, b: u64) -> u64 {
        let mut r = self.full;
        loop {
            let v = b & (a | self.next(r));
            if v == r {
                return r;
            }
            r = v;
        }
    }
}

fn eval_general(w: &LassoTrace, f: &Formula) -> Vec<bool> {
    let n = w.len();
    let next = |v: &[bool]| (0..n).map(|i| v[w.succ(i)]).collect::<Vec<_>>();
    let fix = |a: &[bool], b: &[bool], least: bool| {
        let mut cur = vec![!least; n];
        loop {
            let nx = next(&cur);
            let v: Vec<bool> = (0..n)
                .map(|i| {
                    if least {
                        b[i] || (a[i] && nx[i])
                    } else {
                        b[i] && (a[i] || nx[i])
                    }
                })
                .collect();
            if v == cur {
                return cur;
            }
            cur = v;
        }
    };
    match f {
        Formula::True => vec![true; n],
        Formula::False => vec![false; n],
        Formula::Atom(a) => (0..n).map(|i| w.at(i).get(a) == Some(true)).collect(),
        Formula::Not(g) => eval_general(w, g).into_iter().map(|x| !x).collect(),
        Formula::And(a, b) => zip(eval_general(w, a), eval_general(w, b), |x, y| x && y),
        Formula::Or(a, b) => zip(eval_general(w, a), eval_general(w, b), |x, y| x || y),
        Formula::Implies(a, b) => zip(eval_general(w, a), eval_general(w, b), |x, y| !x || y),
        Formula::Next(g) => next(&eval_general(w, g)),
        Formula::Until(a, b) => fix(&eval_general(w, a), &eval_general(w, b), true),
        Formula::Finally(g) => fix(&vec![true; n], &eval_general(w, g), true),
        Formula::Release(a, b) => fix(&eval_general(w, a), &eval_general(w, b), false),
        Formula::Globally(g) => fix(&vec![false; n], &eval_general(w, g), false),
    }
}

fn zip(a: Vec<bool>, b: Vec<bool>, op: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.into_iter().zip(b).map(|(x, y)| op(x, y)).collect()
}

/// Exact evaluation that ignores the 64-position fast path.
#[doc(hidden)]
pub fn lasso_eval_general(w: &LassoTrace, f: &Formula) -> bool {
    eval_general(w, f)[0]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::{parse, Cube};

    fn cube(lits: &[&str]) -> Cube {
        Cube::parse_literals(lits).unwrap()
    }

    fn check(w: &LassoTrace, f: &str, expected: bool) {
        let f = parse(f).unwrap();
        assert_eq!(lasso_eval(w, &f), expected, "{f} on {w}");
        assert_eq!(lasso_eval_general(w, &f), expected, "{f} on {w}");
    }

    #[test]
    fn mpc_circumstance() {
        let w = LassoTrace::new(vec![cube(&["h", "m"])], vec![Cube::top()]);
        check(&w, "h & m", true);
        check(&w, "G (h -> X p) & G (m -> X !p)", false);
        check(&w, "X G (!h & !m)", true);
    }

    #[test]
    fn alternating_loop() {
        let w = LassoTrace::new(vec![], vec![cube(&["a"]), cube(&["!a"])]);
        check(&w, "G a", false);
        check(&w, "G F a", true);
        check(&w, "F G a", false);
        check(&w, "a U !a", true);
        check(&w, "X (a R !a)", false);
        check(&w, "X (!a U a)", true);
        check(&w, "false R a", false);
    }

    #[test]
    fn until_needs_eventuality() {
        let w = LassoTrace::new(vec![cube(&["b"])], vec![cube(&["a"])]);
        check(&w, "X (a U b)", false);
        check(&w, "a U b", true);
        check(&w, "X (b R a)", true);
    }
}
