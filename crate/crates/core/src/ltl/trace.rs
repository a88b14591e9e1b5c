use std::fmt;

use serde::Serialize;

use super::cube::Cube;
use super::formula::Formula;
use crate::error::{Error, Result};

/// A lasso-shaped formula `p0 & X p1 & ... & X^n pn & X^(n+1) G p(n+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TraceFormula {
    pub prefix: Vec<Cube>,
    pub loop_cube: Cube,
}

fn next_n(mut f: Formula, n: usize) -> Formula {
    for _ in 0..n {
        f = Formula::next(f);
    }
    f
}

impl TraceFormula {
    pub fn new(prefix: Vec<Cube>, loop_cube: Cube) -> TraceFormula {
        TraceFormula { prefix, loop_cube }
    }

    pub fn to_ltl(&self) -> Formula {
        let n = self.prefix.len();
        let steps = self
            .prefix
            .iter()
            .enumerate()
            .map(|(i, c)| next_n(c.to_formula(), i));
        let tail = next_n(Formula::globally(self.loop_cube.to_formula()), n);
        Formula::conj(steps.chain(std::iter::once(tail)))
    }

    /// Reads a formula of the trace fragment back into prefix and loop.
    /// Conjuncts at the same depth are merged; depths with no conjunct are
    /// `true`. The `G` conjunct must sit strictly deeper than every cube.
    pub fn from_ltl(f: &Formula) -> Option<TraceFormula> {
        let mut conjuncts = Vec::new();
        flatten_and(f, &mut conjuncts);
        let mut cubes: Vec<Cube> = Vec::new();
        let mut tail: Option<(usize, Cube)> = None;
        for c in conjuncts {
            let mut depth = 0;
            let mut body = c;
            while let Formula::Next(inner) = body {
                depth += 1;
                body = inner;
            }
            if let Formula::Globally(inner) = body {
                if tail.is_some() {
                    return None;
                }
                tail = Some((depth, Cube::from_formula(inner)?));
                continue;
            }
            let cube = Cube::from_formula(body)?;
            if cubes.len() <= depth {
                cubes.resize(depth + 1, Cube::top());
            }
            cubes[depth] = cubes[depth].conjoin(&cube)?;
        }
        let (depth, loop_cube) = tail?;
        if cubes.len() > depth {
            return None;
        }
        cubes.resize(depth, Cube::top());
        Some(TraceFormula::new(cubes, loop_cube))
    }

    /// Pads the prefix by unrolling the loop until it has `len` cubes.
    pub fn unrolled(&self, len: usize) -> TraceFormula {
        let mut prefix = self.prefix.clone();
        while prefix.len() < len {
            prefix.push(self.loop_cube.clone());
        }
        TraceFormula::new(prefix, self.loop_cube.clone())
    }

    /// Drops trailing prefix cubes equal to the loop cube.
    pub fn normalized(&self) -> TraceFormula {
        let mut prefix = self.prefix.clone();
        while prefix.last() == Some(&self.loop_cube) {
            prefix.pop();
        }
        TraceFormula::new(prefix, self.loop_cube.clone())
    }

    /// Position-wise conjunction; `None` if any position is inconsistent.
    pub fn conjoin(&self, other: &TraceFormula) -> Result<Option<TraceFormula>> {
        if self.prefix.len() != other.prefix.len() {
            return Err(Error::LengthMismatch {
                left: self.prefix.len(),
                right: other.prefix.len(),
            });
        }
        let mut prefix = Vec::with_capacity(self.prefix.len());
        for (a, b) in self.prefix.iter().zip(&other.prefix) {
            match a.conjoin(b) {
                Some(c) => prefix.push(c),
                None => return Ok(None),
            }
        }
        Ok(self
            .loop_cube
            .conjoin(&other.loop_cube)
            .map(|l| TraceFormula::new(prefix, l)))
    }
}

fn flatten_and<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
    match f {
        Formula::And(a, b) => {
            flatten_and(a, out);
            flatten_and(b, out);
        }
        _ => out.push(f),
    }
}

/// Whether `f` uses only literals, `true`, `&`, `X` and `G`.
pub fn in_trace_fragment(f: &Formula) -> bool {
    match f {
        Formula::True | Formula::Atom(_) => true,
        Formula::Not(inner) => matches!(**inner, Formula::Atom(_)),
        Formula::And(a, b) => in_trace_fragment(a) && in_trace_fragment(b),
        Formula::Next(inner) | Formula::Globally(inner) => in_trace_fragment(inner),
        _ => false,
    }
}

fn cube_operand(c: &Cube) -> String {
    if c.len() == 1 {
        c.to_string()
    } else if c.is_top() {
        "true".to_string()
    } else {
        format!("({c})")
    }
}

/// Renders the formula as `(p0) & X (p1) & ... & X^(n+1) (G p)`.
impl fmt::Display for TraceFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .prefix
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let body = if c.is_top() {
                    "true".to_string()
                } else {
                    format!("({c})")
                };
                format!("{}{body}", "X ".repeat(i))
            })
            .collect();
        let g = format!("G {}", cube_operand(&self.loop_cube));
        if self.prefix.is_empty() {
            parts.push(g);
        } else {
            parts.push(format!("{}({g})", "X ".repeat(self.prefix.len())));
        }
        f.write_str(&parts.join(" & "))
    }
}

/// The ultimately periodic word `stem . cycle^w`. Each cube stands for the
/// letter that makes its literals true and every other atom false.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LassoTrace {
    pub stem: Vec<Cube>,
    #[serde(rename = "loop")]
    pub cycle: Vec<Cube>,
}

impl LassoTrace {
    /// # Panics
    /// If `cycle` is empty.
    pub fn new(stem: Vec<Cube>, cycle: Vec<Cube>) -> LassoTrace {
        assert!(!cycle.is_empty(), "lasso cycle must be nonempty");
        LassoTrace { stem, cycle }
    }

    /// Number of distinct positions, `|stem| + |cycle|`.
    pub fn len(&self) -> usize {
        self.stem.len() + self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Letter at distinct position `i < len()`.
    pub fn at(&self, i: usize) -> &Cube {
        if i < self.stem.len() {
            &self.stem[i]
        } else {
            &self.cycle[i - self.stem.len()]
        }
    }

    /// Successor of distinct position `i`.
    pub fn succ(&self, i: usize) -> usize {
        if i + 1 < self.len() {
            i + 1
        } else {
            self.stem.len()
        }
    }

    /// Letter at any position of the infinite word.
    pub fn letter(&self, i: usize) -> &Cube {
        if i < self.stem.len() {
            &self.stem[i]
        } else {
            &self.cycle[(i - self.stem.len()) % self.cycle.len()]
        }
    }
}

impl fmt::Display for LassoTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |cs: &[Cube]| {
            cs.iter()
                .map(|c| format!("{{{c}}}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        if self.stem.is_empty() {
            write!(f, "({})^w", show(&self.cycle))
        } else {
            write!(f, "{} ({})^w", show(&self.stem), show(&self.cycle))
        }
    }
}
