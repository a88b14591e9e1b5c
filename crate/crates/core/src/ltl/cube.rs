use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use super::formula::{Atom, Formula};
use crate::error::{Error, Result};

/// A consistent conjunction of literals, kept sorted by atom name.
/// The empty cube is `true`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cube {
    lits: BTreeMap<Atom, bool>,
}

impl Cube {
    pub fn top() -> Cube {
        Cube::default()
    }

    /// Builds a cube from `(atom, polarity)` pairs, rejecting contradictions.
    pub fn from_literals<I, S>(lits: I) -> Result<Cube>
    where
        I: IntoIterator<Item = (S, bool)>,
        S: AsRef<str>,
    {
        let mut cube = Cube::top();
        for (atom, positive) in lits {
            cube.insert(Atom::from(atom.as_ref()), positive)?;
        }
        Ok(cube)
    }

    /// Parses literals written as `a` or `!a`.
    pub fn parse_literals<I, S>(lits: I) -> Result<Cube>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Cube::from_literals(lits.into_iter().map(|s| {
            let s = s.as_ref().trim();
            match s.strip_prefix('!') {
                Some(rest) => (rest.trim().to_string(), false),
                None => (s.to_string(), true),
            }
        }))
    }

    pub fn insert(&mut self, atom: Atom, positive: bool) -> Result<()> {
        match self.lits.get(&atom) {
            Some(&p) if p != positive => Err(Error::InconsistentCube(atom.to_string())),
            _ => {
                self.lits.insert(atom, positive);
                Ok(())
            }
        }
    }

    pub fn is_top(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn get(&self, atom: &str) -> Option<bool> {
        self.lits.get(atom).copied()
    }

    pub fn literals(&self) -> impl Iterator<Item = (&Atom, bool)> {
        self.lits.iter().map(|(a, &p)| (a, p))
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.lits.keys()
    }

    /// Conjunction, or `None` when the result would be inconsistent.
    pub fn conjoin(&self, other: &Cube) -> Option<Cube> {
        let mut out = self.clone();
        for (a, &p) in &other.lits {
            match out.lits.get(a) {
                Some(&q) if q != p => return None,
                _ => {
                    out.lits.insert(a.clone(), p);
                }
            }
        }
        Some(out)
    }

    pub fn is_compatible(&self, other: &Cube) -> bool {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .lits
            .iter()
            .all(|(a, p)| large.lits.get(a).is_none_or(|q| q == p))
    }

    /// Combines two cubes that clash on exactly one atom: both literals of
    /// that atom are dropped and the rest is conjoined. Returns the fused
    /// cube together with the clashing atom, or `None` when the cubes clash
    /// on zero or several atoms.
    pub fn fuse(&self, other: &Cube) -> Option<(Cube, Atom)> {
        let mut conflict: Option<&Atom> = None;
        for (a, p) in &self.lits {
            if let Some(q) = other.lits.get(a) {
                if q != p {
                    if conflict.is_some() {
                        return None;
                    }
                    conflict = Some(a);
                }
            }
        }
        let atom = conflict?.clone();
        let mut out = self.clone();
        out.lits.remove(&atom);
        for (a, &p) in &other.lits {
            if *a != atom {
                out.lits.insert(a.clone(), p);
            }
        }
        Some((out, atom))
    }

    /// Whether every literal of `self` also occurs in `other`, i.e. `other`
    /// implies `self`.
    pub fn subsumes(&self, other: &Cube) -> bool {
        self.lits.iter().all(|(a, p)| other.lits.get(a) == Some(p))
    }

    /// Truth value under an assignment in which unmentioned atoms are false.
    pub fn holds_in(&self, letter: &Cube) -> bool {
        self.lits
            .iter()
            .all(|(a, &p)| letter.lits.get(a).copied().unwrap_or(false) == p)
    }

    pub fn to_formula(&self) -> Formula {
        Formula::conj(self.lits.iter().map(|(a, &p)| Formula::literal(a, p)))
    }

    /// Recognizes a conjunction of literals (or `true`).
    pub fn from_formula(f: &Formula) -> Option<Cube> {
        let mut cube = Cube::top();
        fn walk(f: &Formula, cube: &mut Cube) -> Option<()> {
            match f {
                Formula::True => Some(()),
                Formula::Atom(a) => cube.insert(a.clone(), true).ok(),
                Formula::Not(inner) => match &**inner {
                    Formula::Atom(a) => cube.insert(a.clone(), false).ok(),
                    _ => None,
                },
                Formula::And(a, b) => {
                    walk(a, cube)?;
                    walk(b, cube)
                }
                _ => None,
            }
        }
        walk(f, &mut cube)?;
        Some(cube)
    }

    /// Literals rendered as `a` / `!a` in atom order.
    pub fn literal_strings(&self) -> Vec<String> {
        self.lits
            .iter()
            .map(|(a, &p)| if p { a.to_string() } else { format!("!{a}") })
            .collect()
    }
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_top() {
            return f.write_str("true");
        }
        f.write_str(&self.literal_strings().join(" & "))
    }
}

impl Serialize for Cube {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.literal_strings().serialize(s)
    }
}
