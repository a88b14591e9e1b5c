use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::ltl::{Atom, Cube};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    Normal,
    /// Produced by fusing two labels that clash on the given atom.
    Fusion(Atom),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub source: usize,
    pub label: Cube,
    pub target: usize,
    pub kind: EdgeKind,
}

impl Transition {
    pub fn normal(source: usize, label: Cube, target: usize) -> Transition {
        Transition {
            source,
            label,
            target,
            kind: EdgeKind::Normal,
        }
    }

    pub fn is_fusion(&self) -> bool {
        matches!(self.kind, EdgeKind::Fusion(_))
    }

    pub fn conflict_atom(&self) -> Option<&Atom> {
        match &self.kind {
            EdgeKind::Fusion(a) => Some(a),
            EdgeKind::Normal => None,
        }
    }
}

/// A Büchi automaton with cube-labeled transitions. A label covers every
/// letter that satisfies it.
#[derive(Clone, Debug)]
pub struct BuchiAutomaton {
    atoms: Vec<Atom>,
    initial: usize,
    accepting: Vec<bool>,
    transitions: Vec<Transition>,
    outgoing: Vec<Vec<usize>>,
}

impl BuchiAutomaton {
    /// # Panics
    /// If `initial` or a transition endpoint is not a state.
    pub fn new(
        atoms: Vec<Atom>,
        initial: usize,
        accepting: Vec<bool>,
        transitions: Vec<Transition>,
    ) -> BuchiAutomaton {
        let n = accepting.len();
        assert!(initial < n, "initial state out of range");
        let mut outgoing = vec![Vec::new(); n];
        for (i, t) in transitions.iter().enumerate() {
            assert!(
                t.source < n && t.target < n,
                "transition endpoint out of range"
            );
            outgoing[t.source].push(i);
        }
        BuchiAutomaton {
            atoms,
            initial,
            accepting,
            transitions,
            outgoing,
        }
    }

    /// One non-accepting state and no transitions.
    pub fn empty_language(atoms: Vec<Atom>) -> BuchiAutomaton {
        BuchiAutomaton::new(atoms, 0, vec![false], Vec::new())
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_states()).filter(|&q| self.accepting[q])
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn transition(&self, i: usize) -> &Transition {
        &self.transitions[i]
    }

    /// Indices of the transitions leaving `q`.
    pub fn outgoing(&self, q: usize) -> &[usize] {
        &self.outgoing[q]
    }

    pub fn fusion_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.transitions.len()).filter(|&i| self.transitions[i].is_fusion())
    }

    /// Successor lists restricted to the transitions `keep` accepts.
    pub(crate) fn successors(&self, keep: impl Fn(&Transition) -> bool) -> Vec<Vec<usize>> {
        let mut succ = vec![Vec::new(); self.num_states()];
        for t in &self.transitions {
            if keep(t) {
                succ[t.source].push(t.target);
            }
        }
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }
        succ
    }

    pub fn is_empty(&self) -> bool {
        super::find_accepting_lasso(self).is_none()
    }

    /// Renders the automaton as a DOT digraph. The initial state is drawn
    /// bold, accepting states as double circles, fusion transitions dashed
    /// with `fuse:<atom>` in the label.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph buchi {\n  rankdir=LR;\n");
        for q in 0..self.num_states() {
            let shape = if self.accepting[q] {
                "doublecircle"
            } else {
                "circle"
            };
            let style = if q == self.initial {
                ", style=bold"
            } else {
                ""
            };
            let _ = writeln!(out, "  q{q} [label=\"{q}\", shape={shape}{style}];");
        }
        for t in &self.transitions {
            let label = escape(&t.label.to_string());
            match &t.kind {
                EdgeKind::Normal => {
                    let _ = writeln!(out, "  q{} -> q{} [label=\"{label}\"];", t.source, t.target);
                }
                EdgeKind::Fusion(a) => {
                    let _ = writeln!(
                        out,
                        "  q{} -> q{} [label=\"{label} fuse:{}\", style=dashed, color=red];",
                        t.source,
                        t.target,
                        escape(a)
                    );
                }
            }
        }
        out.push_str("}\n");
        out
    }

    /// Atoms mentioned by some label.
    pub fn label_atoms(&self) -> BTreeSet<Atom> {
        self.transitions
            .iter()
            .flat_map(|t| t.label.atoms().cloned())
            .collect()
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
