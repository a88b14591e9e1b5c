//! LTL to Büchi translation by the on-the-fly tableau construction of
//! Gerth, Peled, Vardi and Wolper, followed by degeneralization and a few
//! language-preserving clean-ups.

use std::collections::{BTreeSet, HashMap, VecDeque};

use super::automaton::{BuchiAutomaton, Transition};
use super::emptiness::accepting_cycle_states;
use super::Limits;
use crate::error::{Error, Result};
use crate::ltl::{Atom, Cube, Formula};

/// Interned NNF subformula.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Node {
    True,
    False,
    Lit(Atom, bool),
    And(u32, u32),
    Or(u32, u32),
    Next(u32),
    Until(u32, u32),
    Release(u32, u32),
}

#[derive(Default)]
struct Arena {
    nodes: Vec<Node>,
    ids: HashMap<Node, u32>,
}

impl Arena {
    fn intern(&mut self, f: &Formula) -> u32 {
        let node = match f {
            Formula::True => Node::True,
            Formula::False => Node::False,
            Formula::Atom(a) => Node::Lit(a.clone(), true),
            Formula::Not(inner) => match &**inner {
                Formula::Atom(a) => Node::Lit(a.clone(), false),
                _ => unreachable!("input is in negation normal form"),
            },
            Formula::And(a, b) => Node::And(self.intern(a), self.intern(b)),
            Formula::Or(a, b) => Node::Or(self.intern(a), self.intern(b)),
            Formula::Next(a) => Node::Next(self.intern(a)),
            Formula::Until(a, b) => Node::Until(self.intern(a), self.intern(b)),
            Formula::Release(a, b) => Node::Release(self.intern(a), self.intern(b)),
            Formula::Implies(..) | Formula::Globally(_) | Formula::Finally(_) => {
                unreachable!("input is desugared")
            }
        };
        if let Some(&id) = self.ids.get(&node) {
            return id;
        }
        let id = self.nodes.len() as u32;
        self.nodes.push(node.clone());
        self.ids.insert(node, id);
        id
    }
}

type Set = BTreeSet<u32>;

struct Pending {
    incoming: BTreeSet<usize>,
    new: Set,
    old: Set,
    next: Set,
}

struct Tableau {
    /// `(old, next)` per node; node 0 is the initial pseudo-node.
    nodes: Vec<(Set, Set)>,
    incoming: Vec<BTreeSet<usize>>,
}

fn contradicts(arena: &Arena, old: &Set, atom: &Atom, positive: bool) -> bool {
    old.iter().any(
        |&i| matches!(&arena.nodes[i as usize], Node::Lit(a, p) if a == atom && *p != positive),
    )
}

fn build_tableau(arena: &Arena, root: u32, limits: &Limits) -> Result<Tableau> {
    let mut tab = Tableau {
        nodes: vec![(Set::new(), Set::new())],
        incoming: vec![BTreeSet::new()],
    };
    let mut index: HashMap<(Set, Set), usize> = HashMap::new();
    let mut stack = vec![Pending {
        incoming: BTreeSet::from([0]),
        new: Set::from([root]),
        old: Set::new(),
        next: Set::new(),
    }];
    let mut steps = 0usize;
    let step_cap = limits.state_cap.saturating_mul(64);

    while let Some(mut p) = stack.pop() {
        steps += 1;
        if steps > step_cap {
            return Err(Error::Resource {
                what: "tableau expansion",
                cap: step_cap,
            });
        }
        let Some(eta) = p.new.pop_first() else {
            let key = (p.old, p.next);
            if let Some(&id) = index.get(&key) {
                tab.incoming[id].extend(p.incoming);
                continue;
            }
            let id = tab.nodes.len();
            if id > limits.state_cap {
                return Err(Error::Resource {
                    what: "automaton state",
                    cap: limits.state_cap,
                });
            }
            index.insert(key.clone(), id);
            tab.incoming.push(p.incoming);
            stack.push(Pending {
                incoming: BTreeSet::from([id]),
                new: key.1.clone(),
                old: Set::new(),
                next: Set::new(),
            });
            tab.nodes.push(key);
            continue;
        };
        if p.old.contains(&eta) {
            stack.push(p);
            continue;
        }
        match &arena.nodes[eta as usize] {
            Node::False => {}
            Node::True => {
                p.old.insert(eta);
                stack.push(p);
            }
            Node::Lit(a, pos) => {
                if !contradicts(arena, &p.old, a, *pos) {
                    p.old.insert(eta);
                    stack.push(p);
                }
            }
            &Node::And(a, b) => {
                p.old.insert(eta);
                for x in [a, b] {
                    if !p.old.contains(&x) {
                        p.new.insert(x);
                    }
                }
                stack.push(p);
            }
            &Node::Next(a) => {
                p.old.insert(eta);
                p.next.insert(a);
                stack.push(p);
            }
            &Node::Or(a, b) => split(&mut stack, p, eta, &[a], &[], &[b]),
            &Node::Until(a, b) => split(&mut stack, p, eta, &[a], &[eta], &[b]),
            &Node::Release(a, b) => split(&mut stack, p, eta, &[b], &[eta], &[a, b]),
        }
    }
    Ok(tab)
}

/// Replaces `p` by two successors: the first adds `new1` to the pending
/// obligations and `next1` to the next-state obligations, the second adds
/// `new2`. The second is pushed first so the first is expanded first.
fn split(
    stack: &mut Vec<Pending>,
    mut p: Pending,
    eta: u32,
    new1: &[u32],
    next1: &[u32],
    new2: &[u32],
) {
    p.old.insert(eta);
    let mut second = Pending {
        incoming: p.incoming.clone(),
        new: p.new.clone(),
        old: p.old.clone(),
        next: p.next.clone(),
    };
    for &x in new2 {
        if !second.old.contains(&x) {
            second.new.insert(x);
        }
    }
    for &x in new1 {
        if !p.old.contains(&x) {
            p.new.insert(x);
        }
    }
    p.next.extend(next1.iter().copied());
    stack.push(second);
    stack.push(p);
}

/// Translates `f` into a Büchi automaton over the atoms of `f`.
pub fn translate(f: &Formula, limits: &Limits) -> Result<BuchiAutomaton> {
    let atoms: Vec<Atom> = f.atoms().into_iter().collect();
    let mut arena = Arena::default();
    let root = arena.intern(&f.nnf());
    let tab = build_tableau(&arena, root, limits)?;

    let untils: Vec<(u32, u32)> = arena
        .nodes
        .iter()
        .enumerate()
        .filter_map(|(i, n)| match n {
            Node::Until(_, b) => Some((i as u32, *b)),
            _ => None,
        })
        .collect();
    let k = untils.len();
    let in_set = |node: usize, j: usize| {
        let (old, _) = &tab.nodes[node];
        let (u, b) = untils[j];
        !old.contains(&u) || old.contains(&b)
    };
    let labels: Vec<Cube> = tab
        .nodes
        .iter()
        .map(|(old, _)| {
            let mut c = Cube::top();
            for &i in old {
                if let Node::Lit(a, p) = &arena.nodes[i as usize] {
                    c.insert(a.clone(), *p)
                        .expect("tableau nodes are consistent");
                }
            }
            c
        })
        .collect();
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); tab.nodes.len()];
    for (q, inc) in tab.incoming.iter().enumerate() {
        for &p in inc {
            succ[p].push(q);
        }
    }

    // Degeneralize: level j waits for acceptance set j; level k marks a
    // completed round and is accepting.
    let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
    let mut states = vec![(0usize, 0usize)];
    ids.insert((0, 0), 0);
    let mut transitions = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        let (node, level) = states[s];
        for &t in &succ[node] {
            let mut l = if level == k { 0 } else { level };
            while l < k && in_set(t, l) {
                l += 1;
            }
            let id = match ids.get(&(t, l)) {
                Some(&id) => id,
                None => {
                    let id = states.len();
                    if id >= limits.state_cap {
                        return Err(Error::Resource {
                            what: "automaton state",
                            cap: limits.state_cap,
                        });
                    }
                    states.push((t, l));
                    ids.insert((t, l), id);
                    queue.push_back(id);
                    id
                }
            };
            transitions.push(Transition::normal(s, labels[t].clone(), id));
            if transitions.len() > limits.transition_cap {
                return Err(Error::Resource {
                    what: "automaton transition",
                    cap: limits.transition_cap,
                });
            }
        }
    }
    let accepting: Vec<bool> = states.iter().map(|&(_, l)| l == k).collect();
    let raw = BuchiAutomaton::new(atoms, 0, accepting, transitions);
    Ok(simplify(&raw))
}

/// Removes states that cannot reach an accepting cycle, merges
/// bisimilar states and drops transitions subsumed by a more general
/// parallel transition.
pub fn simplify(a: &BuchiAutomaton) -> BuchiAutomaton {
    let n = a.num_states();
    let (on_cycle, _) = accepting_cycle_states(a, &|_| true, 0..n);
    let mut live = on_cycle;
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    for t in a.transitions() {
        preds[t.target].push(t.source);
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&q| live[q]).collect();
    while let Some(q) = queue.pop_front() {
        for &p in &preds[q] {
            if !live[p] {
                live[p] = true;
                queue.push_back(p);
            }
        }
    }
    if !live[a.initial()] {
        return BuchiAutomaton::empty_language(a.atoms().to_vec());
    }

    // Partition refinement on (accepting, outgoing labels and target blocks).
    let mut block: Vec<usize> = (0..n).map(|q| usize::from(a.is_accepting(q))).collect();
    let mut count = 0;
    loop {
        let mut sigs: HashMap<(usize, Vec<(Cube, usize)>), usize> = HashMap::new();
        let mut next = vec![0; n];
        for q in 0..n {
            if !live[q] {
                continue;
            }
            let mut out: Vec<(Cube, usize)> = a
                .outgoing(q)
                .iter()
                .map(|&e| a.transition(e))
                .filter(|t| live[t.target])
                .map(|t| (t.label.clone(), block[t.target]))
                .collect();
            out.sort();
            out.dedup();
            let len = sigs.len();
            next[q] = *sigs.entry((block[q], out)).or_insert(len);
        }
        // Signatures include the old block, so blocks only ever split.
        block = next;
        if sigs.len() == count {
            break;
        }
        count = sigs.len();
    }

    // Number the blocks in breadth-first order from the initial state.
    let mut number: HashMap<usize, usize> = HashMap::new();
    let mut order = vec![a.initial()];
    number.insert(block[a.initial()], 0);
    let mut i = 0;
    while i < order.len() {
        let q = order[i];
        i += 1;
        for &e in a.outgoing(q) {
            let t = a.transition(e);
            if live[t.target] && !number.contains_key(&block[t.target]) {
                number.insert(block[t.target], number.len());
                order.push(t.target);
            }
        }
    }
    let mut accepting = vec![false; number.len()];
    let mut edges: Vec<(usize, usize, Cube)> = Vec::new();
    for &q in &order {
        let s = number[&block[q]];
        accepting[s] = a.is_accepting(q);
        for &e in a.outgoing(q) {
            let t = a.transition(e);
            if live[t.target] {
                edges.push((s, number[&block[t.target]], t.label.clone()));
            }
        }
    }
    edges.sort_by(|x, y| (x.0, x.1, x.2.len(), &x.2).cmp(&(y.0, y.1, y.2.len(), &y.2)));
    edges.dedup();
    let mut kept: Vec<(usize, usize, Cube)> = Vec::new();
    for (s, t, label) in edges {
        let subsumed = kept
            .iter()
            .rev()
            .take_while(|(s2, t2, _)| *s2 == s && *t2 == t)
            .any(|(_, _, l2)| l2.subsumes(&label));
        if !subsumed {
            kept.push((s, t, label));
        }
    }
    let transitions = kept
        .into_iter()
        .map(|(s, t, label)| Transition::normal(s, label, t))
        .collect();
    BuchiAutomaton::new(a.atoms().to_vec(), 0, accepting, transitions)
}
