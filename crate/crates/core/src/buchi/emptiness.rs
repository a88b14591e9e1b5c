use std::collections::{HashMap, VecDeque};

use super::automaton::{BuchiAutomaton, Transition};
use crate::ltl::LassoTrace;

/// An accepting run given as transition indices: `stem` leads from the
/// initial state to the first state of `cycle`, which returns to it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Run {
    pub stem: Vec<usize>,
    pub cycle: Vec<usize>,
}

impl Run {
    /// The labels read along the run.
    pub fn word(&self, a: &BuchiAutomaton) -> LassoTrace {
        let label = |&i: &usize| a.transition(i).label.clone();
        LassoTrace::new(
            self.stem.iter().map(label).collect(),
            self.cycle.iter().map(label).collect(),
        )
    }
}

pub(crate) const UNVISITED: usize = usize::MAX;

/// Tarjan's algorithm, iteratively. Returns a component id per state
/// (`UNVISITED` for states not reachable from `roots`) and, per component,
/// whether it contains a cycle.
pub(crate) fn sccs(
    succ: &[Vec<usize>],
    roots: impl IntoIterator<Item = usize>,
) -> (Vec<usize>, Vec<bool>) {
    let n = succ.len();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNVISITED; n];
    let mut cyclic = Vec::new();
    let mut stack = Vec::new();
    let mut counter = 0;
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in roots {
        if index[root] != UNVISITED {
            continue;
        }
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        call.push((root, 0));
        while let Some(&mut (v, ref mut next)) = call.last_mut() {
            if *next < succ[v].len() {
                let w = succ[v][*next];
                *next += 1;
                if index[w] == UNVISITED {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let id = cyclic.len();
                let mut size = 0;
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp[w] = id;
                    size += 1;
                    if w == v {
                        break;
                    }
                }
                cyclic.push(size > 1 || succ[v].contains(&v));
            }
        }
    }
    (comp, cyclic)
}

/// States lying on an accepting cycle made of `keep` transitions and
/// reachable from `roots`.
pub(crate) fn accepting_cycle_states(
    a: &BuchiAutomaton,
    keep: &impl Fn(&Transition) -> bool,
    roots: impl IntoIterator<Item = usize>,
) -> (Vec<bool>, Vec<usize>) {
    let succ = a.successors(keep);
    let (comp, cyclic) = sccs(&succ, roots);
    let mut good_comp = vec![false; cyclic.len()];
    for q in a.accepting_states() {
        if comp[q] != UNVISITED && cyclic[comp[q]] {
            good_comp[comp[q]] = true;
        }
    }
    let on_cycle = (0..a.num_states())
        .map(|q| comp[q] != UNVISITED && good_comp[comp[q]])
        .collect();
    (on_cycle, comp)
}

/// Shortest path of `keep` transitions from `from` to the first state
/// satisfying `goal`, in breadth-first order. A path of length zero is
/// returned when `from` itself is a goal and `allow_empty` holds.
pub(crate) fn bfs_path(
    a: &BuchiAutomaton,
    from: usize,
    keep: &impl Fn(&Transition) -> bool,
    goal: impl Fn(usize) -> bool,
    allow_empty: bool,
) -> Option<(Vec<usize>, usize)> {
    if allow_empty && goal(from) {
        return Some((Vec::new(), from));
    }
    let mut parent: HashMap<usize, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut seen = vec![false; a.num_states()];
    // Expanding `from` first means a nonempty path back to `from` is found
    // when it is the goal.
    for &e in a.outgoing(from) {
        let t = a.transition(e);
        if keep(t) && !seen[t.target] {
            seen[t.target] = true;
            parent.insert(t.target, e);
            queue.push_back(t.target);
        }
    }
    while let Some(q) = queue.pop_front() {
        if goal(q) {
            let mut path = Vec::new();
            let mut cur = q;
            loop {
                let e = parent[&cur];
                path.push(e);
                cur = a.transition(e).source;
                if cur == from {
                    break;
                }
            }
            path.reverse();
            return Some((path, q));
        }
        for &e in a.outgoing(q) {
            let t = a.transition(e);
            if keep(t) && !seen[t.target] {
                seen[t.target] = true;
                parent.insert(t.target, e);
                queue.push_back(t.target);
            }
        }
    }
    None
}

/// An accepting lasso from `from` using only `keep` transitions: shortest
/// stem to an accepting state on a cycle, then the shortest cycle through it.
pub(crate) fn lasso_from(
    a: &BuchiAutomaton,
    from: usize,
    keep: &impl Fn(&Transition) -> bool,
) -> Option<Run> {
    let (on_cycle, comp) = accepting_cycle_states(a, keep, [from]);
    let (stem, f) = bfs_path(a, from, keep, |q| on_cycle[q] && a.is_accepting(q), true)?;
    let scc = comp[f];
    let in_scc = |t: &Transition| keep(t) && comp[t.source] == scc && comp[t.target] == scc;
    let (cycle, _) = bfs_path(a, f, &in_scc, |q| q == f, false)?;
    Some(Run { stem, cycle })
}

/// Some accepting run of `a`, or `None` if the language is empty.
pub fn find_accepting_lasso(a: &BuchiAutomaton) -> Option<Run> {
    lasso_from(a, a.initial(), &|_| true)
}

/// Emptiness check returning a witness word.
pub fn witness(a: &BuchiAutomaton) -> Option<LassoTrace> {
    find_accepting_lasso(a).map(|r| r.word(a))
}

/// Whether `a` accepts the word `w`, where absent atoms of `w`'s cubes are
/// read as false.
pub fn accepts(a: &BuchiAutomaton, w: &LassoTrace) -> bool {
    let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
    let mut states = vec![(0usize, a.initial())];
    ids.insert(states[0], 0);
    let mut succ: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let (pos, q) = states[i];
        let letter = w.at(pos);
        let next_pos = w.succ(pos);
        let mut out = Vec::new();
        for &e in a.outgoing(q) {
            let t = a.transition(e);
            if t.label.holds_in(letter) {
                let key = (next_pos, t.target);
                let id = *ids.entry(key).or_insert_with(|| {
                    states.push(key);
                    states.len() - 1
                });
                out.push(id);
            }
        }
        out.sort_unstable();
        out.dedup();
        succ.push(out);
        i += 1;
    }
    let (comp, cyclic) = sccs(&succ, [0]);
    states
        .iter()
        .enumerate()
        .any(|(id, &(_, q))| a.is_accepting(q) && cyclic[comp[id]])
}
