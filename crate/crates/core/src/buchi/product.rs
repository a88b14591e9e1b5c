use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use super::automaton::{BuchiAutomaton, EdgeKind, Transition};
use super::emptiness::{accepting_cycle_states, bfs_path, Run};
use super::Limits;
use crate::error::{Error, Result};
use crate::ltl::Atom;

/// Product of two automata in which each pair of transitions yields a
/// normal edge labeled with the conjunction of their labels when it is
/// consistent, and a fusion edge labeled with the fused cube when the labels
/// clash on exactly one atom from `fusible`.
///
/// States are triples `(q1, q2, i)`. From copy 1 the product moves to copy 2
/// after leaving an accepting state of `a1`; from copy 2 it returns to copy 1
/// after leaving an accepting state of `a2`. The accepting states are those
/// of copy 2 whose `a2` component is accepting. Only reachable states are
/// built; state 0 is the initial state.
pub fn synthesis_product(
    a1: &BuchiAutomaton,
    a2: &BuchiAutomaton,
    fusible: &BTreeSet<Atom>,
    limits: &Limits,
) -> Result<BuchiAutomaton> {
    let atoms: Vec<Atom> = a1
        .atoms()
        .iter()
        .chain(a2.atoms())
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let start = (a1.initial(), a2.initial(), 1u8);
    let mut ids: HashMap<(usize, usize, u8), usize> = HashMap::from([(start, 0)]);
    let mut states = vec![start];
    let mut transitions = Vec::new();
    let mut seen: HashSet<Transition> = HashSet::new();
    let mut queue = VecDeque::from([0usize]);

    while let Some(s) = queue.pop_front() {
        let (q1, q2, copy) = states[s];
        let next_copy = match copy {
            1 if a1.is_accepting(q1) => 2,
            2 if a2.is_accepting(q2) => 1,
            c => c,
        };
        for &e1 in a1.outgoing(q1) {
            let t1 = a1.transition(e1);
            for &e2 in a2.outgoing(q2) {
                let t2 = a2.transition(e2);
                let edge = if let Some(label) = t1.label.conjoin(&t2.label) {
                    Some((label, EdgeKind::Normal))
                } else {
                    match t1.label.fuse(&t2.label) {
                        Some((label, atom)) if fusible.contains(&atom) => {
                            Some((label, EdgeKind::Fusion(atom)))
                        }
                        _ => None,
                    }
                };
                let Some((label, kind)) = edge else { continue };
                let key = (t1.target, t2.target, next_copy);
                let target = match ids.get(&key) {
                    Some(&id) => id,
                    None => {
                        let id = states.len();
                        if id >= limits.state_cap {
                            return Err(Error::Resource {
                                what: "product state",
                                cap: limits.state_cap,
                            });
                        }
                        ids.insert(key, id);
                        states.push(key);
                        queue.push_back(id);
                        id
                    }
                };
                let t = Transition {
                    source: s,
                    label,
                    target,
                    kind,
                };
                if seen.insert(t.clone()) {
                    transitions.push(t);
                    if transitions.len() > limits.transition_cap {
                        return Err(Error::Resource {
                            what: "product transition",
                            cap: limits.transition_cap,
                        });
                    }
                }
            }
        }
    }
    let accepting = states
        .iter()
        .map(|&(_, q2, copy)| copy == 2 && a2.is_accepting(q2))
        .collect();
    Ok(BuchiAutomaton::new(atoms, 0, accepting, transitions))
}

/// Ordinary intersection: the synthesis product without fusion.
pub fn intersection(
    a1: &BuchiAutomaton,
    a2: &BuchiAutomaton,
    limits: &Limits,
) -> Result<BuchiAutomaton> {
    synthesis_product(a1, a2, &BTreeSet::new(), limits)
}

/// An accepting run of a synthesis product that uses the fusion transition
/// `edge` exactly once and no other fusion transition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRun {
    pub run: Run,
    pub edge: usize,
}

/// Breadth-first tree of `keep` transitions: the parent transition of every
/// reached state other than `from`, and the states in visiting order.
fn bfs_tree(
    a: &BuchiAutomaton,
    from: usize,
    keep: &impl Fn(&Transition) -> bool,
) -> (Vec<bool>, Vec<Option<usize>>, Vec<usize>) {
    let n = a.num_states();
    let mut reached = vec![false; n];
    let mut parent = vec![None; n];
    reached[from] = true;
    let mut order = Vec::new();
    let mut queue = VecDeque::from([from]);
    while let Some(q) = queue.pop_front() {
        order.push(q);
        for &e in a.outgoing(q) {
            let t = a.transition(e);
            if keep(t) && !reached[t.target] {
                reached[t.target] = true;
                parent[t.target] = Some(e);
                queue.push_back(t.target);
            }
        }
    }
    (reached, parent, order)
}

fn tree_path(a: &BuchiAutomaton, parent: &[Option<usize>], to: usize) -> Vec<usize> {
    let mut path = Vec::new();
    let mut cur = to;
    while let Some(e) = parent[cur] {
        path.push(e);
        cur = a.transition(e).source;
    }
    path.reverse();
    path
}

/// Accepting runs of a synthesis product that fuse at a single position.
///
/// For every fusion transition `t`, finds runs that take `t` once in the
/// stem and only normal transitions otherwise. Up to `max_runs_per_edge`
/// runs are returned per transition, each ending in a different accepting
/// cycle. A fused loop position repeats forever, so runs whose cycle is made
/// of fusion transitions that all carry one label and conflict atom are
/// returned as well, reached by normal transitions; their `edge` is the
/// first transition of the cycle. Stems and cycles are shortest in
/// breadth-first order.
pub fn find_single_fusion_lassos(a: &BuchiAutomaton, max_runs_per_edge: usize) -> Vec<FusionRun> {
    let normal = |t: &Transition| !t.is_fusion();
    let n = a.num_states();
    let (on_cycle, comp) = accepting_cycle_states(a, &normal, 0..n);
    let target = |q: usize| on_cycle[q] && a.is_accepting(q);

    let good = can_reach(a, &normal, (0..n).map(target).collect());
    let (reached, parent, order) = bfs_tree(a, a.initial(), &normal);
    let mut cycles: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut out = Vec::new();
    for e in a.fusion_edges() {
        let t = a.transition(e);
        if !reached[t.source] {
            continue;
        }
        if !good[t.target] {
            continue;
        }
        let head = tree_path(a, &parent, t.source);
        let (tail_reached, tail_parent, _) = bfs_tree(a, t.target, &normal);
        let mut order: Vec<usize> = Vec::new();
        // Targets in breadth-first order from the fusion target.
        let mut queue = VecDeque::from([t.target]);
        let mut seen = vec![false; n];
        seen[t.target] = true;
        while let Some(q) = queue.pop_front() {
            if target(q) {
                order.push(q);
                if order.len() >= max_runs_per_edge {
                    break;
                }
            }
            for &x in a.outgoing(q) {
                let tx = a.transition(x);
                if normal(tx) && tail_reached[tx.target] && !seen[tx.target] {
                    seen[tx.target] = true;
                    queue.push_back(tx.target);
                }
            }
        }
        for f in order {
            let cycle = cycles
                .entry(f)
                .or_insert_with(|| {
                    let scc = comp[f];
                    let in_scc = |x: &Transition| {
                        normal(x) && comp[x.source] == scc && comp[x.target] == scc
                    };
                    bfs_path(a, f, &in_scc, |q| q == f, false)
                        .expect("accepting cycle state has a cycle")
                        .0
                })
                .clone();
            let mut stem = head.clone();
            stem.push(e);
            stem.extend(tree_path_from(a, &tail_parent, t.target, f));
            out.push(FusionRun {
                run: Run { stem, cycle },
                edge: e,
            });
        }
    }
    out.extend(fused_loops(a, &reached, &parent, &order, max_runs_per_edge));
    out
}

/// Runs that reach, by normal transitions, an accepting cycle of fusion
/// transitions sharing one label and conflict atom.
fn fused_loops(
    a: &BuchiAutomaton,
    reached: &[bool],
    parent: &[Option<usize>],
    order: &[usize],
    max_runs: usize,
) -> Vec<FusionRun> {
    let mut groups: Vec<&Transition> = Vec::new();
    for e in a.fusion_edges() {
        let t = a.transition(e);
        if !groups
            .iter()
            .any(|g| g.label == t.label && g.kind == t.kind)
        {
            groups.push(t);
        }
    }
    let mut out = Vec::new();
    for g in groups {
        let same = |t: &Transition| t.label == g.label && t.kind == g.kind;
        let roots: Vec<usize> = (0..a.num_states()).filter(|&q| reached[q]).collect();
        let (on_cycle, comp) = accepting_cycle_states(a, &same, roots);
        for &r in order.iter().filter(|&&r| on_cycle[r]).take(max_runs) {
            let scc = comp[r];
            let in_scc = |x: &Transition| same(x) && comp[x.source] == scc && comp[x.target] == scc;
            let (mut cycle, f) = bfs_path(a, r, &in_scc, |q| a.is_accepting(q), true)
                .expect("component has an accepting state");
            let (back, _) =
                bfs_path(a, f, &in_scc, |q| q == r, false).expect("component is cyclic");
            cycle.extend(back);
            let edge = cycle[0];
            out.push(FusionRun {
                run: Run {
                    stem: tree_path(a, parent, r),
                    cycle,
                },
                edge,
            });
        }
    }
    out
}

/// States from which some state marked in `targets` is reachable through
/// `keep` transitions.
fn can_reach(
    a: &BuchiAutomaton,
    keep: &impl Fn(&Transition) -> bool,
    targets: Vec<bool>,
) -> Vec<bool> {
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); a.num_states()];
    for t in a.transitions() {
        if keep(t) {
            preds[t.target].push(t.source);
        }
    }
    let mut good = targets;
    let mut queue: VecDeque<usize> = (0..a.num_states()).filter(|&q| good[q]).collect();
    while let Some(q) = queue.pop_front() {
        for &p in &preds[q] {
            if !good[p] {
                good[p] = true;
                queue.push_back(p);
            }
        }
    }
    good
}

fn tree_path_from(
    a: &BuchiAutomaton,
    parent: &[Option<usize>],
    root: usize,
    to: usize,
) -> Vec<usize> {
    if to == root {
        return Vec::new();
    }
    tree_path(a, parent, to)
}
