//! Boundary conditions from synthesis products of goal-violation automata.
//!
//! For goals `g_i` and `g_j`, the words of `Dom & G_-i & !g_i` and of
//! `Dom & G_-j & !g_j` never coincide. Where a word of each differs from the
//! other in a single literal at a single position, fusing them there yields
//! a circumstance under which the two goals diverge.

use std::collections::BTreeSet;

use crate::buchi::{find_single_fusion_lassos, synthesis_product, BuchiAutomaton, FusionRun};
use crate::error::{Error, Result};
use crate::ltl::{Atom, Formula, TraceFormula};
use crate::sat::Solver;
use crate::scene::{BcKind, BoundaryCondition, Checker, Scene};

/// All synthesized trace formulas of `t1` and `t2`, each with the position
/// and atom of its fusion. Both must have prefixes of the same length.
pub fn synthesize_trace_formulas(
    t1: &TraceFormula,
    t2: &TraceFormula,
) -> Result<Vec<(TraceFormula, usize, Atom)>> {
    let n = t1.prefix.len();
    if n != t2.prefix.len() {
        return Err(Error::LengthMismatch {
            left: n,
            right: t2.prefix.len(),
        });
    }
    let cube1 = |k: usize| if k < n { &t1.prefix[k] } else { &t1.loop_cube };
    let cube2 = |k: usize| if k < n { &t2.prefix[k] } else { &t2.loop_cube };
    let mut out = Vec::new();
    'positions: for j in 0..=n {
        let Some((fused, atom)) = cube1(j).fuse(cube2(j)) else {
            continue;
        };
        let mut cubes = Vec::with_capacity(n + 1);
        for k in 0..=n {
            if k == j {
                cubes.push(fused.clone());
            } else {
                match cube1(k).conjoin(cube2(k)) {
                    Some(c) => cubes.push(c),
                    None => continue 'positions,
                }
            }
        }
        let loop_cube = cubes.pop().expect("n + 1 cubes");
        out.push((TraceFormula::new(cubes, loop_cube), j, atom));
    }
    Ok(out)
}

/// Converts a single-fusion run into a boundary condition: a trace formula
/// when the accepting cycle reads one repeated cube, a word otherwise.
pub fn run_to_bc(a: &BuchiAutomaton, run: &FusionRun, scope: Vec<String>) -> BoundaryCondition {
    let word = run.run.word(a);
    let conflict = a.transition(run.edge).conflict_atom().cloned();
    let first = &word.cycle[0];
    if word.cycle.iter().all(|c| c == first) {
        let trace = TraceFormula::new(word.stem.clone(), first.clone()).normalized();
        BoundaryCondition::trace_formula(trace, scope, conflict)
    } else {
        BoundaryCondition::word(word, scope, conflict)
    }
}

#[derive(Clone, Debug)]
pub struct SemanticOptions {
    /// Overrides the scene's fusible atoms.
    pub fusible: Option<BTreeSet<Atom>>,
    /// Runs to extract per fusion transition.
    pub max_runs_per_edge: usize,
    /// Keep trace formulas of every length instead of only the shortest
    /// ones of each goal pair.
    pub all_lengths: bool,
    /// Keep the synthesis product of every goal pair in the outcome.
    pub keep_products: bool,
}

impl Default for SemanticOptions {
    fn default() -> SemanticOptions {
        SemanticOptions {
            fusible: None,
            max_runs_per_edge: 1,
            all_lengths: false,
            keep_products: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PairReport {
    pub goals: (usize, usize),
    pub scope: Vec<String>,
    pub product_states: usize,
    pub product_transitions: usize,
    pub fusion_transitions: usize,
    pub runs: usize,
    pub product: Option<BuchiAutomaton>,
}

#[derive(Clone, Debug, Default)]
pub struct SemanticOutcome {
    pub bcs: Vec<BoundaryCondition>,
    pub pairs: Vec<PairReport>,
}

impl SemanticOutcome {
    pub fn count(&self, kind: BcKind) -> usize {
        self.bcs.iter().filter(|b| b.kind == kind).count()
    }
}

/// `Dom & G_-i & !g_i`.
fn violation(s: &Scene, i: usize) -> Formula {
    Formula::and(
        s.dom_and_goals_except(i),
        Formula::not(s.goals()[i].formula.clone()),
    )
}

/// Runs the analysis on every pair of goals, in order `(0,1), (0,2), ...`.
/// Trace-formula results are kept only if they pass the boundary-condition
/// check on the scene reduced to their goal pair; equivalent trace formulas
/// and identical words within a pair are reported once.
///
/// Longer trace formulas of a pair mostly repeat a shorter one after some
/// extra steps, so unless `all_lengths` is set only those with the shortest
/// prefix are kept. Trace formulas that strictly imply another kept one of
/// the same pair are dropped.
pub fn semanticbc(s: &Scene, solver: &Solver, opts: &SemanticOptions) -> Result<SemanticOutcome> {
    let fusible = opts.fusible.clone().unwrap_or_else(|| s.fusible().clone());
    let n = s.goals().len();
    let automata = (0..n)
        .map(|i| solver.translate(&violation(s, i)))
        .collect::<Result<Vec<_>>>()?;
    let mut outcome = SemanticOutcome::default();
    for i in 0..n {
        for j in i + 1..n {
            let reduced = s.reduced(i, j)?;
            let checker = Checker::new(&reduced, solver);
            let scope = reduced.goal_names();
            let product = synthesis_product(&automata[i], &automata[j], &fusible, solver.limits())?;
            let runs = find_single_fusion_lassos(&product, opts.max_runs_per_edge.max(1));
            let mut kept: Vec<BoundaryCondition> = Vec::new();
            for run in &runs {
                let mut bc = run_to_bc(&product, run, scope.clone());
                match bc.kind {
                    BcKind::Word => {
                        if kept.iter().any(|k| k.word == bc.word) {
                            continue;
                        }
                    }
                    _ => {
                        let f = bc.formula.clone().expect("trace formula");
                        let mut duplicate = false;
                        for k in kept.iter().filter(|k| k.kind == BcKind::TraceFormula) {
                            if solver.equiv(k.formula.as_ref().expect("trace formula"), &f)? {
                                duplicate = true;
                                break;
                            }
                        }
                        if duplicate {
                            continue;
                        }
                        let verdict = checker.validate(&f)?;
                        if !verdict.is_bc {
                            continue;
                        }
                        bc.verdict = Some(verdict);
                    }
                }
                kept.push(bc);
            }
            let kept = prune_traces(solver, kept, opts.all_lengths)?;
            outcome.pairs.push(PairReport {
                goals: (i, j),
                scope,
                product_states: product.num_states(),
                product_transitions: product.transitions().len(),
                fusion_transitions: product.fusion_edges().count(),
                runs: runs.len(),
                product: opts.keep_products.then_some(product),
            });
            outcome.bcs.extend(kept);
        }
    }
    Ok(outcome)
}

fn prune_traces(
    solver: &Solver,
    bcs: Vec<BoundaryCondition>,
    all_lengths: bool,
) -> Result<Vec<BoundaryCondition>> {
    let len = |b: &BoundaryCondition| b.trace.as_ref().map(|t| t.prefix.len());
    let shortest = bcs.iter().filter_map(len).min();
    let bcs: Vec<_> = bcs
        .into_iter()
        .filter(|b| all_lengths || len(b).is_none() || len(b) == shortest)
        .collect();
    let mut weaker = vec![false; bcs.len()];
    for (i, b) in bcs.iter().enumerate() {
        let Some(f) = b
            .trace
            .as_ref()
            .map(|_| b.formula.as_ref().expect("trace formula"))
        else {
            continue;
        };
        for (j, c) in bcs.iter().enumerate() {
            if i != j
                && c.kind == BcKind::TraceFormula
                && solver.implies(f, c.formula.as_ref().expect("trace formula"))?
            {
                weaker[i] = true;
                break;
            }
        }
    }
    Ok(bcs
        .into_iter()
        .zip(weaker)
        .filter_map(|(b, w)| (!w).then_some(b))
        .collect())
}
