use std::sync::OnceLock;

use super::bc::{BcVerdict, BoundaryCondition};
use super::model::Scene;
use crate::buchi::BuchiAutomaton;
use crate::error::Result;
use crate::ltl::Formula;
use crate::sat::{SatResult, Solver};

/// A formula together with its translation, built on first use.
#[derive(Default)]
struct Cached {
    cell: OnceLock<(Formula, BuchiAutomaton)>,
}

impl Cached {
    fn get(
        &self,
        solver: &Solver,
        f: impl FnOnce() -> Formula,
    ) -> Result<&(Formula, BuchiAutomaton)> {
        if let Some(v) = self.cell.get() {
            return Ok(v);
        }
        let f = f();
        let a = solver.translate(&f)?;
        // Another thread may have won the race; either value is the same.
        Ok(self.cell.get_or_init(|| (f, a)))
    }
}

/// Checks candidate boundary conditions against one scene. Translations of
/// `Dom & G` and of every `Dom & G_-i` are built once and shared by all
/// checks; a checker may be used from several threads.
pub struct Checker<'a> {
    scene: &'a Scene,
    solver: &'a Solver,
    full: Cached,
    minus: Vec<Cached>,
}

impl<'a> Checker<'a> {
    pub fn new(scene: &'a Scene, solver: &'a Solver) -> Checker<'a> {
        Checker {
            scene,
            solver,
            full: Cached::default(),
            minus: (0..scene.goals().len())
                .map(|_| Cached::default())
                .collect(),
        }
    }

    pub fn scene(&self) -> &Scene {
        self.scene
    }

    pub fn solver(&self) -> &Solver {
        self.solver
    }

    fn sat_with_all(&self, f: &Formula) -> Result<SatResult> {
        let (base, a) = self.full.get(self.solver, || self.scene.dom_and_goals())?;
        self.solver.is_sat_with(a, base, f)
    }

    /// Satisfiability of `Dom & G_-i & f`.
    pub fn sat_without_goal(&self, i: usize, f: &Formula) -> Result<SatResult> {
        self.scene.goal(i)?;
        let (base, a) = self.minus[i].get(self.solver, || self.scene.dom_and_goals_except(i))?;
        self.solver.is_sat_with(a, base, f)
    }

    /// Checks the three clauses of the boundary-condition definition.
    pub fn validate(&self, f: &Formula) -> Result<BcVerdict> {
        let inconsistent = !self.sat_with_all(f)?.is_sat();
        let minimality = (0..self.scene.goals().len())
            .map(|i| Ok(self.sat_without_goal(i, f)?.is_sat()))
            .collect::<Result<Vec<bool>>>()?;
        let not_g = Formula::not(self.scene.all_goals());
        let non_trivial = !self.solver.equiv(f, &not_g)?;
        Ok(BcVerdict::new(inconsistent, minimality, non_trivial))
    }

    pub fn is_bc(&self, f: &Formula) -> Result<bool> {
        Ok(self.validate(f)?.is_bc)
    }

    /// Goals implied by the domain and the other goals.
    pub fn extra_goals(&self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for (i, g) in self.scene.goals().iter().enumerate() {
            if !self
                .sat_without_goal(i, &Formula::not(g.formula.clone()))?
                .is_sat()
            {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// The domain is nonempty and not implied by the goals.
    pub fn has_influential_domain(&self) -> Result<bool> {
        if self.scene.domain().is_empty() {
            return Ok(false);
        }
        Ok(!self
            .solver
            .implies(&self.scene.all_goals(), &self.scene.dom())?)
    }

    /// `f` is a witness of the boundary condition `bc` when `bc & !f` is no
    /// longer a boundary condition.
    pub fn is_witness(&self, f: &Formula, bc: &Formula) -> Result<bool> {
        let weakened = Formula::and(bc.clone(), Formula::not(f.clone()));
        Ok(!self.is_bc(&weakened)?)
    }

    /// `f1` is strictly more general than `f2`.
    pub fn more_general(&self, f1: &Formula, f2: &Formula) -> Result<bool> {
        Ok(self.solver.implies(f2, f1)? && !self.solver.implies(f1, f2)?)
    }

    /// Drops boundary conditions that another one witnesses.
    ///
    /// Candidates are ordered by formula size and then printed form. A
    /// candidate is dropped when some other candidate witnesses it and is
    /// either not witnessed by it in turn or comes earlier in that order.
    /// Dropped candidates whose witnesses were all dropped as well are put
    /// back, so every removed condition keeps a witness in the output.
    /// Conditions without a formula are kept unchanged.
    pub fn contrasty_reduce(&self, bcs: Vec<BoundaryCondition>) -> Result<Vec<BoundaryCondition>> {
        let (mut items, words): (Vec<_>, Vec<_>) =
            bcs.into_iter().partition(|b| b.formula.is_some());
        items.sort_by_cached_key(|b| {
            let f = b.formula.as_ref().expect("partitioned");
            (f.size(), f.to_string())
        });
        let k = items.len();
        let formula = |i: usize| items[i].formula.as_ref().expect("partitioned");
        // witness[a][b]: candidate a witnesses candidate b.
        let mut witness = vec![vec![false; k]; k];
        for (a, row) in witness.iter_mut().enumerate() {
            for (b, cell) in row.iter_mut().enumerate() {
                if a != b {
                    *cell = self.is_witness(formula(a), formula(b))?;
                }
            }
        }
        let dominated = |w: usize, b: usize| witness[w][b] && (!witness[b][w] || w < b);
        let mut kept: Vec<bool> = (0..k)
            .map(|b| !(0..k).any(|w| w != b && dominated(w, b)))
            .collect();
        loop {
            let orphan = (0..k).find(|&b| !kept[b] && !(0..k).any(|w| kept[w] && witness[w][b]));
            match orphan {
                Some(b) => kept[b] = true,
                None => break,
            }
        }
        let mut out: Vec<BoundaryCondition> = items
            .into_iter()
            .zip(kept)
            .filter_map(|(b, keep)| keep.then_some(b))
            .collect();
        out.extend(words);
        Ok(out)
    }
}
