#![allow(dead_code)]

use divergent::gen::{atom_names, random_formula};
use divergent::sat::{enumerate_lassos, lasso_eval, letters};
use divergent::{Atom, Formula, LassoTrace};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn formula(seed: u64, atoms: usize, max_size: usize) -> Formula {
    random_formula(&mut rng(seed), &atom_names(atoms), max_size)
}

/// Every lasso over complete letters of `atoms` with at most `bound`
/// positions.
pub fn all_lassos(atoms: &[Atom], bound: usize) -> Vec<LassoTrace> {
    let mut out = Vec::new();
    enumerate_lassos(&letters(atoms), bound, |w| {
        out.push(w.clone());
        false
    });
    out
}

/// `f` and `g` agree on every lasso over `atoms` up to `bound` positions.
pub fn agree_on_lassos(f: &Formula, g: &Formula, atoms: &[Atom], bound: usize) -> bool {
    all_lassos(atoms, bound)
        .iter()
        .all(|w| lasso_eval(w, f) == lasso_eval(w, g))
}
