//! Random formulas and scenes for property tests and benchmarks.

use rand::Rng;

use crate::ltl::{Atom, Formula};
use crate::scene::{NamedFormula, Scene};

/// A random formula over `atoms` whose [`Formula::size`] is at most
/// `max_size`.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, atoms: &[Atom], max_size: usize) -> Formula {
    let size = rng.gen_range(1..=max_size.max(1));
    build(rng, atoms, size)
}

fn leaf<R: Rng + ?Sized>(rng: &mut R, atoms: &[Atom]) -> Formula {
    match rng.gen_range(0..10) {
        0 => Formula::True,
        1 => Formula::False,
        _ => Formula::Atom(atoms[rng.gen_range(0..atoms.len())].clone()),
    }
}

/// A formula of [`Formula::size`] exactly `size`.
fn build<R: Rng + ?Sized>(rng: &mut R, atoms: &[Atom], size: usize) -> Formula {
    if size <= 1 {
        return leaf(rng, atoms);
    }
    if size == 2 || rng.gen_bool(0.4) {
        let op = rng.gen_range(0..4);
        // G and F count as two nodes once desugared.
        if op >= 2 && size >= 3 {
            let inner = build(rng, atoms, size - 2);
            return if op == 2 {
                Formula::globally(inner)
            } else {
                Formula::finally(inner)
            };
        }
        let inner = build(rng, atoms, size - 1);
        return if op % 2 == 0 {
            Formula::not(inner)
        } else {
            Formula::next(inner)
        };
    }
    let op = rng.gen_range(0..5);
    // An implication counts as `!a | b`.
    let cost = if op == 4 && size >= 4 { 2 } else { 1 };
    let left = rng.gen_range(1..size - cost);
    let a = build(rng, atoms, left);
    let b = build(rng, atoms, size - cost - left);
    match (op, cost) {
        (0, _) => Formula::and(a, b),
        (1, _) => Formula::or(a, b),
        (2, _) => Formula::until(a, b),
        (3, _) => Formula::release(a, b),
        (_, 2) => Formula::implies(a, b),
        _ => Formula::and(a, b),
    }
}

/// Atoms `a`, `b`, `c`, ... (at most 26).
pub fn atom_names(n: usize) -> Vec<Atom> {
    (0..n.min(26))
        .map(|i| Atom::from(((b'a' + i as u8) as char).to_string()))
        .collect()
}

/// A random goal of size at most `max_size`: half the time of the shape
/// `G (premise -> response)`, otherwise an arbitrary formula.
pub fn random_goal<R: Rng + ?Sized>(rng: &mut R, atoms: &[Atom], max_size: usize) -> Formula {
    if max_size >= 6 && rng.gen_bool(0.5) {
        let budget = rng.gen_range(2..=max_size - 4);
        let left = rng.gen_range(1..budget);
        Formula::globally(Formula::implies(
            build(rng, atoms, left),
            build(rng, atoms, budget - left),
        ))
    } else {
        random_formula(rng, atoms, max_size)
    }
}

/// A scene named `random` over `atoms` with `goals` random goals
/// `g1, g2, ...` of size at most `max_size`, no domain and every atom
/// fusible.
pub fn random_scene<R: Rng + ?Sized>(
    rng: &mut R,
    atoms: &[Atom],
    goals: usize,
    max_size: usize,
) -> Scene {
    let goals = (1..=goals)
        .map(|i| NamedFormula::new(format!("g{i}"), random_goal(rng, atoms, max_size)))
        .collect();
    Scene::new("random", atoms.to_vec(), None, Vec::new(), goals)
        .expect("generated scene is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn respects_size_bound() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let atoms = atom_names(3);
        for _ in 0..200 {
            let f = random_formula(&mut rng, &atoms, 12);
            assert!(f.size() <= 12);
            assert!(f.atoms().iter().all(|a| atoms.contains(a)));
            let g = random_goal(&mut rng, &atoms, 8);
            assert!(g.size() <= 8, "{g}");
        }
    }
}
