mod common;

use common::formula;
use divergent::sat::{bounded_sat_search, equiv, implies, is_sat, lasso_eval, Solver};
use divergent::{parse, Cube, Formula};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn solver_agrees_with_bounded_search(seed in any::<u64>()) {
        let f = formula(seed, 3, 12);
        let result = is_sat(&f).unwrap();
        if let Some(w) = result.witness() {
            prop_assert!(lasso_eval(w, &f));
        }
        if bounded_sat_search(&f, 4).is_some() {
            prop_assert!(result.is_sat(), "{}", f);
        }
    }

    #[test]
    fn implication_is_a_preorder(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let (f, g, h) = (formula(s1, 2, 7), formula(s2, 2, 7), formula(s3, 2, 7));
        let solver = Solver::default();
        prop_assert!(solver.implies(&f, &f).unwrap());
        // Strengthen the chain so the transitive case is actually exercised.
        let fg = Formula::and(f.clone(), g.clone());
        prop_assert!(solver.implies(&fg, &g).unwrap());
        let gh = Formula::or(g.clone(), h.clone());
        prop_assert!(solver.implies(&g, &gh).unwrap());
        prop_assert!(solver.implies(&fg, &gh).unwrap());
        if solver.implies(&f, &g).unwrap() && solver.implies(&g, &h).unwrap() {
            prop_assert!(solver.implies(&f, &h).unwrap());
        }
    }
}

#[test]
fn oracle_examples() {
    let w = bounded_sat_search(&parse("a").unwrap(), 1).unwrap();
    assert_eq!(w.cycle, vec![Cube::parse_literals(["a"]).unwrap()]);
    let f = parse("F (h & m) & !(h & m)").unwrap();
    let w = bounded_sat_search(&f, 2).unwrap();
    assert!(lasso_eval(&w, &f));
    assert!(bounded_sat_search(&parse("G a & F !a").unwrap(), 5).is_none());
}

#[test]
fn solver_examples() {
    assert!(!is_sat(&parse("G a & F !a").unwrap()).unwrap().is_sat());
    assert!(is_sat(&parse("G (h -> X p) & G (m -> X !p)").unwrap())
        .unwrap()
        .is_sat());
    assert!(implies(&parse("h & m").unwrap(), &parse("F (h & m)").unwrap()).unwrap());
    assert!(!implies(&parse("F (h & m)").unwrap(), &parse("h & m").unwrap()).unwrap());
    assert!(equiv(&parse("G a").unwrap(), &parse("false R a").unwrap()).unwrap());
    let solver = Solver::default();
    solver.is_sat(&Formula::True).unwrap();
    assert_eq!(solver.sat_calls(), 1);
}
