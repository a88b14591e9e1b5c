//! End-to-end acceptance checks. Prints one PASS or FAIL line per check and
//! exits with failure if any check fails.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use divergent::fixtures;
use divergent::gen::{atom_names, random_formula, random_scene};
use divergent::sat::{bounded_sat_search, lasso_eval, Solver};
use divergent::scene::{BcKind, BoundaryCondition, Checker, Scene};
use divergent::semantic::{semanticbc, SemanticOptions, SemanticOutcome};
use divergent::syntac::{syntacbc, SyntacOptions};
use divergent::{parse, Formula};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Named<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("took {elapsed:.2?}, limit {limit:?}")
    })
}

fn p(s: &str) -> Formula {
    parse(s).expect("formula parses")
}

fn fixture_path(name: &str) -> String {
    let p: PathBuf = [
        env!("CARGO_MANIFEST_DIR"),
        "..",
        "core",
        "fixtures",
        &format!("{name}.scene"),
    ]
    .iter()
    .collect();
    p.to_string_lossy().into_owned()
}

fn equiv_any(solver: &Solver, bcs: &[BoundaryCondition], f: &Formula) -> Option<usize> {
    bcs.iter().position(|b| {
        b.formula
            .as_ref()
            .is_some_and(|g| solver.equiv(g, f).unwrap_or(false))
    })
}

fn scope_scene(s: &Scene, bc: &BoundaryCondition) -> Scene {
    if bc.scope.len() == s.goals().len() {
        return s.clone();
    }
    let names = s.goal_names();
    let idx = |n: &String| {
        names
            .iter()
            .position(|x| x == n)
            .expect("scope names a goal")
    };
    s.reduced(idx(&bc.scope[0]), idx(&bc.scope[1]))
        .expect("pair scene")
}

fn mpc_validation() -> Check {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_divergent"))
        .args(["--json", "validate", &fixture_path("mpc"), "--bc", "h & m"])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!("exit {:?}", out.status.code())
    })?;
    ensure(
        v["is_bc"] == true
            && v["logical_inconsistency"] == true
            && v["minimality"] == serde_json::json!([true, true])
            && v["non_triviality"] == true,
        || format!("verdict {v}"),
    )?;
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("all clauses hold, {elapsed:.2?}"))
}

fn mpc_syntacbc() -> Check {
    let s = fixtures::load("mpc").expect("fixture");
    let solver = Solver::default();
    let start = Instant::now();
    let c = Checker::new(&s, &solver);
    let opts = SyntacOptions {
        reduce: false,
        validate: true,
    };
    let out = syntacbc(&c, opts).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    for text in [
        "F !(h -> X p) | !(m -> X !p)",
        "!(h -> X p) | F !(m -> X !p)",
    ] {
        let i = equiv_any(&solver, &out.bcs, &p(text))
            .ok_or_else(|| format!("nothing equivalent to {text}"))?;
        let f = out.bcs[i].formula.as_ref().expect("syntactic");
        ensure(c.is_bc(f).map_err(|e| e.to_string())?, || {
            format!("{f} fails validation")
        })?;
    }
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!(
        "{} conditions before reduction, {elapsed:.2?}",
        out.bcs.len()
    ))
}

fn elevator_semanticbc() -> Check {
    let s = fixtures::load("elevator").expect("fixture");
    let solver = Solver::default();
    let start = Instant::now();
    let out = semanticbc(&s, &solver, &SemanticOptions::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let traces: Vec<_> = out
        .bcs
        .iter()
        .filter(|b| b.kind == BcKind::TraceFormula)
        .cloned()
        .collect();
    ensure(traces.len() == 2, || {
        format!("{} trace formulas", traces.len())
    })?;
    let target = p("!atfloor & X call & X X G (!call & !open)");
    let i = equiv_any(&solver, &traces, &target).ok_or("expected trace formula missing")?;
    ensure(traces[i].conflict_atom.as_deref() == Some("open"), || {
        format!("conflict atom {:?}", traces[i].conflict_atom)
    })?;
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!("2 trace formulas, {elapsed:.2?}"))
}

fn atm_semanticbc() -> Check {
    let s = fixtures::load("atm").expect("fixture");
    let solver = Solver::default();
    let start = Instant::now();
    let out = semanticbc(&s, &solver, &SemanticOptions::default()).map_err(|e| e.to_string())?;
    let counts = (out.count(BcKind::TraceFormula), out.count(BcKind::Word));
    ensure(counts == (0, 0), || {
        format!("default fusible gives {counts:?}")
    })?;
    let all = SemanticOptions {
        fusible: Some(s.atoms().iter().cloned().collect()),
        ..SemanticOptions::default()
    };
    let out = semanticbc(&s, &solver, &all).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(
        out.bcs
            .iter()
            .any(|b| b.scope == ["g1", "g2"] && b.conflict_atom.as_deref() == Some("passok")),
        || "no condition on g1, g2 fusing passok".into(),
    )?;
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!(
        "0/0 by default, passok fusion with all atoms, {elapsed:.2?}"
    ))
}

fn extra_goals_rule_out_conditions() -> Check {
    let s = fixtures::load("extra_goal").expect("fixture");
    let solver = Solver::default();
    let start = Instant::now();
    let c = Checker::new(&s, &solver);
    let out = syntacbc(&c, SyntacOptions::default()).map_err(|e| e.to_string())?;
    ensure(out.bcs.is_empty(), || {
        format!("{} conditions", out.bcs.len())
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(2022);
    for _ in 0..200 {
        let f = random_formula(&mut rng, s.atoms(), 10);
        ensure(!c.is_bc(&f).map_err(|e| e.to_string())?, || {
            format!("{f} passes")
        })?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60))?;
    Ok(format!(
        "no condition, 200 candidates rejected, {elapsed:.2?}"
    ))
}

fn ngd_is_a_condition() -> Check {
    let s = fixtures::load("influential_domain").expect("fixture");
    let solver = Solver::default();
    let c = Checker::new(&s, &solver);
    let err = |e: divergent::Error| e.to_string();
    ensure(c.has_influential_domain().map_err(err)?, || {
        "domain not influential".into()
    })?;
    ensure(c.extra_goals().map_err(err)?.is_empty(), || {
        "scene has extra goals".into()
    })?;
    let v = c.validate(&s.ngd()).map_err(err)?;
    ensure(v.is_bc, || format!("NGD verdict {v:?}"))?;
    Ok("negated domain and goals is a boundary condition".into())
}

/// Every scene the correctness and witness checks run on, with the outcome
/// of both algorithms.
struct Corpus {
    runs: Vec<(Scene, Vec<BoundaryCondition>, SemanticOutcome)>,
}

fn corpus(solver: &Solver) -> Result<Corpus, String> {
    let mut scenes: Vec<Scene> = fixtures::ALL
        .iter()
        .map(|(n, _)| fixtures::load(n).expect("fixture"))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        scenes.push(random_scene(&mut rng, &atom_names(3), 2, 8));
    }
    let mut runs = Vec::new();
    for s in scenes {
        let c = Checker::new(&s, solver);
        let syn = syntacbc(&c, SyntacOptions::default()).map_err(|e| e.to_string())?;
        let mut sem =
            semanticbc(&s, solver, &SemanticOptions::default()).map_err(|e| e.to_string())?;
        let all = SemanticOptions {
            fusible: Some(s.atoms().iter().cloned().collect()),
            ..SemanticOptions::default()
        };
        if all.fusible.as_ref() != Some(s.fusible()) {
            let extra = semanticbc(&s, solver, &all).map_err(|e| e.to_string())?;
            sem.bcs.extend(extra.bcs);
        }
        runs.push((s, syn.bcs, sem));
    }
    Ok(Corpus { runs })
}

fn correctness(corpus: &Corpus, solver: &Solver) -> Check {
    let (mut checked, mut words) = (0, 0);
    for (s, syn, sem) in &corpus.runs {
        for bc in syn.iter().chain(&sem.bcs) {
            let Some(f) = &bc.formula else {
                words += 1;
                continue;
            };
            let scope = scope_scene(s, bc);
            let ok = Checker::new(&scope, solver)
                .is_bc(f)
                .map_err(|e| e.to_string())?;
            ensure(ok, || format!("{} in scene {}:\n{s}", bc, s.name()))?;
            checked += 1;
        }
    }
    ensure(checked > 0, || "no conditions produced".into())?;
    Ok(format!(
        "{checked} conditions valid on {} scenes ({words} words have no formula)",
        corpus.runs.len()
    ))
}

fn differential_sat() -> Check {
    let solver = Solver::default();
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    let atoms = atom_names(3);
    let (mut sat, mut found) = (0, 0);
    for _ in 0..500 {
        let f = random_formula(&mut rng, &atoms, 12);
        let result = solver.is_sat(&f).map_err(|e| e.to_string())?;
        if let Some(w) = result.witness() {
            ensure(lasso_eval(w, &f), || format!("witness {w} fails {f}"))?;
            sat += 1;
        }
        if bounded_sat_search(&f, 6).is_some() {
            ensure(result.is_sat(), || {
                format!("{f} has a bounded model but was judged unsatisfiable")
            })?;
            found += 1;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(300))?;
    Ok(format!(
        "500 formulas, {sat} satisfiable, {found} with bounded models, {elapsed:.2?}"
    ))
}

fn pairwise_upper_bound(corpus: &Corpus, solver: &Solver) -> Check {
    let mut checked = 0;
    for (s, _, sem) in &corpus.runs {
        for bc in &sem.bcs {
            let Some(f) = &bc.formula else { continue };
            let scope = scope_scene(s, bc);
            let (g1, g2) = (
                scope.goals()[0].formula.clone(),
                scope.goals()[1].formula.clone(),
            );
            let dom = scope.dom();
            let upper = Formula::or(
                Formula::conj([dom.clone(), g1.clone(), Formula::not(g2.clone())]),
                Formula::conj([dom, Formula::not(g1), g2]),
            );
            let ok = Checker::new(&scope, solver)
                .is_witness(&upper, f)
                .map_err(|e| e.to_string())?;
            ensure(ok, || format!("{bc} in scene {}", s.name()))?;
            checked += 1;
        }
    }
    ensure(checked > 0, || "no pairwise conditions produced".into())?;
    Ok(format!("{checked} pairwise conditions witnessed"))
}

fn main() -> ExitCode {
    let solver = Solver::default();
    let corpus = corpus(&solver);
    let checks: Vec<Named> = vec![
        ("mpc validation", Box::new(mpc_validation)),
        ("syntacbc on mpc", Box::new(mpc_syntacbc)),
        ("semanticbc on elevator", Box::new(elevator_semanticbc)),
        ("semanticbc on atm", Box::new(atm_semanticbc)),
        (
            "extra goals exclude conditions",
            Box::new(extra_goals_rule_out_conditions),
        ),
        ("negated domain and goals", Box::new(ngd_is_a_condition)),
        (
            "every emitted condition is valid",
            Box::new(|| {
                corpus
                    .as_ref()
                    .map_err(Clone::clone)
                    .and_then(|c| correctness(c, &solver))
            }),
        ),
        ("differential satisfiability", Box::new(differential_sat)),
        (
            "pairwise witness",
            Box::new(|| {
                corpus
                    .as_ref()
                    .map_err(Clone::clone)
                    .and_then(|c| pairwise_upper_bound(c, &solver))
            }),
        ),
    ];
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        checks.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
