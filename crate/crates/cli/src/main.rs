use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use divergent::buchi::Limits;
use divergent::report::Report;
use divergent::sat::{bounded_sat_search, SatResult, Solver};
use divergent::scene::{Checker, Scene};
use divergent::semantic::{semanticbc, SemanticOptions};
use divergent::syntac::{syntacbc, SyntacOptions};
use divergent::{parse, Atom, Formula};

/// Finds boundary conditions of LTL goal models.
#[derive(Parser)]
#[command(name = "divergent", version)]
struct Cli {
    /// Report zero elapsed time so output is byte-identical across runs.
    #[arg(long, global = true)]
    stable: bool,
    /// Maximum number of automaton states per translation or product.
    #[arg(long, global = true, value_name = "N")]
    state_cap: Option<usize>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide satisfiability of a formula.
    Sat { formula: String },
    /// Check a formula against the boundary-condition definition.
    Validate {
        scene: PathBuf,
        #[arg(long, value_name = "FORMULA")]
        bc: String,
    },
    /// Boundary conditions by syntactic substitution.
    Syntacbc {
        scene: PathBuf,
        /// Skip the contrasty reduction.
        #[arg(long)]
        no_reduce: bool,
    },
    /// Boundary conditions from synthesis products.
    Semanticbc(SemanticArgs),
    /// Translate a formula to a Büchi automaton.
    Translate {
        formula: String,
        /// Write the automaton in DOT format to this file.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Bounded brute-force satisfiability search.
    #[command(hide = true)]
    Oracle {
        formula: String,
        #[arg(long, default_value_t = 6)]
        bound: usize,
    },
}

#[derive(Args)]
struct SemanticArgs {
    scene: PathBuf,
    /// Comma-separated atoms that may be fused, replacing the scene's list.
    #[arg(long, value_delimiter = ',', conflicts_with = "all_fusible")]
    fusible: Option<Vec<String>>,
    /// Allow fusion on every atom of the scene.
    #[arg(long)]
    all_fusible: bool,
    /// Write the synthesis product of every goal pair as DOT files here.
    #[arg(long, value_name = "DIR")]
    dump_product: Option<PathBuf>,
    /// Runs to extract per fusion transition.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    max_runs_per_edge: u64,
    /// Keep trace formulas of every length, not only the shortest per pair.
    #[arg(long)]
    all_lengths: bool,
}

type Failure = Box<dyn std::error::Error>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load_scene(path: &Path) -> Result<Scene, Failure> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Scene::parse(&text).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn parse_formula(text: &str) -> Result<Formula, Failure> {
    Ok(parse(text)?)
}

fn outcome(positive: bool) -> ExitCode {
    if positive {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Failure> {
    let mut limits = Limits::default();
    if let Some(cap) = cli.state_cap {
        limits.state_cap = cap;
    }
    let solver = Solver::new(limits);
    let start = Instant::now();
    let finish = |report: Report| {
        let elapsed = if cli.stable {
            0
        } else {
            start.elapsed().as_millis() as u64
        };
        report.with_stats(solver.sat_calls(), elapsed)
    };
    match &cli.command {
        Command::Sat { formula } => {
            let f = parse_formula(formula)?;
            let result = solver.is_sat(&f)?;
            print_sat(cli.json, &result);
            Ok(outcome(result.is_sat()))
        }
        Command::Oracle { formula, bound } => {
            let f = parse_formula(formula)?;
            let result = match bounded_sat_search(&f, *bound) {
                Some(w) => SatResult::Sat(w),
                None => SatResult::Unsat,
            };
            print_sat(cli.json, &result);
            Ok(outcome(result.is_sat()))
        }
        Command::Validate { scene, bc } => {
            let s = load_scene(scene)?;
            let f = parse_formula(bc)?;
            let verdict = Checker::new(&s, &solver).validate(&f)?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&verdict)?);
            } else {
                println!("is_bc: {}", verdict.is_bc);
                println!("logical_inconsistency: {}", verdict.logical_inconsistency);
                for (g, m) in s.goals().iter().zip(&verdict.minimality) {
                    println!("minimality without {}: {m}", g.name);
                }
                println!("non_triviality: {}", verdict.non_triviality);
            }
            Ok(outcome(verdict.is_bc))
        }
        Command::Syntacbc { scene, no_reduce } => {
            let s = load_scene(scene)?;
            let opts = SyntacOptions {
                reduce: !no_reduce,
                ..SyntacOptions::default()
            };
            let out = syntacbc(&Checker::new(&s, &solver), opts)?;
            let report = finish(Report::syntac(&s, &out));
            print_report(cli.json, &report);
            Ok(outcome(!report.bcs.is_empty()))
        }
        Command::Semanticbc(args) => {
            let s = load_scene(&args.scene)?;
            let fusible: Option<BTreeSet<Atom>> = if args.all_fusible {
                Some(s.atoms().iter().cloned().collect())
            } else {
                args.fusible
                    .as_ref()
                    .map(|names| names.iter().map(|n| Atom::from(n.trim())).collect())
            };
            if let Some(f) = &fusible {
                // Rejects atoms the scene does not declare.
                s.with_fusible(f.clone())?;
            }
            let opts = SemanticOptions {
                fusible,
                max_runs_per_edge: args.max_runs_per_edge as usize,
                all_lengths: args.all_lengths,
                keep_products: args.dump_product.is_some(),
            };
            let out = semanticbc(&s, &solver, &opts)?;
            if let Some(dir) = &args.dump_product {
                fs::create_dir_all(dir)?;
                for pair in &out.pairs {
                    let name = format!("{}_{}.dot", pair.scope[0], pair.scope[1]);
                    let dot = pair.product.as_ref().expect("products kept").to_dot();
                    fs::write(dir.join(name), dot)?;
                }
            }
            let report = finish(Report::semantic(&s, &out));
            print_report(cli.json, &report);
            Ok(outcome(!report.bcs.is_empty()))
        }
        Command::Translate { formula, dot } => {
            let f = parse_formula(formula)?;
            let a = solver.translate(&f)?;
            match dot {
                Some(path) => {
                    fs::write(path, a.to_dot())?;
                    println!(
                        "{} states, {} transitions, {} accepting",
                        a.num_states(),
                        a.transitions().len(),
                        a.accepting_states().count()
                    );
                }
                None => print!("{}", a.to_dot()),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn print_sat(json: bool, result: &SatResult) {
    if json {
        let value = match result {
            SatResult::Sat(w) => serde_json::json!({ "result": "sat", "witness": w }),
            SatResult::Unsat => serde_json::json!({ "result": "unsat" }),
        };
        println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("serializes")
        );
    } else {
        match result {
            SatResult::Sat(w) => println!("SAT {w}"),
            SatResult::Unsat => println!("UNSAT"),
        }
    }
}

fn print_report(json: bool, report: &Report) {
    if json {
        println!("{}", report.to_json());
        return;
    }
    println!(
        "{} on {}: {} boundary conditions",
        report.algorithm,
        report.scene,
        report.bcs.len()
    );
    if let Some(reason) = &report.reason {
        println!("  {reason}");
    }
    for bc in &report.bcs {
        let text = match (&bc.formula, &bc.word) {
            (Some(f), _) => f.clone(),
            (None, Some(w)) => w.to_string(),
            (None, None) => String::new(),
        };
        print!("  [{}] {text}  (scope {}", bc.kind, bc.scope.join(", "));
        if let Some(a) = &bc.conflict_atom {
            print!("; conflict {a}");
        }
        println!(")");
    }
    if let (Some(t), Some(w)) = (report.stats.bc_t, report.stats.bc_w) {
        println!("  trace formulas: {t}, words: {w}");
    }
    println!(
        "  sat calls: {}, {} ms",
        report.stats.sat_calls, report.stats.elapsed_ms
    );
}
