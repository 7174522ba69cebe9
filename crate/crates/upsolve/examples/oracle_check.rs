//! Cross-checks the solver against the exhaustive oracle on a batch of
//! small seeded universes, for both criteria and both modes.
//!
//!     cargo run -p upsolve --example oracle_check

use upsolve::budget::Budget;
use upsolve::cudf::Criterion;
use upsolve::generator::{generate_instance, GeneratorConfig};
use upsolve::maxsat::{SolveMode, SolveStatus};
use upsolve::oracle::{brute_force, BruteForceResult};
use upsolve::pipeline::run_request;

fn main() {
    let mut agreements = 0usize;
    let mut unsat = 0usize;
    for seed in 0..20u64 {
        let config = GeneratorConfig {
            seed,
            names: 4,
            max_versions: 3,
            dep_density: 0.5,
            conflict_density: 0.3,
            installed_fraction: 0.3,
        };
        let (universe, request) = generate_instance(&config).expect("parameters are valid");
        for criterion in [Criterion::Paranoid, Criterion::Trendy] {
            let reference = brute_force(&universe, &request, criterion, 20)
                .expect("instance is within the oracle limit");
            for mode in [SolveMode::Lexicographic, SolveMode::Aggregate] {
                let run =
                    run_request(&universe, &request, criterion, mode, &Budget::unlimited(), 0)
                        .expect("encoder output is well-shaped");
                match (&reference, run.best.as_ref()) {
                    (BruteForceResult::Optimal { vector, .. }, Some((_, solved))) => {
                        assert_eq!(run.status(), SolveStatus::Optimal);
                        assert_eq!(solved, vector, "seed {seed} {criterion} {mode}");
                        agreements += 1;
                    }
                    (BruteForceResult::Unsatisfiable { .. }, None) => {
                        assert_eq!(run.status(), SolveStatus::Unsatisfiable);
                        unsat += 1;
                    }
                    (expected, got) => {
                        panic!("seed {seed} {criterion} {mode}: oracle {expected:?} vs {got:?}")
                    }
                }
            }
        }
    }
    println!("all checks agree: {agreements} optima, {unsat} unsatisfiable runs");
}
