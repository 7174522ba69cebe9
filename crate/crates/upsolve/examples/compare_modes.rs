//! Lexicographic multi-level solving versus the single aggregate objective
//! on the same generated instance. Both must land on the same criteria
//! vector when they prove optimality; wall time and solver call counts
//! usually differ.
//!
//!     cargo run --release -p upsolve --example compare_modes

use upsolve::budget::Budget;
use upsolve::cudf::Criterion;
use upsolve::generator::{generate_instance, GeneratorConfig};
use upsolve::maxsat::SolveMode;
use upsolve::pipeline::run_request;

fn main() {
    let config = GeneratorConfig {
        seed: 7,
        names: 60,
        max_versions: 3,
        dep_density: 0.5,
        conflict_density: 0.2,
        installed_fraction: 0.4,
    };
    let (universe, request) = generate_instance(&config).expect("parameters are valid");
    println!(
        "instance: {} rules, {} names, request {:?}",
        universe.rule_count(),
        universe.name_count(),
        request.install[0].0
    );

    for criterion in [Criterion::Paranoid, Criterion::Trendy] {
        println!("\n== {criterion} ==");
        for mode in [SolveMode::Lexicographic, SolveMode::Aggregate] {
            let run = run_request(&universe, &request, criterion, mode, &Budget::unlimited(), 0)
                .expect("encoder output is well-shaped");
            match &run.best {
                Some((_, vector)) => println!(
                    "{mode:>9}: {:?} vector {vector} ({} solver calls, {:?})",
                    run.status(),
                    run.report.stats.solver_calls,
                    run.report.stats.wall
                ),
                None => println!("{mode:>9}: {:?}", run.status()),
            }
        }
    }
}
