//! Anytime behaviour under a tight budget: a dense generated instance is
//! given one second; the run ends best-effort with the improvement history
//! and a still-valid profile.
//!
//!     cargo run --release -p upsolve --example anytime_budget

use std::time::Duration;

use upsolve::budget::Budget;
use upsolve::cudf::Criterion;
use upsolve::generator::{generate_instance, GeneratorConfig};
use upsolve::maxsat::SolveMode;
use upsolve::pipeline::run_request;

fn main() {
    let config = GeneratorConfig {
        seed: 11,
        names: 820,
        max_versions: 4,
        dep_density: 0.6,
        conflict_density: 0.9,
        installed_fraction: 1.0,
    };
    let (universe, request) = generate_instance(&config).expect("parameters are valid");
    println!("instance: {} rules over {} names", universe.rule_count(), universe.name_count());

    let budget = Budget::with_timeout(Duration::from_secs(1));
    let run = run_request(
        &universe,
        &request,
        Criterion::Trendy,
        SolveMode::Lexicographic,
        &budget,
        0,
    )
    .expect("encoder output is well-shaped");

    println!("status after 1s: {:?}", run.status());
    println!("improvement history ({} entries):", run.history.len());
    for vector in &run.history {
        println!("  {vector}");
    }
    match &run.best {
        Some((profile, vector)) => {
            let valid = run
                .validity(&universe, &request)
                .map(|v| v.is_valid())
                .unwrap_or(false);
            println!("best vector {vector}, profile of {} packages, valid: {valid}", profile.len());
        }
        None => println!("no model found within the budget"),
    }
}
