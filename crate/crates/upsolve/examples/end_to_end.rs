//! Full pipeline on a small in-memory universe: parse, encode, translate,
//! solve lexicographically, decode and print the solution.
//!
//!     cargo run -p upsolve --example end_to_end

use upsolve::budget::Budget;
use upsolve::cudf::{parse_universe, render_solution, Criterion};
use upsolve::maxsat::SolveMode;
use upsolve::pipeline::run_request;

const UNIVERSE: &str = "\
package: editor
version: 1
depends: runtime
installed: true
conflicts: editor

package: editor
version: 2
depends: runtime (>= 2)
conflicts: editor

package: runtime
version: 1
installed: true
conflicts: runtime

package: runtime
version: 2
conflicts: runtime

request:
install: editor (= 2)
";

fn main() {
    let (universe, request) = parse_universe(UNIVERSE).expect("built-in universe parses");
    println!(
        "universe: {} rules over {} names, {} installed",
        universe.rule_count(),
        universe.name_count(),
        universe.installed_count()
    );

    for criterion in [Criterion::Paranoid, Criterion::Trendy] {
        let run = run_request(
            &universe,
            &request,
            criterion,
            SolveMode::Lexicographic,
            &Budget::unlimited(),
            0,
        )
        .expect("encoder output is well-shaped");

        let (profile, vector) = run.best.as_ref().expect("request is satisfiable");
        println!("\n== {criterion} ==");
        println!("status: {:?}, vector: {vector}", run.status());
        println!(
            "solver calls: {}, cores: {}, wall: {:?}",
            run.report.stats.solver_calls, run.report.stats.cores, run.report.stats.wall
        );
        print!("{}", render_solution(profile));
    }
}
