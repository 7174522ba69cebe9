//! Standalone SAT solving of a DIMACS CNF file; with no argument a small
//! built-in instance is solved.
//!
//!     cargo run -p upsolve --example sat_dimacs -- problem.cnf

use upsolve::budget::Budget;
use upsolve::sat::dimacs::run_dimacs;

const SAMPLE: &str = "\
c built-in sample
p cnf 4 6
1 2 0
-1 3 0
-2 3 0
-3 4 0
-3 -4 2 0
1 -4 0
";

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(&path).expect("input file is readable"),
        None => SAMPLE.to_string(),
    };
    match run_dimacs(&text, &Budget::unlimited()) {
        Ok(answer) => print!("{answer}"),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}
