//! Standalone MaxSAT solving of a `p wcnf` file: `o` improvement lines, an
//! `s` status line and the `v` model. With no argument a built-in instance
//! is solved. A second argument picks the mode (lex | aggregate).
//!
//!     cargo run -p upsolve --example maxsat_wcnf -- instance.wcnf aggregate

use upsolve::budget::Budget;
use upsolve::maxsat::standalone::run_wcnf;
use upsolve::maxsat::SolveMode;

const SAMPLE: &str = "\
c built-in sample: hard x1|x2, prefer neither, weight favours dropping x2
p wcnf 2 3 4
4 1 2 0
2 -1 0
1 -2 0
";

fn main() {
    let mut args = std::env::args().skip(1);
    let text = match args.next() {
        Some(path) => std::fs::read_to_string(&path).expect("input file is readable"),
        None => SAMPLE.to_string(),
    };
    let mode = match args.next().as_deref() {
        None | Some("lex") => SolveMode::Lexicographic,
        Some("aggregate") => SolveMode::Aggregate,
        Some(other) => {
            eprintln!("unknown mode {other:?} (expected lex or aggregate)");
            std::process::exit(1);
        }
    };
    match run_wcnf(&text, mode, &Budget::unlimited(), 0) {
        Ok(answer) => print!("{answer}"),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}
