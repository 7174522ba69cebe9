//! DIMACS CNF input and the standalone solving entry point.

use std::fmt::Write as _;

use thiserror::Error;

use super::{SatOutcome, Solver};
use crate::budget::Budget;
use crate::lit::Lit;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

fn syntax(line: usize, message: impl Into<String>) -> DimacsError {
    DimacsError::Syntax { line, message: message.into() }
}

/// Parses `p cnf` input: comment lines starting with `c`, an optional
/// header, and 0-terminated clauses (possibly spanning lines).
pub fn parse_dimacs(text: &str) -> Result<(usize, Vec<Vec<Lit>>), DimacsError> {
    let mut num_vars = 0usize;
    let mut clauses = Vec::new();
    let mut current: Vec<Lit> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let tokens: Vec<&str> = rest.split_whitespace().collect();
            if tokens.len() != 3 || tokens[0] != "cnf" {
                return Err(syntax(lineno, "expected `p cnf <vars> <clauses>`"));
            }
            num_vars = tokens[1]
                .parse()
                .map_err(|_| syntax(lineno, "invalid variable count"))?;
            continue;
        }
        for tok in line.split_whitespace() {
            let n: i64 = tok
                .parse()
                .map_err(|_| syntax(lineno, format!("invalid literal {tok:?}")))?;
            if n == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                let lit =
                    Lit::from_dimacs(n).ok_or_else(|| syntax(lineno, "literal out of range"))?;
                num_vars = num_vars.max(lit.var().index() + 1);
                current.push(lit);
            }
        }
    }
    if !current.is_empty() {
        clauses.push(current);
    }
    Ok((num_vars, clauses))
}

/// Solves DIMACS input and renders the conventional `s`/`v` answer lines.
pub fn run_dimacs(text: &str, budget: &Budget) -> Result<String, DimacsError> {
    let (num_vars, clauses) = parse_dimacs(text)?;
    let mut solver = Solver::new();
    solver.ensure_var(crate::lit::Var::from_index(num_vars.saturating_sub(1)));
    for clause in &clauses {
        solver.add_clause(clause);
    }
    let mut out = String::new();
    match solver.solve_with_budget(&[], budget) {
        SatOutcome::Sat(model) => {
            out.push_str("s SATISFIABLE\n");
            out.push('v');
            for (i, &value) in model.iter().enumerate() {
                let n = i as i64 + 1;
                write!(out, " {}", if value { n } else { -n }).unwrap();
            }
            out.push_str(" 0\n");
        }
        SatOutcome::Unsat(_) => out.push_str("s UNSATISFIABLE\n"),
        SatOutcome::Interrupted => out.push_str("s UNKNOWN\n"),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_header_and_clauses() {
        let text = "c sample\np cnf 5 3\n1 -5 4 0\n-1 5 3 4 0\n-3 -4 0\n";
        let (vars, clauses) = parse_dimacs(text).unwrap();
        assert_eq!(vars, 5);
        assert_eq!(clauses.len(), 3);
        assert_eq!(clauses[2], vec![Lit::from_dimacs(-3).unwrap(), Lit::from_dimacs(-4).unwrap()]);
    }

    #[test]
    fn satisfiable_input_yields_model_line() {
        let out = run_dimacs("p cnf 2 2\n1 2 0\n-1 0\n", &Budget::unlimited()).unwrap();
        assert!(out.starts_with("s SATISFIABLE\n"));
        assert!(out.contains("-1"));
        assert!(out.contains(" 2 "));
    }

    #[test]
    fn unsatisfiable_input() {
        let out = run_dimacs("p cnf 1 2\n1 0\n-1 0\n", &Budget::unlimited()).unwrap();
        assert_eq!(out, "s UNSATISFIABLE\n");
    }
}
