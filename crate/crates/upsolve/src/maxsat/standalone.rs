//! Standalone WCNF solving: reads the `p wcnf` format, prints `o <cost>`
//! improvement lines, an `s` status line and a `v` model line.

use std::fmt::Write as _;

use thiserror::Error;

use super::{aggregate_cost, solve, SolveMode, SolveStatus};
use crate::budget::Budget;
use crate::wcnf::io::{parse_wcnf, WcnfParseError};
use crate::wcnf::{group_levels, TranslateError};

#[derive(Debug, Error)]
pub enum StandaloneError {
    #[error(transparent)]
    Parse(#[from] WcnfParseError),
    #[error(transparent)]
    Translate(#[from] TranslateError),
}

pub fn run_wcnf(
    text: &str,
    mode: SolveMode,
    budget: &Budget,
    seed: u64,
) -> Result<String, StandaloneError> {
    let wcnf = parse_wcnf(text)?;
    let groups = group_levels(&wcnf)?;

    let mut out = String::new();
    let mut last_cost = None;
    let mut emit = |model: &[bool]| {
        let cost = aggregate_cost(model, &groups);
        if last_cost.as_ref().is_none_or(|c| cost < *c) {
            writeln!(out, "o {cost}").unwrap();
            last_cost = Some(cost);
        }
    };
    let report = solve(&wcnf, mode, budget, seed, Some(&mut emit))?;

    let status = match report.status {
        SolveStatus::Optimal => "s OPTIMUM FOUND",
        SolveStatus::BestEffort => "s SATISFIABLE",
        SolveStatus::Unsatisfiable => "s UNSATISFIABLE",
        SolveStatus::Interrupted => "s UNKNOWN",
    };
    out.push_str(status);
    out.push('\n');

    if let Some(model) = &report.final_model {
        out.push('v');
        for (i, &value) in model.iter().take(wcnf.num_vars).enumerate() {
            let n = i as i64 + 1;
            write!(out, " {}", if value { n } else { -n }).unwrap();
        }
        out.push_str(" 0\n");
    }
    Ok(out)
}
