//! One-sided sequential counter over a set of literals.
//!
//! Register `at_least(j)` is forced true whenever at least `j` of the
//! counted literals are true; nothing forces it false, so the registers
//! are safe to add eagerly and bound later. Columns are built on demand,
//! which lets an optimization loop raise the tracked threshold as better
//! bounds require it.

use crate::lit::Lit;
use crate::sat::Solver;

pub struct SeqCounter {
    lits: Vec<Lit>,
    /// columns[j-1][i] = "at least j true among the first i+1 literals",
    /// defined for i >= j-1.
    columns: Vec<Vec<Lit>>,
}

impl SeqCounter {
    /// Registers the counted literals; no clauses are added until a
    /// threshold is requested.
    pub fn new(lits: Vec<Lit>) -> SeqCounter {
        SeqCounter { lits, columns: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    /// Extends the register matrix so thresholds up to `jmax` are usable.
    pub fn ensure(&mut self, solver: &mut Solver, jmax: usize) {
        let n = self.lits.len();
        let jmax = jmax.min(n);
        while self.columns.len() < jmax {
            let j = self.columns.len() + 1; // 1-based threshold being built
            let mut column = Vec::with_capacity(n + 1 - j);
            for i in (j - 1)..n {
                let reg = solver.new_var().positive();
                let x = self.lits[i];
                if j == 1 {
                    // x_i true -> at least one true so far.
                    solver.add_clause(&[!x, reg]);
                } else {
                    // previous row already at j-1 and x_i true -> j.
                    let prev_lower = self.columns[j - 2][i - 1 - (j - 2)];
                    solver.add_clause(&[!x, !prev_lower, reg]);
                }
                if i > j - 1 {
                    // monotone in the prefix length.
                    let prev_same: Lit = column[i - 1 - (j - 1)];
                    solver.add_clause(&[!prev_same, reg]);
                }
                column.push(reg);
            }
            self.columns.push(column);
        }
    }

    /// The register literal for "count >= j". `None` when the threshold is
    /// trivially true (j = 0) or impossible (j > n): callers must treat
    /// those as constants.
    pub fn at_least(&self, j: usize) -> Threshold {
        if j == 0 {
            Threshold::AlwaysTrue
        } else if j > self.lits.len() {
            Threshold::AlwaysFalse
        } else {
            let column = &self.columns[j - 1];
            Threshold::Register(column[self.lits.len() - 1 - (j - 1)])
        }
    }

    /// Hard-bounds the count: at most `k` of the literals may be true.
    pub fn bound_at_most(&mut self, solver: &mut Solver, k: usize) {
        if k >= self.lits.len() {
            return;
        }
        if k == 0 {
            for &l in &self.lits {
                solver.add_clause(&[!l]);
            }
            return;
        }
        self.ensure(solver, k + 1);
        match self.at_least(k + 1) {
            Threshold::Register(reg) => solver.add_clause(&[!reg]),
            Threshold::AlwaysFalse => {}
            Threshold::AlwaysTrue => unreachable!("k + 1 >= 1"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Threshold {
    AlwaysTrue,
    AlwaysFalse,
    Register(Lit),
}
