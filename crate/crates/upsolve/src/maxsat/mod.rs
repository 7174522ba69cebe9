//! MaxSAT solving over translated instances, in two modes.
//!
//! Lexicographic mode solves one weight stratum at a time with a
//! core-guided loop: every soft clause gets an assumption selector, each
//! unsat core buys one unit of cost by adding a fresh relaxation variable
//! to every core member plus an at-most-one constraint over the new
//! variables, and a stratum's optimum is frozen into the hard set before
//! the next one starts. Aggregate mode instead strengthens a bound on the
//! single weighted objective until the solver proves no cheaper model
//! exists. Both modes are anytime: the best hard-satisfying model seen so
//! far is always available.

mod counter;
pub mod standalone;

pub use counter::{SeqCounter, Threshold};

use std::time::{Duration, Instant};

use num_bigint::BigUint;

use crate::budget::Budget;
use crate::cudf::Profile;
use crate::lit::{Lit, Var};
use crate::pb::VarMap;
use crate::sat::{SatOutcome, Solver};
use crate::wcnf::{bitwise_amo, group_levels, Clause, SoftGroup, TranslateError, Wcnf};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMode {
    Lexicographic,
    Aggregate,
}

impl std::fmt::Display for SolveMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SolveMode::Lexicographic => write!(f, "lex"),
            SolveMode::Aggregate => write!(f, "aggregate"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    /// Every level proven optimal.
    Optimal,
    /// The budget ran out; the report carries the best model found.
    BestEffort,
    /// The hard clauses alone are unsatisfiable.
    Unsatisfiable,
    /// The budget ran out before any model was found.
    Interrupted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelResult {
    pub index: usize,
    /// Violated soft clauses at this level (lexicographic mode), or the
    /// weighted objective value (aggregate mode).
    pub cost: BigUint,
    pub proven: bool,
    /// Unsat cores processed while optimizing the level.
    pub cores: u64,
}

#[derive(Debug, Clone, Default)]
pub struct SolveStats {
    pub solver_calls: u64,
    pub cores: u64,
    pub wall: Duration,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub mode: SolveMode,
    pub status: SolveStatus,
    pub levels: Vec<LevelResult>,
    /// Best hard-satisfying model found; projecting it down to a profile is
    /// the caller's job (see [`decode`]).
    pub final_model: Option<Vec<bool>>,
    pub stats: SolveStats,
}

impl SolveReport {
    /// Per-level costs as plain integers (lexicographic mode).
    pub fn cost_vector(&self) -> Option<Vec<u64>> {
        if self.mode != SolveMode::Lexicographic {
            return None;
        }
        self.levels
            .iter()
            .map(|l| u64::try_from(&l.cost).ok())
            .collect()
    }
}

/// Observer for improving models; invoked in improvement order.
pub type Progress<'a> = &'a mut dyn FnMut(&[bool]);

/// Number of violated soft clauses per stratum under a model.
pub fn violated_counts(model: &[bool], groups: &[SoftGroup]) -> Vec<u64> {
    groups
        .iter()
        .map(|g| {
            g.units
                .iter()
                .filter(|l| model[l.var().index()] != l.is_positive())
                .count() as u64
        })
        .collect()
}

/// The weighted objective value of a model: sum of violated soft weights.
pub fn aggregate_cost(model: &[bool], groups: &[SoftGroup]) -> BigUint {
    let counts = violated_counts(model, groups);
    groups
        .iter()
        .zip(counts)
        .fold(BigUint::from(0u32), |acc, (g, c)| acc + &g.weight * BigUint::from(c))
}

/// Projects a model back to an installation profile: exactly the package
/// variables assigned true; Root, Noop, indicators and every auxiliary are
/// ignored.
pub fn decode(model: &[bool], varmap: &VarMap) -> Profile {
    Profile::from_ids(varmap.packages().filter_map(|(var, id)| {
        if model[var.index()] {
            Some(id.clone())
        } else {
            None
        }
    }))
}

fn fresh_solver(wcnf: &Wcnf, seed: u64) -> Solver {
    let mut solver = Solver::with_seed(seed);
    if wcnf.num_vars > 0 {
        solver.ensure_var(Var::from_index(wcnf.num_vars - 1));
    }
    for clause in &wcnf.hard {
        solver.add_clause(clause);
    }
    solver
}

/// Outcome of optimizing one uniform-weight stratum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LevelOutcome {
    Optimal { cost: u64, cores: u64, model: Vec<bool> },
    /// The hard clauses are unsatisfiable (empty core observed).
    HardUnsatisfiable,
    Interrupted,
}

struct SoftState {
    unit: Lit,
    relax: Vec<Lit>,
    selector: Var,
}

/// Core-guided partial MaxSAT on one stratum against the clause database
/// already inside `solver`. Every relaxation clause added here stays in the
/// database; the caller decides whether to harden the stratum afterwards.
fn solve_level(
    solver: &mut Solver,
    units: &[Lit],
    budget: &Budget,
    stats: &mut SolveStats,
) -> (LevelOutcome, Vec<SoftState>) {
    let mut softs: Vec<SoftState> = units
        .iter()
        .map(|&unit| {
            let selector = solver.new_var();
            solver.add_clause(&[unit, selector.negative()]);
            SoftState { unit, relax: Vec::new(), selector }
        })
        .collect();

    let mut cost = 0u64;
    loop {
        let assumptions: Vec<Lit> = softs.iter().map(|s| s.selector.positive()).collect();
        stats.solver_calls += 1;
        match solver.solve_with_budget(&assumptions, budget) {
            SatOutcome::Sat(model) => {
                return (LevelOutcome::Optimal { cost, cores: cost, model }, softs)
            }
            SatOutcome::Interrupted => return (LevelOutcome::Interrupted, softs),
            SatOutcome::Unsat(core) => {
                if core.is_empty() {
                    return (LevelOutcome::HardUnsatisfiable, softs);
                }
                stats.cores += 1;
                cost += 1;
                let mut new_relax = Vec::with_capacity(core.len());
                for lit in &core {
                    let index = softs
                        .iter()
                        .position(|s| s.selector == lit.var())
                        .expect("core literals are selectors");
                    let relax = solver.new_var().positive();
                    let fresh_selector = solver.new_var();
                    // Retire the old materialization and re-add it with one
                    // more relaxation literal.
                    solver.add_clause(&[softs[index].selector.negative()]);
                    softs[index].relax.push(relax);
                    softs[index].selector = fresh_selector;
                    let mut clause = vec![softs[index].unit];
                    clause.extend_from_slice(&softs[index].relax);
                    clause.push(fresh_selector.negative());
                    solver.add_clause(&clause);
                    new_relax.push(relax.var());
                }
                // At most one of this round's relaxation variables.
                let mut next_var = solver.num_vars();
                let (amo_clauses, _) = bitwise_amo(&new_relax, &mut next_var);
                if next_var > solver.num_vars() {
                    solver.ensure_var(Var::from_index(next_var - 1));
                }
                for clause in &amo_clauses {
                    solver.add_clause(clause);
                }
            }
        }
    }
}

/// Standalone form of the stratum optimizer: builds a fresh solver over the
/// given hard clauses and minimizes the number of violated unit softs.
pub fn solve_uniform_level(
    hard: &[Clause],
    softs: &[Lit],
    budget: &Budget,
) -> LevelOutcome {
    let mut solver = Solver::new();
    let max_var = hard
        .iter()
        .flatten()
        .chain(softs.iter())
        .map(|l| l.var().index())
        .max();
    if let Some(m) = max_var {
        solver.ensure_var(Var::from_index(m));
    }
    for clause in hard {
        solver.add_clause(clause);
    }
    let mut stats = SolveStats::default();
    solve_level(&mut solver, softs, budget, &mut stats).0
}

/// Freezes a finished stratum: re-adds every soft materialization as hard
/// (selector pinned true) and bounds the stratum's violation count so no
/// later level can regress it.
fn harden_level(solver: &mut Solver, softs: &[SoftState], cost: u64) {
    for soft in softs {
        solver.add_clause(&[soft.selector.positive()]);
    }
    let mut counter = SeqCounter::new(softs.iter().map(|s| !s.unit).collect());
    counter.bound_at_most(solver, cost as usize);
}

/// Multi-level optimization: strata in descending weight order, each solved
/// to its minimum and then hardened. Anytime: on budget exhaustion the
/// completed levels stay proven and the remaining ones carry upper bounds
/// from the best model.
pub fn solve_lexicographic(
    wcnf: &Wcnf,
    budget: &Budget,
    seed: u64,
    mut progress: Option<Progress<'_>>,
) -> Result<SolveReport, TranslateError> {
    let start = Instant::now();
    let groups = group_levels(wcnf)?;
    let mut stats = SolveStats::default();
    let mut solver = fresh_solver(wcnf, seed);

    stats.solver_calls += 1;
    let mut best_model = match solver.solve_with_budget(&[], budget) {
        SatOutcome::Sat(model) => model,
        SatOutcome::Unsat(_) => {
            stats.wall = start.elapsed();
            return Ok(SolveReport {
                mode: SolveMode::Lexicographic,
                status: SolveStatus::Unsatisfiable,
                levels: Vec::new(),
                final_model: None,
                stats,
            });
        }
        SatOutcome::Interrupted => {
            stats.wall = start.elapsed();
            return Ok(SolveReport {
                mode: SolveMode::Lexicographic,
                status: SolveStatus::Interrupted,
                levels: Vec::new(),
                final_model: None,
                stats,
            });
        }
    };
    if let Some(cb) = progress.as_mut() {
        cb(&best_model);
    }

    let mut levels: Vec<LevelResult> = Vec::new();
    let mut ran_out = false;
    for (index, group) in groups.iter().enumerate() {
        if group.units.is_empty() {
            levels.push(LevelResult {
                index,
                cost: BigUint::from(0u32),
                proven: true,
                cores: 0,
            });
            continue;
        }
        if budget.exhausted() {
            ran_out = true;
            break;
        }
        let (outcome, softs) = solve_level(&mut solver, &group.units, budget, &mut stats);
        match outcome {
            LevelOutcome::Optimal { cost, cores, model } => {
                harden_level(&mut solver, &softs, cost);
                levels.push(LevelResult {
                    index,
                    cost: BigUint::from(cost),
                    proven: true,
                    cores,
                });
                best_model = model;
                if let Some(cb) = progress.as_mut() {
                    cb(&best_model);
                }
            }
            LevelOutcome::Interrupted => {
                ran_out = true;
                break;
            }
            LevelOutcome::HardUnsatisfiable => {
                // Cannot happen after the initial SAT answer: relaxation and
                // hardening both preserve satisfiability.
                unreachable!("hard clauses became unsatisfiable mid-run");
            }
        }
    }

    // Unfinished levels carry upper bounds measured on the best model.
    if ran_out {
        let counts = violated_counts(&best_model, &groups);
        for (index, &count) in counts.iter().enumerate().skip(levels.len()) {
            levels.push(LevelResult {
                index,
                cost: BigUint::from(count),
                proven: false,
                cores: 0,
            });
        }
    }

    stats.wall = start.elapsed();
    Ok(SolveReport {
        mode: SolveMode::Lexicographic,
        status: if ran_out { SolveStatus::BestEffort } else { SolveStatus::Optimal },
        levels,
        final_model: Some(best_model),
        stats,
    })
}

/// Single-objective optimization: find a model, then repeatedly demand a
/// strictly cheaper one until UNSAT. The weighted bound is expressed as a
/// lexicographic strict decrease over per-stratum violation counters, which
/// is equivalent because each stratum's weight dominates everything below
/// it.
pub fn solve_aggregate(
    wcnf: &Wcnf,
    budget: &Budget,
    seed: u64,
    mut progress: Option<Progress<'_>>,
) -> Result<SolveReport, TranslateError> {
    let start = Instant::now();
    let groups = group_levels(wcnf)?;
    let mut stats = SolveStats::default();
    let mut solver = fresh_solver(wcnf, seed);

    stats.solver_calls += 1;
    let mut best_model = match solver.solve_with_budget(&[], budget) {
        SatOutcome::Sat(model) => model,
        SatOutcome::Unsat(_) => {
            stats.wall = start.elapsed();
            return Ok(SolveReport {
                mode: SolveMode::Aggregate,
                status: SolveStatus::Unsatisfiable,
                levels: Vec::new(),
                final_model: None,
                stats,
            });
        }
        SatOutcome::Interrupted => {
            stats.wall = start.elapsed();
            return Ok(SolveReport {
                mode: SolveMode::Aggregate,
                status: SolveStatus::Interrupted,
                levels: Vec::new(),
                final_model: None,
                stats,
            });
        }
    };
    if let Some(cb) = progress.as_mut() {
        cb(&best_model);
    }

    let mut counters: Vec<SeqCounter> = groups
        .iter()
        .map(|g| SeqCounter::new(g.units.iter().map(|&l| !l).collect()))
        .collect();

    let mut best_counts = violated_counts(&best_model, &groups);
    let mut proven = false;
    loop {
        if budget.exhausted() {
            break;
        }
        add_lex_decrease(&mut solver, &mut counters, &best_counts);
        stats.solver_calls += 1;
        match solver.solve_with_budget(&[], budget) {
            SatOutcome::Sat(model) => {
                let counts = violated_counts(&model, &groups);
                debug_assert!(counts < best_counts, "bound must strictly improve");
                best_counts = counts;
                best_model = model;
                if let Some(cb) = progress.as_mut() {
                    cb(&best_model);
                }
            }
            SatOutcome::Unsat(_) => {
                proven = true;
                break;
            }
            SatOutcome::Interrupted => break,
        }
    }

    let cost = groups
        .iter()
        .zip(&best_counts)
        .fold(BigUint::from(0u32), |acc, (g, &c)| acc + &g.weight * BigUint::from(c));
    stats.wall = start.elapsed();
    Ok(SolveReport {
        mode: SolveMode::Aggregate,
        status: if proven { SolveStatus::Optimal } else { SolveStatus::BestEffort },
        levels: vec![LevelResult {
            index: 0,
            cost,
            proven,
            cores: 0,
        }],
        final_model: Some(best_model),
        stats,
    })
}

/// Requires the per-stratum violation counts to be lexicographically
/// strictly below `digits`. One clause per prefix length; thresholds that
/// are constants drop out of (or discharge) their clause.
fn add_lex_decrease(solver: &mut Solver, counters: &mut [SeqCounter], digits: &[u64]) {
    let last = digits.len() - 1;
    for t in 0..digits.len() {
        let mut clause: Vec<Lit> = Vec::new();
        let mut satisfied = false;
        for s in 0..t {
            // prefix term: ¬(count_s >= digit_s)
            counters[s].ensure(solver, digits[s] as usize);
            match counters[s].at_least(digits[s] as usize) {
                Threshold::AlwaysTrue => {}          // literal is false, drop
                Threshold::AlwaysFalse => satisfied = true,
                Threshold::Register(reg) => clause.push(!reg),
            }
        }
        let bound = if t == last { digits[t] } else { digits[t] + 1 };
        counters[t].ensure(solver, bound as usize);
        match counters[t].at_least(bound as usize) {
            Threshold::AlwaysTrue => {}              // literal is false, drop
            Threshold::AlwaysFalse => satisfied = true,
            Threshold::Register(reg) => clause.push(!reg),
        }
        if !satisfied {
            solver.add_clause(&clause);
        }
    }
}

/// In-memory convenience: run the configured mode on a translated instance.
pub fn solve(
    wcnf: &Wcnf,
    mode: SolveMode,
    budget: &Budget,
    seed: u64,
    progress: Option<Progress<'_>>,
) -> Result<SolveReport, TranslateError> {
    match mode {
        SolveMode::Lexicographic => solve_lexicographic(wcnf, budget, seed, progress),
        SolveMode::Aggregate => solve_aggregate(wcnf, budget, seed, progress),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cudf::{evaluate_criteria, parse_universe, validate_profile, Criterion, PackageId};
    use crate::pb::encode;
    use crate::wcnf::pb_to_wcnf;

    fn lit(n: i64) -> Lit {
        Lit::from_dimacs(n).unwrap()
    }

    const MICRO: &str = "\
package: p
version: 1
conflicts: p
installed: true

package: p
version: 2
conflicts: p

package: q
version: 1
conflicts: p (= 2)
installed: true

request:
install: p (= 2)
";

    #[test]
    fn contradictory_softs_cost_one() {
        let outcome = solve_uniform_level(&[], &[lit(1), lit(-1)], &Budget::unlimited());
        match outcome {
            LevelOutcome::Optimal { cost, cores, .. } => {
                assert_eq!(cost, 1);
                assert_eq!(cores, 1);
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn one_of_two_conflicting_softs_survives() {
        // Enumerating the 8 assignments: x3 can always hold, and exactly
        // one of x1, x2 given the hard clause.
        let hard = vec![vec![lit(-1), lit(-2)]];
        let softs = vec![lit(1), lit(2), lit(3)];
        match solve_uniform_level(&hard, &softs, &Budget::unlimited()) {
            LevelOutcome::Optimal { cost, model, .. } => {
                assert_eq!(cost, 1);
                assert!(model[2], "x3 must be satisfied");
                assert_eq!(model[0] as u8 + model[1] as u8, 1);
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn hard_falsum_is_distinguished() {
        let hard = vec![vec![]];
        match solve_uniform_level(&hard, &[lit(1)], &Budget::unlimited()) {
            LevelOutcome::HardUnsatisfiable => {}
            other => panic!("expected hard-unsat, got {other:?}"),
        }
    }

    fn micro_wcnf(criterion: Criterion) -> (Wcnf, crate::pb::PbProblem) {
        let (u, r) = parse_universe(MICRO).unwrap();
        let problem = encode(&u, &r, criterion);
        let wcnf = pb_to_wcnf(&problem).unwrap();
        (wcnf, problem)
    }

    #[test]
    fn micro_lexicographic_paranoid() {
        let (wcnf, problem) = micro_wcnf(Criterion::Paranoid);
        let report =
            solve_lexicographic(&wcnf, &Budget::unlimited(), 0, None).unwrap();
        assert_eq!(report.status, SolveStatus::Optimal);
        assert_eq!(report.cost_vector().unwrap(), vec![1, 2]);
        // The decoded profile is valid and matches the oracle vector.
        let (u, r) = parse_universe(MICRO).unwrap();
        let profile = decode(report.final_model.as_ref().unwrap(), &problem.varmap);
        assert!(validate_profile(&u, &r, &profile).unwrap().is_valid());
        let vector =
            evaluate_criteria(&u, &u.initial_profile(), &profile, Criterion::Paranoid);
        assert_eq!(vector.values, vec![1, 2]);
    }

    #[test]
    fn micro_lexicographic_trendy() {
        let (wcnf, _) = micro_wcnf(Criterion::Trendy);
        let report =
            solve_lexicographic(&wcnf, &Budget::unlimited(), 0, None).unwrap();
        assert_eq!(report.status, SolveStatus::Optimal);
        assert_eq!(report.cost_vector().unwrap(), vec![1, 0, 0]);
    }

    #[test]
    fn micro_aggregate_paranoid_cost() {
        let (wcnf, problem) = micro_wcnf(Criterion::Paranoid);
        let report = solve_aggregate(&wcnf, &Budget::unlimited(), 0, None).unwrap();
        assert_eq!(report.status, SolveStatus::Optimal);
        // Oracle optimum (1, 2) with base 4: aggregate 4*1 + 2 = 6.
        assert_eq!(report.levels[0].cost, BigUint::from(6u32));
        let profile = decode(report.final_model.as_ref().unwrap(), &problem.varmap);
        let (u, r) = parse_universe(MICRO).unwrap();
        assert!(validate_profile(&u, &r, &profile).unwrap().is_valid());
    }

    #[test]
    fn unsatisfiable_instance_reported() {
        let doc = "package: a\nversion: 1\n\nrequest:\ninstall: z\n";
        let (u, r) = parse_universe(doc).unwrap();
        let wcnf = pb_to_wcnf(&encode(&u, &r, Criterion::Paranoid)).unwrap();
        for mode in [SolveMode::Lexicographic, SolveMode::Aggregate] {
            let report = solve(&wcnf, mode, &Budget::unlimited(), 0, None).unwrap();
            assert_eq!(report.status, SolveStatus::Unsatisfiable);
            assert!(report.final_model.is_none());
        }
    }

    #[test]
    fn zero_cost_instance_terminates_after_one_unsat() {
        let doc = "package: a\nversion: 1\ninstalled: true\n\nrequest:\ninstall: a\n";
        let (u, r) = parse_universe(doc).unwrap();
        let wcnf = pb_to_wcnf(&encode(&u, &r, Criterion::Paranoid)).unwrap();
        let report = solve_aggregate(&wcnf, &Budget::unlimited(), 0, None).unwrap();
        assert_eq!(report.status, SolveStatus::Optimal);
        assert_eq!(report.levels[0].cost, BigUint::from(0u32));
    }

    #[test]
    fn modes_agree_on_the_micro_instance() {
        for criterion in [Criterion::Paranoid, Criterion::Trendy] {
            let (wcnf, problem) = micro_wcnf(criterion);
            let (u, _) = parse_universe(MICRO).unwrap();
            let initial = u.initial_profile();
            let vectors: Vec<Vec<u64>> = [SolveMode::Lexicographic, SolveMode::Aggregate]
                .iter()
                .map(|&mode| {
                    let report =
                        solve(&wcnf, mode, &Budget::unlimited(), 0, None).unwrap();
                    assert_eq!(report.status, SolveStatus::Optimal);
                    let profile =
                        decode(report.final_model.as_ref().unwrap(), &problem.varmap);
                    evaluate_criteria(&u, &initial, &profile, criterion).values
                })
                .collect();
            assert_eq!(vectors[0], vectors[1]);
        }
    }

    #[test]
    fn hardening_is_sound() {
        // Re-solving a hardened stratum must reproduce its cost.
        let (wcnf, _) = micro_wcnf(Criterion::Paranoid);
        let groups = group_levels(&wcnf).unwrap();
        let mut solver = fresh_solver(&wcnf, 0);
        let mut stats = SolveStats::default();
        assert!(solver.solve(&[]).is_sat());
        let (outcome, softs) = solve_level(&mut solver, &groups[0].units, &Budget::unlimited(), &mut stats);
        let cost = match outcome {
            LevelOutcome::Optimal { cost, .. } => cost,
            other => panic!("expected optimal, got {other:?}"),
        };
        harden_level(&mut solver, &softs, cost);
        let (again, _) = solve_level(&mut solver, &groups[0].units, &Budget::unlimited(), &mut stats);
        match again {
            LevelOutcome::Optimal { cost: cost2, .. } => assert_eq!(cost2, cost),
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn relaxation_accounting() {
        // Cores processed per level equals the level cost.
        let (wcnf, _) = micro_wcnf(Criterion::Paranoid);
        let report = solve_lexicographic(&wcnf, &Budget::unlimited(), 0, None).unwrap();
        for level in &report.levels {
            assert_eq!(BigUint::from(level.cores), level.cost);
        }
    }

    #[test]
    fn decode_projects_package_vars_only() {
        let (wcnf, problem) = micro_wcnf(Criterion::Paranoid);
        let mut model = vec![false; wcnf.num_vars];
        model[1] = true; // p@2
        model[wcnf.num_vars - 1] = true; // an aux bit, ignored
        let profile = decode(&model, &problem.varmap);
        assert_eq!(profile, Profile::from_ids([PackageId::new("p", 2)]));
        let empty = decode(&vec![false; wcnf.num_vars], &problem.varmap);
        assert!(empty.is_empty());
    }

    #[test]
    fn interrupted_before_any_model() {
        let (wcnf, _) = micro_wcnf(Criterion::Paranoid);
        let budget = Budget::with_timeout(Duration::ZERO);
        let report = solve_lexicographic(&wcnf, &budget, 0, None).unwrap();
        assert_eq!(report.status, SolveStatus::Interrupted);
        assert!(report.final_model.is_none());
    }

    #[test]
    fn progress_reports_improving_models() {
        let (wcnf, _) = micro_wcnf(Criterion::Trendy);
        let mut seen = 0usize;
        let mut cb = |_: &[bool]| seen += 1;
        let report =
            solve_lexicographic(&wcnf, &Budget::unlimited(), 0, Some(&mut cb)).unwrap();
        assert_eq!(report.status, SolveStatus::Optimal);
        // Initial model plus one per non-empty solved level.
        let nonempty = report
            .levels
            .iter()
            .zip(group_levels(&wcnf).unwrap())
            .filter(|(_, g)| !g.units.is_empty())
            .count();
        assert_eq!(seen, 1 + nonempty);
    }
}
