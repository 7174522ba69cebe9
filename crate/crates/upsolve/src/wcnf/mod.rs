//! Translation from pseudo-Boolean problems to Partial Weighted MaxSAT.
//!
//! Clause-shaped constraints pass through as hard clauses. The `<= 1`
//! cardinality constraints are compiled to hard binary clauses with the
//! bitwise encoding: each of the m constrained variables is forced onto the
//! binary pattern of its position across ceil(log2 m) fresh bit variables,
//! so no two can be true at once. Objective terms become weighted unit soft
//! clauses asserting the negation of the term's literal.

pub mod io;

use num_bigint::BigUint;
use thiserror::Error;

use crate::lit::{Lit, Var};
use crate::pb::{PbProblem, VarRole};

pub type Clause = Vec<Lit>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoftClause {
    pub lits: Clause,
    pub weight: BigUint,
}

/// A fresh variable introduced by the bitwise encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxBit {
    pub var: Var,
    /// The package name whose version-exclusivity constraint spawned it.
    pub group: String,
    pub bit: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wcnf {
    /// Total variable count including bitwise auxiliaries.
    pub num_vars: usize,
    pub hard: Vec<Clause>,
    pub soft: Vec<SoftClause>,
    /// Hard-clause weight: one more than the sum of all soft weights.
    pub top: BigUint,
    pub aux: Vec<AuxBit>,
    /// Weight per lexicographic level, descending.
    pub level_weights: Vec<BigUint>,
    /// Soft-clause count per level.
    pub level_sizes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("constraint #{index} is neither a clause nor an at-most-one cardinality")]
    UnsupportedConstraint { index: usize },
    #[error("soft clause #{index} is not a unit clause")]
    NonUnitSoft { index: usize },
    #[error("soft weight {weight} matches no lexicographic level")]
    UnknownWeight { weight: BigUint },
    #[error("level {level} has {found} soft clauses, expected {expected}")]
    LevelSizeMismatch { level: usize, found: usize, expected: usize },
}

fn ceil_log2(m: usize) -> usize {
    if m <= 1 {
        0
    } else {
        (usize::BITS - (m - 1).leading_zeros()) as usize
    }
}

/// Bitwise at-most-one over `vars`: allocates `ceil(log2 m)` fresh bit
/// variables starting at `*next_var` and returns the m * ceil(log2 m)
/// binary clauses forcing variable i onto the binary pattern of i.
pub fn bitwise_amo(vars: &[Var], next_var: &mut usize) -> (Vec<Clause>, Vec<Var>) {
    let m = vars.len();
    let k = ceil_log2(m);
    let bits: Vec<Var> = (0..k).map(|j| Var::from_index(*next_var + j)).collect();
    *next_var += k;

    let mut clauses = Vec::with_capacity(m * k);
    for (i, &x) in vars.iter().enumerate() {
        for (j, &b) in bits.iter().enumerate() {
            let bit_lit = if i >> j & 1 == 1 { b.positive() } else { b.negative() };
            clauses.push(vec![x.negative(), bit_lit]);
        }
    }
    (clauses, bits)
}

/// Translates a full pseudo-Boolean problem. Constraints outside the two
/// supported shapes are a contract breach with the encoder and an error,
/// never a silent fallback.
pub fn pb_to_wcnf(problem: &PbProblem) -> Result<Wcnf, TranslateError> {
    let mut next_var = problem.varmap.num_vars();
    let mut hard = Vec::new();
    let mut aux = Vec::new();

    for (index, constraint) in problem.constraints.iter().enumerate() {
        if let Some(lits) = constraint.as_clause() {
            hard.push(lits);
        } else if let Some(vars) = constraint.as_at_most_one() {
            let group = match problem.varmap.role(vars[0]) {
                Some(VarRole::Package(id)) => id.name.clone(),
                _ => format!("amo{index}"),
            };
            let (clauses, bits) = bitwise_amo(&vars, &mut next_var);
            hard.extend(clauses);
            aux.extend(
                bits.into_iter()
                    .enumerate()
                    .map(|(bit, var)| AuxBit { var, group: group.clone(), bit }),
            );
        } else {
            return Err(TranslateError::UnsupportedConstraint { index });
        }
    }

    let soft: Vec<SoftClause> = problem
        .objective
        .terms
        .iter()
        .map(|(w, l)| SoftClause { lits: vec![!*l], weight: w.clone() })
        .collect();
    let top = soft.iter().fold(BigUint::from(1u32), |acc, s| acc + &s.weight);

    Ok(Wcnf {
        num_vars: next_var,
        hard,
        soft,
        top,
        aux,
        level_weights: problem.level_weights.clone(),
        level_sizes: problem.level_sizes.clone(),
    })
}

/// One lexicographic stratum of soft clauses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoftGroup {
    pub weight: BigUint,
    /// The unit literal of each soft clause in the stratum. The clause is
    /// violated exactly when the literal's negation holds.
    pub units: Vec<Lit>,
}

/// Partitions the soft clauses into strata by descending weight, aligned
/// with the level schema. Every soft weight must equal one of the level
/// weights and every level must come out at its declared size.
pub fn group_levels(wcnf: &Wcnf) -> Result<Vec<SoftGroup>, TranslateError> {
    let mut groups: Vec<SoftGroup> = wcnf
        .level_weights
        .iter()
        .map(|w| SoftGroup { weight: w.clone(), units: Vec::new() })
        .collect();

    for (index, soft) in wcnf.soft.iter().enumerate() {
        if soft.lits.len() != 1 {
            return Err(TranslateError::NonUnitSoft { index });
        }
        let level = wcnf
            .level_weights
            .iter()
            .position(|w| *w == soft.weight)
            .ok_or_else(|| TranslateError::UnknownWeight { weight: soft.weight.clone() })?;
        groups[level].units.push(soft.lits[0]);
    }

    for (level, group) in groups.iter().enumerate() {
        let expected = wcnf.level_sizes[level];
        if group.units.len() != expected {
            return Err(TranslateError::LevelSizeMismatch {
                level,
                found: group.units.len(),
                expected,
            });
        }
    }
    Ok(groups)
}
