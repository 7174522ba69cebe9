//! Exhaustive reference solver.
//!
//! Enumerates every subset of a small universe's rules, keeps the valid
//! profiles that satisfy the request, and returns the lexicographically
//! smallest criteria vector with one witness. No pruning: this is the
//! trusted baseline the real solver is measured against, so it stays dumb.

use thiserror::Error;

use crate::cudf::{
    evaluate_criteria, validate_profile, CriteriaVector, Criterion, Profile, Request, Universe,
};

/// Default cap on rule count; 2^20 candidate subsets is already slow.
pub const DEFAULT_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("universe has {count} rules, above the brute-force limit {limit}")]
    TooLarge { count: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BruteForceResult {
    Optimal {
        vector: CriteriaVector,
        witness: Profile,
        /// Number of candidate subsets enumerated (always 2^ruleCount).
        explored: u64,
    },
    Unsatisfiable {
        explored: u64,
    },
}

impl BruteForceResult {
    pub fn vector(&self) -> Option<&CriteriaVector> {
        match self {
            BruteForceResult::Optimal { vector, .. } => Some(vector),
            BruteForceResult::Unsatisfiable { .. } => None,
        }
    }
}

/// Enumerates all 2^ruleCount profiles in bitmask order over the universe's
/// deterministic rule ordering. Ties on the criteria vector are broken by
/// the first subset found.
pub fn brute_force(
    universe: &Universe,
    request: &Request,
    criterion: Criterion,
    limit: usize,
) -> Result<BruteForceResult, OracleError> {
    let n = universe.rule_count();
    if n > limit {
        return Err(OracleError::TooLarge { count: n, limit });
    }

    let initial = universe.initial_profile();
    let explored = 1u64 << n;
    let mut best: Option<(CriteriaVector, Profile)> = None;

    for mask in 0..explored {
        let profile = Profile::from_ids(
            universe
                .rules()
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, r)| r.id.clone()),
        );
        let validity = validate_profile(universe, request, &profile)
            .expect("members come from the universe");
        if !validity.is_valid() {
            continue;
        }
        let vector = evaluate_criteria(universe, &initial, &profile, criterion);
        let improves = match &best {
            None => true,
            Some((bv, _)) => vector.lex_cmp(bv) == std::cmp::Ordering::Less,
        };
        if improves {
            best = Some((vector, profile));
        }
    }

    Ok(match best {
        Some((vector, witness)) => BruteForceResult::Optimal { vector, witness, explored },
        None => BruteForceResult::Unsatisfiable { explored },
    })
}
