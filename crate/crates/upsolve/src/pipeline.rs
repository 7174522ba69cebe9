//! End-to-end composition: parse -> encode -> translate -> solve ->
//! decode -> score, with anytime tracking of the best profile seen.
//!
//! Criteria are always recomputed from decoded profiles with the model
//! evaluator; solver-internal indicator values are never trusted for
//! reporting. The best-so-far profile is replaced only on strict
//! lexicographic improvement of its recomputed vector, so the improvement
//! history is non-increasing by construction.

use thiserror::Error;

use crate::budget::Budget;
use crate::cudf::{
    evaluate_criteria, validate_profile, CriteriaVector, Criterion, Profile, Request, Universe,
    Validity,
};
use crate::maxsat::{decode, solve, SolveMode, SolveReport, SolveStatus};
use crate::pb::{encode, PbProblem};
use crate::wcnf::{pb_to_wcnf, TranslateError, Wcnf};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Translate(#[from] TranslateError),
}

/// Everything one solve produced, stage by stage.
pub struct SolveRun {
    pub problem: PbProblem,
    pub wcnf: Wcnf,
    pub report: SolveReport,
    /// Best profile by recomputed criteria vector, with that vector.
    pub best: Option<(Profile, CriteriaVector)>,
    /// Recomputed vectors in improvement order (lexicographically
    /// non-increasing).
    pub history: Vec<CriteriaVector>,
}

impl SolveRun {
    pub fn status(&self) -> SolveStatus {
        self.report.status
    }

    /// Validity of the best profile against universe and request.
    pub fn validity(&self, universe: &Universe, request: &Request) -> Option<Validity> {
        let (profile, _) = self.best.as_ref()?;
        Some(validate_profile(universe, request, profile).expect("decoded members exist"))
    }
}

/// Runs the full pipeline on an in-memory universe and request.
pub fn run_request(
    universe: &Universe,
    request: &Request,
    criterion: Criterion,
    mode: SolveMode,
    budget: &Budget,
    seed: u64,
) -> Result<SolveRun, PipelineError> {
    let problem = encode(universe, request, criterion);
    let wcnf = pb_to_wcnf(&problem)?;

    let initial = universe.initial_profile();
    let mut best: Option<(Profile, CriteriaVector)> = None;
    let mut history: Vec<CriteriaVector> = Vec::new();
    let varmap = &problem.varmap;
    let mut on_model = |model: &[bool]| {
        let profile = decode(model, varmap);
        let vector = evaluate_criteria(universe, &initial, &profile, criterion);
        let improves = match &best {
            None => true,
            Some((_, incumbent)) => vector.lex_cmp(incumbent) == std::cmp::Ordering::Less,
        };
        if improves {
            history.push(vector.clone());
            best = Some((profile, vector));
        }
    };
    let report = solve(&wcnf, mode, budget, seed, Some(&mut on_model))?;
    Ok(SolveRun { problem, wcnf, report, best, history })
}
