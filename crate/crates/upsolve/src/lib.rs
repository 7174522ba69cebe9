//! Package upgradeability solving through Boolean optimization.
//!
//! An install request over a versioned package universe is encoded as a
//! pseudo-Boolean optimization problem, translated to Partial Weighted
//! MaxSAT, and solved either level by level in lexicographic order or
//! against the single aggregate objective. Every stage is a standalone
//! component with a file format, so the pipeline can be snapshotted and
//! resumed: universe text -> OPB -> WCNF -> solution stanzas.
//!
//! Start with the `examples/` directory: each runnable example demonstrates
//! one capability (end-to-end solving, stage dumps, mode comparison,
//! oracle cross-checking, instance generation, standalone SAT/MaxSAT).

pub mod budget;
pub mod cli;
pub mod cudf;
pub mod generator;
pub mod lit;
pub mod maxsat;
pub mod oracle;
pub mod pb;
pub mod pipeline;
pub mod sat;
pub mod wcnf;

mod rng;

pub use budget::Budget;
