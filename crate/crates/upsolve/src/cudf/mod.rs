//! Package universe model: rules, requests, installation profiles and the
//! optimization criteria evaluated over them.
//!
//! Everything downstream (the pseudo-Boolean encoder, the MaxSAT pipeline,
//! the brute-force oracle) treats this module as ground truth: profiles are
//! validated here and criteria vectors are recomputed here, never read back
//! from solver-internal variables.

mod criteria;
mod parse;
mod render;
mod validate;

pub use criteria::evaluate_criteria;
pub use parse::{parse_solution, parse_universe, ParseError, SolutionDoc};
pub use render::{render_solution, render_universe, FAIL_LINE};
pub use validate::{validate_profile, Validity, Violation};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// A package name. Must match `[a-zA-Z0-9][a-zA-Z0-9.+-]*`.
pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphanumeric() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '.' || c == '+' || c == '-')
}

/// One name at one version. Versions are positive integers ordered
/// numerically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PackageId {
    pub name: String,
    pub version: u32,
}

impl PackageId {
    pub fn new(name: impl Into<String>, version: u32) -> PackageId {
        let name = name.into();
        debug_assert!(is_valid_name(&name), "invalid package name {name:?}");
        debug_assert!(version >= 1, "versions start at 1");
        PackageId { name, version }
    }
}

impl fmt::Display for PackageId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.name, self.version)
    }
}

/// A version predicate attached to a package reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VersionConstraint {
    Any,
    Eq(u32),
    Ne(u32),
    Ge(u32),
    Le(u32),
    Gt(u32),
    Lt(u32),
}

impl VersionConstraint {
    pub fn matches(self, version: u32) -> bool {
        match self {
            VersionConstraint::Any => true,
            VersionConstraint::Eq(b) => version == b,
            VersionConstraint::Ne(b) => version != b,
            VersionConstraint::Ge(b) => version >= b,
            VersionConstraint::Le(b) => version <= b,
            VersionConstraint::Gt(b) => version > b,
            VersionConstraint::Lt(b) => version < b,
        }
    }
}

impl fmt::Display for VersionConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VersionConstraint::Any => Ok(()),
            VersionConstraint::Eq(b) => write!(f, "(= {b})"),
            VersionConstraint::Ne(b) => write!(f, "(!= {b})"),
            VersionConstraint::Ge(b) => write!(f, "(>= {b})"),
            VersionConstraint::Le(b) => write!(f, "(<= {b})"),
            VersionConstraint::Gt(b) => write!(f, "(> {b})"),
            VersionConstraint::Lt(b) => write!(f, "(< {b})"),
        }
    }
}

/// A constrained reference to a package by name.
pub type PackageRef = (String, VersionConstraint);

/// One dependency clause: a non-empty disjunction of package references, at
/// least one of which must be installed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyClause {
    pub alternatives: Vec<PackageRef>,
}

impl DependencyClause {
    pub fn new(alternatives: Vec<PackageRef>) -> DependencyClause {
        debug_assert!(!alternatives.is_empty(), "dependency clause needs an alternative");
        DependencyClause { alternatives }
    }
}

/// The rule for one name@version: its dependency clauses, its conflicts and
/// whether it is installed in the initial state.
///
/// A conflict entry naming the rule's own name expresses version
/// exclusivity for that name; it never makes the rule conflict with itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackageRule {
    pub id: PackageId,
    pub depends: Vec<DependencyClause>,
    pub conflicts: Vec<PackageRef>,
    pub installed: bool,
}

/// Errors raised while assembling or querying a universe.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("duplicate package {0}")]
    DuplicatePackage(PackageId),
    #[error("unknown package name {0:?}")]
    UnknownName(String),
    #[error("profile member {0} does not exist in the universe")]
    UnknownMember(PackageId),
}

/// A finite set of package rules, indexed by id and by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    rules: Vec<PackageRule>,
    by_name: BTreeMap<String, Vec<u32>>,
    installed_count: usize,
}

impl Universe {
    /// Builds a universe from rules, rejecting duplicate ids. Rules are kept
    /// sorted by (name, version) so every downstream numbering is
    /// deterministic.
    pub fn new(mut rules: Vec<PackageRule>) -> Result<Universe, ModelError> {
        rules.sort_by(|a, b| a.id.cmp(&b.id));
        for pair in rules.windows(2) {
            if pair[0].id == pair[1].id {
                return Err(ModelError::DuplicatePackage(pair[0].id.clone()));
            }
        }
        let mut by_name: BTreeMap<String, Vec<u32>> = BTreeMap::new();
        for rule in &rules {
            by_name.entry(rule.id.name.clone()).or_default().push(rule.id.version);
        }
        let installed_count = rules.iter().filter(|r| r.installed).count();
        Ok(Universe { rules, by_name, installed_count })
    }

    /// Rules in (name, version) order.
    pub fn rules(&self) -> &[PackageRule] {
        &self.rules
    }

    pub fn rule(&self, id: &PackageId) -> Option<&PackageRule> {
        self.rules
            .binary_search_by(|r| r.id.cmp(id))
            .ok()
            .map(|i| &self.rules[i])
    }

    pub fn contains(&self, id: &PackageId) -> bool {
        self.rule(id).is_some()
    }

    /// Number of package rules (name@version tuples).
    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    /// Number of distinct names.
    pub fn name_count(&self) -> usize {
        self.by_name.len()
    }

    /// Number of rules marked installed.
    pub fn installed_count(&self) -> usize {
        self.installed_count
    }

    /// Distinct names in sorted order.
    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.by_name.keys().map(String::as_str)
    }

    /// Sorted versions available for `name`, empty if the name is unknown.
    pub fn versions(&self, name: &str) -> &[u32] {
        self.by_name.get(name).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Highest version available for `name`.
    pub fn latest(&self, name: &str) -> Result<u32, ModelError> {
        self.by_name
            .get(name)
            .and_then(|vs| vs.last().copied())
            .ok_or_else(|| ModelError::UnknownName(name.to_string()))
    }

    /// All package ids whose name matches and whose version satisfies the
    /// constraint. A name absent from the universe expands to the empty set.
    pub fn expand_constraint(&self, name: &str, vc: VersionConstraint) -> Vec<PackageId> {
        self.versions(name)
            .iter()
            .filter(|&&v| vc.matches(v))
            .map(|&v| PackageId::new(name, v))
            .collect()
    }

    /// The set of rules marked installed. May be an invalid profile: initial
    /// states are not assumed consistent with their own metadata.
    pub fn initial_profile(&self) -> Profile {
        Profile::from_ids(self.rules.iter().filter(|r| r.installed).map(|r| r.id.clone()))
    }
}

/// What the user asked to install: a non-empty conjunction of constrained
/// package references.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Request {
    pub install: Vec<PackageRef>,
}

impl Request {
    pub fn new(install: Vec<PackageRef>) -> Request {
        debug_assert!(!install.is_empty(), "request needs at least one entry");
        Request { install }
    }
}

/// An installation profile: a subset of the universe's package ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Profile {
    members: BTreeSet<PackageId>,
}

impl Profile {
    pub fn empty() -> Profile {
        Profile::default()
    }

    pub fn from_ids(ids: impl IntoIterator<Item = PackageId>) -> Profile {
        Profile { members: ids.into_iter().collect() }
    }

    pub fn insert(&mut self, id: PackageId) {
        self.members.insert(id);
    }

    pub fn contains(&self, id: &PackageId) -> bool {
        self.members.contains(id)
    }

    pub fn contains_version(&self, name: &str, version: u32) -> bool {
        self.members.contains(&PackageId { name: name.to_string(), version })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members in (name, version) order.
    pub fn iter(&self) -> impl Iterator<Item = &PackageId> {
        self.members.iter()
    }

    /// Does any member's name equal `name`?
    pub fn has_name(&self, name: &str) -> bool {
        self.members
            .range(
                PackageId { name: name.to_string(), version: 1 }
                    ..=PackageId { name: name.to_string(), version: u32::MAX },
            )
            .next()
            .is_some()
    }
}

/// Which lexicographic criterion to optimize.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    /// Minimize (removed, changed).
    Paranoid,
    /// Minimize (removed, not-up-to-date, new).
    Trendy,
}

impl Criterion {
    pub fn level_count(self) -> usize {
        match self {
            Criterion::Paranoid => 2,
            Criterion::Trendy => 3,
        }
    }

    pub fn level_names(self) -> &'static [&'static str] {
        match self {
            Criterion::Paranoid => &["removed", "changed"],
            Criterion::Trendy => &["removed", "notuptodate", "new"],
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Criterion::Paranoid => write!(f, "paranoid"),
            Criterion::Trendy => write!(f, "trendy"),
        }
    }
}

/// Per-name solution measures for one criterion, in lexicographic order:
/// (removed, changed) for paranoid, (removed, notuptodate, new) for trendy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriteriaVector {
    pub criterion: Criterion,
    pub values: Vec<u64>,
}

impl CriteriaVector {
    pub fn new(criterion: Criterion, values: Vec<u64>) -> CriteriaVector {
        debug_assert_eq!(values.len(), criterion.level_count());
        CriteriaVector { criterion, values }
    }

    /// Lexicographic comparison. Only vectors for the same criterion are
    /// comparable.
    pub fn lex_cmp(&self, other: &CriteriaVector) -> std::cmp::Ordering {
        assert_eq!(self.criterion, other.criterion, "criteria vectors are not comparable");
        self.values.cmp(&other.values)
    }
}

impl fmt::Display for CriteriaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}
