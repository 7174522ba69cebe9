//! Pseudo-Boolean encoding of an install request.
//!
//! A universe plus a request becomes: hard clauses for dependencies,
//! conflicts and the request itself; an at-most-one cardinality constraint
//! per version-exclusive name; a Root/Noop construction that makes initially
//! installed packages optional requirements instead of hard facts; one-sided
//! indicator reifications for the per-name solution measures; and a single
//! linear minimization objective whose weights realize the lexicographic
//! criterion.

pub mod opb;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;

use crate::cudf::{Criterion, PackageId, Profile, Request, Universe, VersionConstraint};
use crate::lit::{Lit, Var};

/// The per-name solution measures that get an indicator variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IndicatorKind {
    Removed,
    Changed,
    NotUpToDate,
    New,
}

impl IndicatorKind {
    pub fn name(self) -> &'static str {
        match self {
            IndicatorKind::Removed => "removed",
            IndicatorKind::Changed => "changed",
            IndicatorKind::NotUpToDate => "notuptodate",
            IndicatorKind::New => "new",
        }
    }

    /// Indicator kinds per lexicographic level for a criterion.
    pub fn levels(criterion: Criterion) -> &'static [IndicatorKind] {
        match criterion {
            Criterion::Paranoid => &[IndicatorKind::Removed, IndicatorKind::Changed],
            Criterion::Trendy => &[
                IndicatorKind::Removed,
                IndicatorKind::NotUpToDate,
                IndicatorKind::New,
            ],
        }
    }
}

impl fmt::Display for IndicatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What a variable stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarRole<'a> {
    Package(&'a PackageId),
    Root,
    Noop,
    Indicator(IndicatorKind, &'a str),
}

/// Deterministic variable numbering: packages in (name, version) order,
/// then Root, then Noop, then indicators grouped by level and sorted by
/// name within each level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarMap {
    package_ids: Vec<PackageId>,
    root: Var,
    noop: Var,
    /// (kind, name) per indicator, in variable order.
    indicators: Vec<(IndicatorKind, String)>,
    indicator_lookup: BTreeMap<(IndicatorKind, String), Var>,
    /// Indicator count per lexicographic level.
    level_sizes: Vec<usize>,
}

impl VarMap {
    pub fn build(universe: &Universe, criterion: Criterion) -> VarMap {
        let package_ids: Vec<PackageId> =
            universe.rules().iter().map(|r| r.id.clone()).collect();
        let root = Var::from_index(package_ids.len());
        let noop = Var::from_index(package_ids.len() + 1);

        let installed_names: BTreeSet<&str> = universe
            .rules()
            .iter()
            .filter(|r| r.installed)
            .map(|r| r.id.name.as_str())
            .collect();

        let mut indicators = Vec::new();
        let mut level_sizes = Vec::new();
        for &kind in IndicatorKind::levels(criterion) {
            let before = indicators.len();
            for name in universe.names() {
                let wanted = match kind {
                    IndicatorKind::Removed => installed_names.contains(name),
                    IndicatorKind::Changed | IndicatorKind::NotUpToDate => true,
                    IndicatorKind::New => !installed_names.contains(name),
                };
                if wanted {
                    indicators.push((kind, name.to_string()));
                }
            }
            level_sizes.push(indicators.len() - before);
        }

        let base = package_ids.len() + 2;
        let indicator_lookup = indicators
            .iter()
            .enumerate()
            .map(|(i, (kind, name))| ((*kind, name.clone()), Var::from_index(base + i)))
            .collect();

        VarMap { package_ids, root, noop, indicators, indicator_lookup, level_sizes }
    }

    pub fn num_vars(&self) -> usize {
        self.package_ids.len() + 2 + self.indicators.len()
    }

    pub fn package_count(&self) -> usize {
        self.package_ids.len()
    }

    pub fn package_var(&self, id: &PackageId) -> Option<Var> {
        self.package_ids.binary_search(id).ok().map(Var::from_index)
    }

    pub fn root(&self) -> Var {
        self.root
    }

    pub fn noop(&self) -> Var {
        self.noop
    }

    pub fn indicator_var(&self, kind: IndicatorKind, name: &str) -> Option<Var> {
        self.indicator_lookup.get(&(kind, name.to_string())).copied()
    }

    pub fn level_sizes(&self) -> &[usize] {
        &self.level_sizes
    }

    /// Packages with their variables, in variable order.
    pub fn packages(&self) -> impl Iterator<Item = (Var, &PackageId)> {
        self.package_ids.iter().enumerate().map(|(i, id)| (Var::from_index(i), id))
    }

    /// Indicators with their variables, in variable order (level by level).
    pub fn indicators(&self) -> impl Iterator<Item = (Var, IndicatorKind, &str)> {
        let base = self.package_ids.len() + 2;
        self.indicators
            .iter()
            .enumerate()
            .map(move |(i, (kind, name))| (Var::from_index(base + i), *kind, name.as_str()))
    }

    pub fn role(&self, var: Var) -> Option<VarRole<'_>> {
        let i = var.index();
        let p = self.package_ids.len();
        if i < p {
            Some(VarRole::Package(&self.package_ids[i]))
        } else if i == p {
            Some(VarRole::Root)
        } else if i == p + 1 {
            Some(VarRole::Noop)
        } else {
            self.indicators
                .get(i - p - 2)
                .map(|(kind, name)| VarRole::Indicator(*kind, name.as_str()))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PbRelation {
    Ge,
    Le,
    Eq,
}

/// A linear constraint over Boolean literals with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PbConstraint {
    pub terms: Vec<(i64, Lit)>,
    pub relation: PbRelation,
    pub bound: i64,
}

impl PbConstraint {
    /// A plain disjunction: all coefficients 1, at least one literal true.
    pub fn clause(lits: Vec<Lit>) -> PbConstraint {
        debug_assert_no_dup_vars(&lits);
        PbConstraint {
            terms: lits.into_iter().map(|l| (1, l)).collect(),
            relation: PbRelation::Ge,
            bound: 1,
        }
    }

    /// At most one of the given variables true.
    pub fn at_most_one(vars: Vec<Var>) -> PbConstraint {
        PbConstraint {
            terms: vars.into_iter().map(|v| (1, v.positive())).collect(),
            relation: PbRelation::Le,
            bound: 1,
        }
    }

    /// The always-false constraint (an empty disjunction).
    pub fn falsum() -> PbConstraint {
        PbConstraint { terms: Vec::new(), relation: PbRelation::Ge, bound: 1 }
    }

    /// Recognizes the clause shape: unit coefficients, `>= 1`.
    pub fn as_clause(&self) -> Option<Vec<Lit>> {
        if self.relation == PbRelation::Ge
            && self.bound == 1
            && self.terms.iter().all(|(c, _)| *c == 1)
        {
            Some(self.terms.iter().map(|(_, l)| *l).collect())
        } else {
            None
        }
    }

    /// Recognizes the `<= 1` cardinality shape over positive literals.
    pub fn as_at_most_one(&self) -> Option<Vec<Var>> {
        if self.relation == PbRelation::Le
            && self.bound == 1
            && self.terms.iter().all(|(c, l)| *c == 1 && l.is_positive())
        {
            Some(self.terms.iter().map(|(_, l)| l.var()).collect())
        } else {
            None
        }
    }

    /// Evaluates the constraint under a total assignment.
    pub fn satisfied_by(&self, model: &[bool]) -> bool {
        let sum: i64 = self
            .terms
            .iter()
            .map(|(c, l)| {
                let value = model[l.var().index()] == l.is_positive();
                if value {
                    *c
                } else {
                    0
                }
            })
            .sum();
        match self.relation {
            PbRelation::Ge => sum >= self.bound,
            PbRelation::Le => sum <= self.bound,
            PbRelation::Eq => sum == self.bound,
        }
    }
}

fn debug_assert_no_dup_vars(lits: &[Lit]) {
    if cfg!(debug_assertions) {
        let mut vars: Vec<Var> = lits.iter().map(|l| l.var()).collect();
        vars.sort();
        vars.dedup();
        debug_assert_eq!(vars.len(), lits.len(), "duplicate variable in clause");
    }
}

/// A minimization objective: positive arbitrary-precision weights on
/// literals.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Objective {
    pub terms: Vec<(BigUint, Lit)>,
}

impl Objective {
    /// Objective value under a total assignment.
    pub fn value(&self, model: &[bool]) -> BigUint {
        let mut total = BigUint::from(0u32);
        for (w, l) in &self.terms {
            if model[l.var().index()] == l.is_positive() {
                total += w;
            }
        }
        total
    }
}

/// The full pseudo-Boolean optimization problem for one request.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PbProblem {
    pub constraints: Vec<PbConstraint>,
    pub objective: Objective,
    pub varmap: VarMap,
    /// Indicator count per lexicographic level, most significant first.
    pub level_sizes: Vec<usize>,
    /// Weight shared by each level's objective terms, descending.
    pub level_weights: Vec<BigUint>,
    /// The dominance base: each level's weight is a power of this.
    pub base: u64,
}

impl PbProblem {
    /// Each level's weight must strictly exceed the largest possible sum of
    /// everything below it, otherwise the aggregate objective does not
    /// realize the lexicographic order.
    pub fn dominance_holds(&self) -> bool {
        for k in 0..self.level_weights.len() {
            let mut below = BigUint::from(0u32);
            for j in k + 1..self.level_weights.len() {
                below += &self.level_weights[j] * BigUint::from(self.level_sizes[j] as u64);
            }
            if self.level_weights[k] <= below {
                return false;
            }
        }
        true
    }
}

/// Hard constraints from the package rules and the request.
///
/// Per rule and dependency clause, the expansion `{q1..qn}` of the clause's
/// alternatives yields `¬p ∨ q1 ∨ ⋯ ∨ qn`; an empty expansion pins the
/// depending package false. Conflicts become one binary clause per unordered
/// pair. A conflict entry on the rule's own bare name requests version
/// exclusivity and becomes a `<= 1` cardinality constraint over that name's
/// versions. Request entries become positive clauses over their expansions;
/// an empty expansion yields the empty clause, making the problem
/// unsatisfiable.
pub fn encode_core(
    universe: &Universe,
    request: &Request,
    varmap: &VarMap,
) -> Vec<PbConstraint> {
    let mut out = Vec::new();
    let var_of = |id: &PackageId| varmap.package_var(id).expect("package registered");

    // Dependencies, in rule order.
    for rule in universe.rules() {
        let p = var_of(&rule.id);
        for clause in &rule.depends {
            let mut targets = BTreeSet::new();
            for (name, vc) in &clause.alternatives {
                for id in universe.expand_constraint(name, *vc) {
                    targets.insert(var_of(&id));
                }
            }
            if targets.contains(&p) {
                continue; // satisfied by the package itself
            }
            let mut lits = vec![p.negative()];
            lits.extend(targets.into_iter().map(Var::positive));
            out.push(PbConstraint::clause(lits));
        }
    }

    // Conflicts: binary exclusions deduplicated per unordered pair, plus
    // one cardinality constraint per version-exclusive name.
    let mut pairs: BTreeSet<(Var, Var)> = BTreeSet::new();
    let mut exclusive_names: BTreeSet<&str> = BTreeSet::new();
    for rule in universe.rules() {
        let p = var_of(&rule.id);
        for (name, vc) in &rule.conflicts {
            if *name == rule.id.name && *vc == VersionConstraint::Any {
                exclusive_names.insert(name);
                continue;
            }
            for id in universe.expand_constraint(name, *vc) {
                if id == rule.id {
                    continue;
                }
                let q = var_of(&id);
                pairs.insert((p.min(q), p.max(q)));
            }
        }
    }
    for (a, b) in pairs {
        out.push(PbConstraint::clause(vec![a.negative(), b.negative()]));
    }
    for name in exclusive_names {
        let vars: Vec<Var> = universe
            .versions(name)
            .iter()
            .map(|&v| var_of(&PackageId::new(name, v)))
            .collect();
        if vars.len() >= 2 {
            out.push(PbConstraint::at_most_one(vars));
        }
    }

    // Request entries.
    for (name, vc) in &request.install {
        let targets: BTreeSet<Var> = universe
            .expand_constraint(name, *vc)
            .iter()
            .map(&var_of)
            .collect();
        if targets.is_empty() {
            out.push(PbConstraint::falsum());
        } else {
            out.push(PbConstraint::clause(
                targets.into_iter().map(Var::positive).collect(),
            ));
        }
    }

    out
}

/// Initially installed packages become optional requirements: Root is
/// asserted, Root implies some installed package or Noop, and Noop excludes
/// them all. The objective then decides how many survive. Nothing is
/// emitted when nothing is installed.
pub fn encode_optional_installed(universe: &Universe, varmap: &VarMap) -> Vec<PbConstraint> {
    let installed: Vec<Var> = universe
        .rules()
        .iter()
        .filter(|r| r.installed)
        .map(|r| varmap.package_var(&r.id).expect("package registered"))
        .collect();
    if installed.is_empty() {
        return Vec::new();
    }

    let root = varmap.root();
    let noop = varmap.noop();
    let mut out = Vec::new();
    out.push(PbConstraint::clause(vec![root.positive()]));
    let mut lits = vec![root.negative()];
    lits.extend(installed.iter().map(|v| v.positive()));
    lits.push(noop.positive());
    out.push(PbConstraint::clause(lits));
    for v in &installed {
        out.push(PbConstraint::clause(vec![noop.negative(), v.negative()]));
    }
    out
}

/// One-sided reifications: whenever a measure's condition holds in a model,
/// the indicator variable is forced true. The converse direction is not
/// encoded; minimization keeps indicators tight at the optimum and reported
/// criteria are recomputed from the decoded profile anyway.
pub fn encode_indicators(
    universe: &Universe,
    initial: &Profile,
    varmap: &VarMap,
    criterion: Criterion,
) -> Vec<PbConstraint> {
    let _ = criterion; // level structure already baked into the varmap
    let mut out = Vec::new();
    let var_of = |name: &str, v: u32| {
        varmap.package_var(&PackageId::new(name, v)).expect("package registered")
    };

    for (ind, kind, name) in varmap.indicators() {
        let versions = universe.versions(name);
        match kind {
            IndicatorKind::Removed => {
                let mut lits = vec![ind.positive()];
                lits.extend(versions.iter().map(|&v| var_of(name, v).positive()));
                out.push(PbConstraint::clause(lits));
            }
            IndicatorKind::Changed => {
                for &v in versions {
                    let pv = var_of(name, v);
                    let lit = if initial.contains_version(name, v) {
                        pv.positive()
                    } else {
                        pv.negative()
                    };
                    out.push(PbConstraint::clause(vec![ind.positive(), lit]));
                }
            }
            IndicatorKind::NotUpToDate => {
                let latest = *versions.last().expect("name has versions");
                let latest_var = var_of(name, latest);
                for &v in versions {
                    if v == latest {
                        continue;
                    }
                    out.push(PbConstraint::clause(vec![
                        ind.positive(),
                        var_of(name, v).negative(),
                        latest_var.positive(),
                    ]));
                }
            }
            IndicatorKind::New => {
                for &v in versions {
                    out.push(PbConstraint::clause(vec![
                        ind.positive(),
                        var_of(name, v).negative(),
                    ]));
                }
            }
        }
    }
    out
}

/// Objective weights. The base is the rule count plus one, clamped up so it
/// strictly exceeds every lower level's term count; level k of L gets
/// weight base^(L-1-k).
pub fn build_objective(
    universe: &Universe,
    varmap: &VarMap,
    criterion: Criterion,
) -> (Objective, Vec<BigUint>, u64) {
    let level_sizes = varmap.level_sizes();
    let mut base = universe.rule_count() as u64 + 1;
    for &size in &level_sizes[1..] {
        base = base.max(size as u64 + 1);
    }

    let levels = IndicatorKind::levels(criterion);
    let level_count = levels.len();
    let level_weights: Vec<BigUint> = (0..level_count)
        .map(|k| BigUint::from(base).pow((level_count - 1 - k) as u32))
        .collect();

    let mut terms = Vec::new();
    for (var, kind, _) in varmap.indicators() {
        let level = levels.iter().position(|k| *k == kind).expect("kind in level map");
        terms.push((level_weights[level].clone(), var.positive()));
    }
    (Objective { terms }, level_weights, base)
}

/// Full encoding: allocates the variable map, concatenates the constraint
/// groups and attaches the objective. An unsatisfiable request yields a
/// problem containing the empty clause rather than an error.
pub fn encode(universe: &Universe, request: &Request, criterion: Criterion) -> PbProblem {
    let varmap = VarMap::build(universe, criterion);
    let initial = universe.initial_profile();

    let mut constraints = encode_core(universe, request, &varmap);
    constraints.extend(encode_optional_installed(universe, &varmap));
    constraints.extend(encode_indicators(universe, &initial, &varmap, criterion));

    let (objective, level_weights, base) = build_objective(universe, &varmap, criterion);
    let level_sizes = varmap.level_sizes().to_vec();
    PbProblem { constraints, objective, varmap, level_sizes, level_weights, base }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cudf::parse_universe;

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

    fn lit_codes(c: &PbConstraint) -> Vec<i64> {
        c.terms.iter().map(|(_, l)| l.to_dimacs()).collect()
    }

    #[test]
    fn dependency_becomes_a_clause() {
        let doc = "package: a\nversion: 1\ndepends: b\n\npackage: b\nversion: 1\n\nrequest:\ninstall: a\n";
        let (u, r) = parse_universe(doc).unwrap();
        let vm = VarMap::build(&u, Criterion::Paranoid);
        let core = encode_core(&u, &r, &vm);
        // a@1 is var 1, b@1 is var 2: expect ¬a@1 ∨ b@1.
        assert!(core.iter().any(|c| lit_codes(c) == vec![-1, 2]));
    }

    #[test]
    fn self_conflict_becomes_cardinality() {
        let (u, r) = parse_universe(MICRO).unwrap();
        let vm = VarMap::build(&u, Criterion::Paranoid);
        let core = encode_core(&u, &r, &vm);
        let amo: Vec<_> = core.iter().filter_map(|c| c.as_at_most_one()).collect();
        assert_eq!(amo, vec![vec![Var::from_index(0), Var::from_index(1)]]);
    }

    #[test]
    fn conflict_pairs_are_deduplicated_and_symmetric() {
        let one_side = "package: a\nversion: 1\nconflicts: b\n\npackage: b\nversion: 1\n\nrequest:\ninstall: a\n";
        let other_side = "package: a\nversion: 1\n\npackage: b\nversion: 1\nconflicts: a\n\nrequest:\ninstall: a\n";
        let both = "package: a\nversion: 1\nconflicts: b\n\npackage: b\nversion: 1\nconflicts: a\n\nrequest:\ninstall: a\n";
        let constraints = |doc: &str| {
            let (u, r) = parse_universe(doc).unwrap();
            let vm = VarMap::build(&u, Criterion::Paranoid);
            encode_core(&u, &r, &vm)
        };
        assert_eq!(constraints(one_side), constraints(other_side));
        assert_eq!(constraints(one_side), constraints(both));
    }

    #[test]
    fn absent_request_yields_the_empty_clause() {
        let doc = "request:\ninstall: z\n";
        let (u, r) = parse_universe(doc).unwrap();
        let vm = VarMap::build(&u, Criterion::Paranoid);
        let core = encode_core(&u, &r, &vm);
        assert_eq!(core, vec![PbConstraint::falsum()]);
    }

    #[test]
    fn dependency_on_an_absent_name_pins_the_package_false() {
        let doc = "package: a\nversion: 1\ndepends: ghost\n\nrequest:\ninstall: a\n";
        let (u, r) = parse_universe(doc).unwrap();
        let vm = VarMap::build(&u, Criterion::Paranoid);
        let core = encode_core(&u, &r, &vm);
        assert!(core.iter().any(|c| lit_codes(c) == vec![-1]));
    }

    #[test]
    fn self_dependency_is_dropped_as_a_tautology() {
        let doc = "package: a\nversion: 1\ndepends: a\n\nrequest:\ninstall: a\n";
        let (u, r) = parse_universe(doc).unwrap();
        let vm = VarMap::build(&u, Criterion::Paranoid);
        let core = encode_core(&u, &r, &vm);
        // Only the request clause remains.
        assert_eq!(core.len(), 1);
        assert_eq!(lit_codes(&core[0]), vec![1]);
    }

    #[test]
    fn optional_installed_shape() {
        let doc = "package: a\nversion: 1\ninstalled: true\n\npackage: b\nversion: 1\ninstalled: true\n\nrequest:\ninstall: a\n";
        let (u, _) = parse_universe(doc).unwrap();
        let vm = VarMap::build(&u, Criterion::Paranoid);
        let opt = encode_optional_installed(&u, &vm);
        // {Root}, {¬Root ∨ a ∨ b ∨ Noop}, {¬Noop ∨ ¬a}, {¬Noop ∨ ¬b}
        assert_eq!(opt.len(), 4);
        assert_eq!(lit_codes(&opt[0]), vec![vm.root().number() as i64]);
        assert_eq!(
            lit_codes(&opt[1]),
            vec![-(vm.root().number() as i64), 1, 2, vm.noop().number() as i64]
        );
        assert_eq!(lit_codes(&opt[2]), vec![-(vm.noop().number() as i64), -1]);
        assert_eq!(lit_codes(&opt[3]), vec![-(vm.noop().number() as i64), -2]);
        // Root=1, Noop=1, a=1 violates the third clause.
        let mut model = vec![false; vm.num_vars()];
        model[vm.root().index()] = true;
        model[vm.noop().index()] = true;
        model[0] = true;
        assert!(!opt[2].satisfied_by(&model));
    }

    #[test]
    fn no_installed_packages_no_optional_constraints() {
        let doc = "package: a\nversion: 1\n\nrequest:\ninstall: a\n";
        let (u, _) = parse_universe(doc).unwrap();
        let vm = VarMap::build(&u, Criterion::Paranoid);
        assert!(encode_optional_installed(&u, &vm).is_empty());
    }

    #[test]
    fn removed_reification_covers_all_versions() {
        let (u, _) = parse_universe(MICRO).unwrap();
        let vm = VarMap::build(&u, Criterion::Paranoid);
        let initial = u.initial_profile();
        let ind = encode_indicators(&u, &initial, &vm, Criterion::Paranoid);
        let removed_p = vm.indicator_var(IndicatorKind::Removed, "p").unwrap();
        // removed_p ∨ p@1 ∨ p@2
        let expect = vec![removed_p.number() as i64, 1, 2];
        assert!(ind.iter().any(|c| lit_codes(c) == expect));
    }

    #[test]
    fn new_reification_single_version() {
        let doc = "package: q\nversion: 1\n\nrequest:\ninstall: q\n";
        let (u, _) = parse_universe(doc).unwrap();
        let vm = VarMap::build(&u, Criterion::Trendy);
        let initial = u.initial_profile();
        let ind = encode_indicators(&u, &initial, &vm, Criterion::Trendy);
        let new_q = vm.indicator_var(IndicatorKind::New, "q").unwrap();
        assert!(ind.iter().any(|c| lit_codes(c) == vec![new_q.number() as i64, -1]));
    }

    #[test]
    fn notuptodate_reification_truth_table() {
        // For every assignment to (p@1, p@2, notuptodate_p): if p@1 is
        // installed without the latest p@2, the clauses force the indicator.
        let doc = "package: p\nversion: 1\n\npackage: p\nversion: 2\n\nrequest:\ninstall: p\n";
        let (u, _) = parse_universe(doc).unwrap();
        let vm = VarMap::build(&u, Criterion::Trendy);
        let initial = u.initial_profile();
        let ind = encode_indicators(&u, &initial, &vm, Criterion::Trendy);
        let ntu_p = vm.indicator_var(IndicatorKind::NotUpToDate, "p").unwrap();
        let clauses: Vec<_> = ind
            .iter()
            .filter(|c| c.terms.iter().any(|(_, l)| l.var() == ntu_p))
            .collect();
        assert_eq!(
            lit_codes(clauses[0]),
            vec![ntu_p.number() as i64, -1, 2]
        );
        for bits in 0..8u32 {
            let mut model = vec![false; vm.num_vars()];
            model[0] = bits & 1 != 0; // p@1
            model[1] = bits & 2 != 0; // p@2
            model[ntu_p.index()] = bits & 4 != 0;
            let condition = model[0] && !model[1];
            let all_hold = clauses.iter().all(|c| c.satisfied_by(&model));
            if condition && !model[ntu_p.index()] {
                assert!(!all_hold, "condition true must force the indicator");
            }
            if !condition || model[ntu_p.index()] {
                assert!(all_hold, "one-sided clauses hold otherwise");
            }
        }
    }

    #[test]
    fn objective_weights_micro_paranoid() {
        let (u, r) = parse_universe(MICRO).unwrap();
        let problem = encode(&u, &r, Criterion::Paranoid);
        // 3 rules -> base 4; two removed terms at weight 4, two changed at 1.
        assert_eq!(problem.base, 4);
        assert_eq!(problem.level_sizes, vec![2, 2]);
        let weights: Vec<u64> = problem
            .objective
            .terms
            .iter()
            .map(|(w, _)| u64::try_from(w).unwrap())
            .collect();
        assert_eq!(weights, vec![4, 4, 1, 1]);
    }

    #[test]
    fn trendy_weights_are_squared() {
        let (u, r) = parse_universe(MICRO).unwrap();
        let problem = encode(&u, &r, Criterion::Trendy);
        assert_eq!(problem.base, 4);
        assert_eq!(
            problem.level_weights,
            vec![BigUint::from(16u32), BigUint::from(4u32), BigUint::from(1u32)]
        );
        assert!(problem.dominance_holds());
    }

    #[test]
    fn no_installed_packages_means_no_removed_terms() {
        let doc = "package: a\nversion: 1\n\nrequest:\ninstall: a\n";
        let (u, r) = parse_universe(doc).unwrap();
        let problem = encode(&u, &r, Criterion::Paranoid);
        assert_eq!(problem.level_sizes, vec![0, 1]);
    }

    #[test]
    fn micro_varmap_numbering() {
        let (u, _) = parse_universe(MICRO).unwrap();
        let vm = VarMap::build(&u, Criterion::Paranoid);
        // 3 package vars + Root + Noop + 4 indicators.
        assert_eq!(vm.num_vars(), 9);
        assert_eq!(vm.package_var(&PackageId::new("p", 1)), Some(Var::from_index(0)));
        assert_eq!(vm.package_var(&PackageId::new("p", 2)), Some(Var::from_index(1)));
        assert_eq!(vm.package_var(&PackageId::new("q", 1)), Some(Var::from_index(2)));
        assert_eq!(vm.root(), Var::from_index(3));
        assert_eq!(vm.noop(), Var::from_index(4));
        assert!(matches!(
            vm.role(Var::from_index(5)),
            Some(VarRole::Indicator(IndicatorKind::Removed, "p"))
        ));
    }

    #[test]
    fn encoding_is_deterministic() {
        let (u, r) = parse_universe(MICRO).unwrap();
        assert_eq!(encode(&u, &r, Criterion::Trendy), encode(&u, &r, Criterion::Trendy));
    }
}
