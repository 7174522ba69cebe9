//! Seeded random universe generator for tests and benchmarks.
//!
//! Output is a parseable universe document, byte-identical for identical
//! parameters. Every name gets a self-conflict (one installed version at a
//! time); a small fraction of dependency alternatives reference names that
//! do not exist, so the absent-package encoding path stays exercised; the
//! initial installed set is drawn independently per name and never
//! repaired, so it may violate its own metadata.

use thiserror::Error;

use crate::cudf::{
    render_universe, DependencyClause, PackageId, PackageRef, PackageRule, Request, Universe,
    VersionConstraint,
};
use crate::rng::SplitMix64;

/// Fraction of dependency alternatives that point at absent names.
const GHOST_ALTERNATIVE_RATE: f64 = 0.08;
/// Dependency clause slots tried per rule.
const DEP_SLOTS: usize = 3;

#[derive(Debug, Clone)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub names: usize,
    pub max_versions: u32,
    pub dep_density: f64,
    pub conflict_density: f64,
    pub installed_fraction: f64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            seed: 1,
            names: 8,
            max_versions: 2,
            dep_density: 0.5,
            conflict_density: 0.2,
            installed_fraction: 0.3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeneratorError {
    #[error("{field} must be positive")]
    NotPositive { field: &'static str },
    #[error("{field} must lie in [0, 1]")]
    NotAFraction { field: &'static str },
}

fn check(config: &GeneratorConfig) -> Result<(), GeneratorError> {
    if config.names == 0 {
        return Err(GeneratorError::NotPositive { field: "names" });
    }
    if config.max_versions == 0 {
        return Err(GeneratorError::NotPositive { field: "max_versions" });
    }
    for (field, value) in [
        ("dep_density", config.dep_density),
        ("conflict_density", config.conflict_density),
        ("installed_fraction", config.installed_fraction),
    ] {
        if !(0.0..=1.0).contains(&value) {
            return Err(GeneratorError::NotAFraction { field });
        }
    }
    Ok(())
}

fn name_of(index: usize) -> String {
    format!("p{index:05}")
}

/// Builds the universe and request in memory.
pub fn generate_instance(
    config: &GeneratorConfig,
) -> Result<(Universe, Request), GeneratorError> {
    check(config)?;
    let mut rng = SplitMix64::new(config.seed);
    let n = config.names;

    // Version count and installed version per name, drawn first so rule
    // construction can reference any name's shape.
    let version_counts: Vec<u32> =
        (0..n).map(|_| 1 + rng.below(config.max_versions as u64) as u32).collect();
    let installed_version: Vec<Option<u32>> = (0..n)
        .map(|i| {
            if rng.chance(config.installed_fraction) {
                Some(1 + rng.below(version_counts[i] as u64) as u32)
            } else {
                None
            }
        })
        .collect();

    let random_constraint = |rng: &mut SplitMix64, versions: u32| {
        let v = 1 + rng.below(versions.max(1) as u64) as u32;
        match rng.below(4) {
            0 => VersionConstraint::Any,
            1 => VersionConstraint::Eq(v),
            2 => VersionConstraint::Ge(v),
            _ => VersionConstraint::Le(v),
        }
    };

    let mut rules = Vec::new();
    for i in 0..n {
        let name = name_of(i);
        for version in 1..=version_counts[i] {
            let mut depends = Vec::new();
            for _ in 0..DEP_SLOTS {
                if !rng.chance(config.dep_density) {
                    continue;
                }
                let alt_count = 1 + rng.below(3) as usize;
                let mut alternatives: Vec<PackageRef> = Vec::with_capacity(alt_count);
                for _ in 0..alt_count {
                    if rng.chance(GHOST_ALTERNATIVE_RATE) {
                        let ghost = format!("ghost{}", rng.below(n as u64));
                        alternatives.push((ghost, VersionConstraint::Any));
                    } else {
                        let t = rng.below(n as u64) as usize;
                        let vc = random_constraint(&mut rng, version_counts[t]);
                        alternatives.push((name_of(t), vc));
                    }
                }
                depends.push(DependencyClause::new(alternatives));
            }

            let mut conflicts: Vec<PackageRef> = vec![(name.clone(), VersionConstraint::Any)];
            if rng.chance(config.conflict_density) {
                let t = rng.below(n as u64) as usize;
                if name_of(t) == name {
                    let v = 1 + rng.below(version_counts[i] as u64) as u32;
                    conflicts.push((name.clone(), VersionConstraint::Eq(v)));
                } else {
                    let vc = random_constraint(&mut rng, version_counts[t]);
                    conflicts.push((name_of(t), vc));
                }
            }

            rules.push(PackageRule {
                id: PackageId::new(name.clone(), version),
                depends,
                conflicts,
                installed: installed_version[i] == Some(version),
            });
        }
    }

    // Request one uninstalled name when possible.
    let uninstalled: Vec<usize> =
        (0..n).filter(|&i| installed_version[i].is_none()).collect();
    let target = if uninstalled.is_empty() {
        rng.below(n as u64) as usize
    } else {
        uninstalled[rng.below(uninstalled.len() as u64) as usize]
    };
    let vc = match rng.below(4) {
        0 | 1 => VersionConstraint::Any,
        2 => VersionConstraint::Eq(1 + rng.below(version_counts[target] as u64) as u32),
        _ => VersionConstraint::Ge(1 + rng.below(version_counts[target] as u64) as u32),
    };
    let request = Request::new(vec![(name_of(target), vc)]);

    let universe = Universe::new(rules).expect("generated ids are unique");
    Ok((universe, request))
}

/// Renders a generated instance as a universe document.
pub fn generate(config: &GeneratorConfig) -> Result<String, GeneratorError> {
    let (universe, request) = generate_instance(config)?;
    Ok(render_universe(&universe, &request))
}
