//! Profile validation against a universe and a request.

use std::fmt;

use super::{ModelError, PackageId, PackageRef, Profile, Request, Universe};

/// One reason a profile is not valid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A member's dependency clause has no alternative installed.
    UnsatisfiedDependency { member: PackageId, clause_index: usize },
    /// Two members conflict.
    Conflict { member: PackageId, target: PackageId },
    /// A request entry is matched by no member.
    UnsatisfiedRequest { entry: PackageRef },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnsatisfiedDependency { member, clause_index } => {
                write!(f, "{member}: dependency clause #{clause_index} unsatisfied")
            }
            Violation::Conflict { member, target } => {
                write!(f, "{member} conflicts with {target}")
            }
            Violation::UnsatisfiedRequest { entry: (name, vc) } => {
                write!(f, "request entry {name}{} not satisfied", FmtVc(*vc))
            }
        }
    }
}

struct FmtVc(super::VersionConstraint);

impl fmt::Display for FmtVc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == super::VersionConstraint::Any {
            Ok(())
        } else {
            write!(f, " {}", self.0)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validity {
    Valid,
    Violations(Vec<Violation>),
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

/// Checks a profile: every member's dependency clauses must be satisfied
/// within the profile, no member's conflict expansion (excluding the member
/// itself) may intersect the profile, and every request entry must be
/// matched by some member.
///
/// A profile member that does not exist in the universe is an error, not a
/// violation.
pub fn validate_profile(
    universe: &Universe,
    request: &Request,
    profile: &Profile,
) -> Result<Validity, ModelError> {
    let mut violations = Vec::new();

    for member in profile.iter() {
        let rule = universe
            .rule(member)
            .ok_or_else(|| ModelError::UnknownMember(member.clone()))?;

        for (clause_index, clause) in rule.depends.iter().enumerate() {
            let satisfied = clause.alternatives.iter().any(|(name, vc)| {
                universe
                    .expand_constraint(name, *vc)
                    .iter()
                    .any(|id| profile.contains(id))
            });
            if !satisfied {
                violations.push(Violation::UnsatisfiedDependency {
                    member: member.clone(),
                    clause_index,
                });
            }
        }

        for (name, vc) in &rule.conflicts {
            for target in universe.expand_constraint(name, *vc) {
                if target != *member && profile.contains(&target) {
                    violations.push(Violation::Conflict {
                        member: member.clone(),
                        target,
                    });
                }
            }
        }
    }

    for entry in &request.install {
        let (name, vc) = entry;
        let satisfied = universe
            .expand_constraint(name, *vc)
            .iter()
            .any(|id| profile.contains(id));
        if !satisfied {
            violations.push(Violation::UnsatisfiedRequest { entry: entry.clone() });
        }
    }

    if violations.is_empty() {
        Ok(Validity::Valid)
    } else {
        Ok(Validity::Violations(violations))
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_universe;
    use super::*;

    fn profile(ids: &[(&str, u32)]) -> Profile {
        Profile::from_ids(ids.iter().map(|(n, v)| PackageId::new(*n, *v)))
    }

    #[test]
    fn satisfied_dependency_is_valid() {
        let doc = "package: a\nversion: 1\ndepends: b\n\npackage: b\nversion: 1\n\nrequest:\ninstall: a\n";
        let (u, r) = parse_universe(doc).unwrap();
        let v = validate_profile(&u, &r, &profile(&[("a", 1), ("b", 1)])).unwrap();
        assert!(v.is_valid());
    }

    #[test]
    fn missing_dependency_is_reported() {
        let doc = "package: a\nversion: 1\ndepends: b\n\npackage: b\nversion: 1\n\nrequest:\ninstall: a\n";
        let (u, r) = parse_universe(doc).unwrap();
        match validate_profile(&u, &r, &profile(&[("a", 1)])).unwrap() {
            Validity::Violations(vs) => assert_eq!(
                vs,
                vec![Violation::UnsatisfiedDependency {
                    member: PackageId::new("a", 1),
                    clause_index: 0,
                }]
            ),
            Validity::Valid => panic!("expected a violation"),
        }
    }

    #[test]
    fn conflict_between_members_is_reported() {
        // Hand-expansion: q@1's conflict entry p(=2) expands to {p@2}, which
        // is a member, so {p@2, q@1} must be rejected.
        let doc = "\
package: p
version: 1
conflicts: p

package: p
version: 2
conflicts: p

package: q
version: 1
conflicts: p (= 2)

request:
install: p (= 2)
";
        let (u, r) = parse_universe(doc).unwrap();
        match validate_profile(&u, &r, &profile(&[("p", 2), ("q", 1)])).unwrap() {
            Validity::Violations(vs) => assert_eq!(
                vs,
                vec![Violation::Conflict {
                    member: PackageId::new("q", 1),
                    target: PackageId::new("p", 2),
                }]
            ),
            Validity::Valid => panic!("expected a violation"),
        }
    }

    #[test]
    fn self_conflict_does_not_exclude_the_member_itself() {
        let doc = "\
package: p
version: 1
conflicts: p

package: p
version: 2
conflicts: p

request:
install: p
";
        let (u, r) = parse_universe(doc).unwrap();
        assert!(validate_profile(&u, &r, &profile(&[("p", 1)])).unwrap().is_valid());
        // ...but it does exclude the other version.
        assert!(!validate_profile(&u, &r, &profile(&[("p", 1), ("p", 2)]))
            .unwrap()
            .is_valid());
    }

    #[test]
    fn unsatisfied_request_is_reported() {
        let doc = "package: a\nversion: 1\n\nrequest:\ninstall: a\n";
        let (u, r) = parse_universe(doc).unwrap();
        match validate_profile(&u, &r, &Profile::empty()).unwrap() {
            Validity::Violations(vs) => assert!(matches!(
                vs[0],
                Violation::UnsatisfiedRequest { .. }
            )),
            Validity::Valid => panic!("expected a violation"),
        }
    }

    #[test]
    fn unknown_member_is_an_error() {
        let doc = "package: a\nversion: 1\n\nrequest:\ninstall: a\n";
        let (u, r) = parse_universe(doc).unwrap();
        let err = validate_profile(&u, &r, &profile(&[("z", 9)])).unwrap_err();
        assert_eq!(err, ModelError::UnknownMember(PackageId::new("z", 9)));
    }
}
