//! Solution measures: removed / changed / not-up-to-date / new, counted per
//! package name, and their combination into criteria vectors.

use super::{CriteriaVector, Criterion, Profile, Universe};

/// Scores a transition from `initial` to `final_profile` under the given
/// criterion. The caller is responsible for only scoring valid final
/// profiles; the measures themselves are total functions.
///
/// All four measures count package names:
/// - removed: some version initially installed, none finally;
/// - changed: any version's membership differs between the two profiles;
/// - not up to date: some version finally installed but not the latest one;
/// - new: no version initially installed, some version finally.
pub fn evaluate_criteria(
    universe: &Universe,
    initial: &Profile,
    final_profile: &Profile,
    criterion: Criterion,
) -> CriteriaVector {
    let mut removed = 0u64;
    let mut changed = 0u64;
    let mut notuptodate = 0u64;
    let mut new = 0u64;

    for name in universe.names() {
        let versions = universe.versions(name);
        let initially = versions.iter().any(|&v| initial.contains_version(name, v));
        let finally = versions.iter().any(|&v| final_profile.contains_version(name, v));

        if initially && !finally {
            removed += 1;
        }
        if versions
            .iter()
            .any(|&v| initial.contains_version(name, v) != final_profile.contains_version(name, v))
        {
            changed += 1;
        }
        if finally {
            let latest = *versions.last().expect("name has versions");
            if !final_profile.contains_version(name, latest) {
                notuptodate += 1;
            }
        }
        if !initially && finally {
            new += 1;
        }
    }

    match criterion {
        Criterion::Paranoid => CriteriaVector::new(criterion, vec![removed, changed]),
        Criterion::Trendy => CriteriaVector::new(criterion, vec![removed, notuptodate, new]),
    }
}
