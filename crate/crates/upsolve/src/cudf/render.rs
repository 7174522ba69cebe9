//! Text output: solution documents and full universe documents.

use std::fmt::Write;

use super::{Profile, Request, Universe, VersionConstraint};

/// The single-line document emitted when no valid profile exists.
pub const FAIL_LINE: &str = "FAIL";

/// Renders a profile as solution stanzas, one per member, sorted by
/// (name, version). An empty profile renders as an empty document, which is
/// distinct from the `FAIL` line.
///
/// The serializer does not validate; emitting several versions of one name
/// is a legal output shape.
pub fn render_solution(profile: &Profile) -> String {
    let mut out = String::new();
    for (i, id) in profile.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        writeln!(out, "package: {}", id.name).unwrap();
        writeln!(out, "version: {}", id.version).unwrap();
        writeln!(out, "installed: true").unwrap();
    }
    out
}

fn push_ref(out: &mut String, name: &str, vc: VersionConstraint) {
    out.push_str(name);
    if vc != VersionConstraint::Any {
        write!(out, " {vc}").unwrap();
    }
}

fn push_ref_list(out: &mut String, refs: &[(String, VersionConstraint)]) {
    for (i, (name, vc)) in refs.iter().enumerate() {
        if i > 0 {
            out.push_str(" , ");
        }
        push_ref(out, name, *vc);
    }
}

/// Renders a universe and request back into the stanza format parsed by
/// [`super::parse_universe`]. `parse(render(u, r))` reproduces both inputs
/// field by field.
pub fn render_universe(universe: &Universe, request: &Request) -> String {
    let mut out = String::new();
    for rule in universe.rules() {
        writeln!(out, "package: {}", rule.id.name).unwrap();
        writeln!(out, "version: {}", rule.id.version).unwrap();
        if !rule.depends.is_empty() {
            out.push_str("depends: ");
            for (i, clause) in rule.depends.iter().enumerate() {
                if i > 0 {
                    out.push_str(" , ");
                }
                for (j, (name, vc)) in clause.alternatives.iter().enumerate() {
                    if j > 0 {
                        out.push_str(" | ");
                    }
                    push_ref(&mut out, name, *vc);
                }
            }
            out.push('\n');
        }
        if !rule.conflicts.is_empty() {
            out.push_str("conflicts: ");
            push_ref_list(&mut out, &rule.conflicts);
            out.push('\n');
        }
        if rule.installed {
            writeln!(out, "installed: true").unwrap();
        }
        out.push('\n');
    }
    out.push_str("request:\n");
    out.push_str("install: ");
    push_ref_list(&mut out, &request.install);
    out.push('\n');
    out
}
