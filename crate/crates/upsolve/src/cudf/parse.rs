//! Parser for the stanza-based universe/request text format.
//!
//! A document is a sequence of blank-line-separated stanzas. Package stanzas
//! look like
//!
//! ```text
//! package: a
//! version: 2
//! depends: b | c (>= 2) , d
//! conflicts: e (= 1) , a
//! installed: true
//! ```
//!
//! and the document ends with a request stanza:
//!
//! ```text
//! request:
//! install: a (>= 2)
//! ```
//!
//! Lines starting with `#` are comments.

use thiserror::Error;

use super::{
    is_valid_name, DependencyClause, PackageId, PackageRef, PackageRule, Request, Universe,
    VersionConstraint,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: duplicate package {id}")]
    DuplicatePackage { line: usize, id: PackageId },
    #[error("missing request stanza")]
    MissingRequest,
    #[error("line {line}: request has no install entries")]
    EmptyRequest { line: usize },
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, message: message.into() }
}

/// Parses a full document into a universe and the install request.
pub fn parse_universe(text: &str) -> Result<(Universe, Request), ParseError> {
    let mut rules: Vec<PackageRule> = Vec::new();
    let mut request: Option<Request> = None;
    let mut request_line = 0usize;

    let mut stanza: Option<Stanza> = None;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim_end();
        if line.trim().starts_with('#') {
            continue;
        }
        if line.trim().is_empty() {
            if let Some(s) = stanza.take() {
                finish_stanza(s, &mut rules, &mut request, &mut request_line)?;
            }
            continue;
        }

        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| syntax(lineno, format!("expected `key: value`, got {line:?}")))?;
        let key = key.trim();
        let value = value.trim();

        match key {
            "package" => {
                if let Some(s) = stanza.take() {
                    finish_stanza(s, &mut rules, &mut request, &mut request_line)?;
                }
                if request.is_some() {
                    return Err(syntax(lineno, "package stanza after the request stanza"));
                }
                if !is_valid_name(value) {
                    return Err(syntax(lineno, format!("invalid package name {value:?}")));
                }
                stanza = Some(Stanza::package(value.to_string(), lineno));
            }
            "request" => {
                if let Some(s) = stanza.take() {
                    finish_stanza(s, &mut rules, &mut request, &mut request_line)?;
                }
                if request.is_some() || matches!(stanza, Some(Stanza::Request { .. })) {
                    return Err(syntax(lineno, "duplicate request stanza"));
                }
                stanza = Some(Stanza::Request { line: lineno, install: None });
            }
            _ => match stanza.as_mut() {
                None => {
                    return Err(syntax(lineno, format!("field {key:?} outside any stanza")));
                }
                Some(Stanza::Package(p)) => p.field(lineno, key, value)?,
                Some(Stanza::Request { install, .. }) => {
                    if key != "install" {
                        return Err(syntax(lineno, format!("unknown request field {key:?}")));
                    }
                    if install.is_some() {
                        return Err(syntax(lineno, "duplicate install field"));
                    }
                    *install = Some(parse_ref_list(lineno, value)?);
                }
            },
        }
    }
    if let Some(s) = stanza.take() {
        finish_stanza(s, &mut rules, &mut request, &mut request_line)?;
    }

    let request = request.ok_or(ParseError::MissingRequest)?;
    if request.install.is_empty() {
        return Err(ParseError::EmptyRequest { line: request_line });
    }
    let universe = Universe::new(rules).map_err(|e| match e {
        super::ModelError::DuplicatePackage(id) => ParseError::DuplicatePackage { line: 0, id },
        other => syntax(0, other.to_string()),
    })?;
    Ok((universe, request))
}

/// A parsed solution document: either the FAIL marker or a profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolutionDoc {
    Fail,
    Profile(super::Profile),
}

/// Parses solution output: `package:`/`version:`/`installed:` stanzas, or
/// the single `FAIL` line. Comment lines are ignored, so best-effort
/// status comments parse fine.
pub fn parse_solution(text: &str) -> Result<SolutionDoc, ParseError> {
    let mut ids = Vec::new();
    let mut pending: Option<(String, Option<u32>, usize)> = None;

    let finish = |pending: &mut Option<(String, Option<u32>, usize)>,
                  ids: &mut Vec<super::PackageId>|
     -> Result<(), ParseError> {
        if let Some((name, version, line)) = pending.take() {
            let version =
                version.ok_or_else(|| syntax(line, format!("package {name:?} has no version")))?;
            ids.push(PackageId::new(name, version));
        }
        Ok(())
    };

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            finish(&mut pending, &mut ids)?;
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        if line == super::render::FAIL_LINE {
            if pending.is_some() || !ids.is_empty() {
                return Err(syntax(lineno, "FAIL mixed with solution stanzas"));
            }
            return Ok(SolutionDoc::Fail);
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| syntax(lineno, format!("expected `key: value`, got {line:?}")))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "package" => {
                finish(&mut pending, &mut ids)?;
                if !is_valid_name(value) {
                    return Err(syntax(lineno, format!("invalid package name {value:?}")));
                }
                pending = Some((value.to_string(), None, lineno));
            }
            "version" => match pending.as_mut() {
                Some((_, version @ None, _)) => {
                    let v: u32 = value
                        .parse()
                        .map_err(|_| syntax(lineno, format!("invalid version {value:?}")))?;
                    if v == 0 {
                        return Err(syntax(lineno, "versions start at 1"));
                    }
                    *version = Some(v);
                }
                Some(_) => return Err(syntax(lineno, "duplicate version field")),
                None => return Err(syntax(lineno, "version outside a stanza")),
            },
            "installed" => {
                if pending.is_none() {
                    return Err(syntax(lineno, "installed outside a stanza"));
                }
                if value != "true" {
                    return Err(syntax(lineno, format!("invalid installed value {value:?}")));
                }
            }
            other => return Err(syntax(lineno, format!("unknown solution field {other:?}"))),
        }
    }
    finish(&mut pending, &mut ids)?;
    Ok(SolutionDoc::Profile(super::Profile::from_ids(ids)))
}

enum Stanza {
    Package(PackageStanza),
    Request { line: usize, install: Option<Vec<PackageRef>> },
}

impl Stanza {
    fn package(name: String, line: usize) -> Stanza {
        Stanza::Package(PackageStanza {
            name,
            line,
            version: None,
            depends: Vec::new(),
            conflicts: Vec::new(),
            installed: false,
            seen_depends: false,
            seen_conflicts: false,
            seen_installed: false,
        })
    }
}

struct PackageStanza {
    name: String,
    line: usize,
    version: Option<u32>,
    depends: Vec<DependencyClause>,
    conflicts: Vec<PackageRef>,
    installed: bool,
    seen_depends: bool,
    seen_conflicts: bool,
    seen_installed: bool,
}

impl PackageStanza {
    fn field(&mut self, lineno: usize, key: &str, value: &str) -> Result<(), ParseError> {
        match key {
            "version" => {
                if self.version.is_some() {
                    return Err(syntax(lineno, "duplicate version field"));
                }
                let v: u32 = value
                    .parse()
                    .map_err(|_| syntax(lineno, format!("invalid version {value:?}")))?;
                if v == 0 {
                    return Err(syntax(lineno, "versions start at 1"));
                }
                self.version = Some(v);
            }
            "depends" => {
                if self.seen_depends {
                    return Err(syntax(lineno, "duplicate depends field"));
                }
                self.seen_depends = true;
                for clause in value.split(',') {
                    let alternatives = clause
                        .split('|')
                        .map(|alt| parse_ref(lineno, alt))
                        .collect::<Result<Vec<_>, _>>()?;
                    if alternatives.is_empty() {
                        return Err(syntax(lineno, "empty dependency clause"));
                    }
                    self.depends.push(DependencyClause::new(alternatives));
                }
            }
            "conflicts" => {
                if self.seen_conflicts {
                    return Err(syntax(lineno, "duplicate conflicts field"));
                }
                self.seen_conflicts = true;
                self.conflicts = parse_ref_list(lineno, value)?;
            }
            "installed" => {
                if self.seen_installed {
                    return Err(syntax(lineno, "duplicate installed field"));
                }
                self.seen_installed = true;
                self.installed = match value {
                    "true" => true,
                    "false" => false,
                    other => {
                        return Err(syntax(lineno, format!("invalid installed value {other:?}")))
                    }
                };
            }
            other => return Err(syntax(lineno, format!("unknown package field {other:?}"))),
        }
        Ok(())
    }
}

fn finish_stanza(
    stanza: Stanza,
    rules: &mut Vec<PackageRule>,
    request: &mut Option<Request>,
    request_line: &mut usize,
) -> Result<(), ParseError> {
    match stanza {
        Stanza::Package(p) => {
            let version = p
                .version
                .ok_or_else(|| syntax(p.line, format!("package {:?} has no version", p.name)))?;
            let id = PackageId::new(p.name, version);
            if rules.iter().any(|r| r.id == id) {
                return Err(ParseError::DuplicatePackage { line: p.line, id });
            }
            rules.push(PackageRule {
                id,
                depends: p.depends,
                conflicts: p.conflicts,
                installed: p.installed,
            });
        }
        Stanza::Request { line, install } => {
            *request = Some(Request { install: install.unwrap_or_default() });
            *request_line = line;
        }
    }
    Ok(())
}

fn parse_ref_list(lineno: usize, value: &str) -> Result<Vec<PackageRef>, ParseError> {
    if value.trim().is_empty() {
        return Ok(Vec::new());
    }
    value.split(',').map(|alt| parse_ref(lineno, alt)).collect()
}

/// Parses `name` or `name (<op> <int>)`.
fn parse_ref(lineno: usize, text: &str) -> Result<PackageRef, ParseError> {
    let text = text.trim();
    let (name, vc) = match text.split_once('(') {
        None => (text, VersionConstraint::Any),
        Some((name, rest)) => {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| syntax(lineno, format!("unterminated constraint in {text:?}")))?;
            (name.trim(), parse_constraint(lineno, inner.trim())?)
        }
    };
    if !is_valid_name(name) {
        return Err(syntax(lineno, format!("invalid package name {name:?}")));
    }
    Ok((name.to_string(), vc))
}

type ConstraintBuilder = fn(u32) -> VersionConstraint;

fn parse_constraint(lineno: usize, inner: &str) -> Result<VersionConstraint, ParseError> {
    let ops: &[(&str, ConstraintBuilder)] = &[
        (">=", VersionConstraint::Ge),
        ("<=", VersionConstraint::Le),
        ("!=", VersionConstraint::Ne),
        (">", VersionConstraint::Gt),
        ("<", VersionConstraint::Lt),
        ("=", VersionConstraint::Eq),
    ];
    for (tok, build) in ops {
        if let Some(rest) = inner.strip_prefix(tok) {
            let v: u32 = rest
                .trim()
                .parse()
                .map_err(|_| syntax(lineno, format!("invalid version in constraint {inner:?}")))?;
            if v == 0 {
                return Err(syntax(lineno, "versions start at 1"));
            }
            return Ok(build(v));
        }
    }
    Err(syntax(lineno, format!("invalid version operator in {inner:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    const MICRO: &str = "\
package: p
version: 1
installed: true

package: p
version: 2

package: q
version: 1
installed: true
conflicts: p (= 2)

request:
install: p (= 2)
";

    #[test]
    fn parses_the_micro_universe() {
        let (u, r) = parse_universe(MICRO).unwrap();
        assert_eq!(u.rule_count(), 3);
        assert_eq!(u.installed_count(), 2);
        assert_eq!(r.install, vec![("p".to_string(), VersionConstraint::Eq(2))]);
        let q = u.rule(&PackageId::new("q", 1)).unwrap();
        assert_eq!(q.conflicts, vec![("p".to_string(), VersionConstraint::Eq(2))]);
    }

    #[test]
    fn depends_clause_with_alternatives() {
        let doc = "\
package: a
version: 1
depends: b | c (>= 2)

request:
install: a
";
        let (u, _) = parse_universe(doc).unwrap();
        let a = u.rule(&PackageId::new("a", 1)).unwrap();
        assert_eq!(a.depends.len(), 1);
        assert_eq!(
            a.depends[0].alternatives,
            vec![
                ("b".to_string(), VersionConstraint::Any),
                ("c".to_string(), VersionConstraint::Ge(2)),
            ]
        );
    }

    #[test]
    fn duplicate_package_is_an_error() {
        let doc = "\
package: p
version: 1

package: p
version: 1

request:
install: p
";
        match parse_universe(doc).unwrap_err() {
            ParseError::DuplicatePackage { id, .. } => assert_eq!(id, PackageId::new("p", 1)),
            other => panic!("expected duplicate package, got {other:?}"),
        }
    }

    #[test]
    fn missing_request_is_an_error() {
        let doc = "package: p\nversion: 1\n";
        assert_eq!(parse_universe(doc).unwrap_err(), ParseError::MissingRequest);
    }

    #[test]
    fn empty_request_is_an_error() {
        let doc = "package: p\nversion: 1\n\nrequest:\n";
        assert!(matches!(parse_universe(doc).unwrap_err(), ParseError::EmptyRequest { .. }));
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let doc = "package: p\nversion: one\n\nrequest:\ninstall: p\n";
        match parse_universe(doc).unwrap_err() {
            ParseError::Syntax { line, .. } => assert_eq!(line, 2),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn fields_outside_a_stanza_are_rejected() {
        let doc = "version: 1\n";
        assert!(matches!(parse_universe(doc).unwrap_err(), ParseError::Syntax { line: 1, .. }));
    }

    #[test]
    fn comments_are_ignored() {
        let doc = "# generated\npackage: p\nversion: 1\n\nrequest:\ninstall: p\n";
        let (u, _) = parse_universe(doc).unwrap();
        assert_eq!(u.rule_count(), 1);
    }

    #[test]
    fn solution_documents_round_trip() {
        use super::super::{render_solution, Profile};
        let profile = Profile::from_ids([PackageId::new("a", 1), PackageId::new("b", 2)]);
        let doc = render_solution(&profile);
        assert_eq!(parse_solution(&doc).unwrap(), SolutionDoc::Profile(profile));
        assert_eq!(parse_solution("FAIL\n").unwrap(), SolutionDoc::Fail);
        assert_eq!(
            parse_solution("").unwrap(),
            SolutionDoc::Profile(Profile::empty())
        );
        // Status comments do not disturb parsing.
        let commented = format!("# status: best-effort u=(0, 1)\n{doc}");
        assert!(matches!(parse_solution(&commented).unwrap(), SolutionDoc::Profile(_)));
    }
}
