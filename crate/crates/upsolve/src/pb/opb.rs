//! OPB text output for a pseudo-Boolean problem, plus the sidecar file
//! mapping variables back to package names, versions and indicators.

use std::fmt::Write;

use super::{PbProblem, PbRelation, VarRole};

/// Renders the problem in OPB form. All constraints are normalized to `>=`
/// lines with signed unit-variable terms: a term on a negative literal is
/// rewritten onto the variable with its sign flipped and the bound adjusted.
/// The objective uses the same convention; the constant offset that rewrite
/// produces is recorded in a comment so the printed optimum can be mapped
/// back.
pub fn render_opb(problem: &PbProblem) -> String {
    let mut out = String::new();
    let mut body = String::new();
    let mut constraint_lines = 0usize;

    for c in &problem.constraints {
        match c.relation {
            PbRelation::Ge => {
                push_ge_line(&mut body, &c.terms, c.bound, 1);
                constraint_lines += 1;
            }
            PbRelation::Le => {
                push_ge_line(&mut body, &c.terms, c.bound, -1);
                constraint_lines += 1;
            }
            PbRelation::Eq => {
                push_ge_line(&mut body, &c.terms, c.bound, 1);
                push_ge_line(&mut body, &c.terms, c.bound, -1);
                constraint_lines += 2;
            }
        }
    }

    writeln!(
        out,
        "* #variable= {} #constraint= {}",
        problem.varmap.num_vars(),
        constraint_lines
    )
    .unwrap();

    let mut offset = num_bigint::BigUint::from(0u32);
    let mut objective = String::from("min:");
    for (w, l) in &problem.objective.terms {
        if l.is_positive() {
            write!(objective, " +{} {}", w, l.var()).unwrap();
        } else {
            write!(objective, " -{} {}", w, l.var()).unwrap();
            offset += w;
        }
    }
    objective.push_str(" ;");
    if offset > num_bigint::BigUint::from(0u32) {
        writeln!(out, "* objective offset {offset}").unwrap();
    }
    writeln!(out, "{objective}").unwrap();
    out.push_str(&body);
    out
}

/// One normalized `>=` line. `sign` is +1 to keep the relation, -1 to turn
/// `<=` into `>=` by negating every coefficient and the bound.
fn push_ge_line(out: &mut String, terms: &[(i64, crate::lit::Lit)], bound: i64, sign: i64) {
    let mut rhs = bound * sign;
    for (coef, lit) in terms {
        let mut coef = coef * sign;
        if lit.is_negative() {
            // c * (1 - x) = c - c*x
            rhs -= coef;
            coef = -coef;
        }
        write!(out, "{:+} {} ", coef, lit.var()).unwrap();
    }
    writeln!(out, ">= {rhs} ;").unwrap();
}

/// The variable mapping sidecar: one line per variable, in variable order.
pub fn render_opb_mapping(problem: &PbProblem) -> String {
    let mut out = String::new();
    for i in 0..problem.varmap.num_vars() {
        let var = crate::lit::Var::from_index(i);
        match problem.varmap.role(var).expect("dense variable") {
            VarRole::Package(id) => writeln!(out, "{} {} {}", var, id.name, id.version).unwrap(),
            VarRole::Root => writeln!(out, "{var} root").unwrap(),
            VarRole::Noop => writeln!(out, "{var} noop").unwrap(),
            VarRole::Indicator(kind, name) => {
                writeln!(out, "{var} indicator:{kind}:{name}").unwrap()
            }
        }
    }
    out
}

/// A parsed mapping-sidecar entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OpbMapEntry {
    Package(crate::cudf::PackageId),
    Root,
    Noop,
    Indicator { kind: String, name: String },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct OpbMapParseError {
    pub line: usize,
    pub message: String,
}

pub fn parse_opb_mapping(
    text: &str,
) -> Result<Vec<(crate::lit::Var, OpbMapEntry)>, OpbMapParseError> {
    let fail = |line: usize, message: &str| OpbMapParseError { line, message: message.into() };
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let number: usize = tokens[0]
            .strip_prefix('x')
            .and_then(|n| n.parse().ok())
            .filter(|&n| n >= 1)
            .ok_or_else(|| fail(lineno, "invalid variable"))?;
        let var = crate::lit::Var::from_index(number - 1);
        let entry = match tokens.get(1) {
            Some(&"root") => OpbMapEntry::Root,
            Some(&"noop") => OpbMapEntry::Noop,
            Some(tag) if tag.starts_with("indicator:") => {
                let mut parts = tag.splitn(3, ':');
                parts.next();
                let kind = parts.next().ok_or_else(|| fail(lineno, "bad indicator"))?;
                let name = parts.next().ok_or_else(|| fail(lineno, "bad indicator"))?;
                OpbMapEntry::Indicator { kind: kind.to_string(), name: name.to_string() }
            }
            Some(name) if tokens.len() == 3 => {
                let version: u32 =
                    tokens[2].parse().map_err(|_| fail(lineno, "invalid version"))?;
                OpbMapEntry::Package(crate::cudf::PackageId::new(name.to_string(), version))
            }
            _ => return Err(fail(lineno, "unrecognized mapping entry")),
        };
        entries.push((var, entry));
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cudf::{parse_universe, Criterion};
    use crate::pb::encode;

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

    #[test]
    fn header_counts_and_objective() {
        let (u, r) = parse_universe(MICRO).unwrap();
        let problem = encode(&u, &r, Criterion::Paranoid);
        let opb = render_opb(&problem);
        let mut lines = opb.lines();
        assert_eq!(lines.next().unwrap(), "* #variable= 9 #constraint= 12");
        assert_eq!(lines.next().unwrap(), "min: +4 x6 +4 x7 +1 x8 +1 x9 ;");
        // Cardinality p@1 + p@2 <= 1 normalized to >=.
        assert!(opb.contains("-1 x1 -1 x2 >= -1 ;"));
        // Conflict ¬q@1 ∨ ¬p@2 normalized: -x2 -x3 >= -1.
        assert!(opb.contains("-1 x2 -1 x3 >= -1 ;"));
    }

    #[test]
    fn mapping_lists_every_variable() {
        let (u, r) = parse_universe(MICRO).unwrap();
        let problem = encode(&u, &r, Criterion::Trendy);
        let map = render_opb_mapping(&problem);
        let lines: Vec<&str> = map.lines().collect();
        assert_eq!(lines.len(), problem.varmap.num_vars());
        assert_eq!(lines[0], "x1 p 1");
        assert_eq!(lines[3], "x4 root");
        assert_eq!(lines[4], "x5 noop");
        assert!(lines[5..].iter().all(|l| l.contains("indicator:")));
    }

    #[test]
    fn dump_is_deterministic() {
        let (u, r) = parse_universe(MICRO).unwrap();
        let a = render_opb(&encode(&u, &r, Criterion::Trendy));
        let b = render_opb(&encode(&u, &r, Criterion::Trendy));
        assert_eq!(a, b);
    }

    #[test]
    fn mapping_round_trip() {
        let (u, r) = parse_universe(MICRO).unwrap();
        let problem = encode(&u, &r, Criterion::Paranoid);
        let entries = parse_opb_mapping(&render_opb_mapping(&problem)).unwrap();
        assert_eq!(entries.len(), problem.varmap.num_vars());
        assert_eq!(
            entries[0].1,
            OpbMapEntry::Package(crate::cudf::PackageId::new("p", 1))
        );
        assert_eq!(entries[3].1, OpbMapEntry::Root);
        assert!(matches!(entries[5].1, OpbMapEntry::Indicator { .. }));
    }
}
