//! WCNF text format: `p wcnf <vars> <clauses> <top>` with weighted clause
//! lines, plus the sidecar mapping WCNF variables back to the
//! pseudo-Boolean variables they came from.
//!
//! The level schema (weight and size per lexicographic stratum) rides along
//! in `c level` comment lines so a dumped instance can be re-solved with
//! the exact same strata, including empty ones.

use std::fmt::Write;
use std::str::FromStr;

use num_bigint::BigUint;
use thiserror::Error;

use super::{Clause, SoftClause, Wcnf};
use crate::lit::{Lit, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WcnfParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing p wcnf header")]
    MissingHeader,
}

fn syntax(line: usize, message: impl Into<String>) -> WcnfParseError {
    WcnfParseError::Syntax { line, message: message.into() }
}

pub fn render_wcnf(wcnf: &Wcnf) -> String {
    let mut out = String::new();
    for (weight, size) in wcnf.level_weights.iter().zip(&wcnf.level_sizes) {
        writeln!(out, "c level {weight} {size}").unwrap();
    }
    for aux in &wcnf.aux {
        writeln!(out, "c {} = aux bit {} for {}", aux.var, aux.bit, aux.group).unwrap();
    }
    writeln!(
        out,
        "p wcnf {} {} {}",
        wcnf.num_vars,
        wcnf.hard.len() + wcnf.soft.len(),
        wcnf.top
    )
    .unwrap();
    for clause in &wcnf.hard {
        push_clause(&mut out, &wcnf.top, clause);
    }
    for soft in &wcnf.soft {
        push_clause(&mut out, &soft.weight, &soft.lits);
    }
    out
}

fn push_clause(out: &mut String, weight: &BigUint, lits: &[Lit]) {
    write!(out, "{weight}").unwrap();
    for l in lits {
        write!(out, " {}", l.to_dimacs()).unwrap();
    }
    out.push_str(" 0\n");
}

pub fn parse_wcnf(text: &str) -> Result<Wcnf, WcnfParseError> {
    let mut header: Option<(usize, BigUint)> = None;
    let mut hard: Vec<Clause> = Vec::new();
    let mut soft: Vec<SoftClause> = Vec::new();
    let mut schema: Vec<(BigUint, usize)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('c') {
            let tokens: Vec<&str> = rest.split_whitespace().collect();
            if tokens.first() == Some(&"level") && tokens.len() == 3 {
                let weight = BigUint::from_str(tokens[1])
                    .map_err(|_| syntax(lineno, "invalid level weight"))?;
                let size: usize =
                    tokens[2].parse().map_err(|_| syntax(lineno, "invalid level size"))?;
                schema.push((weight, size));
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix("p ") {
            let tokens: Vec<&str> = rest.split_whitespace().collect();
            if tokens.len() != 4 || tokens[0] != "wcnf" {
                return Err(syntax(lineno, "expected `p wcnf <vars> <clauses> <top>`"));
            }
            let vars: usize =
                tokens[1].parse().map_err(|_| syntax(lineno, "invalid variable count"))?;
            let top = BigUint::from_str(tokens[3])
                .map_err(|_| syntax(lineno, "invalid top weight"))?;
            header = Some((vars, top));
            continue;
        }

        let (vars, top) = header.as_ref().ok_or(WcnfParseError::MissingHeader)?;
        let mut tokens = line.split_whitespace();
        let weight = BigUint::from_str(tokens.next().expect("non-empty line"))
            .map_err(|_| syntax(lineno, "invalid clause weight"))?;
        let mut lits = Vec::new();
        let mut terminated = false;
        for tok in tokens {
            let n: i64 = tok.parse().map_err(|_| syntax(lineno, "invalid literal"))?;
            if n == 0 {
                terminated = true;
                break;
            }
            let lit = Lit::from_dimacs(n).ok_or_else(|| syntax(lineno, "invalid literal"))?;
            if lit.var().index() >= *vars {
                return Err(syntax(lineno, "literal out of declared variable range"));
            }
            lits.push(lit);
        }
        if !terminated {
            return Err(syntax(lineno, "clause not terminated by 0"));
        }
        if weight == *top {
            hard.push(lits);
        } else {
            soft.push(SoftClause { lits, weight });
        }
    }

    let (num_vars, top) = header.ok_or(WcnfParseError::MissingHeader)?;
    if schema.is_empty() {
        // No embedded schema: infer strata from the distinct weights.
        let mut weights: Vec<BigUint> = soft.iter().map(|s| s.weight.clone()).collect();
        weights.sort();
        weights.dedup();
        weights.reverse();
        schema = weights
            .into_iter()
            .map(|w| {
                let size = soft.iter().filter(|s| s.weight == w).count();
                (w, size)
            })
            .collect();
    }
    let (level_weights, level_sizes) = schema.into_iter().unzip();
    Ok(Wcnf {
        num_vars,
        hard,
        soft,
        top,
        aux: Vec::new(),
        level_weights,
        level_sizes,
    })
}

/// What a WCNF variable maps back to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapTarget {
    /// An original pseudo-Boolean variable.
    Opb(Var),
    /// A bitwise-encoding auxiliary.
    Aux { group: String, bit: usize },
}

/// The variables of our WCNF coincide with the OPB numbering for originals;
/// the sidecar records that correspondence explicitly plus one line per
/// auxiliary.
pub fn render_wcnf_mapping(wcnf: &Wcnf) -> String {
    let mut out = String::new();
    let aux_start = wcnf.num_vars - wcnf.aux.len();
    for i in 0..aux_start {
        let v = Var::from_index(i);
        writeln!(out, "{v} {v}").unwrap();
    }
    for aux in &wcnf.aux {
        writeln!(out, "{} aux {} {}", aux.var, aux.group, aux.bit).unwrap();
    }
    out
}

pub fn parse_wcnf_mapping(text: &str) -> Result<Vec<(Var, MapTarget)>, WcnfParseError> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let var = parse_var(lineno, tokens[0])?;
        let target = match tokens.get(1) {
            Some(&"aux") if tokens.len() == 4 => {
                let bit: usize =
                    tokens[3].parse().map_err(|_| syntax(lineno, "invalid bit index"))?;
                MapTarget::Aux { group: tokens[2].to_string(), bit }
            }
            Some(tok) if tokens.len() == 2 => MapTarget::Opb(parse_var(lineno, tok)?),
            _ => return Err(syntax(lineno, "expected `x<i> x<j>` or `x<i> aux <name> <bit>`")),
        };
        entries.push((var, target));
    }
    Ok(entries)
}

fn parse_var(lineno: usize, token: &str) -> Result<Var, WcnfParseError> {
    let number: usize = token
        .strip_prefix('x')
        .and_then(|n| n.parse().ok())
        .filter(|&n| n >= 1)
        .ok_or_else(|| syntax(lineno, format!("invalid variable {token:?}")))?;
    Ok(Var::from_index(number - 1))
}
