//! Command-line driver: `solve`, `translate`, `oracle`, `generate`,
//! `validate`.
//!
//! Exit codes: 0 solved to optimality, 1 best effort, 2 no solution
//! (`FAIL`), 3 input error, 4 internal error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::budget::Budget;
use crate::cudf::{
    parse_solution, parse_universe, render_solution, validate_profile, Criterion, Profile,
    SolutionDoc, Validity, FAIL_LINE,
};
use crate::generator::{generate, GeneratorConfig};
use crate::maxsat::{self, violated_counts, SolveMode, SolveStatus};
use crate::oracle::{brute_force, BruteForceResult};
use crate::pb::opb::{parse_opb_mapping, render_opb, render_opb_mapping, OpbMapEntry};
use crate::pipeline::run_request;
use crate::wcnf::io::{parse_wcnf, parse_wcnf_mapping, render_wcnf, render_wcnf_mapping, MapTarget};
use crate::wcnf::group_levels;

pub const EXIT_OPTIMAL: i32 = 0;
pub const EXIT_BEST_EFFORT: i32 = 1;
pub const EXIT_FAIL: i32 = 2;
pub const EXIT_INPUT_ERROR: i32 = 3;
pub const EXIT_INTERNAL_ERROR: i32 = 4;

#[derive(Parser)]
#[command(name = "upsolve", version, about = "Package upgradeability solver")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an install request end to end
    Solve(SolveArgs),
    /// Write the OPB and WCNF artifacts plus variable mappings
    Translate(TranslateArgs),
    /// Exhaustive reference answer for a small universe
    Oracle(OracleArgs),
    /// Emit a seeded random universe document
    Generate(GenerateArgs),
    /// Check a solution document against a universe and request
    Validate(ValidateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum CriterionArg {
    Paranoid,
    Trendy,
}

impl From<CriterionArg> for Criterion {
    fn from(c: CriterionArg) -> Criterion {
        match c {
            CriterionArg::Paranoid => Criterion::Paranoid,
            CriterionArg::Trendy => Criterion::Trendy,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Lex,
    Aggregate,
}

impl From<ModeArg> for SolveMode {
    fn from(m: ModeArg) -> SolveMode {
        match m {
            ModeArg::Lex => SolveMode::Lexicographic,
            ModeArg::Aggregate => SolveMode::Aggregate,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    /// Universe + request document
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "paranoid")]
    criterion: CriterionArg,
    #[arg(long, value_enum, default_value = "lex")]
    mode: ModeArg,
    /// Wall-clock budget in seconds
    #[arg(long, default_value_t = 300, value_parser = clap::value_parser!(u64).range(1..))]
    timeout: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write the pseudo-Boolean stage to this path (+ .map sidecar)
    #[arg(long, value_name = "PATH")]
    dump_opb: Option<PathBuf>,
    /// Also write the MaxSAT stage to this path (+ .map sidecar)
    #[arg(long, value_name = "PATH")]
    dump_wcnf: Option<PathBuf>,
    /// Write the solution here instead of stdout
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Resume from a dumped WCNF instead of a universe document
    #[arg(long, value_name = "PATH")]
    from_wcnf: Option<PathBuf>,
}

#[derive(Args)]
struct TranslateArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value = "paranoid")]
    criterion: CriterionArg,
    /// OPB output path (default: input with .opb extension)
    #[arg(long, value_name = "PATH")]
    dump_opb: Option<PathBuf>,
    /// WCNF output path (default: input with .wcnf extension)
    #[arg(long, value_name = "PATH")]
    dump_wcnf: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value = "paranoid")]
    criterion: CriterionArg,
    /// Largest rule count the exhaustive search will accept
    #[arg(long, default_value_t = 20)]
    limit: usize,
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 8)]
    names: usize,
    #[arg(long, default_value_t = 2)]
    max_versions: u32,
    #[arg(long, default_value_t = 0.5)]
    dep_density: f64,
    #[arg(long, default_value_t = 0.2)]
    conflict_density: f64,
    #[arg(long, default_value_t = 0.3)]
    installed_fraction: f64,
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    input: PathBuf,
    solution: PathBuf,
}

/// Parses process arguments and runs; returns the exit code.
pub fn main() -> i32 {
    run(Cli::parse())
}

pub fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Translate(args) => cmd_translate(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Generate(args) => cmd_generate(args),
        Command::Validate(args) => cmd_validate(args),
    }
}

fn read_input(path: &Path) -> Result<String, i32> {
    fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        EXIT_INPUT_ERROR
    })
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), i32> {
    match path {
        Some(p) => fs::write(p, content).map_err(|e| {
            eprintln!("error: cannot write {}: {e}", p.display());
            EXIT_INPUT_ERROR
        }),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// `foo.opb` -> `foo.opb.map`
fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".map");
    PathBuf::from(s)
}

fn format_vector(values: &[u64]) -> String {
    let mut out = String::from("(");
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write!(out, "{v}").unwrap();
    }
    out.push(')');
    out
}

fn cmd_solve(args: SolveArgs) -> i32 {
    if let Some(wcnf_path) = &args.from_wcnf {
        return solve_from_wcnf(&args, wcnf_path.clone());
    }
    let Some(input) = args.input.clone() else {
        eprintln!("error: provide an input document or --from-wcnf");
        return EXIT_INPUT_ERROR;
    };
    let text = match read_input(&input) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let (universe, request) = match parse_universe(&text) {
        Ok(pair) => pair,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };

    let budget = Budget::with_timeout(Duration::from_secs(args.timeout));
    let run = match run_request(
        &universe,
        &request,
        args.criterion.into(),
        args.mode.into(),
        &budget,
        args.seed,
    ) {
        Ok(run) => run,
        Err(e) => {
            eprintln!("internal error: {e}");
            return EXIT_INTERNAL_ERROR;
        }
    };

    if let Some(path) = &args.dump_opb {
        let ok = write_output(Some(path), &render_opb(&run.problem)).and_then(|_| {
            write_output(Some(&sidecar_path(path)), &render_opb_mapping(&run.problem))
        });
        if let Err(code) = ok {
            return code;
        }
    }
    if let Some(path) = &args.dump_wcnf {
        let ok = write_output(Some(path), &render_wcnf(&run.wcnf)).and_then(|_| {
            write_output(Some(&sidecar_path(path)), &render_wcnf_mapping(&run.wcnf))
        });
        if let Err(code) = ok {
            return code;
        }
    }

    match run.status() {
        SolveStatus::Unsatisfiable => {
            if let Err(code) = write_output(args.output.as_deref(), &format!("{FAIL_LINE}\n")) {
                return code;
            }
            EXIT_FAIL
        }
        SolveStatus::Interrupted => {
            let doc = "# status: interrupted\n";
            if let Err(code) = write_output(args.output.as_deref(), doc) {
                return code;
            }
            EXIT_BEST_EFFORT
        }
        status @ (SolveStatus::Optimal | SolveStatus::BestEffort) => {
            let Some((profile, vector)) = &run.best else {
                eprintln!("internal error: solver reported a solution without a model");
                return EXIT_INTERNAL_ERROR;
            };
            match validate_profile(&universe, &request, profile) {
                Ok(Validity::Valid) => {}
                Ok(Validity::Violations(vs)) => {
                    eprintln!("internal error: decoded profile is invalid:");
                    for v in vs {
                        eprintln!("  {v}");
                    }
                    return EXIT_INTERNAL_ERROR;
                }
                Err(e) => {
                    eprintln!("internal error: {e}");
                    return EXIT_INTERNAL_ERROR;
                }
            }
            let mut doc = String::new();
            if status == SolveStatus::BestEffort {
                writeln!(doc, "# status: best-effort u={}", format_vector(&vector.values))
                    .unwrap();
            }
            doc.push_str(&render_solution(profile));
            if let Err(code) = write_output(args.output.as_deref(), &doc) {
                return code;
            }
            if status == SolveStatus::Optimal {
                EXIT_OPTIMAL
            } else {
                EXIT_BEST_EFFORT
            }
        }
    }
}

/// Resume from dumped artifacts. The WCNF sidecar and, when the companion
/// `.opb.map` exists next to it, the package mapping let the answer come
/// back out as solution stanzas; otherwise only the vector is reported.
fn solve_from_wcnf(args: &SolveArgs, wcnf_path: PathBuf) -> i32 {
    let text = match read_input(&wcnf_path) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let wcnf = match parse_wcnf(&text) {
        Ok(w) => w,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    let groups = match group_levels(&wcnf) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };

    let budget = Budget::with_timeout(Duration::from_secs(args.timeout));
    let report = match maxsat::solve(&wcnf, args.mode.into(), &budget, args.seed, None) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("internal error: {e}");
            return EXIT_INTERNAL_ERROR;
        }
    };

    match report.status {
        SolveStatus::Unsatisfiable => {
            if let Err(code) = write_output(args.output.as_deref(), &format!("{FAIL_LINE}\n")) {
                return code;
            }
            EXIT_FAIL
        }
        SolveStatus::Interrupted => {
            let _ = write_output(args.output.as_deref(), "# status: interrupted\n");
            EXIT_BEST_EFFORT
        }
        status @ (SolveStatus::Optimal | SolveStatus::BestEffort) => {
            let model = report.final_model.as_ref().expect("status carries a model");
            let counts = violated_counts(model, &groups);
            let mut doc = String::new();
            if status == SolveStatus::BestEffort {
                writeln!(doc, "# status: best-effort u={}", format_vector(&counts)).unwrap();
            }
            writeln!(doc, "# vector: {}", format_vector(&counts)).unwrap();
            if let Some(profile) = decode_via_sidecars(&wcnf_path, model) {
                doc.push_str(&render_solution(&profile));
            }
            if let Err(code) = write_output(args.output.as_deref(), &doc) {
                return code;
            }
            if status == SolveStatus::Optimal {
                EXIT_OPTIMAL
            } else {
                EXIT_BEST_EFFORT
            }
        }
    }
}

/// Composes `X.wcnf.map` (WCNF var -> OPB var) with `X.opb.map` (OPB var ->
/// package) the way the file pipeline intends. Returns None when either
/// sidecar is missing or unreadable.
fn decode_via_sidecars(wcnf_path: &Path, model: &[bool]) -> Option<Profile> {
    let wcnf_map = fs::read_to_string(sidecar_path(wcnf_path)).ok()?;
    let opb_map_path = wcnf_path.with_extension("opb.map");
    let opb_map = fs::read_to_string(&opb_map_path).ok()?;
    let wcnf_entries = parse_wcnf_mapping(&wcnf_map).ok()?;
    let opb_entries: std::collections::HashMap<_, _> =
        parse_opb_mapping(&opb_map).ok()?.into_iter().collect();

    let mut profile = Profile::empty();
    for (wcnf_var, target) in wcnf_entries {
        let MapTarget::Opb(opb_var) = target else { continue };
        if !model.get(wcnf_var.index()).copied().unwrap_or(false) {
            continue;
        }
        if let Some(OpbMapEntry::Package(id)) = opb_entries.get(&opb_var) {
            profile.insert(id.clone());
        }
    }
    Some(profile)
}

fn cmd_translate(args: TranslateArgs) -> i32 {
    let text = match read_input(&args.input) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let (universe, request) = match parse_universe(&text) {
        Ok(pair) => pair,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    let problem = crate::pb::encode(&universe, &request, args.criterion.into());
    let wcnf = match crate::wcnf::pb_to_wcnf(&problem) {
        Ok(w) => w,
        Err(e) => {
            eprintln!("internal error: {e}");
            return EXIT_INTERNAL_ERROR;
        }
    };

    let opb_path = args.dump_opb.unwrap_or_else(|| args.input.with_extension("opb"));
    let wcnf_path = args.dump_wcnf.unwrap_or_else(|| args.input.with_extension("wcnf"));
    let result = write_output(Some(&opb_path), &render_opb(&problem))
        .and_then(|_| write_output(Some(&sidecar_path(&opb_path)), &render_opb_mapping(&problem)))
        .and_then(|_| write_output(Some(&wcnf_path), &render_wcnf(&wcnf)))
        .and_then(|_| {
            write_output(Some(&sidecar_path(&wcnf_path)), &render_wcnf_mapping(&wcnf))
        });
    match result {
        Ok(()) => EXIT_OPTIMAL,
        Err(code) => code,
    }
}

fn cmd_oracle(args: OracleArgs) -> i32 {
    let text = match read_input(&args.input) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let (universe, request) = match parse_universe(&text) {
        Ok(pair) => pair,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    match brute_force(&universe, &request, args.criterion.into(), args.limit) {
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT_ERROR
        }
        Ok(BruteForceResult::Unsatisfiable { .. }) => {
            if let Err(code) = write_output(args.output.as_deref(), &format!("{FAIL_LINE}\n")) {
                return code;
            }
            EXIT_FAIL
        }
        Ok(BruteForceResult::Optimal { vector, witness, explored }) => {
            let mut doc = String::new();
            writeln!(doc, "# vector: {}", format_vector(&vector.values)).unwrap();
            writeln!(doc, "# explored: {explored}").unwrap();
            doc.push_str(&render_solution(&witness));
            match write_output(args.output.as_deref(), &doc) {
                Ok(()) => EXIT_OPTIMAL,
                Err(code) => code,
            }
        }
    }
}

fn cmd_generate(args: GenerateArgs) -> i32 {
    let config = GeneratorConfig {
        seed: args.seed,
        names: args.names,
        max_versions: args.max_versions,
        dep_density: args.dep_density,
        conflict_density: args.conflict_density,
        installed_fraction: args.installed_fraction,
    };
    match generate(&config) {
        Ok(doc) => match write_output(args.output.as_deref(), &doc) {
            Ok(()) => EXIT_OPTIMAL,
            Err(code) => code,
        },
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT_ERROR
        }
    }
}

fn cmd_validate(args: ValidateArgs) -> i32 {
    let input = match read_input(&args.input) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let (universe, request) = match parse_universe(&input) {
        Ok(pair) => pair,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    let solution = match read_input(&args.solution) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let profile = match parse_solution(&solution) {
        Ok(SolutionDoc::Profile(p)) => p,
        Ok(SolutionDoc::Fail) => {
            println!("solution declares FAIL");
            return EXIT_FAIL;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    match validate_profile(&universe, &request, &profile) {
        Ok(Validity::Valid) => {
            println!("valid");
            EXIT_OPTIMAL
        }
        Ok(Validity::Violations(vs)) => {
            for v in &vs {
                println!("violation: {v}");
            }
            EXIT_FAIL
        }
        Err(e) => {
            println!("violation: {e}");
            EXIT_FAIL
        }
    }
}
