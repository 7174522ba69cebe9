//! Integration tests for the command-line pipeline: exit codes, file
//! artifacts, and agreement between the in-memory and file-resumed paths.

use std::path::{Path, PathBuf};
use std::process::Command;

use upsolve::budget::Budget;
use upsolve::cudf::{parse_solution, parse_universe, Criterion, SolutionDoc};
use upsolve::generator::{generate, GeneratorConfig};
use upsolve::maxsat::SolveMode;
use upsolve::pipeline::run_request;

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

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_upsolve"))
}

fn workdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("upsolve-pipeline-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir is creatable");
    dir
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).expect("temp dir is writable");
    path
}

#[test]
fn solve_optimal_exit_code_and_output() {
    let dir = workdir("solve");
    let input = write(&dir, "micro.cudf", MICRO);
    let out = bin().arg("solve").arg(&input).output().expect("binary runs");
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let doc = String::from_utf8(out.stdout).unwrap();
    match parse_solution(&doc).unwrap() {
        SolutionDoc::Profile(profile) => {
            assert!(profile.contains_version("p", 2));
            assert!(!profile.contains_version("q", 1));
        }
        SolutionDoc::Fail => panic!("expected a solution"),
    }
}

#[test]
fn absent_package_fails_with_exit_2() {
    let dir = workdir("fail");
    let input = write(&dir, "absent.cudf", "package: a\nversion: 1\n\nrequest:\ninstall: z\n");
    let out = bin().arg("solve").arg(&input).output().expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "FAIL\n");
}

#[test]
fn malformed_input_exits_3() {
    let dir = workdir("badinput");
    let input = write(&dir, "broken.cudf", "package: a\nversion: one\n");
    let out = bin().arg("solve").arg(&input).output().expect("binary runs");
    assert_eq!(out.status.code(), Some(3));
    let missing = dir.join("does-not-exist.cudf");
    let out = bin().arg("solve").arg(&missing).output().expect("binary runs");
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn translate_writes_four_artifacts_and_resume_agrees() {
    let dir = workdir("translate");
    let input = write(&dir, "inst.cudf", MICRO);
    for criterion in ["paranoid", "trendy"] {
        let opb = dir.join(format!("{criterion}.opb"));
        let wcnf = dir.join(format!("{criterion}.wcnf"));
        let out = bin()
            .arg("translate")
            .arg(&input)
            .args(["--criterion", criterion])
            .arg("--dump-opb")
            .arg(&opb)
            .arg("--dump-wcnf")
            .arg(&wcnf)
            .output()
            .expect("binary runs");
        assert_eq!(out.status.code(), Some(0), "{out:?}");
        for path in [&opb, &wcnf] {
            assert!(path.exists(), "{} missing", path.display());
            let map = PathBuf::from(format!("{}.map", path.display()));
            assert!(map.exists(), "{} missing", map.display());
        }

        // Resume from the WCNF; vector must match the in-memory pipeline.
        let out = bin()
            .arg("solve")
            .arg("--from-wcnf")
            .arg(&wcnf)
            .output()
            .expect("binary runs");
        assert_eq!(out.status.code(), Some(0), "{out:?}");
        let text = String::from_utf8(out.stdout).unwrap();
        let vector_line = text
            .lines()
            .find(|l| l.starts_with("# vector: "))
            .expect("resume prints the vector");

        let (u, r) = parse_universe(MICRO).unwrap();
        let crit = if criterion == "paranoid" { Criterion::Paranoid } else { Criterion::Trendy };
        let run = run_request(&u, &r, crit, SolveMode::Lexicographic, &Budget::unlimited(), 0)
            .unwrap();
        let (_, vector) = run.best.as_ref().unwrap();
        assert_eq!(vector_line, format!("# vector: {vector}"));

        // The composed sidecars decode the same winning package.
        match parse_solution(&text).unwrap() {
            SolutionDoc::Profile(profile) => assert!(profile.contains_version("p", 2)),
            SolutionDoc::Fail => panic!("expected stanzas"),
        }
    }
}

#[test]
fn translate_default_paths_derive_from_input() {
    let dir = workdir("derive");
    let input = write(&dir, "inst.cudf", MICRO);
    let out = bin().arg("translate").arg(&input).output().expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.join("inst.opb").exists());
    assert!(dir.join("inst.wcnf").exists());
    assert!(dir.join("inst.opb.map").exists());
    assert!(dir.join("inst.wcnf.map").exists());
}

#[test]
fn dump_to_unwritable_path_exits_3() {
    let dir = workdir("unwritable");
    let input = write(&dir, "inst.cudf", MICRO);
    let out = bin()
        .arg("translate")
        .arg(&input)
        .args(["--dump-opb", "/proc/upsolve-cannot-write-here/x.opb"])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn oracle_subcommand_prints_vector_and_witness() {
    let dir = workdir("oracle");
    let input = write(&dir, "inst.cudf", MICRO);
    let out = bin()
        .arg("oracle")
        .arg(&input)
        .args(["--criterion", "paranoid"])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("# vector: (1, 2)"), "{text}");
    assert!(text.contains("# explored: 8"), "{text}");
    assert!(text.contains("package: p"), "{text}");
}

#[test]
fn oracle_respects_the_limit() {
    let dir = workdir("oraclelimit");
    let input = write(&dir, "inst.cudf", MICRO);
    let out = bin()
        .arg("oracle")
        .arg(&input)
        .args(["--limit", "2"])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn generate_is_deterministic_and_parseable() {
    let args = ["generate", "--seed", "42", "--names", "6", "--max-versions", "3"];
    let a = bin().args(args).output().expect("binary runs");
    let b = bin().args(args).output().expect("binary runs");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let doc = String::from_utf8(a.stdout).unwrap();
    let (u, _) = parse_universe(&doc).unwrap();
    assert_eq!(u.name_count(), 6);
    // Matches the library generator exactly.
    let expected = generate(&GeneratorConfig {
        seed: 42,
        names: 6,
        max_versions: 3,
        ..Default::default()
    })
    .unwrap();
    assert_eq!(doc, expected);
}

#[test]
fn generate_rejects_bad_parameters() {
    let out = bin()
        .args(["generate", "--dep-density", "1.5"])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn validate_subcommand_accepts_solver_output() {
    let dir = workdir("validate");
    let input = write(&dir, "inst.cudf", MICRO);
    let solution = dir.join("sol.out");
    let out = bin()
        .arg("solve")
        .arg(&input)
        .arg("--output")
        .arg(&solution)
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));

    let out = bin().arg("validate").arg(&input).arg(&solution).output().expect("binary runs");
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    assert!(String::from_utf8(out.stdout).unwrap().contains("valid"));

    // A broken profile is rejected with the violations listed.
    let bad = write(&dir, "bad.out", "package: p\nversion: 2\ninstalled: true\n\npackage: q\nversion: 1\ninstalled: true\n");
    let out = bin().arg("validate").arg(&input).arg(&bad).output().expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stdout).unwrap().contains("violation:"));

    // FAIL documents are recognized.
    let fail = write(&dir, "fail.out", "FAIL\n");
    let out = bin().arg("validate").arg(&input).arg(&fail).output().expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solve_dump_flags_write_stage_files() {
    let dir = workdir("solvedump");
    let input = write(&dir, "inst.cudf", MICRO);
    let opb = dir.join("stage.opb");
    let wcnf = dir.join("stage.wcnf");
    let out = bin()
        .arg("solve")
        .arg(&input)
        .arg("--dump-opb")
        .arg(&opb)
        .arg("--dump-wcnf")
        .arg(&wcnf)
        .arg("--output")
        .arg(dir.join("sol.out"))
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
    let opb_text = std::fs::read_to_string(&opb).unwrap();
    assert!(opb_text.starts_with("* #variable= 9 #constraint= 12"));
    let wcnf_text = std::fs::read_to_string(&wcnf).unwrap();
    assert!(wcnf_text.contains("p wcnf "));
}

#[test]
fn file_resume_matches_in_memory_on_generated_instances() {
    use upsolve::maxsat::{solve_lexicographic, SolveStatus};
    use upsolve::pb::encode;
    use upsolve::wcnf::io::{parse_wcnf, render_wcnf};
    use upsolve::wcnf::pb_to_wcnf;

    for seed in 0..12u64 {
        let doc = generate(&GeneratorConfig {
            seed,
            names: 5,
            max_versions: 3,
            dep_density: 0.5,
            conflict_density: 0.3,
            installed_fraction: 0.4,
        })
        .unwrap();
        let (u, r) = parse_universe(&doc).unwrap();
        for criterion in [Criterion::Paranoid, Criterion::Trendy] {
            let wcnf = pb_to_wcnf(&encode(&u, &r, criterion)).unwrap();
            let reparsed = parse_wcnf(&render_wcnf(&wcnf)).unwrap();
            let direct = solve_lexicographic(&wcnf, &Budget::unlimited(), 0, None).unwrap();
            let resumed = solve_lexicographic(&reparsed, &Budget::unlimited(), 0, None).unwrap();
            assert_eq!(direct.status, resumed.status, "seed {seed} {criterion}");
            if direct.status == SolveStatus::Optimal {
                assert_eq!(
                    direct.cost_vector(),
                    resumed.cost_vector(),
                    "seed {seed} {criterion}"
                );
                // The level costs are the criteria vector of the in-memory
                // pipeline.
                let run = run_request(
                    &u,
                    &r,
                    criterion,
                    SolveMode::Lexicographic,
                    &Budget::unlimited(),
                    0,
                )
                .unwrap();
                let (_, vector) = run.best.as_ref().unwrap();
                assert_eq!(resumed.cost_vector().unwrap(), vector.values, "seed {seed}");
            }
        }
    }
}

#[test]
fn pipeline_is_deterministic_per_seed() {
    let doc = generate(&GeneratorConfig {
        seed: 77,
        names: 20,
        max_versions: 3,
        dep_density: 0.6,
        conflict_density: 0.3,
        installed_fraction: 0.5,
    })
    .unwrap();
    let (u, r) = parse_universe(&doc).unwrap();
    let run_once = |seed: u64| {
        let run = run_request(
            &u,
            &r,
            Criterion::Trendy,
            SolveMode::Lexicographic,
            &Budget::unlimited(),
            seed,
        )
        .unwrap();
        (
            run.report.status,
            run.report.final_model.clone(),
            run.best.as_ref().map(|(p, v)| (p.clone(), v.clone())),
        )
    };
    assert_eq!(run_once(3), run_once(3));
}

#[test]
fn zero_cost_lexicographic_run_proves_every_level() {
    use upsolve::maxsat::{solve_lexicographic, SolveStatus};
    use upsolve::pb::encode;
    use upsolve::wcnf::pb_to_wcnf;

    let doc = "package: a\nversion: 1\ninstalled: true\n\nrequest:\ninstall: a\n";
    let (u, r) = parse_universe(doc).unwrap();
    let wcnf = pb_to_wcnf(&encode(&u, &r, Criterion::Trendy)).unwrap();
    let report = solve_lexicographic(&wcnf, &Budget::unlimited(), 0, None).unwrap();
    assert_eq!(report.status, SolveStatus::Optimal);
    assert_eq!(report.cost_vector().unwrap(), vec![0, 0, 0]);
    assert!(report.levels.iter().all(|l| l.proven));
}

#[test]
fn aggregate_mode_flag_reaches_the_same_answer() {
    let dir = workdir("aggmode");
    let input = write(&dir, "inst.cudf", MICRO);
    let lex = bin().arg("solve").arg(&input).output().expect("binary runs");
    let agg = bin()
        .arg("solve")
        .arg(&input)
        .args(["--mode", "aggregate"])
        .output()
        .expect("binary runs");
    assert_eq!(lex.status.code(), Some(0));
    assert_eq!(agg.status.code(), Some(0));
    assert_eq!(lex.stdout, agg.stdout);
}
