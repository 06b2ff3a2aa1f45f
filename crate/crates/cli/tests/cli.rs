use std::io::Write as _;
use std::process::{Command, Output};

use adomian::generators::{gen_fourier_direct, gen_recursive_symbolic, Mode};
use adomian::{parse, QuadratureConfig};
use adomian_cli::components_file::parse_components;
use adomian_cli::report::{poly_from_json, value_from_json, Document};

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_adomian"));
    cmd.args(args).env_remove("SOURCE_DATE_EPOCH").env_remove("ADOMIAN_QUAD_MAX_M");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("the binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn document(o: &Output) -> Document {
    assert_eq!(o.status.code(), Some(0), "{}", stderr(o));
    serde_json::from_slice(&o.stdout).unwrap()
}

const COMPONENTS: &str = "# u_0 .. u_3\n0.9 0.2\n0.1 -0.05\n-0.04 0.03\n0.01 0.02\n";

fn components_file() -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(COMPONENTS.as_bytes()).unwrap();
    f
}

#[test]
fn symbolic_text_output() {
    let o = run(&["gen", "--expr", "u^2", "--order", "3", "--method", "rach"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("A_0 = u0^2"), "{text}");
    assert!(text.contains("A_3 = 2*u0*u3 + 2*u1*u2"), "{text}");

    let o = run(&["gen", "--expr", "ln(u)", "--order", "1", "--method", "recursive"]);
    assert!(stdout(&o).contains("A_1 = u1/u0"));
}

#[test]
fn opaque_output_keeps_derivative_factors() {
    let o = run(&["gen", "--expr", "u", "--order", "2", "--method", "rach", "--opaque"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("u1^2*N^(2)(u0)/2"), "{}", stdout(&o));
}

#[test]
fn symbolic_json_round_trips() {
    let o = run(&["gen", "--expr", "exp(sin(u))", "--order", "3", "--method", "recursive", "--format", "json"]);
    let doc = document(&o);
    assert_eq!(doc.kind, "symbolic");
    assert_eq!(doc.manifest.order, Some(3));
    let polys = doc.polynomials.unwrap();
    assert_eq!(polys.len(), 4);
    let e = parse("exp(sin(u))").unwrap();
    for (n, p) in polys.iter().enumerate() {
        assert_eq!(poly_from_json(p).unwrap(), gen_recursive_symbolic(&e, n, Mode::Substituted).unwrap());
    }
}

#[test]
fn numeric_json_is_bit_exact() {
    let f = components_file();
    let path = f.path().to_str().unwrap();
    let o = run(&[
        "gen", "--expr", "cosh(u) + sin(u)", "--order", "3", "--method", "fourier", "--components", path,
        "--format", "json",
    ]);
    let doc = document(&o);
    assert_eq!(doc.kind, "numeric");
    assert_eq!(doc.manifest.components, Some(format!("file:{path}")));
    let c = parse_components(COMPONENTS).unwrap();
    let e = parse("cosh(u) + sin(u)").unwrap();
    for (n, p) in doc.polynomials.unwrap().iter().enumerate() {
        let want = gen_fourier_direct(&e, &c, n, &QuadratureConfig::default()).unwrap();
        let got = value_from_json(p).unwrap();
        assert_eq!(got.re.to_bits(), want.re.to_bits());
        assert_eq!(got.im.to_bits(), want.im.to_bits());
    }
}

#[test]
fn seeded_runs_are_byte_identical() {
    let args = ["gen", "--expr", "exp(u)", "--order", "4", "--method", "fourier", "--random", "--seed", "3", "--format", "json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn timestamp_comes_from_source_date_epoch() {
    let args = ["solve", "schrodinger", "--alpha", "1", "--terms", "2", "--format", "json"];
    assert_eq!(document(&run(&args)).manifest.timestamp, None);
    let o = run_env(&args, &[("SOURCE_DATE_EPOCH", "1700000000")]);
    assert_eq!(document(&o).manifest.timestamp, Some(1_700_000_000));
}

#[test]
fn check_reports_every_backend() {
    let o = run(&["check", "--expr", "u^2*conj(u)", "--order", "3", "--trials", "4", "--format", "json"]);
    let check = document(&o).check.unwrap();
    assert!(check.passed);
    let rach = check.backends.iter().find(|b| b.name == "rach").unwrap();
    assert!(!rach.ran && rach.notice.is_some());
    assert!(check.backends.iter().any(|b| b.name == "fourier" && b.ran));

    let o = run(&["check", "--expr", "exp(u)", "--order", "2", "--trials", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS"), "{}", stdout(&o));
}

#[test]
fn solve_with_one_term_prints_only_c0() {
    let o = run(&["solve", "schrodinger", "--alpha", "0.5", "--terms", "1", "--format", "json"]);
    let solve = document(&o).solve.unwrap();
    assert_eq!(solve.coefficients.len(), 1);
    assert_eq!(solve.coefficients[0].value, [1.0, 0.0]);

    let o = run(&["solve", "schrodinger", "--alpha", "1", "--terms", "12", "--eval-at", "0.4", "0.1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("c_")).count(), 12);
    assert!(text.contains("partial sum"), "{text}");
}

#[test]
fn failures_map_to_exit_codes() {
    let cases: &[(&[&str], i32, &str)] = &[
        (&["gen", "--expr", "sin(", "--order", "1", "--method", "rach"], 2, "error:"),
        (&["gen", "--expr", "exp(u)", "--order", "1", "--method", "fourier", "--components", "/nonexistent/c.txt"], 1, "/nonexistent/c.txt"),
        (&["gen", "--expr", "u^2*conj(u)", "--order", "1", "--method", "rach"], 4, "error:"),
        (&["solve", "schrodinger", "--alpha", "0", "--terms", "3"], 3, "error:"),
        (&["solve", "schrodinger", "--alpha", "0.5", "--terms", "3", "--eval-at", "0", "-1"], 3, "error:"),
        (&["check", "--expr", "exp(u)", "--order", "1", "--trials", "0"], 2, "error:"),
    ];
    for (args, code, message) in cases {
        let o = run(args);
        assert_eq!(o.status.code(), Some(*code), "{args:?}: {}", stderr(&o));
        assert!(stderr(&o).contains(message), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn malformed_components_name_the_line() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(b"1 0\n0.1 oops\n").unwrap();
    let o = run(&["gen", "--expr", "exp(u)", "--order", "1", "--method", "fourier", "--components", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
}

#[test]
fn branch_guard_is_a_domain_error() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(b"0.5 0\n0.6 0\n").unwrap();
    let o = run(&["gen", "--expr", "ln(u)", "--order", "1", "--method", "fourier", "--components", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}
