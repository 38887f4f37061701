use std::io::Write;
use std::process::{Command, Output, Stdio};

use wstab::format::{parse_code, CodeRecord};
use wstab::{LinearCode, RootSet64, StabilizerReport64, Verdict, WeightEnumerator};

fn wstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wstab")).args(args).output().expect("binary runs")
}

fn wstab_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_wstab"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_temp(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn catalog_lists_fixtures() {
    let o = wstab(&["catalog"]);
    assert!(o.status.success());
    let out = stdout(&o);
    for name in ["X1", "X2", "X3", "X4", "X5", "gleason", "RM4(2,2)", "PRM5(5,2)"] {
        assert!(out.contains(name), "missing {name}");
    }
    assert!(out.contains("n=14  k=7"));
}

#[test]
fn verify_catalog_passes() {
    let o = wstab(&["verify-catalog"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.contains(" ok ")).count(), 5);
    assert!(out.contains("x^14 + 7x^12"));
}

#[test]
fn rm_output_round_trips_through_files() {
    let o = wstab(&["rm", "3", "1", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let code = parse_code(&text).unwrap();
    assert!(code.same_row_space(&wstab::rm::reed_muller(3, 1, 2).unwrap()));

    let file = write_temp(&text);
    let o = wstab(&["--json", "wenum", file.path().to_str().unwrap()]);
    let w: WeightEnumerator = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(w, code.enumerate_weights().unwrap());
}

#[test]
fn json_records_parse_back() {
    let o = wstab(&["--json", "prm", "3", "1", "2"]);
    let record: CodeRecord = serde_json::from_str(&stdout(&o)).unwrap();
    let code = LinearCode::try_from(&record).unwrap();
    assert_eq!((code.length(), code.dimension()), (13, 3));

    let o = wstab(&["--json", "roots", "--fixture", "X2"]);
    let roots: RootSet64 = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(roots.len(), 2);

    let o = wstab(&["--json", "stabilizer", "--fixture", "gleason"]);
    let report: StabilizerReport64 = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report.verdict, Verdict::FiniteGroup);
    assert_eq!(report.order(), 192);
}

#[test]
fn zero_code_enumerates_to_monomial() {
    let file = write_temp("q 2\nn 5\nk 0\n");
    let o = wstab(&["wenum", file.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("W(x,y) = x^5\n"));
}

#[test]
fn dual_of_repetition_code() {
    let file = write_temp("q 3\nn 2\nk 1\n1 1\n");
    let o = wstab(&["dual", file.path().to_str().unwrap()]);
    let dual = parse_code(&stdout(&o)).unwrap();
    let expected = LinearCode::from_indices(3, 2, &[vec![1, 2]]).unwrap();
    assert!(dual.same_row_space(&expected));
}

#[test]
fn enumerator_from_stdin() {
    let o = wstab_stdin(&["classify", "-", "--q", "3"], "2 0 1");
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("PairSum"));

    let o = wstab_stdin(&["macwilliams", "-", "--q", "2"], "1 0 0 0 14 0 0 0 1");
    assert!(stdout(&o).contains("x^8 + 14x^4 + 1"));

    let o = wstab_stdin(&["fsd", "-", "--q", "2"], "1 0 1");
    assert!(stdout(&o).contains("true"));

    let o = wstab_stdin(&["divisible", "-"], "1 0 0 0 14 0 0 0 1");
    assert!(stdout(&o).contains("delta: 4"));
}

#[test]
fn code_file_supplies_q() {
    let file = write_temp("# [4,2] over GF(4)\nq 4\nn 4\nk 2\n1 1 0 0\n0 0 1 1\n");
    let o = wstab(&["classify", file.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("PairSum"));
}

#[test]
fn stabilizer_reports() {
    let o = wstab(&["stabilizer", "--fixture", "X2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("verdict: Infinite"));

    let o = wstab(&["trivial", "--fixture", "RM4(2,2)"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("verdict: TrivialCertified"));
    assert_eq!(out.lines().filter(|l| l.starts_with("critical tuple")).count(), 2);
}

#[test]
fn output_is_deterministic() {
    let a = wstab(&["--json", "stabilizer", "--fixture", "gleason", "--threads", "1"]);
    let b = wstab(&["--json", "stabilizer", "--fixture", "gleason", "--threads", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    let o = wstab(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));

    let o = wstab(&["wenum", "/nonexistent/code.txt"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("wstab wenum:"));

    let o = wstab_stdin(&["classify", "-"], "1 0 1");
    assert_eq!(o.status.code(), Some(1));

    let file = write_temp("q 4\nn 3\nk 1\n1 5 0\n");
    let o = wstab(&["wenum", file.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert_eq!(err.lines().count(), 1);
    assert!(err.contains("line 4"), "{err}");

    let o = wstab(&["rm", "6", "1", "2"]);
    assert_eq!(o.status.code(), Some(2));

    // (x^2 + 3)^2 has only two distinct roots
    let o = wstab_stdin(&["trivial", "-", "--q", "4"], "9 0 6 0 1");
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));

    // a genuinely larger stabilizer can never be certified trivial
    let o = wstab(&["trivial", "--fixture", "gleason"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).starts_with("wstab trivial:"));

    let o = wstab(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
}
