use std::path::Path;
use std::process::{Command, Output};

fn padicdb(store: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_padicdb"))
        .env("PADICDB_DIR", store)
        .args(args)
        .output()
        .expect("run padicdb")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn gen_list_verify_quartics() {
    let dir = tempfile::tempdir().unwrap();
    let o = padicdb(dir.path(), &["gen", "--p", "2", "--n", "4"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("K(2,4): 59 fields"));
    assert!(dir.path().join("K2_4.tsv").exists());

    let o = padicdb(dir.path(), &["list", "--p", "2", "--n", "4", "--filter", "c=4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("x^4 + 2x + 2"));

    let o = padicdb(dir.path(), &["verify", "--p", "2", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("59 entries, 0 problem(s)"));

    // a tampered aut column must be reported
    let path = dir.path().join("K2_4.tsv");
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let row = lines.iter().position(|l| l.starts_with("2\t4\t")).unwrap();
    let mut cols: Vec<&str> = lines[row].split('\t').collect();
    let bumped = (cols[3].parse::<u32>().unwrap() + 1).to_string();
    cols[3] = &bumped;
    lines[row] = cols.join("\t");
    std::fs::write(&path, lines.join("\n") + "\n").unwrap();
    let o = padicdb(dir.path(), &["verify", "--p", "2", "--n", "4"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
}

#[test]
fn identify_splits_a_product() {
    let dir = tempfile::tempdir().unwrap();
    // (x^2 + 3)(x^2 - 2) over Q_3: a ramified and an unramified quadratic
    let o = padicdb(dir.path(), &["identify", "--p", "3", "--poly", "-6,0,1,0,1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.contains("factor degrees [2, 2]"), "{out}");
    assert_eq!(out.matches("table").count(), 2, "{out}");
}

#[test]
fn grd_of_a_quadratic() {
    let dir = tempfile::tempdir().unwrap();
    // Q(sqrt 5): disc 5, GRD sqrt 5
    let o = padicdb(dir.path(), &["grd", "--poly", "-5,0,1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.contains("GRD 5^{1/2}"), "{out}");
}

#[test]
fn failures_have_distinct_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| padicdb(dir.path(), args).status.code();
    assert_eq!(code(&["list", "--p", "2", "--n", "4"]), Some(4));
    assert_eq!(code(&["identify", "--p", "2", "--poly", "1,x,1"]), Some(3));
    assert_eq!(code(&["gen", "--p", "6", "--n", "2"]), Some(3));
    assert_eq!(code(&["identify", "--p", "2", "--poly", "1,2,1"]), Some(3));
    assert_eq!(code(&["frobnicate"]), Some(2));
}
