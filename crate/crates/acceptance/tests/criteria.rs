use std::process::Command;

#[test]
fn every_criterion_passes() {
    let out = Command::new(env!("CARGO_BIN_EXE_acceptance")).output().expect("run acceptance");
    let text = String::from_utf8_lossy(&out.stdout);
    print!("{text}");
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 8, "{text}");
    for (i, l) in lines.iter().enumerate() {
        assert!(l.starts_with(&format!("PASS {} ", i + 1)), "{l}");
    }
    assert!(out.status.success());
}
