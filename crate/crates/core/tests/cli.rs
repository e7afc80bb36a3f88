use std::process::{Command, Output};

fn vabgrowth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vabgrowth"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn csv_is_reproducible() {
    let args = [
        "--seed",
        "5",
        "rf",
        "catalog:rot(4)",
        "--family",
        "inv",
        "--rmax",
        "8",
        "--csv",
        "-",
    ];
    let a = vabgrowth(&args);
    let b = vabgrowth(&args);
    assert_eq!(a.status.code(), Some(0));
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,rf,witness_vector,witness_index"));
    assert_eq!(lines.count(), 8);
}

#[test]
fn free_abelian_profile() {
    let o = vabgrowth(&["rf", "z:1", "--rmax", "6", "--csv", "-"]);
    assert_eq!(o.status.code(), Some(0));
    let last = stdout(&o).lines().last().unwrap().to_string();
    assert!(last.starts_with("6,4,"), "{last}");
}

#[test]
fn exit_codes() {
    assert_eq!(vabgrowth(&["k", "catalog:d4_paper"]).status.code(), Some(0));
    assert_eq!(vabgrowth(&["k", "catalog:no_such_rep"]).status.code(), Some(2));
    assert_eq!(vabgrowth(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        vabgrowth(&["witness", "catalog:d4_paper", "--vector", "0,0,0"])
            .status
            .code(),
        Some(2)
    );
    // a budget too small for RF(2) on Z^2 leaves a partial profile
    let partial = vabgrowth(&["--index-budget", "2", "rf", "z:2", "--rmax", "3", "--csv", "-"]);
    assert_eq!(partial.status.code(), Some(1));
    assert!(stdout(&partial).contains("partial=1"));
}

#[test]
fn d4_report() {
    let o = vabgrowth(&["k", "catalog:d4_paper"]);
    assert!(stdout(&o).contains("k = 2"), "{}", stdout(&o));
    let o = vabgrowth(&["char", "catalog:d4_paper", "--table"]);
    let text = stdout(&o);
    assert!(text.contains("(3,1,-1,1,1)"), "{text}");
    assert!(text.contains("(1,0,0,0,1)"), "{text}");
}

#[test]
fn dumped_file_round_trips() {
    let dir = std::env::temp_dir().join(format!("vabgrowth-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("q8.json");
    let path_str = path.to_str().unwrap();
    let o = vabgrowth(&["--output", path_str, "catalog", "dump", "quaternion_paper"]);
    assert_eq!(o.status.code(), Some(0));
    let from_file = vabgrowth(&["k", path_str]);
    let from_catalog = vabgrowth(&["k", "catalog:quaternion_paper"]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(stdout(&from_file), stdout(&from_catalog));
    let lemmas = vabgrowth(&["verify", path_str, "--suite", "lemmas"]);
    assert_eq!(lemmas.status.code(), Some(0), "{}", stdout(&lemmas));
    std::fs::remove_dir_all(&dir).unwrap();
}
