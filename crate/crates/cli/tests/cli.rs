use std::path::PathBuf;
use std::process::{Command, Output};

fn mba(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mba"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/data")
        .join(name)
}

#[test]
fn simplify_headline_identity() {
    let o = mba(&["simplify", "(x|y)+y-(~x&y)", "--width", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out == "y+x\n" || out == "x+y\n", "{out}");
}

#[test]
fn simplify_json_fields() {
    let o = mba(&[
        "simplify",
        "(x|y)+y-(~x&y)",
        "--width",
        "8",
        "--output",
        "json",
        "--no-timing",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["input"], "(x|y)+y-(~x&y)");
    assert_eq!(v["input_size"], 11);
    assert_eq!(v["output_size"], 3);
    assert_eq!(v["millis"], 0);
    assert_eq!(v["verified"], "Equivalent");
    assert!(v["stop_reason"].is_string());
}

#[test]
fn simplify_errors_and_trivia() {
    let o = mba(&["simplify", "x+"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("column 3"), "{}", stderr(&o));

    let o = mba(&["simplify", "x^x"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0\n");

    let o = mba(&["simplify", "x", "--no-verify", "--output", "csv", "--no-timing"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "input,output,input_size,output_size,stop_reason,millis,verified\nx,x,1,1,saturated,0,Skipped\n"
    );
}

#[test]
fn verify_exit_codes() {
    let o = mba(&["verify", "x+y", "(x|y)+(x&y)", "--width", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "Equivalent (exhaustive, 65536 assignments)\n");

    let o = mba(&["verify", "x", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("counterexample"));
    assert!(stdout(&o).contains("x: 1"));

    let o = mba(&["verify", "x+", "x"]);
    assert_eq!(o.status.code(), Some(1));

    let o = mba(&["verify", "x+y", "(x|y)+(x&y)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("ProbablyEquivalent"));
}

#[test]
fn dump_stages() {
    let o = mba(&["dump", "a*2", "--stage", "before"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("subgraph cluster_").count(), 3);

    let o = mba(&["dump", "a*2", "--stage", "bogus"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(mba(&[]).status.code(), Some(1));
    assert_eq!(mba(&["simplify", "x", "--groups", "nope"]).status.code(), Some(1));
    assert_eq!(mba(&["simplify", "x", "--width", "0"]).status.code(), Some(1));
    assert_eq!(mba(&["--help"]).status.code(), Some(0));
    assert_eq!(mba(&["--version"]).status.code(), Some(0));
}

#[test]
fn group_flags_change_the_catalog() {
    let size = |extra: &[&str]| {
        let mut args = vec!["simplify", "2*3+x", "--width", "8", "--no-verify", "--output", "json"];
        args.extend_from_slice(extra);
        let v: serde_json::Value = serde_json::from_slice(&mba(&args).stdout).unwrap();
        v["output_size"].as_u64().unwrap()
    };
    assert_eq!(size(&[]), 3);
    assert_eq!(size(&["--no-const-fold"]), 5);
    assert_eq!(size(&["--groups", "constfold"]), 3);
    assert_eq!(size(&["--groups", "structural,boolid"]), 5);
}

#[test]
fn batch_reports() {
    let dir = tempfile::tempdir().unwrap();
    let dataset = dir.path().join("rows.txt");
    std::fs::write(&dataset, "# two rows\n(x|y)+y-(~x&y),x+y\nx\n").unwrap();
    let csv = dir.path().join("out.csv");
    let o = mba(&[
        "batch",
        dataset.to_str().unwrap(),
        "--width",
        "8",
        "--output",
        "csv",
        "--no-timing",
        "--report",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("50.00%"), "{}", stdout(&o));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "index,input_size,output_size,verified,success,millis,stop_reason,output"
    );
    assert!(lines[1].starts_with("0,11,3,Equivalent,true,0,"));
    assert!(lines[2].starts_with("1,1,1,Equivalent,false,0,"));

    let again = dir.path().join("again.csv");
    mba(&[
        "batch",
        dataset.to_str().unwrap(),
        "--width",
        "8",
        "--output",
        "csv",
        "--no-timing",
        "--report",
        again.to_str().unwrap(),
    ]);
    assert_eq!(std::fs::read(&csv).unwrap(), std::fs::read(&again).unwrap());

    let o = mba(&[
        "batch",
        dataset.to_str().unwrap(),
        "--width",
        "8",
        "--allow-equal",
        "--no-timing",
    ]);
    assert!(stdout(&o).contains("100.00%"));
}

#[test]
fn batch_missing_file() {
    let o = mba(&["batch", "/no/such/dataset.txt"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("/no/such/dataset.txt"));
}

#[test]
fn gen_round_trips_through_batch() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("corpus.txt");
    let seeds = data("seeds.txt");
    let o = mba(&[
        "gen",
        seeds.to_str().unwrap(),
        "--count",
        "60",
        "--seed",
        "0xC0FFEE",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 60);
    assert_eq!(
        text,
        std::fs::read_to_string(data("corpus.txt")).unwrap(),
        "bundled corpus is stale"
    );

    let load = mba(&[
        "batch",
        out.to_str().unwrap(),
        "--iters",
        "0",
        "--no-verify",
        "--no-timing",
    ]);
    assert_eq!(load.status.code(), Some(0), "{}", stderr(&load));

    assert_eq!(mba(&["gen", "/no/such/seeds.txt"]).status.code(), Some(1));
}
