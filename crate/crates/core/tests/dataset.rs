use mba_core::bench::{format_dataset, load_dataset, BenchError};
use mba_core::expr::Width;

#[test]
fn load_round_trips_through_a_file() {
    let w = Width::new(8).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("set.txt");
    std::fs::write(&path, "# header\n\n(x|y)+y-(~x&y),x+y\nx^x\n").unwrap();
    let entries = load_dataset(&path, w).unwrap();
    assert_eq!(entries.len(), 2);
    assert_eq!(entries[0].ground_truth.as_deref(), Some("x+y"));
    assert_eq!(entries[1].ground_truth, None);

    let again = dir.path().join("again.txt");
    std::fs::write(&again, format_dataset(&entries)).unwrap();
    assert_eq!(load_dataset(&again, w).unwrap(), entries);
}

#[test]
fn load_reports_the_path_and_line() {
    let w = Width::new(8).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.txt");
    match load_dataset(&missing, w) {
        Err(e @ BenchError::Io { .. }) => assert!(e.to_string().contains("missing.txt")),
        other => panic!("{other:?}"),
    }

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "x+y\nx+\n").unwrap();
    assert!(matches!(load_dataset(&bad, w), Err(BenchError::Parse { line: 2, .. })));
}
