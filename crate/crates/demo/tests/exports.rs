use mba_demo::{dump_dot, simplify, verify};

#[test]
fn simplify_reports_the_headline_identity() {
    let text = simplify("(x|y)+y-(~x&y)", 8).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0] == "y+x" || lines[0] == "x+y", "{text}");
    assert!(lines[1].starts_with("size 11 -> 3"), "{text}");
    assert_eq!(lines[2], "Equivalent (exhaustive, 65536 assignments)");
}

#[test]
fn verify_finds_counterexamples() {
    assert!(verify("x", "0", 8).unwrap().contains("x: 1"));
    assert!(verify("x+y", "(x|y)+(x&y)", 8).unwrap().starts_with("Equivalent"));
}

#[test]
fn dump_shows_the_shift_merge_only_after_saturation() {
    assert!(!dump_dot("a*2", 64, false).unwrap().contains("<<"));
    assert!(dump_dot("a*2", 64, true).unwrap().contains("\"<<\""));
}

#[test]
fn bad_input_is_an_error_string() {
    assert!(simplify("x+", 8).unwrap_err().contains("column 3"));
    assert!(verify("x", "y", 0).is_err());
    assert!(dump_dot("(", 8, false).is_err());
}
