mod common;

use common::{run, stdout, Files, C6, K3, P3, TWO_TRIANGLES};

/// One cheap entry; the fwl2 claim is deliberately wrong.
const SMALL_CATALOG: &str = r#"[{"name":"bad","id":"x","source":"test","edges":[[1,2],[2,3],[1,3],[3,4],[4,1]],
    "claims":[{"alg":"fwl2","distinguishes":false},{"alg":"swl-vs","distinguishes":true}]}]"#;

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

#[test]
fn identical_graphs_are_not_distinguished() {
    let f = Files::new();
    let g = f.write("g.el", C6);
    let out = run(&["compare", "--alg", "sswl", &g, &g, "--tsv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split('\t').collect();
    assert_eq!(row[0], "sswl");
    assert_eq!(row[3], "false");
}

#[test]
fn verdicts_do_not_change_exit_code() {
    let f = Files::new();
    let (a, b) = (f.write("a.el", C6), f.write("b.el", TWO_TRIANGLES));
    let out = run(&["compare", "--alg", "fwl2", "--alg", "gdwl:spd+htd", &a, &b, "--tsv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split('\t').collect()).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!((rows[0][0], rows[0][3]), ("fwl2", "true"));
    assert_eq!(rows[1][0], "gdwl:spd+htd");
}

#[test]
fn scheme_flags_build_a_custom_algorithm() {
    let f = Files::new();
    let (a, b) = (f.write("a.el", C6), f.write("b.el", TWO_TRIANGLES));
    let out = run(&["compare", "--agg", "lu,lv", "--pool", "sv", "--policy", "de", &a, &b, "--tsv"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("custom:lu,lv:sv:de\t"));
    assert_eq!(code(&["compare", "--pool", "sv", &a, &b]), 2);
    assert_eq!(code(&["compare", "--agg", "lu,xx", &a, &b]), 2);
    assert_eq!(code(&["compare", &a, &b]), 2);
}

#[test]
fn round_cap_is_respected() {
    let f = Files::new();
    let (a, b) = (f.write("a.el", C6), f.write("b.el", TWO_TRIANGLES));
    let out = run(&["compare", "--alg", "swl-vs", "--max-rounds", "1", &a, &b, "--tsv"]);
    let text = stdout(&out);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split('\t').collect();
    assert_eq!(row[4], "1");
}

#[test]
fn usage_and_input_errors_exit_with_two() {
    let f = Files::new();
    let g = f.write("g.el", K3);
    let bad = f.write("bad.el", "3 2\n1 2\n");
    let missing = f.path().join("missing.el").display().to_string();
    assert_eq!(code(&["compare", "--alg", "xswl", &g, &g]), 2);
    assert_eq!(code(&["compare", "--alg", "sswl", &missing, &g]), 2);
    assert_eq!(code(&["compare", "--alg", "sswl", &bad, &g]), 2);
    assert_eq!(code(&["distances", "--kind", "xyz", &g]), 2);
    assert_eq!(code(&["furer", "build", "--base", &g, "--twist", "4"]), 2);
    assert_eq!(code(&["furer", "build", "--base", &g, "--twist", "0"]), 2);
    assert_eq!(code(&["pebble", "solve", "--alg", "gdwl:spd", &g, &g]), 2);
    assert_eq!(code(&["nonsense"]), 2);
    let out = run(&["compare", "--alg", "sswl", &bad, &g]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
}

#[test]
fn furer_build_of_triangle() {
    let f = Files::new();
    let k3 = f.write("k3.el", K3);
    let out = run(&["furer", "build", "--base", &k3, "--twist", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("6 6"));
    assert_eq!(lines.count(), 6);
    let aug = stdout(&run(&["furer", "build", "--base", &k3, "--augment"]));
    assert!(aug.starts_with(&format!("{} ", 6 + 2 + 3 + 4)));
}

#[test]
fn hitting_time_on_path_end_to_end() {
    let f = Files::new();
    let p3 = f.write("p3.el", P3);
    let out = run(&["distances", "--kind", "htd", &p3]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split('\t').collect()).collect();
    assert_eq!(rows[0][2], "4");
    assert_eq!(rows[1][0], "3");
    let rd = stdout(&run(&["distances", "--kind", "rd", &f.write("k3.el", K3)]));
    assert_eq!(rd.lines().next(), Some("0\t2/3\t2/3"));
}

#[test]
fn pebble_commands() {
    let f = Files::new();
    let (a, b) = (f.write("a.el", C6), f.write("b.el", TWO_TRIANGLES));
    let out = stdout(&run(&["pebble", "solve", "--alg", "sswl", &a, &b, "--tsv"]));
    let row: Vec<&str> = out.lines().nth(1).unwrap().split('\t').collect();
    assert_eq!((row[3], row[6]), ("spoiler", "true"));
    let out = stdout(&run(&["pebble", "solve", "--alg", "sswl", &a, &a, "--tsv"]));
    assert!(out.lines().nth(1).unwrap().contains("\tduplicator\t"));
    let out = stdout(&run(&["pebble", "verify", "--max-n", "4"]));
    assert_eq!(out, "45 pairs x 6 games: 0 mismatches\n");
}

#[test]
fn search_reports_base_or_none() {
    let out = stdout(&run(&[
        "search", "--weak", "swl-vs", "--strong", "swl-sv", "--max-n", "8", "--seed", "7", "--budget", "300",
    ]));
    assert_ne!(out, "none\n");
    let out = stdout(&run(&["search", "--weak", "fwl2", "--strong", "slfwl2", "--max-n", "6", "--budget", "20"]));
    assert_eq!(out, "none\n");
}

#[test]
fn matrix_flags_wrong_claims() {
    let f = Files::new();
    let empty = f.write("empty.json", "[]");
    let out = stdout(&run(&["matrix", "--catalog", &empty, "--tsv"]));
    assert_eq!(out, "entry\talgorithm\texpected\tobserved\trounds\tresult\n");
    let wrong = f.write("wrong.json", SMALL_CATALOG);
    let out = run(&["matrix", "--catalog", &wrong, "--tsv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("bad\tfwl2\tfalse\ttrue\t"));
    assert!(text.lines().any(|l| l.starts_with("bad\tfwl2") && l.ends_with("FAIL")));
    let broken = f.write("broken.json", "{");
    assert_eq!(code(&["matrix", "--catalog", &broken]), 2);
}

#[test]
fn identical_invocations_print_identical_bytes() {
    let f = Files::new();
    let (a, b) = (f.write("a.el", C6), f.write("b.el", TWO_TRIANGLES));
    let catalog = f.write("small.json", SMALL_CATALOG);
    let invocations: [Vec<&str>; 3] = [
        vec!["matrix", "--catalog", &catalog, "--also-random", "12", "--seed", "5", "--json"],
        vec!["compare", "--alg", "sswl", "--alg", "gdwl:rd", &a, &b, "--json", "--jobs", "3"],
        vec!["search", "--weak", "swl-vs", "--strong", "swl-sv", "--seed", "7", "--budget", "300"],
    ];
    for args in invocations {
        assert_eq!(run(&args).stdout, run(&args).stdout, "{args:?}");
    }
    let one = run(&["compare", "--alg", "sswl", &a, &b, "--jobs", "1"]).stdout;
    let four = run(&["compare", "--alg", "sswl", &a, &b, "--jobs", "4"]).stdout;
    assert_eq!(one, four);
}

#[test]
fn timings_are_opt_in() {
    let f = Files::new();
    let g = f.write("g.el", K3);
    assert!(!stdout(&run(&["compare", "--alg", "sswl", &g, &g, "--json"])).contains("wall_ms"));
    assert!(stdout(&run(&["compare", "--alg", "sswl", &g, &g, "--json", "--timings"])).contains("wall_ms"));
}
