use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn alchiq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alchiq")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn classify_reports_the_two_successor_subsumption() {
    let out = alchiq(&["classify", &data("onto2.dl"), "--strategy", "eager"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("B0 SubClassOf B4\n"), "{text}");
    assert!(!text.contains("B0 SubClassOf B2\n"));
}

#[test]
fn classify_output_file_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for (i, extra) in [&[][..], &["--seed", "5"][..], &["--parallel", "3"][..]].iter().enumerate() {
        let path = dir.path().join(format!("r{i}.txt"));
        let mut args = vec!["classify", &data("onto1.dl")[..], "--out", path.to_str().unwrap()]
            .into_iter()
            .map(String::from)
            .collect::<Vec<_>>();
        args.extend(extra.iter().map(|s| s.to_string()));
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        for _ in 0..2 {
            let out = alchiq(&argv);
            assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
            assert!(stdout(&out).is_empty());
            files.push(std::fs::read_to_string(&path).unwrap());
        }
    }
    assert_eq!(files[0], files[1]);
    assert_eq!(files[2], files[3]);
    assert_eq!(files[4], files[5]);
    let answers = |s: &str| s.lines().filter(|l| !l.starts_with('#')).map(String::from).collect::<Vec<_>>();
    assert_eq!(answers(&files[0]), answers(&files[2]));
    assert_eq!(answers(&files[0]), answers(&files[4]));
    assert!(
        files[0].starts_with("B0 SubClassOf C0\nB1 SubClassOf C1\nB2 SubClassOf C2\n# subsumptions 3\n"),
        "{}",
        files[0]
    );
}

#[test]
fn entail_answers() {
    let out = alchiq(&["entail", &data("onto1.dl"), "--query", "B0 SubClassOf C0", "--strategy", "cautious"]);
    assert_eq!((out.status.code(), stdout(&out).as_str()), (Some(0), "ENTAILED\n"));
    let out = alchiq(&["entail", &data("empty.dl"), "--query", "A SubClassOf B"]);
    assert_eq!((out.status.code(), stdout(&out).as_str()), (Some(0), "NOT ENTAILED\n"));
    let out = alchiq(&["entail", &data("onto2.dl"), "--query", "B0 SubClassOf B2 Or B3", "--strategy", "trivial"]);
    assert_eq!(stdout(&out), "ENTAILED\n");
}

#[test]
fn sat_answers() {
    let out = alchiq(&["sat", &data("clash.dl"), "--query", "A"]);
    assert_eq!((out.status.code(), stdout(&out).as_str()), (Some(0), "UNSATISFIABLE\n"));
    let out = alchiq(&["sat", &data("clash.dl"), "--query", "B SubClassOf Bottom"]);
    assert_eq!(stdout(&out), "SATISFIABLE\n");
    let out = alchiq(&["sat", &data("clash.dl"), "--query", "A SubClassOf B"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn dump_graph_writes_text_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("onto2");
    let out = alchiq(&[
        "dump-graph",
        &data("onto2_clauses.dl"),
        "--query",
        "B0 SubClassOf B4",
        "--strategy",
        "eager",
        "--out",
        prefix.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = std::fs::read_to_string(dir.path().join("onto2.txt")).unwrap();
    assert!(text.starts_with("# contexts 4 edges 3\n"), "{text}");
    for f in ["f1", "f2", "f3"] {
        assert_eq!(
            text.lines().filter(|l| l.starts_with("edge ") && l.split(' ').nth(2) == Some(f)).count(),
            1,
            "{text}"
        );
    }
    let dot = std::fs::read_to_string(dir.path().join("onto2.dot")).unwrap();
    assert!(dot.starts_with("digraph contexts {"));
    assert!(dot.contains("peripheries=2"));
}

#[test]
fn dump_graph_of_the_chain_has_doubled_edges() {
    let out = alchiq(&["dump-graph", &data("onto1.dl"), "--query", "B0 SubClassOf C0", "--strategy", "cautious"]);
    let text = stdout(&out);
    assert!(text.starts_with("# contexts 3 edges 4\n"), "{text}");
    let edges: Vec<&str> = text.lines().filter(|l| l.starts_with("edge ")).collect();
    for (from, to) in [("c0", "c1"), ("c1", "c2")] {
        let n = edges.iter().filter(|l| l.split(' ').nth(1) == Some(from) && l.split(' ').nth(3) == Some(to)).count();
        assert_eq!(n, 2, "{text}");
    }
}

#[test]
fn dump_graph_of_an_empty_ontology_is_header_only() {
    let out = alchiq(&["dump-graph", &data("empty.dl")]);
    assert_eq!(stdout(&out), "# contexts 0 edges 0\n");
}

#[test]
fn trace_goes_to_stderr() {
    let out = alchiq(&["entail", &data("onto2.dl"), "--query", "B0 SubClassOf B4", "--trace"]);
    assert_eq!(stdout(&out), "ENTAILED\n");
    let err = stderr(&out);
    assert!(err.lines().any(|l| l.starts_with("CORE c0#")), "{err}");
    assert!(err.lines().any(|l| l.starts_with("PRED ")), "{err}");
}

#[test]
fn oracle_check_passes_on_random_and_rejects_non_elh_input() {
    let out = alchiq(&["oracle-check", "--count", "25", "--seed", "100"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(stdout(&out), "oracle agrees on 25 ontologies\n");
    let out = alchiq(&["oracle-check", &data("onto1.dl")]);
    assert_eq!(out.status.code(), Some(0));
    let out = alchiq(&["oracle-check", &data("onto2.dl")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exit_codes() {
    let missing = alchiq(&["classify", "/nonexistent/file.dl"]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(stderr(&missing).starts_with("error: "));
    assert!(stdout(&missing).is_empty());

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.dl");
    std::fs::write(&bad, "A SubClassOf Exists\n").unwrap();
    let out = alchiq(&["classify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("line 1"), "{}", stderr(&out));

    let out = alchiq(&["entail", &data("onto1.dl"), "--query", "B0 SubRoleOf C0"]);
    assert_eq!(out.status.code(), Some(1));

    let out = alchiq(&["classify", &data("onto1.dl"), "--max-clauses", "3"]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
    assert!(stderr(&out).contains("clause limit"));

    let out = alchiq(&["classify", &data("onto1.dl"), "--strategy", "greedy"]);
    assert_eq!(out.status.code(), Some(1));
    let out = alchiq(&["entail", &data("onto1.dl")]);
    assert_eq!(out.status.code(), Some(1));
    let out = alchiq(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}
