use std::path::PathBuf;
use std::process::{Command, Output, Stdio};
use std::io::Write;

use stringy_cli::format::parse_polytope;
use stringy_cli::report::{Body, Document};

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn stringy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stringy")).args(args).output().expect("binary runs")
}

fn stringy_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_stringy"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Document {
    Document::from_json(String::from_utf8_lossy(&out.stdout).trim()).expect("valid document")
}

#[test]
fn estr_quint1() {
    let out = stringy(&["--json", "estr", &data("quint1.txt")]);
    assert_eq!(out.status.code(), Some(0));
    let Body::Estr(e) = json(&out).body else { panic!("wrong body") };
    assert_eq!(e.e_str, "-200/1");
    assert_eq!(e.translation, vec!["-1/1"; 4]);
    assert_eq!(e.verdict, "AlmostPseudoreflexive");
}

#[test]
fn estr_checks_agree() {
    let out = stringy(&["--json", "--check", "estr", &data("k3.txt")]);
    assert_eq!(out.status.code(), Some(0));
    let Body::Estr(e) = json(&out).body else { panic!("wrong body") };
    assert_eq!(e.e_str, "24/1");
    let names: Vec<&str> = e.checks.iter().map(|c| c.formula.as_str()).collect();
    assert_eq!(names, ["efun_limit", "reflexive", "cond"]);
    assert!(e.checks.iter().all(|c| c.agrees));
}

#[test]
fn text_output() {
    let out = stringy(&["estr", &data("quint2.txt")]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("e_str: -198"), "{text}");
    let out = stringy(&["--translate", "classify", &data("quint1.txt")]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("translation: (-1, -1, -1, -1)"), "{text}");
}

#[test]
fn efun_quint2() {
    let out = stringy(&["--json", "--check", "efun", &data("quint2.txt")]);
    assert_eq!(out.status.code(), Some(0));
    let Body::Efun(f) = json(&out).body else { panic!("wrong body") };
    assert!(f.polynomial);
    assert!(f.symmetric);
    assert_eq!(f.numerator, ["0/1", "-99/1", "-99/1"]);
    assert_eq!(f.value_at_one.as_deref(), Some("-198/1"));
}

#[test]
fn dual_is_involutive() {
    let dir = tempfile::tempdir().unwrap();
    let first = stringy(&["dual", &data("k3.txt")]);
    assert_eq!(first.status.code(), Some(0));
    let path = dir.path().join("dual.txt");
    std::fs::write(&path, &first.stdout).unwrap();
    let second = stringy(&["dual", path.to_str().unwrap()]);
    assert_eq!(second.status.code(), Some(0));
    let original = parse_polytope(&std::fs::read_to_string(data("k3.txt")).unwrap()).unwrap();
    let back = parse_polytope(&String::from_utf8_lossy(&second.stdout)).unwrap();
    assert_eq!(back.polytope, original.polytope);
    let dual = parse_polytope(&String::from_utf8_lossy(&first.stdout)).unwrap();
    assert_eq!(dual.polytope.vertices().len(), 4);
    assert_eq!(dual.name.as_deref(), Some("k3-dual"));
}

#[test]
fn palp_input() {
    let out = stringy(&["--json", "mirror", &data("hexagon_palp.txt")]);
    assert_eq!(out.status.code(), Some(0));
    let Body::Mirror(m) = json(&out).body else { panic!("wrong body") };
    assert_eq!(m.e_str, "0/1");
    assert!(m.pass);
}

#[test]
fn exit_codes() {
    assert_eq!(stringy(&["classify", &data("bad.txt")]).status.code(), Some(2));
    assert_eq!(stringy(&["classify", &data("flat.txt")]).status.code(), Some(2));
    assert_eq!(stringy(&["classify", &data("missing.txt")]).status.code(), Some(2));
    assert_eq!(stringy(&["frobnicate"]).status.code(), Some(2));
    // minimal model but no Calabi-Yau point: classification succeeds, e_str does not
    assert_eq!(stringy(&["classify", &data("corti_golyshev.txt")]).status.code(), Some(0));
    let out = stringy(&["--json", "estr", &data("corti_golyshev.txt")]);
    assert_eq!(out.status.code(), Some(1));
    let Body::Error(e) = json(&out).body else { panic!("wrong body") };
    assert_eq!(e.exit_code, 1);
    let out = stringy(&["--json", "classify", &data("bad.txt")]);
    let Body::Error(e) = json(&out).body else { panic!("wrong body") };
    assert_eq!(e.kind, "ParseError");
    assert!(e.message.contains("line 3, column 3"), "{}", e.message);
}

#[test]
fn wps_mirror_failure() {
    let out = stringy(&["--json", "wps", "-a", "3", "-b", "5", "-l", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let Body::Wps(w) = json(&out).body else { panic!("wrong body") };
    assert_eq!(w.d, 17);
    assert!(!w.mirror_pass);
    assert!(!w.x_integer);
    assert!(w.x_in_b_lattice);
    assert!(w.xvee_in_a_lattice);
    assert_eq!(w.e_str_x, "7763881381861803096846/5");
    assert!(w.materialized.is_none());
}

#[test]
fn wps_guard_and_params() {
    let out = stringy(&["--json", "wps", "-a", "3", "-b", "5", "-l", "2", "--materialize"]);
    assert_eq!(out.status.code(), Some(1));
    let Body::Error(e) = json(&out).body else { panic!("wrong body") };
    assert_eq!(e.kind, "DimensionGuard");
    assert_eq!(stringy(&["wps", "-a", "3", "-b", "5", "-l", "3"]).status.code(), Some(1));
}

#[test]
fn wps_materialized() {
    let out = stringy(&["--json", "--check", "wps", "-a", "2", "-b", "2", "-l", "1", "--materialize"]);
    assert_eq!(out.status.code(), Some(0));
    let Body::Wps(w) = json(&out).body else { panic!("wrong body") };
    let m = w.materialized.expect("materialized");
    assert_eq!(m.e_str_delta, "2784/1");
    assert_eq!(m.e_str_dual, "2784/1");
    assert!(m.agrees_with_closed_forms);
    assert!(w.mirror_pass);
}

#[test]
fn batch_directory_in_order() {
    let dir = tempfile::tempdir().unwrap();
    for (i, f) in ["k3.txt", "bad.txt", "quint1.txt", "corti_golyshev.txt", "hexagon_palp.txt"].iter().enumerate() {
        std::fs::copy(data(f), dir.path().join(format!("{i:02}-{f}"))).unwrap();
    }
    let out = stringy(&["batch", dir.path().to_str().unwrap(), "--run", "estr"]);
    assert_eq!(out.status.code(), Some(2));
    let docs: Vec<Document> =
        String::from_utf8_lossy(&out.stdout).lines().map(|l| Document::from_json(l).unwrap()).collect();
    let names: Vec<&str> = docs.iter().map(|d| d.name.as_deref().unwrap()).collect();
    assert_eq!(names, ["k3", "01-bad", "quint1", "cg", "04-hexagon_palp"]);
    assert!(matches!(docs[0].body, Body::Estr(_)));
    assert!(matches!(&docs[1].body, Body::Error(e) if e.exit_code == 2));
    assert!(matches!(&docs[3].body, Body::Error(e) if e.exit_code == 1));
    assert!(matches!(docs[4].body, Body::Estr(_)));
}

#[test]
fn batch_stdin() {
    let mut input = String::new();
    for f in ["quint1.txt", "k3.txt", "quint2.txt"] {
        input.push_str(&std::fs::read_to_string(data(f)).unwrap());
        input.push_str("---\n");
    }
    let out = stringy_stdin(&["batch", "-"], &input);
    assert_eq!(out.status.code(), Some(0));
    let verdicts: Vec<String> = String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| match Document::from_json(l).unwrap().body {
            Body::Classify(c) => c.verdict,
            other => panic!("{other:?}"),
        })
        .collect();
    assert_eq!(verdicts, ["AlmostPseudoreflexive", "Reflexive", "AlmostPseudoreflexive"]);
}

#[test]
fn json_roundtrip() {
    for cmd in ["classify", "fine", "dual", "estr", "efun", "mirror"] {
        let out = stringy(&["--json", cmd, &data("k3.txt")]);
        let line = String::from_utf8_lossy(&out.stdout);
        let doc = json(&out);
        assert_eq!(doc.schema, 1);
        assert_eq!(doc.to_json(), line.trim(), "{cmd}");
    }
}
