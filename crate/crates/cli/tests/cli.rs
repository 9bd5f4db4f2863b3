use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mfw_core::kripke::read_model;
use mfw_core::parse;

fn mfw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mfw")).args(args).output().expect("mfw runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

const COMPLETE_TWO: &str = "world w0\nworld w1\nedge w0 w0\nedge w0 w1\nedge w1 w0\nedge w1 w1\nval p w0\n";

const SIX: &str = "\
world 1
world 2
world 3
world 4
world 5
world 6
edge 1 2
edge 1 3
edge 2 4
edge 2 5
edge 3 4
edge 3 5
edge 4 6
edge 5 6
";

#[test]
fn eval_on_the_complete_graph() {
    let dir = tempfile::tempdir().unwrap();
    let model = write(dir.path(), "m.kf", COMPLETE_TWO);
    let m = model.to_str().unwrap();
    let o = mfw(&["eval", "--model", m, "--at", "w0", "--formula", "[]<>p"]);
    assert_eq!((stdout(&o).as_str(), o.status.code()), ("true\n", Some(0)));
    let o = mfw(&["eval", "--model", m, "--at", "w1", "--formula", "p"]);
    assert_eq!((stdout(&o).as_str(), o.status.code()), ("false\n", Some(1)));
}

#[test]
fn decide_lob_finds_a_point() {
    let o = mfw(&["decide", "--theory", "S4.2", "--max", "4", "--formula", "@Löb"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("refuted on a 1-world directed-preorder frame"));

    let o = mfw(&["--porcelain", "decide", "--theory", "S4.2", "--max", "4", "--formula", "@Löb"]);
    let text = stdout(&o);
    assert!(text.contains("verdict=refuted\n") && text.contains("worlds=1\n"));
    let body: String = text.lines().filter(|l| !l.contains('=')).map(|l| format!("{l}\n")).collect();
    let file = read_model(&body).unwrap();
    assert_eq!(file.model.frame().len(), 1);
    assert_eq!(file.point, Some(0));

    let o = mfw(&["decide", "--theory", "S4.2", "--max", "4", "--formula", "@.2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("no countermodel"));
}

#[test]
fn unravel_the_six_node_frame() {
    let dir = tempfile::tempdir().unwrap();
    let frame = write(dir.path(), "six.kf", SIX);
    let o = mfw(&["--close", "rt", "unravel", "--frame", frame.to_str().unwrap(), "--root", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let file = read_model(&stdout(&o)).unwrap();
    assert_eq!(file.model.frame().len(), 8);

    // without closure the frame is not a pre-order
    let o = mfw(&["unravel", "--frame", frame.to_str().unwrap(), "--root", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn machine_output_reparses() {
    let dir = tempfile::tempdir().unwrap();
    let six = write(dir.path(), "six.kf", SIX);
    let six = six.to_str().unwrap();

    let o = mfw(&["--porcelain", "parse", "--formula", "@Dir"]);
    let text = stdout(&o);
    let rendered = text.lines().next().unwrap().strip_prefix("formula=").unwrap();
    assert_eq!(parse(rendered).unwrap(), mfw_core::formula::axiom(mfw_core::formula::AxiomName::Dir));

    let o = mfw(&["--close", "rt", "jankov", "--frame", six]);
    assert!(parse(stdout(&o).trim()).is_ok());

    let o = mfw(&["--close", "rt", "labels", "--frame", six]);
    assert_ne!(o.status.code(), Some(0), "the six-node frame is not a pre-lattice");

    let o = mfw(&["--close", "rt", "--porcelain", "frame-valid", "--frame", six, "--formula", "@.3"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let body: String = text.lines().filter(|l| !l.contains('=')).map(|l| format!("{l}\n")).collect();
    assert!(read_model(&body).is_ok());

    let o = mfw(&["--close", "rt", "classify", "--frame", six]);
    assert!(stdout(&o).contains("directed=true\n"));
}

#[test]
fn labels_then_simulate() {
    let dir = tempfile::tempdir().unwrap();
    let chain = write(dir.path(), "chain.kf", "world w0\nworld w1\nedge w0 w1\nval q w1\npoint w0\n");
    let host = write(
        dir.path(),
        "host.kf",
        "world a\nworld b\nedge a b\nval b0 b\nval b1 b\npoint a\n",
    );
    let o = mfw(&["--close", "rt", "labels", "--frame", chain.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let labels = write(dir.path(), "labels.txt", &stdout(&o));
    let sim = |f: &str| {
        mfw(&[
            "--close",
            "rt",
            "simulate",
            "--model",
            chain.to_str().unwrap(),
            "--host",
            host.to_str().unwrap(),
            "--labels",
            labels.to_str().unwrap(),
            "--formula",
            f,
        ])
    };
    let o = sim("<>q");
    assert_eq!((stdout(&o).as_str(), o.status.code()), ("true\n", Some(0)));
    assert_eq!(sim("[]<>q -> q").status.code(), Some(0));
}

#[test]
fn classify_statement_on_the_small_preboolean_model() {
    let dir = tempfile::tempdir().unwrap();
    let text = "world w0_0\nworld w0_1\nworld w1_0\nworld w1_1\n\
                edge w0_0 w0_1\nedge w0_1 w0_0\nedge w0_0 w1_0\nedge w1_0 w1_1\nedge w1_1 w1_0\n\
                val b0 w1_0 w1_1\nval s0 w0_1 w1_1\npoint w0_0\n";
    let model = write(dir.path(), "pb.kf", text);
    let m = model.to_str().unwrap();
    let class = |f: &str| stdout(&mfw(&["--close", "rt", "classify-statement", "--model", m, "--formula", f]));
    assert_eq!(class("b0"), "button\n");
    assert_eq!(class("~b0"), "negated-button\n");
    assert_eq!(class("s0"), "switch\n");
    assert_eq!(class("[]b0 | s0"), "button\n");
}

#[test]
fn usage_and_input_errors_exit_with_two() {
    assert_eq!(mfw(&["decide", "--theory", "S9", "--max", "3", "--formula", "p"]).status.code(), Some(2));
    assert_eq!(mfw(&["decide", "--theory", "GL", "--max", "3", "--formula", "p"]).status.code(), Some(2));
    assert_eq!(mfw(&["parse", "--formula", "p &"]).status.code(), Some(2));
    assert_eq!(mfw(&["parse", "--formula", "@Nope"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.kf", "world a\nedge a b\n");
    let o = mfw(&["classify", "--frame", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("bad.kf") && err.contains("line 2"), "{err}");
}

#[test]
fn audit_and_decide_are_independent_of_jobs() {
    let args = ["audit", "--theory", "S4", "--max", "4"];
    let default = mfw(&args);
    let mut single = vec!["--jobs", "1"];
    single.extend(args);
    let mut many = vec!["--jobs", "4"];
    many.extend(args);
    assert_eq!(default.stdout, mfw(&single).stdout);
    assert_eq!(default.stdout, mfw(&many).stdout);
    assert!(stdout(&default).contains(".2    refuted:3"));
}
