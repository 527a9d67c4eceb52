use std::path::PathBuf;
use std::process::Command;

use opennet::field::{Rational, RationalFunction};
use opennet_cli::circuit_doc::parse_circuit;
use opennet_cli::term_syntax::parse_term;
use opennet_cli::{run, Outcome};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn opennet(args: &[&str]) -> Outcome {
    let args: Vec<String> = std::iter::once("opennet".to_string())
        .chain(args.iter().map(|a| if a.contains('.') && !a.starts_with('-') { fixture(a) } else { a.to_string() }))
        .collect();
    run(args)
}

fn fixtures(ext: &str) -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut out: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == ext))
        .collect();
    out.sort();
    out
}

#[test]
fn series_equals_single_resistor() {
    let out = opennet(&["circuit", "equiv", "series11.json", "single2.json"]);
    assert_eq!(out.code, 0, "{out:?}");
    assert_eq!(out.stdout, "equivalent\n");
    assert_eq!(opennet(&["circuit", "equiv", "series11.json", "resistor.json"]).code, 1);
    assert_eq!(opennet(&["--oracle", "circuit", "equiv", "parallel23.json", "single6over5.json"]).code, 0);
}

#[test]
fn s_plus_one_is_not_controllable() {
    let out = opennet(&["sfg", "controllable", "splusone.sfg"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.starts_with("not controllable\n"));
    assert!(out.stdout.ends_with("controllable part [A -B]:\nx0\ty0\n1\t-1\n"), "{}", out.stdout);
    assert_eq!(opennet(&["sfg", "controllable", "identity.sfg"]).code, 0);
}

#[test]
fn ohms_law_black_box() {
    let out = opennet(&["circuit", "blackbox", "resistor.json"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "relation 1→1 over Q, dimension 2\nφx0\tφy0\tix0\tiy0\n1\t0\t-1/3\t-1/3\n0\t1\t1/3\t1/3\n");
    assert_eq!(opennet(&["--oracle", "circuit", "blackbox", "resistor.json"]).stdout, out.stdout);
}

#[test]
fn power_and_compose() {
    let out = opennet(&["circuit", "power", "series11.json"]);
    assert_eq!(out.stdout, "terminals: A C\nP = (1/4)(A - C)^2\n");
    let composed = opennet(&["circuit", "compose", "series11.json", "single2.json"]);
    assert_eq!(composed.code, 0);
    let c = parse_circuit::<Rational>(&composed.stdout).unwrap();
    assert_eq!(c.names, ["A", "B", "C", "C'"]);
    assert_eq!(c.print(), composed.stdout);
}

#[test]
fn traces_and_steps() {
    assert_eq!(opennet(&["sfg", "check-trace", "splusone.sfg", "alternating.json"]).code, 0);
    assert_eq!(opennet(&["sfg", "check-trace", "identity.sfg", "alternating.json"]).code, 1);
    let step = opennet(&["--expr", "sfg", "step", "delay", "--state", "4", "--left", "7", "--right", "4"]);
    assert_eq!((step.code, step.stdout.as_str()), (0, "next [7]\n"));
    let same = opennet(&["--expr", "sfg", "step", "add", "--left", "2,3", "--right", "5"]);
    assert_eq!((same.code, same.stdout.as_str()), (0, "next []\n"));
    let bad = opennet(&["--expr", "sfg", "step", "add", "--left", "2,3", "--right", "6"]);
    assert_eq!((bad.code, bad.stdout.as_str()), (1, "infeasible\n"));
    let hidden = opennet(&["--expr", "sfg", "step", "co-discard ; discard"]);
    assert_eq!(hidden.stdout, "nondeterminate\n");
}

#[test]
fn inductors_over_rational_functions() {
    let out = opennet(&["circuit", "blackbox", "inductor.json"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("relation 1→1 over Q(s)"));
    // a rational document read over Q(s)
    assert!(opennet(&["--field", "qs", "circuit", "blackbox", "resistor.json"]).stdout.contains("over Q(s)"));
    // and the converse is a parse error
    assert_eq!(opennet(&["--field", "q", "circuit", "blackbox", "inductor.json"]).code, 3);
}

#[test]
fn exit_codes() {
    assert_eq!(opennet(&[]).code, 2);
    assert_eq!(opennet(&["circuit", "frobnicate"]).code, 2);
    assert_eq!(opennet(&["circuit", "equiv", "series11.json"]).code, 2);
    assert_eq!(opennet(&["circuit", "power", "missing.json"]).code, 2);
    assert_eq!(opennet(&["--expr", "sfg", "denote", "add ; add"]).code, 3);
    assert_eq!(opennet(&["--expr", "sfg", "denote", "copy ;"]).code, 3);
    assert_eq!(opennet(&["--help"]).code, 0);
    let bad = opennet(&["--expr", "sfg", "denote", "copy ; wibble"]);
    assert_eq!(bad.code, 3);
    assert!(bad.stderr.contains("offset 7"), "{}", bad.stderr);
}

#[test]
fn duplicate_node_names_are_parse_errors() {
    let dir = std::env::temp_dir().join(format!("opennet-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("dup.json");
    std::fs::write(
        &path,
        r#"{"field": "Q", "nodes": ["A", "A"], "edges": [], "inputs": ["A"], "outputs": ["A"]}"#,
    )
    .unwrap();
    let out = run(["opennet", "circuit", "power", path.to_str().unwrap()]);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("nodes[1]") && out.stderr.contains("duplicate"), "{}", out.stderr);
}

#[test]
fn printing_is_idempotent_on_fixtures() {
    for path in fixtures("json").into_iter().filter(|p| !p.ends_with("alternating.json")) {
        let text = std::fs::read_to_string(&path).unwrap();
        let once = if text.contains("Q(s)") {
            parse_circuit::<RationalFunction>(&text).unwrap().print()
        } else {
            parse_circuit::<Rational>(&text).unwrap().print()
        };
        let twice = if text.contains("Q(s)") {
            parse_circuit::<RationalFunction>(&once).unwrap().print()
        } else {
            parse_circuit::<Rational>(&once).unwrap().print()
        };
        assert_eq!(once, twice, "{}", path.display());
    }
    for path in fixtures("sfg") {
        let once = parse_term(&std::fs::read_to_string(&path).unwrap()).unwrap().to_string();
        assert_eq!(parse_term(&once).unwrap().to_string(), once, "{}", path.display());
    }
}

#[test]
fn output_is_deterministic_and_matches_the_binary() {
    let args = ["--json", "sfg", "denote", &fixture("splusone.sfg")];
    let first = opennet(&args);
    assert_eq!(first, opennet(&args));
    let bin = Command::new(env!("CARGO_BIN_EXE_opennet")).args(args).output().unwrap();
    assert_eq!(bin.status.code(), Some(0));
    assert_eq!(String::from_utf8(bin.stdout).unwrap(), first.stdout);
    let bin = Command::new(env!("CARGO_BIN_EXE_opennet"))
        .args(["sfg", "controllable", &fixture("splusone.sfg")])
        .output()
        .unwrap();
    assert_eq!(bin.status.code(), Some(1));
}
