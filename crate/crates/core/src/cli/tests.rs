use std::path::PathBuf;

use serde_json::Value;

use super::*;
use crate::graph::Graph;

fn run_args(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("copnum").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write_drawing(dir: &tempfile::TempDir, name: &str, d: &Drawing) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::to_string(&DrawingDocument::from_drawing(d)).unwrap()).unwrap();
    path
}

fn json_of(s: &str) -> Value {
    serde_json::from_str(s).unwrap_or_else(|e| panic!("{e}: {s}"))
}

#[test]
fn drawing_document_round_trip() {
    for d in [fixtures::k4_square(), fixtures::bowtie_c4(), fixtures::petersen_star()] {
        let doc = DrawingDocument::from_drawing(&d);
        let text = serde_json::to_string_pretty(&doc).unwrap();
        let back: DrawingDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
        let d2 = back.to_drawing().unwrap();
        assert_eq!(DrawingDocument::from_drawing(&d2), doc);
        assert_eq!(
            serde_json::to_string_pretty(&DrawingDocument::from_drawing(&d2)).unwrap(),
            text
        );
    }
}

#[test]
fn corpus_document_round_trip() {
    let p = CorpusParams {
        count: 10,
        ..CorpusParams::default()
    };
    let c = gen_corpus(5, &p);
    let doc = CorpusDocument::from_corpus(&c);
    let text = serde_json::to_string(&doc).unwrap();
    let back: CorpusDocument = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_corpus().unwrap(), c);
}

#[test]
fn unknown_fields_and_versions_are_rejected() {
    let mut v = serde_json::to_value(DrawingDocument::from_drawing(&fixtures::k4_square())).unwrap();
    v["extra"] = 1.into();
    assert!(serde_json::from_value::<DrawingDocument>(v.clone()).is_err());
    v.as_object_mut().unwrap().remove("extra");
    v["version"] = 9.into();
    let doc: DrawingDocument = serde_json::from_value(v).unwrap();
    assert!(doc.to_drawing().is_err());
}

#[test]
fn params_k4_square() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_drawing(&dir, "k4.json", &fixtures::k4_square());
    let (code, out, _) = run_args(&["params", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v = json_of(&out);
    assert_eq!(v["x"], 1);
    assert_eq!(v["X"], 1);
    assert_eq!(v["all_full"], true);
    assert_eq!(v["crossings"][0]["kind"], "full");
}

#[test]
fn solve_petersen() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_drawing(&dir, "p.json", &Drawing::plain(Graph::petersen()));
    let f = f.to_str().unwrap();
    let (code, out, _) = run_args(&["solve", f, "--cops", "3", "--dist", "0"]);
    assert_eq!(code, 0);
    assert_eq!(json_of(&out)["cop_win"], true);
    let (_, out, _) = run_args(&["solve", f, "--cops", "2", "--dist", "0"]);
    assert_eq!(json_of(&out)["cop_win"], false);
}

#[test]
fn subdivided_triangle_beats_one_cop() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_drawing(&dir, "t.json", &Drawing::plain(Graph::cycle(3)));
    let (code, out, _) = run_args(&["transform", f.to_str().unwrap(), "--op", "subdivide", "3"]);
    assert_eq!(code, 0);
    let sub = dir.path().join("sub.json");
    std::fs::write(&sub, &out).unwrap();
    assert_eq!(json_of(&out)["n"], 9);
    let (code, out, _) = run_args(&["solve", sub.to_str().unwrap(), "--cops", "1", "--dist", "0"]);
    assert_eq!(code, 0);
    assert_eq!(json_of(&out)["cop_win"], false);
}

#[test]
fn budget_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_drawing(&dir, "p.json", &Drawing::plain(Graph::petersen()));
    let (code, _, err) = run_args(&["solve", f.to_str().unwrap(), "--cops", "3", "--max-states", "10"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn bad_input_exit_code() {
    let (code, _, err) = run_args(&["params", "/nonexistent.json"]);
    assert_eq!(code, 1);
    assert!(!err.is_empty());
    let (code, _, _) = run_args(&["frobnicate"]);
    assert_eq!(code, 1);
    let (code, out, _) = run_args(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("solve"));
}

#[test]
fn generate_is_deterministic() {
    let args = ["generate", "--gen", "corpus", "--seed", "3", "--count", "6"];
    let (code, a, _) = run_args(&args);
    assert_eq!(code, 0);
    let (_, b, _) = run_args(&args);
    assert_eq!(a, b);
    let (code, x, _) = run_args(&["generate", "--gen", "large-X", "--mu", "6"]);
    assert_eq!(code, 0);
    let d: DrawingDocument = serde_json::from_str(&x).unwrap();
    let d = d.to_drawing().unwrap();
    assert!(d.xx_params().big_x >= crate::drawing::Param::Finite(6));
    let (code, _, _) = run_args(&["generate", "--gen", "far-crossings", "--base", "c4", "--f", "2"]);
    assert_eq!(code, 0);
}

#[test]
fn verify_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let (_, corpus, _) = run_args(&[
        "generate", "--gen", "corpus", "--seed", "1", "--count", "5", "--n-max", "6",
    ]);
    let path = dir.path().join("c.json");
    std::fs::write(&path, corpus).unwrap();
    let (code, out, _) = run_args(&["verify", path.to_str().unwrap(), "--check", "MONO,SUBDIV"]);
    assert_eq!(code, 0);
    let v = json_of(&out);
    assert_eq!(v["failed"], 0);
    let (code, table, _) = run_args(&["verify", path.to_str().unwrap(), "--check", "mono", "--table"]);
    assert_eq!(code, 0);
    assert!(table.contains("MONO"));
}

#[test]
fn play_transcripts() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_drawing(&dir, "p.json", &Drawing::plain(Graph::petersen()));
    let f = f.to_str().unwrap();
    let (code, out, err) = run_args(&["play", f, "--cops", "3", "--robber", "optimal", "--rounds", "20"]);
    assert_eq!(code, 0, "{err}");
    let v = json_of(&out);
    assert_eq!(v["outcome"], "captured");
    assert_eq!(v["records"][0]["round"], 0);
    let last = v["records"].as_array().unwrap().last().unwrap();
    assert_eq!(last["captured"], true);

    let k = write_drawing(&dir, "k.json", &fixtures::k4_square());
    let (code, out, err) = run_args(&[
        "play",
        k.to_str().unwrap(),
        "--cop",
        "orchestrate",
        "X",
        "1",
        "--rounds",
        "50",
    ]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(json_of(&out)["outcome"], "captured");
}

#[test]
fn export_dot_marks_crossings() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_drawing(&dir, "k4.json", &fixtures::k4_square());
    let (code, out, _) = run_args(&["export-dot", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.starts_with("graph drawing {"));
    assert_eq!(out.matches("crossing=true").count(), 1);
}
