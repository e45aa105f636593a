//! End-to-end tests of every subcommand, driven through the library entry
//! point with real files on disk.  Frozen poset sizes: the linear three
//! vertex quiver has 14 elements, the cyclic Nakayama algebra with all
//! radical-square relations has 14, and the two-vertex preprojective-style
//! algebra has 6.

use std::fs;
use std::path::{Path, PathBuf};

use tempfile::TempDir;

use sttilt_cli::{run, Command, Format, JobConfig};
use sttilt_core::io::{AbstractPosetDocument, PosetDocument, SketchDocument};
use sttilt_core::presentation::Presentation;
use sttilt_core::{Error, FieldSpec};

/// Config with caching disabled and JSON output; tests override fields.
fn cfg(command: Command) -> JobConfig {
    JobConfig {
        command,
        field: None,
        max_elements: 100_000,
        jobs: None,
        format: Format::Json,
        cache_dir: None,
        no_cache: true,
    }
}

fn write(dir: &TempDir, name: &str, content: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, content).unwrap();
    path
}

/// Linear quiver 1 → 2 → 3, no relations.
const A3_JSON: &str = r#"{
  "field": {"type": "rational"},
  "vertices": ["1", "2", "3"],
  "arrows": [
    {"name": "a", "src": 0, "tgt": 1},
    {"name": "b", "src": 1, "tgt": 2}
  ],
  "relations": []
}"#;

/// Two vertices with arrows both ways, both 2-cycles zero.
const PREPROJ2_JSON: &str = r#"{
  "field": {"type": "rational"},
  "vertices": ["1", "2"],
  "arrows": [
    {"name": "a", "src": 0, "tgt": 1},
    {"name": "b", "src": 1, "tgt": 0}
  ],
  "relations": [
    [{"coeff": "1", "path": ["a", "b"]}],
    [{"coeff": "1", "path": ["b", "a"]}]
  ]
}"#;

/// Kronecker quiver: two parallel arrows, τ-tilting infinite.
const KRONECKER_JSON: &str = r#"{
  "field": {"type": "rational"},
  "vertices": ["1", "2"],
  "arrows": [
    {"name": "x", "src": 0, "tgt": 1},
    {"name": "y", "src": 0, "tgt": 1}
  ],
  "relations": []
}"#;

fn compute_json(dir: &TempDir, algebra_json: &str) -> PosetDocument {
    let path = write(dir, "alg.json", algebra_json);
    let out = run(&cfg(Command::Compute { algebra: path })).unwrap();
    assert!(out.verdict);
    PosetDocument::from_json(&out.stdout).unwrap()
}

#[test]
fn compute_emits_a_canonical_labeled_document() {
    let dir = TempDir::new().unwrap();
    let doc = compute_json(&dir, A3_JSON);
    assert_eq!(doc.elements.len(), 14);
    assert_eq!(doc.vertices, vec!["1", "2", "3"]);
    // Canonical ids: ascending g-matrix keys.
    let keys: Vec<Vec<Vec<i64>>> = doc
        .elements
        .iter()
        .map(|e| e.summands.iter().map(|s| s.g.clone()).collect())
        .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn compute_uses_the_cache_byte_for_byte() {
    let dir = TempDir::new().unwrap();
    let algebra = write(&dir, "alg.json", A3_JSON);
    let cache_dir = dir.path().join("cache");
    let mut config = cfg(Command::Compute { algebra: algebra.clone() });
    config.no_cache = false;
    config.cache_dir = Some(cache_dir.clone());

    let first = run(&config).unwrap().stdout;
    // Exactly one cache entry; replace it with a sentinel to prove the
    // second run answers from the cache without recomputing.
    let entries: Vec<PathBuf> = fs::read_dir(&cache_dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    assert_eq!(entries.len(), 1);
    let cached = fs::read_to_string(&entries[0]).unwrap();
    assert_eq!(cached, first);

    let sentinel = PosetDocument {
        algebra_hash: "sentinel".into(),
        vertices: vec![],
        elements: vec![],
        hasse: vec![],
    }
    .to_json();
    fs::write(&entries[0], &sentinel).unwrap();
    let config2 = JobConfig { command: Command::Compute { algebra: algebra.clone() }, ..config };
    assert_eq!(run(&config2).unwrap().stdout, sentinel);

    // --no-cache ignores the sentinel and recomputes the true document.
    let mut config3 = JobConfig { command: Command::Compute { algebra }, ..config2 };
    config3.no_cache = true;
    assert_eq!(run(&config3).unwrap().stdout, first);
}

#[test]
fn compute_honours_max_elements_even_on_cache_hits() {
    let dir = TempDir::new().unwrap();
    let algebra = write(&dir, "alg.json", A3_JSON);
    let cache_dir = dir.path().join("cache");
    let mut config = cfg(Command::Compute { algebra });
    config.no_cache = false;
    config.cache_dir = Some(cache_dir);
    run(&config).unwrap();

    config.max_elements = 5;
    match run(&config) {
        Err(Error::CapExceeded { cap: 5 }) => {}
        other => panic!("expected CapExceeded, got {other:?}"),
    }
}

#[test]
fn compute_rejects_an_infinite_type_algebra_at_the_cap() {
    let dir = TempDir::new().unwrap();
    let algebra = write(&dir, "kron.json", KRONECKER_JSON);
    let mut config = cfg(Command::Compute { algebra });
    config.max_elements = 12;
    match run(&config) {
        Err(Error::CapExceeded { cap: 12 }) => {}
        other => panic!("expected CapExceeded, got {other:?}"),
    }
}

#[test]
fn compute_dot_and_text_render_the_same_poset() {
    let dir = TempDir::new().unwrap();
    let algebra = write(&dir, "alg.json", PREPROJ2_JSON);
    let mut config = cfg(Command::Compute { algebra });
    config.format = Format::Dot;
    let dot = run(&config).unwrap().stdout;
    assert!(dot.starts_with("digraph sttilt {"));
    // 6 elements in the poset of the two-vertex preprojective-style algebra.
    assert_eq!(dot.matches("[label=").count(), 6);

    config.format = Format::Text;
    let text = run(&config).unwrap().stdout;
    assert!(text.contains("elements 6"));
}

#[test]
fn compute_field_override_changes_the_document_hash_not_the_poset() {
    let dir = TempDir::new().unwrap();
    let rational = compute_json(&dir, A3_JSON);

    let algebra = write(&dir, "alg2.json", A3_JSON);
    let mut config = cfg(Command::Compute { algebra });
    config.field = Some(FieldSpec::Prime { p: 5 });
    let modular = PosetDocument::from_json(&run(&config).unwrap().stdout).unwrap();

    assert_ne!(rational.algebra_hash, modular.algebra_hash);
    assert_eq!(rational.hasse, modular.hasse);
    assert_eq!(rational.elements, modular.elements);
}

#[test]
fn analyze_reports_the_lattice_facts() {
    let dir = TempDir::new().unwrap();
    let algebra = write(&dir, "alg.json", A3_JSON);
    let poset_json = run(&cfg(Command::Compute { algebra })).unwrap().stdout;
    let poset = write(&dir, "poset.json", &poset_json);

    let out = run(&cfg(Command::Analyze { poset: poset.clone() })).unwrap();
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["elements"], 14);
    assert_eq!(v["covers"], 21);
    assert_eq!(v["connected"], true);
    assert_eq!(v["lattice"], true);
    assert_eq!(v["regular_degree"], 3);
    assert_eq!(v["obstruction"], "pass");
    assert_eq!(v["rank"], 3);
    // The maximum is the element presenting the algebra itself: every
    // summand lives in degree 0.
    let doc = PosetDocument::from_json(&poset_json).unwrap();
    let top = doc
        .elements
        .iter()
        .position(|e| e.summands.iter().all(|s| s.p1.is_empty()))
        .unwrap();
    assert_eq!(v["maximum"], top);

    let mut config = cfg(Command::Analyze { poset });
    config.format = Format::Text;
    let text = run(&config).unwrap().stdout;
    assert!(text.contains("lattice true"));
    assert!(text.contains("regular 3"));
}

#[test]
fn analyze_accepts_bare_posets_and_flags_obstruction_failures() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "fx.json", r#"{"fixture": "non-realizable30"}"#);
    let poset_json = run(&cfg(Command::Fixture { spec })).unwrap().stdout;
    let poset = write(&dir, "p30.json", &poset_json);

    let out = run(&cfg(Command::Analyze { poset })).unwrap();
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["elements"], 30);
    assert_eq!(v["lattice"], true);
    assert_eq!(v["regular_degree"], 3);
    assert_eq!(v["obstruction"]["bottom_sizes"], serde_json::json!([5, 6, 6]));
    assert_eq!(v["obstruction"]["top_sizes"], serde_json::json!([6, 6, 6]));
    assert!(v.get("rank").is_none());
}

#[test]
fn reconstruct_recovers_the_arrow_skeleton() {
    let dir = TempDir::new().unwrap();
    let algebra = write(&dir, "alg.json", A3_JSON);
    let poset_json = run(&cfg(Command::Compute { algebra })).unwrap().stdout;
    let poset = write(&dir, "poset.json", &poset_json);

    let out = run(&cfg(Command::Reconstruct { poset: poset.clone() })).unwrap();
    let sketch = SketchDocument::from_json(&out.stdout).unwrap().to_sketch().unwrap();
    let expected = sttilt_core::reconstruct::QuiverSketch::from_presentation(
        &Presentation::from_json(A3_JSON).unwrap(),
    );
    assert!(sketch.isomorphic_to(&expected));

    let mut config = cfg(Command::Reconstruct { poset });
    config.format = Format::Dot;
    let dot = run(&config).unwrap().stdout;
    assert!(dot.starts_with("digraph quiver {"));
}

#[test]
fn compare_prints_a_witness_or_not_isomorphic() {
    let dir = TempDir::new().unwrap();
    // The square lattice arises both as the two-chains fixture with one
    // element per chain and as the rank-2 cube.
    let chains = write(&dir, "c.json", r#"{"fixture": "two-chains", "l": 1, "lp": 1}"#);
    let square1 = write(&dir, "p1.json", &run(&cfg(Command::Fixture { spec: chains })).unwrap().stdout);
    let cube = write(&dir, "b.json", r#"{"fixture": "boolean", "m": 2}"#);
    let square2 = write(&dir, "p2.json", &run(&cfg(Command::Fixture { spec: cube })).unwrap().stdout);

    let out = run(&cfg(Command::Compare { left: square1.clone(), right: square2.clone() })).unwrap();
    assert!(out.verdict);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["isomorphic"], true);
    let map: Vec<usize> =
        v["map"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as usize).collect();
    // The witness is a genuine isomorphism: check it maps covers to covers.
    let p1 = AbstractPosetDocument::from_json(&fs::read_to_string(&square1).unwrap())
        .unwrap()
        .to_poset()
        .unwrap();
    let p2 = AbstractPosetDocument::from_json(&fs::read_to_string(&square2).unwrap())
        .unwrap()
        .to_poset()
        .unwrap();
    let mut mapped: Vec<(usize, usize)> =
        p1.hasse().iter().map(|&(a, b)| (map[a], map[b])).collect();
    mapped.sort_unstable();
    assert_eq!(mapped, p2.hasse().to_vec());

    let bigger = write(&dir, "c2.json", r#"{"fixture": "two-chains", "l": 1, "lp": 2}"#);
    let p5 = write(&dir, "p5.json", &run(&cfg(Command::Fixture { spec: bigger })).unwrap().stdout);
    let mut config = cfg(Command::Compare { left: square2, right: p5 });
    config.format = Format::Text;
    let out = run(&config).unwrap();
    assert!(!out.verdict);
    assert_eq!(out.stdout, "not isomorphic\n");
}

#[test]
fn equiv_maps_vertices_and_arrows_or_explains_the_mismatch() {
    let dir = TempDir::new().unwrap();
    // The same algebra with the two vertices written in the other order.
    let left = write(&dir, "l.json", A3_JSON);
    let relabeled = r#"{
      "field": {"type": "rational"},
      "vertices": ["x", "y", "z"],
      "arrows": [
        {"name": "u", "src": 2, "tgt": 0},
        {"name": "v", "src": 0, "tgt": 1}
      ],
      "relations": []
    }"#;
    let right = write(&dir, "r.json", relabeled);
    let out = run(&cfg(Command::Equiv { left: left.clone(), right })).unwrap();
    assert!(out.verdict);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["equivalent"], true);
    assert_eq!(v["vertex_map"]["1"], "z");
    assert_eq!(v["vertex_map"]["2"], "x");
    assert_eq!(v["vertex_map"]["3"], "y");
    assert_eq!(v["arrow_map"]["a"], "u");
    assert_eq!(v["arrow_map"]["b"], "v");

    let semisimple = write(
        &dir,
        "s.json",
        r#"{"field": {"type": "rational"}, "vertices": ["1", "2", "3"], "arrows": [], "relations": []}"#,
    );
    let out = run(&cfg(Command::Equiv { left, right: semisimple })).unwrap();
    assert!(!out.verdict);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["equivalent"], false);
    assert!(v["reason"].as_str().unwrap().contains("not isomorphic"));
}

#[test]
fn family_emits_a_buildable_presentation() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "fam.json", r#"{"family": "nakayama-cyclic", "lengths": [2, 2, 2]}"#);
    let out = run(&cfg(Command::Family { spec: spec.clone() })).unwrap();
    let p = Presentation::from_json(&out.stdout).unwrap();
    assert_eq!(p.vertices.len(), 3);
    assert_eq!(p.arrows.len(), 3);

    // The emitted presentation feeds straight back into compute.
    let alg = write(&dir, "fam-alg.json", &out.stdout);
    let doc = PosetDocument::from_json(&run(&cfg(Command::Compute { algebra: alg })).unwrap().stdout)
        .unwrap();
    assert_eq!(doc.elements.len(), 14);

    let mut config = cfg(Command::Family { spec });
    config.format = Format::Text;
    let text = run(&config).unwrap().stdout;
    assert!(text.contains("field rational"));
    assert!(text.contains("relation"));
}

#[test]
fn family_respects_the_field_flag() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "fam.json", r#"{"family": "preprojective-a", "n": 2}"#);
    let mut config = cfg(Command::Family { spec });
    config.field = Some(FieldSpec::Prime { p: 7 });
    let p = Presentation::from_json(&run(&config).unwrap().stdout).unwrap();
    assert_eq!(p.field, FieldSpec::Prime { p: 7 });
}

#[test]
fn fixture_emits_the_stored_lattices() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "fx.json", r#"{"fixture": "realizable26"}"#);
    let out = run(&cfg(Command::Fixture { spec })).unwrap();
    let doc = AbstractPosetDocument::from_json(&out.stdout).unwrap();
    assert_eq!(doc.elements, 26);
    assert_eq!(doc.hasse.len(), 39);
    doc.to_poset().unwrap();
}

#[test]
fn minimize_strips_diagonal_loops() {
    let dir = TempDir::new().unwrap();
    // One loop at vertex 1; killing it leaves the path algebra of 1 → 2.
    let looped = r#"{
      "field": {"type": "rational"},
      "vertices": ["1", "2"],
      "arrows": [
        {"name": "l", "src": 0, "tgt": 0},
        {"name": "a", "src": 0, "tgt": 1}
      ],
      "relations": [
        [{"coeff": "1", "path": ["l", "l"]}],
        [{"coeff": "1", "path": ["l", "a"]}]
      ]
    }"#;
    let algebra = write(&dir, "loop.json", looped);
    let out = run(&cfg(Command::Minimize { algebra: algebra.clone() })).unwrap();
    let p = Presentation::from_json(&out.stdout).unwrap();
    assert_eq!(p.arrows.len(), 1);
    assert_eq!(p.arrows[0].name, "a");
    assert!(p.relations.is_empty());

    let mut config = cfg(Command::Minimize { algebra });
    config.format = Format::Text;
    let text = run(&config).unwrap().stdout;
    assert!(text.contains("dimension 3 (from 4)"));
}

#[test]
fn theta_answers_yes_and_no() {
    let dir = TempDir::new().unwrap();
    let member = write(&dir, "m.json", PREPROJ2_JSON);
    let out = run(&cfg(Command::Theta { algebra: member })).unwrap();
    assert!(out.verdict);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["member"], true);

    let non_member = write(&dir, "k.json", KRONECKER_JSON);
    let mut config = cfg(Command::Theta { algebra: non_member });
    config.max_elements = 12;
    let out = run(&config).unwrap();
    assert!(!out.verdict);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["member"], false);
}

#[test]
fn missing_and_malformed_inputs_error_cleanly() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("nope.json");
    match run(&cfg(Command::Compute { algebra: missing })) {
        Err(Error::Io(msg)) => assert!(msg.contains("nope.json")),
        other => panic!("expected Io error, got {other:?}"),
    }

    let garbage = write(&dir, "bad.json", "not json");
    match run(&cfg(Command::Analyze { poset: garbage })) {
        Err(Error::InvalidSpec(msg)) => assert!(msg.contains("bad.json")),
        other => panic!("expected InvalidSpec, got {other:?}"),
    }
}

#[test]
fn environment_variable_steers_the_cache() {
    // Sequential-affecting global state: this test sets the variable, runs,
    // and unsets it again; no other test in this file reads it.
    let dir = TempDir::new().unwrap();
    let cache_dir = dir.path().join("env-cache");
    std::env::set_var("STTILT_CACHE_DIR", &cache_dir);
    let algebra = write(&dir, "alg.json", A3_JSON);
    let mut config = cfg(Command::Compute { algebra });
    config.no_cache = false;
    run(&config).unwrap();
    std::env::remove_var("STTILT_CACHE_DIR");
    assert_eq!(fs::read_dir(&cache_dir).unwrap().count(), 1);
}

/// Guard against path handling regressions: relative paths work too.
#[test]
fn inputs_may_be_relative_paths() {
    let dir = TempDir::new().unwrap();
    write(&dir, "alg.json", A3_JSON);
    let old = std::env::current_dir().unwrap();
    std::env::set_current_dir(dir.path()).unwrap();
    let result = run(&cfg(Command::Compute { algebra: Path::new("alg.json").to_path_buf() }));
    std::env::set_current_dir(old).unwrap();
    assert_eq!(
        PosetDocument::from_json(&result.unwrap().stdout).unwrap().elements.len(),
        14
    );
}
