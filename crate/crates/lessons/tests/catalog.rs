use std::collections::{BTreeMap, HashSet};
use std::fs;

use qana_core::GateKind;
use qana_lessons::*;

fn write_lesson(dir: &std::path::Path, name: &str, json: serde_json::Value) {
    fs::write(dir.join(name), serde_json::to_string_pretty(&json).unwrap()).unwrap();
}

fn minimal(id: &str) -> serde_json::Value {
    serde_json::json!({
        "schema_version": 1,
        "id": id,
        "layer": 2,
        "title": "t",
        "analogies": [{ "id": format!("{id}-a"), "concept": "Gate", "title": "A", "body": "b", "paper_table": "prose" }],
        "sections": [{ "prose": "p", "analogy_ref": format!("{id}-a"), "circuit_snippet": "qubits 1\nh 0" }],
        "quiz": [{ "question": "q", "choices": ["a", "b", "c", "d"], "answer_index": 1, "explanation": "" }]
    })
}

#[test]
fn bundled_catalog_is_valid() {
    let c = load_catalog(&CatalogSource::Bundled).unwrap_or_else(|e| {
        panic!("{}", e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("\n"))
    });
    assert!(validate_catalog(&c).is_ok());
    assert!(c.lessons().len() >= 9);
    assert!(c.analogies().count() >= 17);
}

#[test]
fn bundled_covers_both_layers() {
    let c = bundled_catalog();
    let ids: HashSet<&str> = c.lessons().iter().map(|l| l.id.as_str()).collect();
    for id in ["classical-search", "trial-division", "complexity-hybrid", "data-structures"] {
        assert_eq!(c.lesson(id).unwrap().layer, 1, "{id}");
    }
    for id in ["qubits-superposition", "gates", "entanglement", "measurement", "grover", "shor", "qft"] {
        assert!(ids.contains(id), "{id}");
        assert_eq!(c.lesson(id).unwrap().layer, 2, "{id}");
    }
    let ds = c.lesson("data-structures").unwrap();
    assert!(ds.banner.as_deref().unwrap().contains("no executable construction"));
    assert!(ds.sections.iter().all(|s| s.circuit_snippet.is_none() && s.demo_ref.is_none()));
}

#[test]
fn table_analogies_present_once_and_tagged() {
    let c = bundled_catalog();
    let expected: BTreeMap<&str, Vec<&str>> = BTreeMap::from([
        ("Table I", vec!["Busy Librarians", "All Guesses at Once"]),
        ("Table II", vec!["Quantum Array", "Quantum Linked List", "Quantum Tree"]),
        (
            "Table III",
            vec!["Coin Toss", "Radio Tuner", "Quantum Dice", "Polarized Glasses", "Music Player", "Football"],
        ),
        (
            "Table IV",
            vec![
                "Quantum Bit Flipper",
                "Phase Flipper",
                "Bit and Phase Flipper",
                "Quantum Coin Tosser",
                "Remote Control",
                "Double Remote Control",
            ],
        ),
        (
            "Table V",
            vec!["Twin Telepathy", "Dance Practice", "Interlocking Puzzles", "Blue and Red Pool Balls", "Left and Right Shoes"],
        ),
    ]);
    for (table, titles) in &expected {
        let found: Vec<&str> =
            c.analogies().filter(|a| a.paper_table == *table).map(|a| a.title.as_str()).collect();
        assert_eq!(found.len(), titles.len(), "{table}: {found:?}");
        for t in titles {
            assert_eq!(found.iter().filter(|f| *f == t).count(), 1, "{table} {t}");
        }
    }
    assert_eq!(c.analogies().filter(|a| a.concept == Concept::Superposition).count(), 6);
    assert_eq!(c.analogies().filter(|a| a.concept == Concept::Entanglement).count(), 5);
    assert_eq!(c.analogies().filter(|a| a.paper_table == "Table IV").count(), 6);
}

#[test]
fn every_bundled_snippet_runs_to_unit_norm() {
    let c = bundled_catalog();
    let mut n = 0;
    for l in c.lessons() {
        for s in l.sections.iter().filter_map(|s| s.circuit_snippet.as_deref()) {
            let state = check_snippet(s).unwrap();
            assert!((state.norm_sqr() - 1.0).abs() < 1e-9);
            n += 1;
        }
    }
    assert!(n >= 15);
}

#[test]
fn every_bundled_demo_resolves_and_runs() {
    for l in bundled_catalog().lessons() {
        for d in l.sections.iter().filter_map(|s| s.demo_ref.as_ref()) {
            d.resolve().unwrap().run(7).unwrap();
        }
    }
}

#[test]
fn gate_lookup() {
    let c = bundled_catalog();
    assert_eq!(c.gate_analogy(&GateKind::H).unwrap().title, "Quantum Coin Tosser");
    assert_eq!(c.gate_analogy(&GateKind::Z).unwrap().title, "Phase Flipper");
    assert_eq!(c.gate_analogy(&GateKind::Cnot).unwrap().title, "Remote Control");
    assert_eq!(c.gate_analogy(&GateKind::Toffoli).unwrap().title, "Double Remote Control");
    assert!(c.gate_analogy(&GateKind::Phase(0.5)).is_none());
}

#[test]
fn load_is_deterministic() {
    let a = bundled_catalog();
    let b = bundled_catalog();
    assert_eq!(a, b);
    let dir = tempfile::tempdir().unwrap();
    write_lesson(dir.path(), "b.json", minimal("second"));
    write_lesson(dir.path(), "a.json", minimal("first"));
    let c1 = load_catalog(&CatalogSource::Directory(dir.path().into())).unwrap();
    let c2 = load_catalog(&CatalogSource::Directory(dir.path().into())).unwrap();
    assert_eq!(c1, c2);
    let ids: Vec<_> = c1.lessons().iter().map(|l| l.id.as_str()).collect();
    assert_eq!(ids, ["first", "second"]);
}

#[test]
fn empty_directory_gives_empty_catalog() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("notes.txt"), "ignored").unwrap();
    let c = load_catalog(&CatalogSource::Directory(dir.path().into())).unwrap();
    assert!(c.is_empty());
}

#[test]
fn missing_directory_is_an_error() {
    let errs = load_catalog(&CatalogSource::Directory("/nonexistent/qana".into())).unwrap_err();
    assert_eq!(errs.len(), 1);
    assert!(errs[0].source.contains("/nonexistent/qana"));
}

#[test]
fn bad_snippet_reports_lesson_id() {
    let dir = tempfile::tempdir().unwrap();
    let mut l = minimal("broken");
    l["sections"][0]["circuit_snippet"] = "qubits 1\nh 9".into();
    write_lesson(dir.path(), "x.json", l);
    let errs = load_catalog(&CatalogSource::Directory(dir.path().into())).unwrap_err();
    assert_eq!(errs.len(), 1);
    assert_eq!(errs[0].lesson_id.as_deref(), Some("broken"));
    assert!(errs[0].message.contains("index out of range"), "{}", errs[0].message);
    assert!(errs[0].source.ends_with("x.json"));
}

#[test]
fn schema_errors_are_per_file() {
    let dir = tempfile::tempdir().unwrap();
    write_lesson(dir.path(), "ok.json", minimal("ok"));
    fs::write(dir.path().join("junk.json"), "{ not json").unwrap();
    let mut v2 = minimal("future");
    v2["schema_version"] = 2.into();
    write_lesson(dir.path(), "v2.json", v2);
    let mut extra = minimal("extra");
    extra["colour"] = "blue".into();
    write_lesson(dir.path(), "extra.json", extra);
    let errs = load_catalog(&CatalogSource::Directory(dir.path().into())).unwrap_err();
    assert_eq!(errs.len(), 3, "{errs:?}");
    assert!(errs.iter().any(|e| e.source.ends_with("junk.json") && e.message.contains("invalid JSON")));
    assert!(errs.iter().any(|e| e.source.ends_with("v2.json") && e.message.contains("schema_version")));
    assert!(errs.iter().any(|e| e.source.ends_with("extra.json") && e.message.contains("colour")));
}

#[test]
fn answer_index_out_of_range_is_a_violation() {
    let mut l: Lesson = serde_json::from_value(minimal("quiz")).unwrap();
    l.quiz[0].answer_index = 5;
    let v = validate_catalog(&Catalog::from_lessons(vec![l])).unwrap_err();
    assert_eq!(v.len(), 1);
    assert_eq!(v[0].location, "quiz[0]");
    assert!(v[0].message.contains("answer_index 5"));
}

#[test]
fn dangling_analogy_ref_names_both_sides() {
    let mut l: Lesson = serde_json::from_value(minimal("lonely")).unwrap();
    l.sections[0].analogy_ref = Some("ghost".into());
    let v = validate_catalog(&Catalog::from_lessons(vec![l])).unwrap_err();
    assert_eq!(v.len(), 1);
    assert!(v[0].message.contains("lonely") && v[0].message.contains("ghost"));
}

#[test]
fn other_invariants() {
    let mut a: Lesson = serde_json::from_value(minimal("a")).unwrap();
    a.layer = 3;
    a.quiz[0].choices.truncate(1);
    a.quiz[0].answer_index = 0;
    a.analogies[0].body = "  ".into();
    a.sections[0].demo_ref = Some(DemoRef { operation: "teleport".into(), params: Default::default() });
    let mut b: Lesson = serde_json::from_value(minimal("a")).unwrap();
    b.analogies[0].id = "a-a".into();
    let v = validate_catalog(&Catalog::from_lessons(vec![a, b])).unwrap_err();
    let msgs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    let has = |s: &str| msgs.iter().any(|m| m.contains(s));
    assert!(has("duplicate lesson id"), "{msgs:?}");
    assert!(has("duplicate analogy id"));
    assert!(has("empty body"));
    assert!(has("layer must be 1 or 2"));
    assert!(has("at least 2 choices"));
    assert!(has("unknown demo operation"));
}

#[test]
fn bundled_quizzes_grade() {
    for l in bundled_catalog().lessons() {
        assert!(!l.quiz.is_empty(), "{}", l.id);
        let right: Vec<i64> = l.quiz.iter().map(|q| q.answer_index).collect();
        assert_eq!(grade_quiz(&l.quiz, &right).unwrap(), 1.0);
    }
}
