use std::collections::{HashMap, HashSet};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use qana_core::dsl::{parse_and_validate, run};
use qana_core::{GateKind, Rng, StateVector64};
use serde::Serialize;

use crate::model::{AnalogyEntry, Lesson, SCHEMA_VERSION};

/// Lesson files compiled into the binary, in catalog order.
const BUNDLED: &[(&str, &str)] = &[
    ("01-classical-search.json", include_str!("../content/01-classical-search.json")),
    ("02-trial-division.json", include_str!("../content/02-trial-division.json")),
    ("03-complexity-hybrid.json", include_str!("../content/03-complexity-hybrid.json")),
    ("04-data-structures.json", include_str!("../content/04-data-structures.json")),
    ("05-qubits-superposition.json", include_str!("../content/05-qubits-superposition.json")),
    ("06-gates.json", include_str!("../content/06-gates.json")),
    ("07-entanglement.json", include_str!("../content/07-entanglement.json")),
    ("08-measurement.json", include_str!("../content/08-measurement.json")),
    ("09-grover.json", include_str!("../content/09-grover.json")),
    ("10-shor.json", include_str!("../content/10-shor.json")),
    ("11-qft.json", include_str!("../content/11-qft.json")),
];

pub const LESSON_FILE_EXTENSION: &str = "json";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatalogSource {
    Bundled,
    Directory(PathBuf),
}

/// Immutable once loaded.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Catalog {
    lessons: Vec<Lesson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContentError {
    /// File path, or the bundled file name.
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lesson_id: Option<String>,
    pub message: String,
}

impl fmt::Display for ContentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.lesson_id {
            Some(id) => write!(f, "{} (lesson `{id}`): {}", self.source, self.message),
            None => write!(f, "{}: {}", self.source, self.message),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogViolation {
    pub lesson_id: String,
    /// e.g. `sections[2].circuit_snippet`.
    pub location: String,
    pub message: String,
}

impl fmt::Display for CatalogViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lesson `{}` {}: {}", self.lesson_id, self.location, self.message)
    }
}

/// Loads and validates a catalog. Directory sources read every `*.json`
/// file in file-name order; one lesson per file.
pub fn load_catalog(source: &CatalogSource) -> Result<Catalog, Vec<ContentError>> {
    let files: Vec<(String, String)> = match source {
        CatalogSource::Bundled => BUNDLED.iter().map(|(n, c)| (n.to_string(), c.to_string())).collect(),
        CatalogSource::Directory(dir) => read_dir_sorted(dir)?,
    };
    let mut errors = Vec::new();
    let mut lessons = Vec::new();
    let mut origin = HashMap::new();
    for (name, text) in files {
        match parse_lesson(&text) {
            Ok(lesson) => {
                origin.entry(lesson.id.clone()).or_insert_with(|| name.clone());
                lessons.push(lesson);
            }
            Err(message) => errors.push(ContentError { source: name, lesson_id: None, message }),
        }
    }
    let catalog = Catalog { lessons };
    if let Err(violations) = validate_catalog(&catalog) {
        errors.extend(violations.into_iter().map(|v| ContentError {
            source: origin.get(&v.lesson_id).cloned().unwrap_or_default(),
            message: format!("{}: {}", v.location, v.message),
            lesson_id: Some(v.lesson_id),
        }));
    }
    if errors.is_empty() {
        Ok(catalog)
    } else {
        Err(errors)
    }
}

fn read_dir_sorted(dir: &Path) -> Result<Vec<(String, String)>, Vec<ContentError>> {
    let io_err = |path: &Path, e: std::io::Error| {
        vec![ContentError { source: path.display().to_string(), lesson_id: None, message: e.to_string() }]
    };
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| io_err(dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == LESSON_FILE_EXTENSION))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| fs::read_to_string(&p).map(|c| (p.display().to_string(), c)).map_err(|e| io_err(&p, e)))
        .collect()
}

fn parse_lesson(text: &str) -> Result<Lesson, String> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
    match value.get("schema_version").and_then(|v| v.as_u64()) {
        Some(v) if v == SCHEMA_VERSION as u64 => {}
        Some(v) => return Err(format!("unsupported schema_version {v}, expected {SCHEMA_VERSION}")),
        None => return Err("missing schema_version".into()),
    }
    serde_json::from_value(value).map_err(|e| format!("schema violation: {e}"))
}

/// Checks every lesson, analogy, snippet, demo reference and quiz item.
pub fn validate_catalog(catalog: &Catalog) -> Result<(), Vec<CatalogViolation>> {
    let mut out = Vec::new();
    let mut push = |lesson: &Lesson, location: String, message: String| {
        out.push(CatalogViolation { lesson_id: lesson.id.clone(), location, message })
    };

    let mut lesson_ids = HashSet::new();
    let mut analogy_ids: HashMap<&str, &str> = HashMap::new();
    for lesson in &catalog.lessons {
        if lesson.id.trim().is_empty() {
            push(lesson, "id".into(), "lesson id is empty".into());
        } else if !lesson_ids.insert(lesson.id.as_str()) {
            push(lesson, "id".into(), format!("duplicate lesson id `{}`", lesson.id));
        }
        for (i, a) in lesson.analogies.iter().enumerate() {
            let loc = format!("analogies[{i}]");
            if let Some(owner) = analogy_ids.insert(&a.id, &lesson.id) {
                push(lesson, loc.clone(), format!("duplicate analogy id `{}` (also in lesson `{owner}`)", a.id));
            }
            if a.body.trim().is_empty() {
                push(lesson, loc.clone(), format!("analogy `{}` has an empty body", a.id));
            }
            if a.paper_table.trim().is_empty() {
                push(lesson, loc, format!("analogy `{}` has no table tag", a.id));
            }
        }
    }

    for lesson in &catalog.lessons {
        if !matches!(lesson.layer, 1 | 2) {
            push(lesson, "layer".into(), format!("layer must be 1 or 2, found {}", lesson.layer));
        }
        if lesson.title.trim().is_empty() {
            push(lesson, "title".into(), "title is empty".into());
        }
        for (i, s) in lesson.sections.iter().enumerate() {
            if let Some(r) = &s.analogy_ref {
                if !analogy_ids.contains_key(r.as_str()) {
                    push(
                        lesson,
                        format!("sections[{i}].analogy_ref"),
                        format!("lesson `{}` references analogy `{r}`, which does not exist", lesson.id),
                    );
                }
            }
            if let Some(src) = &s.circuit_snippet {
                if let Err(msg) = check_snippet(src) {
                    push(lesson, format!("sections[{i}].circuit_snippet"), msg);
                }
            }
            if let Some(d) = &s.demo_ref {
                if let Err(msg) = d.resolve() {
                    push(lesson, format!("sections[{i}].demo_ref"), msg);
                }
            }
        }
        for (i, q) in lesson.quiz.iter().enumerate() {
            let loc = format!("quiz[{i}]");
            if q.question.trim().is_empty() {
                push(lesson, loc.clone(), "question is empty".into());
            }
            if q.choices.len() < 2 {
                push(lesson, loc.clone(), format!("needs at least 2 choices, found {}", q.choices.len()));
            }
            if q.answer_index < 0 || q.answer_index as usize >= q.choices.len() {
                push(
                    lesson,
                    loc,
                    format!("answer_index {} out of range for {} choices", q.answer_index, q.choices.len()),
                );
            }
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// Parses, validates and runs a snippet; the final state must have norm 1.
pub fn check_snippet(src: &str) -> Result<StateVector64, String> {
    let circuit = parse_and_validate(src).map_err(|e| e.to_string())?;
    let result = run::<f64>(&circuit, &mut Rng::seeded(0), false).map_err(|e| e.to_string())?;
    let norm = result.final_state.norm_sqr();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(format!("final state norm² {norm} is not 1"));
    }
    Ok(result.final_state)
}

impl Catalog {
    /// Builds a catalog without validating it.
    pub fn from_lessons(lessons: Vec<Lesson>) -> Self {
        Catalog { lessons }
    }

    pub fn lessons(&self) -> &[Lesson] {
        &self.lessons
    }

    pub fn lesson(&self, id: &str) -> Option<&Lesson> {
        self.lessons.iter().find(|l| l.id == id)
    }

    pub fn is_empty(&self) -> bool {
        self.lessons.is_empty()
    }

    /// All analogies in catalog order.
    pub fn analogies(&self) -> impl Iterator<Item = &AnalogyEntry> {
        self.lessons.iter().flat_map(|l| l.analogies.iter())
    }

    pub fn analogy(&self, id: &str) -> Option<&AnalogyEntry> {
        self.analogies().find(|a| a.id == id)
    }

    /// The gate analogy for a gate kind, if the catalog has one.
    pub fn gate_analogy(&self, kind: &GateKind) -> Option<&AnalogyEntry> {
        let m = kind.mnemonic();
        self.analogies().find(|a| a.gate.as_deref() == Some(m))
    }
}
