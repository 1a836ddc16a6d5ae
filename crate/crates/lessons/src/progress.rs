use std::collections::BTreeSet;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::Catalog;
use crate::model::SCHEMA_VERSION;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SectionRef {
    pub lesson_id: String,
    pub section_index: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuizResult {
    pub lesson_id: String,
    pub score: f64,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProgressStore {
    pub schema_version: u32,
    pub student_id: String,
    pub completed_sections: BTreeSet<SectionRef>,
    pub quiz_results: Vec<QuizResult>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProgressEvent {
    SectionCompleted { lesson_id: String, section_index: usize },
    QuizGraded { lesson_id: String, score: f64, timestamp: u64 },
}

#[derive(Debug, Error)]
pub enum ProgressError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: {message}", path.display())]
    Format { path: PathBuf, message: String },
}

/// A progress entry pointing at a lesson or section the catalog lacks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DanglingRef {
    pub lesson_id: String,
    pub section_index: Option<usize>,
}

impl ProgressStore {
    pub fn new(student_id: impl Into<String>) -> Self {
        ProgressStore {
            schema_version: SCHEMA_VERSION,
            student_id: student_id.into(),
            completed_sections: BTreeSet::new(),
            quiz_results: Vec::new(),
        }
    }

    /// Entries that do not resolve against `catalog`. Nothing is removed.
    pub fn dangling_refs(&self, catalog: &Catalog) -> Vec<DanglingRef> {
        let mut out = Vec::new();
        for s in &self.completed_sections {
            let resolves = catalog.lesson(&s.lesson_id).is_some_and(|l| s.section_index < l.sections.len());
            if !resolves {
                out.push(DanglingRef { lesson_id: s.lesson_id.clone(), section_index: Some(s.section_index) });
            }
        }
        for q in &self.quiz_results {
            if catalog.lesson(&q.lesson_id).is_none() {
                out.push(DanglingRef { lesson_id: q.lesson_id.clone(), section_index: None });
            }
        }
        out
    }
}

pub fn now_timestamp() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

/// Section completions are idempotent; quiz results append.
pub fn record_progress(mut store: ProgressStore, event: ProgressEvent) -> ProgressStore {
    match event {
        ProgressEvent::SectionCompleted { lesson_id, section_index } => {
            store.completed_sections.insert(SectionRef { lesson_id, section_index });
        }
        ProgressEvent::QuizGraded { lesson_id, score, timestamp } => {
            store.quiz_results.push(QuizResult { lesson_id, score, timestamp });
        }
    }
    store
}

/// Writes to a sibling temp file then renames, so readers never see a
/// partial file. Last write wins.
pub fn persist(store: &ProgressStore, path: &Path) -> Result<(), ProgressError> {
    let io_err = |source| ProgressError::Io { path: path.to_path_buf(), source };
    let text = serde_json::to_string_pretty(store).expect("progress serializes");
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, text).map_err(io_err)?;
    fs::rename(&tmp, path).map_err(io_err)
}

/// A missing file yields a fresh store whose `student_id` is the file stem.
pub fn load_progress(path: &Path) -> Result<ProgressStore, ProgressError> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => {
            let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            return Ok(ProgressStore::new(stem));
        }
        Err(source) => return Err(ProgressError::Io { path: path.to_path_buf(), source }),
    };
    let store: ProgressStore = serde_json::from_str(&text)
        .map_err(|e| ProgressError::Format { path: path.to_path_buf(), message: e.to_string() })?;
    if store.schema_version != SCHEMA_VERSION {
        return Err(ProgressError::Format {
            path: path.to_path_buf(),
            message: format!("unsupported schema_version {}", store.schema_version),
        });
    }
    Ok(store)
}
