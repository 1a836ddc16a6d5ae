//! Lesson catalog, quizzes and student progress for the two-layer
//! curriculum. Lessons are JSON data files (see `content/README.md` for the
//! schema); a default set is compiled in.

pub mod catalog;
pub mod demo;
pub mod model;
pub mod progress;
pub mod quiz;

pub use catalog::{check_snippet, load_catalog, validate_catalog, Catalog, CatalogSource, CatalogViolation, ContentError};
pub use demo::{DemoCall, DemoRef, DEMO_OPERATIONS};
pub use model::{AnalogyEntry, Concept, Lesson, QuizItem, Section, SCHEMA_VERSION};
pub use progress::{
    load_progress, now_timestamp, persist, record_progress, DanglingRef, ProgressError, ProgressEvent, ProgressStore,
    QuizResult, SectionRef,
};
pub use quiz::{grade_quiz, QuizError};

/// The compiled-in catalog. Bundled content is validated by tests, so a
/// failure here is a build defect.
pub fn bundled_catalog() -> Catalog {
    load_catalog(&CatalogSource::Bundled).expect("bundled catalog is valid")
}
