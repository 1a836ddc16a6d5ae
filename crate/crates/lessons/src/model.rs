use serde::{Deserialize, Serialize};

use crate::demo::DemoRef;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Concept {
    Superposition,
    Entanglement,
    Gate,
    Algorithm,
    Measurement,
    DataStructure,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalogyEntry {
    pub id: String,
    pub concept: Concept,
    pub title: String,
    pub body: String,
    /// Source table tag such as `"Table IV"`, or `"prose"` for analogies
    /// that come from running text rather than a table.
    pub paper_table: String,
    /// Gate mnemonic this analogy illustrates, for gate analogies.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gate: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Section {
    pub prose: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analogy_ref: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circuit_snippet: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub demo_ref: Option<DemoRef>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuizItem {
    pub question: String,
    pub choices: Vec<String>,
    pub answer_index: i64,
    pub explanation: String,
}

/// One lesson file. Analogies are declared in the lesson that introduces
/// them but may be referenced from any lesson in the catalog.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Lesson {
    pub schema_version: u32,
    pub id: String,
    pub layer: u8,
    pub title: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub banner: Option<String>,
    #[serde(default)]
    pub analogies: Vec<AnalogyEntry>,
    pub sections: Vec<Section>,
    #[serde(default)]
    pub quiz: Vec<QuizItem>,
}
