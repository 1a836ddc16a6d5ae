//! HTTP/JSON API over in-memory simulator sessions.
//!
//! Each session sits behind its own mutex, so mutations of one session are
//! applied in a single total order while different sessions proceed in
//! parallel. Sessions idle for longer than the TTL are evicted and their ids
//! answer 410 from then on.

use std::collections::{HashMap, HashSet};
use std::io;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use axum::body::Bytes;
use axum::extract::{FromRequest, Path, Request, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use qana_core::algorithms::{
    eavesdrop_demo, grover_search_with, shor_factor, DetectionReport, FactorReport, GroverOptions, GroverReport,
    ShorMode,
};
use qana_core::dsl::{parse_instruction, Instruction, ParseError};
use qana_core::{MeasurementBasis, Rng, StateVector64, MAX_QUBITS};
use qana_lessons::{
    grade_quiz, load_progress, now_timestamp, persist, record_progress, AnalogyEntry, Catalog, Lesson, ProgressEvent,
};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::json;
use tokio::net::TcpListener;

use crate::view::StateView;

pub const DEFAULT_SESSION_TTL: Duration = Duration::from_secs(30 * 60);
/// Upper bound on eavesdrop check bits per request.
pub const MAX_CHECK_BITS: u64 = 1_000_000;

#[derive(Debug, Clone)]
pub struct ServerConfig {
    pub catalog: Arc<Catalog>,
    pub session_ttl: Duration,
    /// Where quiz results are stored when a request names a student.
    pub progress_dir: Option<PathBuf>,
}

impl ServerConfig {
    pub fn new(catalog: Catalog) -> Self {
        ServerConfig { catalog: Arc::new(catalog), session_ttl: DEFAULT_SESSION_TTL, progress_dir: None }
    }
}

pub struct Session {
    pub id: String,
    pub state: StateVector64,
    pub history: Vec<Instruction>,
    pub rng: Rng,
    pub created_at: Instant,
    pub last_touched: Instant,
}

impl Session {
    fn touch(&mut self) {
        self.last_touched = Instant::now();
    }
}

#[derive(Default)]
struct Registry {
    live: HashMap<String, Arc<Mutex<Session>>>,
    expired: HashSet<String>,
}

pub struct SessionStore {
    ttl: Duration,
    registry: Mutex<Registry>,
}

#[derive(Debug)]
pub enum ApiError {
    NotFound(String),
    Gone(String),
    BadRequest(String),
    Parse(ParseError),
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (status, body) = match self {
            ApiError::NotFound(m) => (StatusCode::NOT_FOUND, json!({ "message": m })),
            ApiError::Gone(m) => (StatusCode::GONE, json!({ "message": m })),
            ApiError::BadRequest(m) => (StatusCode::BAD_REQUEST, json!({ "message": m })),
            ApiError::Parse(e) => (StatusCode::BAD_REQUEST, serde_json::to_value(e).expect("serializable")),
        };
        (status, Json(body)).into_response()
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

impl SessionStore {
    pub fn new(ttl: Duration) -> Self {
        SessionStore { ttl, registry: Mutex::new(Registry::default()) }
    }

    pub fn create(&self, num_qubits: usize, seed: u64) -> Result<Arc<Mutex<Session>>, ApiError> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(ApiError::BadRequest(format!("num_qubits {num_qubits} outside 1..={MAX_QUBITS}")));
        }
        let now = Instant::now();
        let id = uuid::Uuid::new_v4().simple().to_string();
        let session = Arc::new(Mutex::new(Session {
            id: id.clone(),
            state: StateVector64::new_register(num_qubits).expect("size checked"),
            history: Vec::new(),
            rng: Rng::seeded(seed),
            created_at: now,
            last_touched: now,
        }));
        self.registry.lock().expect("registry lock").live.insert(id, session.clone());
        Ok(session)
    }

    /// Looks up a live session, evicting it first if it has idled past the TTL.
    pub fn get(&self, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
        let mut reg = self.registry.lock().expect("registry lock");
        if reg.expired.contains(id) {
            return Err(ApiError::Gone(format!("session {id} has expired")));
        }
        let Some(session) = reg.live.get(id).cloned() else {
            return Err(ApiError::NotFound(format!("no session {id}")));
        };
        let idle = session.lock().expect("session lock").last_touched.elapsed();
        if idle > self.ttl {
            reg.live.remove(id);
            reg.expired.insert(id.to_string());
            return Err(ApiError::Gone(format!("session {id} has expired")));
        }
        Ok(session)
    }

    /// Evicts every session idle past the TTL; returns how many.
    pub fn sweep(&self) -> usize {
        let mut reg = self.registry.lock().expect("registry lock");
        let stale: Vec<String> = reg
            .live
            .iter()
            .filter(|(_, s)| s.lock().expect("session lock").last_touched.elapsed() > self.ttl)
            .map(|(id, _)| id.clone())
            .collect();
        for id in &stale {
            reg.live.remove(id);
            reg.expired.insert(id.clone());
        }
        stale.len()
    }

    pub fn live_count(&self) -> usize {
        self.registry.lock().expect("registry lock").live.len()
    }
}

pub struct AppState {
    pub config: ServerConfig,
    pub sessions: SessionStore,
}

/// JSON body extractor whose failures become 400 responses.
pub struct JsonBody<T>(pub T);

impl<S: Send + Sync, T: DeserializeOwned> FromRequest<S> for JsonBody<T> {
    type Rejection = ApiError;

    async fn from_request(req: Request, state: &S) -> Result<Self, Self::Rejection> {
        let bytes = Bytes::from_request(req, state)
            .await
            .map_err(|e| ApiError::BadRequest(format!("unreadable body: {e}")))?;
        serde_json::from_slice(&bytes)
            .map(JsonBody)
            .map_err(|e| ApiError::BadRequest(format!("invalid request body: {e}")))
    }
}

#[derive(Debug, Deserialize)]
pub struct CreateSession {
    pub num_qubits: usize,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SessionCreated {
    pub session_id: String,
    pub state_view: StateView,
}

#[derive(Debug, Deserialize)]
pub struct PostInstruction {
    pub dsl_line: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct InstructionApplied {
    pub state_view: StateView,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analogy: Option<AnalogyEntry>,
    /// Present when the line was a measurement.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outcome: Option<u8>,
}

#[derive(Debug, Deserialize)]
pub struct MeasureRequest {
    pub qubit: usize,
    pub basis: MeasurementBasis,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Measured {
    pub outcome: u8,
    pub state_view: StateView,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct StateOnly {
    pub state_view: StateView,
}

#[derive(Debug, Deserialize)]
pub struct QuizSubmission {
    pub answers: Vec<i64>,
    #[serde(default)]
    pub student_id: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct QuizScore {
    pub score: f64,
}

#[derive(Debug, Deserialize)]
pub struct GroverRequest {
    pub n: u64,
    pub marked: u64,
    #[serde(default)]
    pub iterations: Option<u64>,
}

#[derive(Debug, Deserialize)]
pub struct ShorRequest {
    pub n: u64,
    pub mode: ShorMode,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Debug, Deserialize)]
pub struct EavesdropRequest {
    pub qubits: u64,
    pub intercept: bool,
    #[serde(default)]
    pub seed: Option<u64>,
}

pub fn router(config: ServerConfig) -> Router {
    router_with_state(app_state(config))
}

pub fn app_state(config: ServerConfig) -> Arc<AppState> {
    let sessions = SessionStore::new(config.session_ttl);
    Arc::new(AppState { config, sessions })
}

pub fn router_with_state(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/api/sessions", post(create_session))
        .route("/api/sessions/{id}/instructions", post(post_instruction))
        .route("/api/sessions/{id}/measure", post(measure))
        .route("/api/sessions/{id}/reset", post(reset))
        .route("/api/sessions/{id}/state", get(get_state))
        .route("/api/lessons", get(list_lessons))
        .route("/api/lessons/{id}", get(get_lesson))
        .route("/api/quiz/{lesson_id}", post(submit_quiz))
        .route("/api/demos/grover", post(demo_grover))
        .route("/api/demos/shor", post(demo_shor))
        .route("/api/demos/eavesdrop", post(demo_eavesdrop))
        .fallback(|| async { ApiError::NotFound("no such endpoint".into()) })
        .with_state(state)
}

/// Serves until the listener fails. A background task sweeps idle sessions.
pub async fn serve(listener: TcpListener, config: ServerConfig) -> io::Result<()> {
    let state = app_state(config);
    let sweeper = state.clone();
    let period = state.config.session_ttl.clamp(Duration::from_millis(100), Duration::from_secs(60));
    tokio::spawn(async move {
        let mut tick = tokio::time::interval(period);
        loop {
            tick.tick().await;
            sweeper.sessions.sweep();
        }
    });
    axum::serve(listener, router_with_state(state)).await
}

fn random_seed() -> u64 {
    let b = uuid::Uuid::new_v4().into_bytes();
    u64::from_le_bytes(b[..8].try_into().expect("8 bytes"))
}

async fn create_session(
    State(app): State<Arc<AppState>>,
    JsonBody(req): JsonBody<CreateSession>,
) -> ApiResult<SessionCreated> {
    let session = app.sessions.create(req.num_qubits, req.seed.unwrap_or_else(random_seed))?;
    let s = session.lock().expect("session lock");
    Ok(Json(SessionCreated { session_id: s.id.clone(), state_view: StateView::of(&s.state) }))
}

async fn post_instruction(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
    JsonBody(req): JsonBody<PostInstruction>,
) -> ApiResult<InstructionApplied> {
    let session = app.sessions.get(&id)?;
    let mut s = session.lock().expect("session lock");
    s.touch();
    let instr = parse_instruction(&req.dsl_line, s.state.num_qubits()).map_err(ApiError::Parse)?;
    let Session { state, rng, .. } = &mut *s;
    let outcome = instr.apply(state, rng).map_err(|e| ApiError::BadRequest(e.to_string()))?;
    let analogy = instr.gate().and_then(|g| app.config.catalog.gate_analogy(&g.kind)).cloned();
    s.history.push(instr);
    Ok(Json(InstructionApplied { state_view: StateView::of(&s.state), analogy, outcome }))
}

async fn measure(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
    JsonBody(req): JsonBody<MeasureRequest>,
) -> ApiResult<Measured> {
    let session = app.sessions.get(&id)?;
    let mut s = session.lock().expect("session lock");
    s.touch();
    let instr = Instruction::Measure { qubit: req.qubit, basis: req.basis };
    let Session { state, rng, .. } = &mut *s;
    let outcome = instr
        .apply(state, rng)
        .map_err(|e| ApiError::BadRequest(e.to_string()))?
        .expect("measurement yields an outcome");
    s.history.push(instr);
    Ok(Json(Measured { outcome, state_view: StateView::of(&s.state) }))
}

async fn reset(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult<StateOnly> {
    let session = app.sessions.get(&id)?;
    let mut s = session.lock().expect("session lock");
    s.touch();
    s.state = StateVector64::new_register(s.state.num_qubits()).expect("valid size");
    s.history.clear();
    Ok(Json(StateOnly { state_view: StateView::of(&s.state) }))
}

async fn get_state(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult<StateView> {
    let session = app.sessions.get(&id)?;
    let mut s = session.lock().expect("session lock");
    s.touch();
    Ok(Json(StateView::of(&s.state)))
}

async fn list_lessons(State(app): State<Arc<AppState>>) -> Json<Vec<Lesson>> {
    Json(app.config.catalog.lessons().to_vec())
}

async fn get_lesson(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult<Lesson> {
    app.config
        .catalog
        .lesson(&id)
        .cloned()
        .map(Json)
        .ok_or_else(|| ApiError::NotFound(format!("no lesson {id}")))
}

fn valid_student_id(id: &str) -> bool {
    !id.is_empty() && id.len() <= 64 && id.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_')
}

async fn submit_quiz(
    State(app): State<Arc<AppState>>,
    Path(lesson_id): Path<String>,
    JsonBody(req): JsonBody<QuizSubmission>,
) -> ApiResult<QuizScore> {
    let lesson = app
        .config
        .catalog
        .lesson(&lesson_id)
        .ok_or_else(|| ApiError::NotFound(format!("no lesson {lesson_id}")))?;
    let score = grade_quiz(&lesson.quiz, &req.answers).map_err(|e| ApiError::BadRequest(e.to_string()))?;
    if let (Some(student), Some(dir)) = (&req.student_id, &app.config.progress_dir) {
        if !valid_student_id(student) {
            return Err(ApiError::BadRequest(format!("invalid student_id `{student}`")));
        }
        let path = dir.join(format!("{student}.json"));
        let event = ProgressEvent::QuizGraded { lesson_id, score, timestamp: now_timestamp() };
        let store = load_progress(&path).map_err(|e| ApiError::BadRequest(e.to_string()))?;
        persist(&record_progress(store, event), &path).map_err(|e| ApiError::BadRequest(e.to_string()))?;
    }
    Ok(Json(QuizScore { score }))
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> Result<T, String> + Send + 'static) -> ApiResult<T> {
    match tokio::task::spawn_blocking(f).await {
        Ok(Ok(v)) => Ok(Json(v)),
        Ok(Err(m)) => Err(ApiError::BadRequest(m)),
        Err(e) => Err(ApiError::BadRequest(format!("demo failed: {e}"))),
    }
}

async fn demo_grover(JsonBody(req): JsonBody<GroverRequest>) -> ApiResult<GroverReport> {
    blocking(move || {
        let opts = GroverOptions { iterations: req.iterations, record_frames: true };
        grover_search_with(req.n, req.marked, opts).map_err(|e| e.to_string())
    })
    .await
}

async fn demo_shor(JsonBody(req): JsonBody<ShorRequest>) -> ApiResult<FactorReport> {
    blocking(move || shor_factor(req.n, req.mode, &mut Rng::seeded(req.seed.unwrap_or(0))).map_err(|e| e.to_string()))
        .await
}

async fn demo_eavesdrop(JsonBody(req): JsonBody<EavesdropRequest>) -> ApiResult<DetectionReport> {
    if req.qubits > MAX_CHECK_BITS {
        return Err(ApiError::BadRequest(format!("qubits {} above the limit of {MAX_CHECK_BITS}", req.qubits)));
    }
    blocking(move || {
        eavesdrop_demo(req.qubits, req.intercept, &mut Rng::seeded(req.seed.unwrap_or(0))).map_err(|e| e.to_string())
    })
    .await
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::thread;

    #[test]
    fn concurrent_mutations_are_totally_ordered() {
        let store = Arc::new(SessionStore::new(DEFAULT_SESSION_TTL));
        let id = store.create(1, 0).unwrap().lock().unwrap().id.clone();
        let handles: Vec<_> = (0..8)
            .map(|_| {
                let store = store.clone();
                let id = id.clone();
                thread::spawn(move || {
                    for _ in 0..25 {
                        let s = store.get(&id).unwrap();
                        let mut s = s.lock().unwrap();
                        let instr = parse_instruction("x 0", 1).unwrap();
                        let Session { state, rng, .. } = &mut *s;
                        instr.apply(state, rng).unwrap();
                        s.history.push(instr);
                    }
                })
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
        let s = store.get(&id).unwrap();
        let s = s.lock().unwrap();
        assert_eq!(s.history.len(), 200);
        // An even number of X gates leaves |0>.
        assert_eq!(s.state, StateVector64::new_register(1).unwrap());
    }

    #[test]
    fn expiry_is_remembered() {
        let store = SessionStore::new(Duration::from_millis(20));
        let id = store.create(1, 0).unwrap().lock().unwrap().id.clone();
        assert!(store.get(&id).is_ok());
        thread::sleep(Duration::from_millis(40));
        assert!(matches!(store.get(&id), Err(ApiError::Gone(_))));
        assert!(matches!(store.get(&id), Err(ApiError::Gone(_))));
        assert!(matches!(store.get("nope"), Err(ApiError::NotFound(_))));
    }

    #[test]
    fn sweep_evicts_idle_sessions() {
        let store = SessionStore::new(Duration::from_millis(10));
        store.create(1, 0).unwrap();
        store.create(2, 0).unwrap();
        thread::sleep(Duration::from_millis(30));
        assert_eq!(store.sweep(), 2);
        assert_eq!(store.live_count(), 0);
    }

    #[test]
    fn register_bounds() {
        let store = SessionStore::new(DEFAULT_SESSION_TTL);
        assert!(matches!(store.create(0, 0), Err(ApiError::BadRequest(_))));
        assert!(matches!(store.create(MAX_QUBITS + 1, 0), Err(ApiError::BadRequest(_))));
    }

    #[test]
    fn student_ids() {
        assert!(valid_student_id("ada_lovelace-1"));
        assert!(!valid_student_id("../etc/passwd"));
        assert!(!valid_student_id(""));
    }
}
