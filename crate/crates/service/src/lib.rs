//! HTTP/JSON facade over the greenseq engine.
//!
//! Sessions hold a mutation history over a framed quiver and are persisted
//! as `<data_dir>/<id>.json` (initial quiver and history only). The
//! stateless `/explore` and `/green-seqs` endpoints run bounded searches.
//! All vertex indices on the wire are 1-based.

mod error;
mod session;

use std::collections::HashMap;
use std::fs;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::{Arc, RwLock};

use axum::extract::{Path, State};
use axum::http::{HeaderValue, StatusCode};
use axum::response::IntoResponse;
use axum::routing::{get, post};
use axum::{Json, Router};
use greenseq_core::exchange::{explore, maximal_green_sequences, ExploreLimits, GreenSearchLimits};
use greenseq_core::formats::{
    graph_to_json, green_report_to_json, json_to_int, parse_json, quiver_from_json, to_canonical_string,
    write_atomic,
};
use greenseq_core::quiver::CANONICAL_MAX_VERTICES;
use greenseq_core::ExtMatrix;
use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use tokio::sync::Mutex;
use tower_http::cors::{AllowOrigin, Any, CorsLayer};

pub use error::ApiError;
pub use session::{Session, SYMBOLIC_MAX_HISTORY, SYMBOLIC_MAX_RANK, SYMBOLIC_MAX_TERMS};

/// Upper bounds on what a stateless request may ask for; larger requests
/// are answered with 422.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ServiceLimits {
    pub max_vertices: usize,
    pub max_depth: usize,
    pub max_len: usize,
    pub max_entry: BigInt,
}

impl Default for ServiceLimits {
    fn default() -> Self {
        ServiceLimits {
            max_vertices: 20_000,
            max_depth: 1_000,
            max_len: 64,
            max_entry: BigInt::from(1_000_000_000u64),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ServiceConfig {
    /// Where sessions are persisted; `None` keeps them in memory only.
    pub data_dir: Option<PathBuf>,
    /// Origin allowed by CORS; `None` allows any origin.
    pub cors_origin: Option<String>,
    pub limits: ServiceLimits,
}

type SessionTable = HashMap<String, Arc<Mutex<Session>>>;

#[derive(Clone)]
pub struct AppState {
    sessions: Arc<RwLock<SessionTable>>,
    config: Arc<ServiceConfig>,
}

impl AppState {
    /// Creates the state, reloading every session found in the data directory.
    pub fn new(config: ServiceConfig) -> std::io::Result<Self> {
        let mut table = SessionTable::new();
        if let Some(dir) = &config.data_dir {
            fs::create_dir_all(dir)?;
            for entry in fs::read_dir(dir)? {
                let path = entry?.path();
                if path.extension().and_then(|e| e.to_str()) != Some("json") {
                    continue;
                }
                let Some(id) = path.file_stem().and_then(|s| s.to_str()).map(str::to_string) else {
                    continue;
                };
                let text = fs::read_to_string(&path)?;
                let session = parse_json(&text)
                    .map_err(|e| e.to_string())
                    .and_then(|v| Session::from_file_json(id.clone(), &v).map_err(|e| e.to_string()))
                    .map_err(|e| {
                        std::io::Error::new(std::io::ErrorKind::InvalidData, format!("{}: {e}", path.display()))
                    })?;
                table.insert(id, Arc::new(Mutex::new(session)));
            }
        }
        Ok(AppState {
            sessions: Arc::new(RwLock::new(table)),
            config: Arc::new(config),
        })
    }

    pub fn session_count(&self) -> usize {
        self.sessions.read().expect("session table lock").len()
    }

    fn lookup(&self, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
        self.sessions
            .read()
            .expect("session table lock")
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::NotFound(id.to_string()))
    }

    fn persist(&self, s: &Session) -> Result<(), ApiError> {
        if let Some(dir) = &self.config.data_dir {
            write_atomic(&dir.join(format!("{}.json", s.id())), &to_canonical_string(&s.to_file_json()))
                .map_err(|e| ApiError::Internal(format!("persisting session: {e}")))?;
        }
        Ok(())
    }
}

pub fn router(state: AppState) -> Router {
    let cors = match &state.config.cors_origin {
        Some(origin) => match HeaderValue::from_str(origin) {
            Ok(v) => CorsLayer::new().allow_origin(AllowOrigin::exact(v)),
            Err(_) => CorsLayer::new(),
        },
        None => CorsLayer::new().allow_origin(Any),
    }
    .allow_methods(Any)
    .allow_headers(Any);
    Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/mutate", post(mutate_session))
        .route("/sessions/{id}/undo", post(undo_session))
        .route("/explore", post(explore_handler))
        .route("/green-seqs", post(green_seqs_handler))
        .layer(cors)
        .with_state(state)
}

/// Binds `addr` and serves until the process is stopped.
pub async fn serve(addr: SocketAddr, config: ServiceConfig) -> std::io::Result<()> {
    let state = AppState::new(config)?;
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(state)).await
}

fn body_object(body: &str) -> Result<Map<String, Value>, ApiError> {
    let text = if body.trim().is_empty() { "{}" } else { body };
    match parse_json(text).map_err(|e| ApiError::BadRequest(e.to_string()))? {
        Value::Object(map) => Ok(map),
        _ => Err(ApiError::BadRequest("/: expected an object".into())),
    }
}

fn body_quiver(map: &Map<String, Value>) -> Result<ExtMatrix, ApiError> {
    let v = map
        .get("quiver")
        .ok_or_else(|| ApiError::BadRequest("/quiver: missing field".into()))?;
    quiver_from_json(v, "/quiver").map_err(|e| ApiError::BadRequest(e.to_string()))
}

/// Stateless searches take quivers without frozen vertices, small enough
/// for canonical labelling.
fn search_quiver(map: &Map<String, Value>) -> Result<ExtMatrix, ApiError> {
    let q = body_quiver(map)?;
    if q.m() != 0 {
        return Err(ApiError::BadRequest(format!(
            "/quiver: expected a quiver without frozen vertices, found m = {}",
            q.m()
        )));
    }
    if q.n() == 0 {
        return Err(ApiError::BadRequest("/quiver: quiver has no vertices".into()));
    }
    if q.n() > CANONICAL_MAX_VERTICES {
        return Err(ApiError::LimitExceeded(format!(
            "/quiver: {} vertices exceeds the limit of {CANONICAL_MAX_VERTICES}",
            q.n()
        )));
    }
    Ok(q)
}

/// Positive integer limit `name` under `/limits`, checked against `cap`.
fn limit(limits: Option<&Value>, name: &str, default: BigInt, cap: &BigInt) -> Result<BigInt, ApiError> {
    let field = format!("/limits/{name}");
    let value = match limits.and_then(|l| l.get(name)) {
        Some(v) => json_to_int(v, &field).map_err(|e| ApiError::BadRequest(e.to_string()))?,
        None => default,
    };
    if value < BigInt::from(1) {
        return Err(ApiError::BadRequest(format!("{field}: limits must be positive")));
    }
    if &value > cap {
        return Err(ApiError::LimitExceeded(format!("{field}: {value} exceeds the service limit {cap}")));
    }
    Ok(value)
}

fn limits_object(map: &Map<String, Value>, allowed: &[&str]) -> Result<Option<Value>, ApiError> {
    match map.get("limits") {
        None | Some(Value::Null) => Ok(None),
        Some(Value::Object(l)) => {
            if let Some(k) = l.keys().find(|k| !allowed.contains(&k.as_str())) {
                return Err(ApiError::BadRequest(format!("/limits/{k}: unknown field")));
            }
            Ok(Some(Value::Object(l.clone())))
        }
        Some(_) => Err(ApiError::BadRequest("/limits: expected an object".into())),
    }
}

fn to_usize(x: BigInt) -> usize {
    usize::try_from(x).unwrap_or(usize::MAX)
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> T + Send + 'static) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::Internal(e.to_string()))
}

async fn create_session(State(state): State<AppState>, body: String) -> Result<impl IntoResponse, ApiError> {
    let map = body_object(&body)?;
    let quiver = body_quiver(&map)?;
    let id = uuid::Uuid::new_v4().simple().to_string();
    let session = Session::new(id.clone(), quiver)?;
    state.persist(&session)?;
    let view = session.state_json();
    state
        .sessions
        .write()
        .expect("session table lock")
        .insert(id.clone(), Arc::new(Mutex::new(session)));
    Ok((StatusCode::CREATED, Json(json!({"id": id, "state": view}))))
}

async fn get_session(State(state): State<AppState>, Path(id): Path<String>) -> Result<Json<Value>, ApiError> {
    let session = state.lookup(&id)?;
    let guard = session.lock().await;
    Ok(Json(guard.state_json()))
}

async fn mutate_session(
    State(state): State<AppState>,
    Path(id): Path<String>,
    body: String,
) -> Result<Json<Value>, ApiError> {
    let session = state.lookup(&id)?;
    let map = body_object(&body)?;
    let k = map
        .get("k")
        .ok_or_else(|| ApiError::BadRequest("/k: missing field".into()))?
        .as_u64()
        .filter(|&k| k >= 1)
        .ok_or_else(|| ApiError::BadRequest("/k: expected a 1-based vertex index".into()))?;
    let mut guard = session.lock_owned().await;
    let n = guard.rank();
    if k as usize > n {
        return Err(ApiError::BadRequest(format!("/k: vertex {k} outside 1..={n}")));
    }
    // Seed mutation can be expensive; keep it off the async workers. The
    // owned guard keeps the session locked for the duration.
    let guard = blocking(move || guard.mutate(k as usize - 1).map(|_| guard)).await??;
    state.persist(&guard)?;
    Ok(Json(json!({"state": guard.state_json()})))
}

async fn undo_session(State(state): State<AppState>, Path(id): Path<String>) -> Result<Json<Value>, ApiError> {
    let session = state.lookup(&id)?;
    let mut guard = session.lock().await;
    guard.undo()?;
    state.persist(&guard)?;
    Ok(Json(json!({"state": guard.state_json()})))
}

async fn explore_handler(State(state): State<AppState>, body: String) -> Result<Json<Value>, ApiError> {
    let map = body_object(&body)?;
    let q = search_quiver(&map)?;
    let caps = &state.config.limits;
    let l = limits_object(&map, &["max_vertices", "max_depth"])?;
    let limits = ExploreLimits {
        max_vertices: to_usize(limit(
            l.as_ref(),
            "max_vertices",
            BigInt::from(ExploreLimits::default().max_vertices.min(caps.max_vertices)),
            &BigInt::from(caps.max_vertices),
        )?),
        max_depth: to_usize(limit(
            l.as_ref(),
            "max_depth",
            BigInt::from(ExploreLimits::default().max_depth.min(caps.max_depth)),
            &BigInt::from(caps.max_depth),
        )?),
    };
    let graph = blocking(move || explore(&q, limits)).await?.map_err(|e| ApiError::BadRequest(e.to_string()))?;
    Ok(Json(graph_to_json(&graph)))
}

async fn green_seqs_handler(State(state): State<AppState>, body: String) -> Result<Json<Value>, ApiError> {
    let map = body_object(&body)?;
    let q = search_quiver(&map)?;
    let caps = &state.config.limits;
    let l = limits_object(&map, &["max_len", "max_entry"])?;
    let defaults = GreenSearchLimits::default();
    let limits = GreenSearchLimits {
        max_len: to_usize(limit(
            l.as_ref(),
            "max_len",
            BigInt::from(defaults.max_len.min(caps.max_len)),
            &BigInt::from(caps.max_len),
        )?),
        max_entry: limit(
            l.as_ref(),
            "max_entry",
            defaults.max_entry.min(caps.max_entry.clone()),
            &caps.max_entry,
        )?,
    };
    let report = blocking(move || maximal_green_sequences(&q, &limits))
        .await?
        .map_err(|e| ApiError::BadRequest(e.to_string()))?;
    Ok(Json(green_report_to_json(&report)))
}
