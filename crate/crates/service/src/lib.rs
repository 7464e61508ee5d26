//! In-memory HTTP+JSON sessions for mutating a framed quiver one step at a
//! time. Each session keeps its current state and an undo stack; requests
//! on one session are serialized, distinct sessions run in parallel.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::sync::{Arc, Mutex, RwLock};

use axum::extract::{Path, State};
use axum::http::{HeaderValue, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use greenseq_core::bigjson;
use greenseq_core::{FramedState, Quiver};
use serde::Deserialize;
use serde_json::{json, Value};
use tower_http::cors::{AllowOrigin, CorsLayer};

pub struct Session {
    origin: Quiver,
    state: FramedState,
    undo: Vec<FramedState>,
}

impl Session {
    pub fn new(origin: Quiver) -> Self {
        let state = FramedState::new(&origin);
        Session {
            origin,
            state,
            undo: Vec::new(),
        }
    }

    pub fn state(&self) -> &FramedState {
        &self.state
    }

    pub fn mutate(&mut self, vertex: usize) -> greenseq_core::Result<()> {
        let next = self.state.mutate(vertex)?;
        self.undo.push(std::mem::replace(&mut self.state, next));
        Ok(())
    }

    /// Returns false when there is nothing to undo.
    pub fn undo(&mut self) -> bool {
        match self.undo.pop() {
            Some(prev) => {
                self.state = prev;
                true
            }
            None => false,
        }
    }

    pub fn view(&self) -> Value {
        view(&self.state)
    }

    pub fn export(&self) -> Value {
        json!({
            "quiver": self.origin.to_json(),
            "sequence": self.state.sequence().to_string(),
        })
    }
}

/// The JSON view of a framed state: matrices, per-vertex colors, history,
/// and completion status.
pub fn view(state: &FramedState) -> Value {
    let vertices: Vec<Value> = (1..=state.n())
        .map(|i| {
            let c = state.c_vector(i).expect("mutation keeps c-vectors sign-coherent");
            json!({
                "id": i,
                "green": c.is_green(),
                "c_vector": c.entries().iter().map(bigjson::to_value).collect::<Vec<_>>(),
            })
        })
        .collect();
    let history: Vec<Value> = state
        .history()
        .iter()
        .map(|s| {
            json!({
                "vertex": s.vertex,
                "green": s.is_green(),
                "c_vector": s.c_vector.entries().iter().map(bigjson::to_value).collect::<Vec<_>>(),
            })
        })
        .collect();
    let all_red = state.is_all_red().unwrap_or(false);
    let permutation = if all_red {
        state.extract_permutation().ok()
    } else {
        None
    };
    let mgs_complete = all_red && state.history().iter().all(|s| s.is_green());
    let last_move = state.history().last().map(|s| json!({ "vertex": s.vertex, "green": s.is_green() }));
    json!({
        "principal": state.principal().to_json(),
        "cmat": state.cmat().to_json(),
        "vertices": vertices,
        "history": history,
        "sequence": state.sequence().to_string(),
        "all_red": all_red,
        "mgs_complete": mgs_complete,
        "permutation": permutation.as_ref().map(|p| p.image().to_vec()),
        "permutation_cycles": permutation.as_ref().map(|p| p.cycle_notation()),
        "last_move": last_move,
    })
}

#[derive(Default)]
pub struct Sessions {
    map: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
}

impl Sessions {
    fn insert(&self, session: Session) -> String {
        let id = format!("{:032x}", rand::random::<u128>());
        self.map
            .write()
            .unwrap()
            .insert(id.clone(), Arc::new(Mutex::new(session)));
        id
    }

    fn get(&self, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
        self.map
            .read()
            .unwrap()
            .get(id)
            .cloned()
            .ok_or(ApiError::NotFound)
    }

    fn remove(&self, id: &str) -> bool {
        self.map.write().unwrap().remove(id).is_some()
    }

    pub fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug)]
enum ApiError {
    BadRequest(String),
    NotFound,
    Conflict(&'static str),
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (status, msg) = match self {
            ApiError::BadRequest(m) => (StatusCode::BAD_REQUEST, m),
            ApiError::NotFound => (StatusCode::NOT_FOUND, "no such session".to_string()),
            ApiError::Conflict(m) => (StatusCode::CONFLICT, m.to_string()),
        };
        (status, Json(json!({ "error": msg }))).into_response()
    }
}

impl From<greenseq_core::Error> for ApiError {
    fn from(e: greenseq_core::Error) -> Self {
        ApiError::BadRequest(e.to_string())
    }
}

type Shared = Arc<Sessions>;

/// Accepts `{"quiver": {...}}`, `{"preset": "A2"}`, or a bare quiver
/// document.
fn quiver_from_body(body: &Value) -> Result<Quiver, ApiError> {
    if let Some(name) = body.get("preset").and_then(Value::as_str) {
        return Quiver::preset(name).ok_or_else(|| ApiError::BadRequest(format!("unknown preset {name:?}")));
    }
    Ok(Quiver::from_json(body)?)
}

async fn create(State(sessions): State<Shared>, Json(body): Json<Value>) -> Result<impl IntoResponse, ApiError> {
    let session = Session::new(quiver_from_body(&body)?);
    let view = session.view();
    let id = sessions.insert(session);
    Ok((StatusCode::CREATED, Json(json!({ "id": id, "view": view }))))
}

async fn show(State(sessions): State<Shared>, Path(id): Path<String>) -> Result<Json<Value>, ApiError> {
    let session = sessions.get(&id)?;
    let view = session.lock().unwrap().view();
    Ok(Json(view))
}

#[derive(Deserialize)]
struct MutateBody {
    vertex: usize,
}

async fn mutate(
    State(sessions): State<Shared>,
    Path(id): Path<String>,
    Json(body): Json<MutateBody>,
) -> Result<Json<Value>, ApiError> {
    let session = sessions.get(&id)?;
    let mut session = session.lock().unwrap();
    session.mutate(body.vertex)?;
    Ok(Json(session.view()))
}

async fn undo(State(sessions): State<Shared>, Path(id): Path<String>) -> Result<Json<Value>, ApiError> {
    let session = sessions.get(&id)?;
    let mut session = session.lock().unwrap();
    if !session.undo() {
        return Err(ApiError::Conflict("nothing to undo"));
    }
    Ok(Json(session.view()))
}

async fn export(State(sessions): State<Shared>, Path(id): Path<String>) -> Result<Json<Value>, ApiError> {
    let session = sessions.get(&id)?;
    let export = session.lock().unwrap().export();
    Ok(Json(export))
}

async fn delete(State(sessions): State<Shared>, Path(id): Path<String>) -> Result<StatusCode, ApiError> {
    if sessions.remove(&id) {
        Ok(StatusCode::NO_CONTENT)
    } else {
        Err(ApiError::NotFound)
    }
}

fn is_local_origin(origin: &HeaderValue) -> bool {
    let Ok(origin) = origin.to_str() else {
        return false;
    };
    let host = origin
        .strip_prefix("http://")
        .or_else(|| origin.strip_prefix("https://"))
        .unwrap_or("");
    let host = host.rsplit_once(':').map_or(host, |(h, port)| {
        if port.chars().all(|c| c.is_ascii_digit()) {
            h
        } else {
            host
        }
    });
    matches!(host, "localhost" | "127.0.0.1" | "[::1]")
}

pub fn router(sessions: Shared) -> Router {
    let cors = CorsLayer::new()
        .allow_origin(AllowOrigin::predicate(|origin, _| is_local_origin(origin)))
        .allow_methods([Method::GET, Method::POST, Method::DELETE])
        .allow_headers([axum::http::header::CONTENT_TYPE]);
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/:id", get(show).delete(delete))
        .route("/sessions/:id/mutate", post(mutate))
        .route("/sessions/:id/undo", post(undo))
        .route("/sessions/:id/export", get(export))
        .layer(cors)
        .with_state(sessions)
}

pub fn app() -> Router {
    router(Arc::new(Sessions::default()))
}

/// Serves the session API on `addr` until the process is stopped.
pub async fn serve(addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, app()).await
}
