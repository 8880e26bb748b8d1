//! JSON HTTP API over in-memory sessions.

use std::collections::{BTreeSet, HashMap};
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use ontoforge_core::gateway::GatewayError;
use ontoforge_core::store::{load_document, save_document, Ontology, StagedChange, StoreError};
use ontoforge_core::translator::TranslateError;
use serde::{Deserialize, Serialize};
use serde_json::json;
use tower_http::services::ServeDir;

use crate::service::{
    run_backend, BackendChoice, LlmBackend, ServiceError, Session, SignatureView,
};

#[derive(Default)]
pub struct AppState {
    sessions: Mutex<HashMap<String, Arc<Mutex<Session>>>>,
    llm: Option<LlmBackend>,
}

impl AppState {
    pub fn new(llm: Option<LlmBackend>) -> Arc<Self> {
        Arc::new(AppState {
            sessions: Mutex::default(),
            llm,
        })
    }

    fn session(&self, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
        self.sessions
            .lock()
            .unwrap()
            .get(id)
            .cloned()
            .ok_or_else(|| ServiceError::UnknownSession(id.to_string()).into())
    }
}

pub enum ApiError {
    Service(ServiceError),
    BadRequest(String),
}

impl From<ServiceError> for ApiError {
    fn from(e: ServiceError) -> Self {
        ApiError::Service(e)
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> Self {
        ApiError::BadRequest(e.body_text())
    }
}

fn status_of(e: &ServiceError) -> StatusCode {
    match e {
        ServiceError::UnknownSession(_) | ServiceError::UnknownStage(_) => StatusCode::NOT_FOUND,
        ServiceError::Translate(TranslateError::EmptySentence)
        | ServiceError::Gateway(GatewayError::EmptySentence) => StatusCode::BAD_REQUEST,
        ServiceError::Translate(_) => StatusCode::UNPROCESSABLE_ENTITY,
        ServiceError::Store(StoreError::StaleStage { .. }) => StatusCode::CONFLICT,
        ServiceError::Store(_) => StatusCode::UNPROCESSABLE_ENTITY,
        ServiceError::BadOntology(_) => StatusCode::BAD_REQUEST,
        ServiceError::LlmUnavailable => StatusCode::SERVICE_UNAVAILABLE,
        ServiceError::Gateway(_) => StatusCode::BAD_GATEWAY,
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (status, code, message) = match self {
            ApiError::Service(e) => (status_of(&e), e.code(), e.to_string()),
            ApiError::BadRequest(m) => (StatusCode::BAD_REQUEST, "bad_request", m),
        };
        (
            status,
            Json(json!({ "error": { "code": code, "message": message } })),
        )
            .into_response()
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SessionCreated {
    pub id: String,
    pub revision: u64,
    pub axioms: usize,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TranslateRequest {
    pub sentence: String,
    #[serde(default)]
    pub backend: BackendChoice,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct DecisionRequest {
    pub accept: Vec<usize>,
}

/// Body is an optional `.ofn` document; an empty body starts an empty ontology.
async fn create_session(
    State(state): State<Arc<AppState>>,
    body: String,
) -> Result<Response, ApiError> {
    let ontology = if body.trim().is_empty() {
        Ontology::new()
    } else {
        load_document(&body).map_err(ServiceError::BadOntology)?
    };
    let session = Session::new(ontology);
    let created = SessionCreated {
        id: session.id.clone(),
        revision: session.ontology.revision(),
        axioms: session.ontology.len(),
    };
    state
        .sessions
        .lock()
        .unwrap()
        .insert(session.id.clone(), Arc::new(Mutex::new(session)));
    Ok((StatusCode::CREATED, Json(created)).into_response())
}

async fn get_ontology(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
) -> Result<Response, ApiError> {
    let session = state.session(&id)?;
    let text = save_document(&session.lock().unwrap().ontology);
    Ok(([(header::CONTENT_TYPE, "text/plain; charset=utf-8")], text).into_response())
}

async fn get_signature(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
) -> Result<Json<SignatureView>, ApiError> {
    let session = state.session(&id)?;
    let view = SignatureView::of(&session.lock().unwrap().ontology);
    Ok(Json(view))
}

async fn list_stages(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
) -> Result<Json<Vec<StagedChange>>, ApiError> {
    let session = state.session(&id)?;
    let mut stages: Vec<StagedChange> = session.lock().unwrap().pending.values().cloned().collect();
    stages.sort_by(|a, b| (a.created_at, &a.id).cmp(&(b.created_at, &b.id)));
    Ok(Json(stages))
}

async fn translate(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    body: Result<Json<TranslateRequest>, JsonRejection>,
) -> Result<Response, ApiError> {
    let Json(req) = body?;
    let session = state.session(&id)?;
    let snapshot = session.lock().unwrap().ontology.clone();
    let worker_state = state.clone();
    let translation = tokio::task::spawn_blocking(move || {
        run_backend(
            &req.sentence,
            req.backend,
            &snapshot,
            worker_state.llm.as_ref(),
        )
    })
    .await
    .expect("translation task panicked")?;
    let staged = session.lock().unwrap().stage_translation(translation);
    Ok((StatusCode::CREATED, Json(staged)).into_response())
}

async fn decide(
    State(state): State<Arc<AppState>>,
    Path((id, stage_id)): Path<(String, String)>,
    body: Result<Json<DecisionRequest>, JsonRejection>,
) -> Result<Response, ApiError> {
    let Json(req) = body?;
    let accept: BTreeSet<usize> = req.accept.into_iter().collect();
    let session = state.session(&id)?;
    let report = session
        .lock()
        .unwrap()
        .handle_decision(&stage_id, &accept)?;
    Ok(Json(report).into_response())
}

pub fn router(state: Arc<AppState>, static_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}/ontology", get(get_ontology))
        .route("/sessions/{id}/signature", get(get_signature))
        .route("/sessions/{id}/stages", get(list_stages))
        .route("/sessions/{id}/translate", post(translate))
        .route("/sessions/{id}/stages/{sid}/decision", post(decide))
        .with_state(state);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

/// Serves the API until interrupted.
pub async fn serve(
    addr: std::net::SocketAddr,
    state: Arc<AppState>,
    static_dir: Option<PathBuf>,
) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(state, static_dir))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
