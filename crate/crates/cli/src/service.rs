//! HTTP keyframe service.
//!
//! `POST /api/v1/keyframes` plans and samples the posted spec synchronously
//! and answers with a keyframe document; invalid specs get 400 and engine
//! precondition failures 422, both as `{"error": code, "detail": text}`.

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use aquanim::render::{emit_keyframes_doc, sample_frames};
use aquanim::Palette;
use axum::body::Bytes;
use axum::extract::{DefaultBodyLimit, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::spec::{compile, parse_spec, DatasetRoot};

/// Largest accepted request body.
pub const BODY_LIMIT: usize = 1 << 20;

#[derive(Debug, Clone)]
pub struct ServiceState {
    pub palette: Palette,
    /// Directory that dataset paths in posted specs are confined to.
    pub data_root: PathBuf,
}

pub fn router(state: ServiceState) -> Router {
    Router::new()
        .route("/api/v1/keyframes", post(keyframes))
        .route("/api/v1/transitions", get(transitions))
        .route("/api/v1/health", get(health))
        .layer(DefaultBodyLimit::max(BODY_LIMIT))
        .with_state(Arc::new(state))
}

fn error_response(err: &CliError) -> Response {
    let status = match err {
        CliError::Plan(_) => StatusCode::UNPROCESSABLE_ENTITY,
        CliError::Output(_) => StatusCode::INTERNAL_SERVER_ERROR,
        _ => StatusCode::BAD_REQUEST,
    };
    (status, Json(json!({"error": err.code(), "detail": err.detail()}))).into_response()
}

/// The keyframe document for a spec body, or the error to report.
pub fn keyframes_for(body: &[u8], state: &ServiceState) -> Result<Vec<u8>, CliError> {
    let doc = parse_spec(body)?;
    let compiled = compile(&doc, &state.palette, &DatasetRoot::Confined(state.data_root.clone()))?;
    let frames = sample_frames(&compiled.script, &compiled.render);
    Ok(emit_keyframes_doc(&frames, &compiled.render))
}

async fn keyframes(State(state): State<Arc<ServiceState>>, body: Bytes) -> Response {
    let result = tokio::task::spawn_blocking(move || keyframes_for(&body, &state)).await;
    match result {
        Ok(Ok(doc)) => ([(header::CONTENT_TYPE, "application/json")], doc).into_response(),
        Ok(Err(e)) => error_response(&e),
        Err(e) => error_response(&CliError::Output(format!("keyframe task failed: {e}"))),
    }
}

/// Supported transition kinds with the chart they apply to and their
/// parameters.
pub fn transition_catalog() -> Value {
    let param = |ty: &str, required: bool, doc: &str| json!({"type": ty, "required": required, "description": doc});
    json!({"transitions": [
        {
            "kind": "data_change",
            "chart": "histogram",
            "parameters": {"new_counts": param("array<number>", true, "per-bin counts on the scale of the old counts")}
        },
        {
            "kind": "rebin",
            "chart": "histogram",
            "parameters": {
                "new_bin_count": param("integer", true, "bin count after the transition"),
                "new_range": param("[number, number]", false, "range after the transition; must equal the current one")
            }
        },
        {
            "kind": "rebin_diffusive",
            "chart": "histogram",
            "parameters": {
                "new_bin_count": param("integer", true, "bin count after the transition"),
                "new_range": param("[number, number]", false, "range after the transition; must equal the current one"),
                "steps": param("integer", true, "number of smoothing iterates"),
                "alpha": param("number", false, "neighbor averaging weight in [0, 1], default 0.5")
            }
        },
        {
            "kind": "proportion_tip",
            "chart": "histogram",
            "parameters": {"selected_bins": param("array<integer>", true, "indices of the selected bins")}
        },
        {
            "kind": "vertical_reorder",
            "chart": "stacked_bars",
            "parameters": {"level": param("string", true, "level moved to the bottom of every bar")}
        },
        {
            "kind": "horizontal_reorder",
            "chart": "stacked_bars",
            "parameters": {
                "moving_category": param("string", true, "category whose bar moves"),
                "target_position": param("integer", true, "final index of the bar")
            }
        },
        {
            "kind": "fluctuation_to_mosaic",
            "chart": "confusion_matrix",
            "parameters": {"grid_cell": param("number", false, "grid slot size, at least 1, default 1.25")}
        }
    ]})
}

async fn transitions() -> Json<Value> {
    Json(transition_catalog())
}

async fn health() -> Json<Value> {
    Json(json!({"status": "ok"}))
}

/// Serves until the process is stopped.
pub fn serve(bind: &str, port: u16, state: ServiceState) -> std::io::Result<()> {
    let addr: SocketAddr = format!("{bind}:{port}")
        .parse()
        .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidInput, format!("{bind}:{port}: {e}")))?;
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(async move {
        let listener = tokio::net::TcpListener::bind(addr).await?;
        eprintln!("listening on http://{}", listener.local_addr()?);
        axum::serve(listener, router(state)).await
    })
}
