//! Stateless HTTP front end for the design engine.
//!
//! Request and response bodies are the same documents the command line
//! reads and writes. The catalog is loaded once and shared read-only.

use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::State;
use axum::http::{header, HeaderValue, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde::Deserialize;
use serde_json::{json, Value};
use tower_http::cors::{AllowOrigin, CorsLayer};
use uwcam_core::diagnostics::Diagnostic;
use uwcam_core::engine::{evaluate, sweep, Metric, SweepAxis, SweepSpec, MAX_SWEEP_CELLS};
use uwcam_core::presets::{validate_profile, Catalog, ProfileKind};
use uwcam_core::report;
use uwcam_core::scenario::{parse_scenario, resolve, scenario_schema, ScenarioDoc, SCHEMA_VERSION};

pub const SCHEMA_HEADER: &str = "x-uwcam-schema";
pub const DEFAULT_BIND: &str = "127.0.0.1";
pub const DEFAULT_PORT: u16 = 8765;

/// Origins allowed by default: the UI dev server on localhost.
pub const DEFAULT_CORS_ORIGINS: [&str; 2] = ["http://localhost:5173", "http://127.0.0.1:5173"];

#[derive(Clone)]
struct AppState {
    catalog: Arc<Catalog>,
}

/// Builds the application. `cors_origins` lists the browser origins allowed
/// to call the API.
pub fn router(catalog: Arc<Catalog>, cors_origins: &[String]) -> Router {
    let origins: Vec<HeaderValue> = cors_origins.iter().filter_map(|o| o.parse().ok()).collect();
    let cors = CorsLayer::new()
        .allow_origin(AllowOrigin::list(origins))
        .allow_methods([Method::GET, Method::POST])
        .allow_headers([header::CONTENT_TYPE])
        .expose_headers([header::HeaderName::from_static(SCHEMA_HEADER)]);
    Router::new()
        .route("/api/presets", get(presets))
        .route("/api/schema", get(schema))
        .route("/api/evaluate", post(evaluate_handler))
        .route("/api/sweep", post(sweep_handler))
        .route("/api/validate", post(validate_handler))
        .fallback(not_found)
        .layer(axum::middleware::map_response(stamp_schema))
        .layer(cors)
        .with_state(AppState { catalog })
}

async fn stamp_schema(mut response: Response) -> Response {
    response
        .headers_mut()
        .insert(SCHEMA_HEADER, HeaderValue::from(SCHEMA_VERSION));
    response
}

fn json_response(status: StatusCode, value: &Value) -> Response {
    (
        status,
        [(header::CONTENT_TYPE, "application/json")],
        report::to_json_string(value),
    )
        .into_response()
}

fn diagnostics_response(status: StatusCode, diags: &[Diagnostic]) -> Response {
    json_response(status, &report::diagnostics_document(diags))
}

/// 400 for unparseable JSON, 422 for well-formed but invalid content.
fn rejection(diags: &[Diagnostic]) -> Response {
    let malformed = diags.iter().any(|d| d.code == "malformed-json");
    let status = if malformed {
        StatusCode::BAD_REQUEST
    } else {
        StatusCode::UNPROCESSABLE_ENTITY
    };
    diagnostics_response(status, diags)
}

fn malformed(message: impl Into<String>) -> Response {
    diagnostics_response(StatusCode::BAD_REQUEST, &[Diagnostic::error("malformed-json", message)])
}

async fn not_found() -> Response {
    diagnostics_response(
        StatusCode::NOT_FOUND,
        &[Diagnostic::error("not-found", "no such endpoint")],
    )
}

async fn presets(State(state): State<AppState>) -> Response {
    json_response(StatusCode::OK, &report::presets_document(&state.catalog))
}

async fn schema() -> Response {
    let metrics: Vec<&str> = Metric::ALL.iter().map(|m| m.name()).collect();
    json_response(
        StatusCode::OK,
        &json!({
            "schema_version": SCHEMA_VERSION,
            "kind": "schema",
            "scenario": scenario_schema(),
            "metrics": metrics,
            "max_sweep_cells": MAX_SWEEP_CELLS,
        }),
    )
}

async fn evaluate_handler(State(state): State<AppState>, body: Bytes) -> Response {
    let Ok(text) = std::str::from_utf8(&body) else {
        return malformed("body is not UTF-8");
    };
    let doc = match parse_scenario(text) {
        Ok(d) => d,
        Err(diags) => return rejection(&diags),
    };
    let sc = match resolve(&doc, &state.catalog) {
        Ok(s) => s,
        Err(diags) => return rejection(&diags),
    };
    match evaluate(&sc) {
        Ok(r) => json_response(StatusCode::OK, &report::evaluation_document(doc.name.as_deref(), &r)),
        Err(e) => rejection(&[e.to_diagnostic()]),
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepRequest {
    scenario: Value,
    axes: Vec<SweepAxis>,
    metrics: Vec<String>,
}

async fn sweep_handler(State(state): State<AppState>, body: Bytes) -> Response {
    let request: SweepRequest = match serde_json::from_slice(&body) {
        Ok(r) => r,
        Err(e) if e.is_data() => {
            return rejection(&[Diagnostic::error("invalid-field", e.to_string())]);
        }
        Err(e) => return malformed(e.to_string()),
    };
    let doc: ScenarioDoc = match parse_scenario(&request.scenario.to_string()) {
        Ok(d) => d,
        Err(diags) => return rejection(&diags),
    };
    let mut errors = Vec::new();
    let metrics: Vec<Metric> = request
        .metrics
        .iter()
        .filter_map(|m| {
            let parsed = Metric::parse(m);
            if parsed.is_none() {
                errors.push(Diagnostic::error("unknown-metric", format!("unknown metric `{m}`")));
            }
            parsed
        })
        .collect();
    if !errors.is_empty() {
        return rejection(&errors);
    }
    let spec = SweepSpec {
        axes: request.axes,
        metrics,
    };
    let cells = spec.cell_count();
    if cells > MAX_SWEEP_CELLS {
        return diagnostics_response(
            StatusCode::PAYLOAD_TOO_LARGE,
            &[Diagnostic::error(
                "sweep-too-large",
                format!("{cells} cells requested; the limit is {MAX_SWEEP_CELLS}"),
            )],
        );
    }
    if let Err(diags) = spec.validate(&doc) {
        return rejection(&diags);
    }
    let catalog = state.catalog.clone();
    let result = tokio::task::spawn_blocking(move || sweep(&doc, &catalog, &spec)).await;
    match result {
        Ok(Ok(table)) => json_response(StatusCode::OK, &report::sweep_document(&table)),
        Ok(Err(diags)) => rejection(&diags),
        Err(e) => diagnostics_response(
            StatusCode::INTERNAL_SERVER_ERROR,
            &[Diagnostic::error("internal", e.to_string())],
        ),
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileUpload {
    kind: ProfileKind,
    content: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ValidateRequest {
    #[serde(default)]
    scenario: Option<Value>,
    #[serde(default)]
    profile: Option<ProfileUpload>,
}

/// Always 200 for a well-formed request; `valid` says whether the content passed.
async fn validate_handler(State(state): State<AppState>, body: Bytes) -> Response {
    let request: ValidateRequest = match serde_json::from_slice(&body) {
        Ok(r) => r,
        Err(e) if e.is_data() => return rejection(&[Diagnostic::error("invalid-field", e.to_string())]),
        Err(e) => return malformed(e.to_string()),
    };
    let diags = match (request.scenario, request.profile) {
        (Some(sc), None) => match parse_scenario(&sc.to_string()).and_then(|d| resolve(&d, &state.catalog)) {
            Ok(_) => Vec::new(),
            Err(d) => d,
        },
        (None, Some(p)) => {
            let lookup = |f: &str| state.catalog.qe_file(f);
            match validate_profile(p.kind, p.content.as_bytes(), &lookup) {
                Ok(v) => v.diagnostics,
                Err(d) => d,
            }
        }
        _ => {
            return rejection(&[Diagnostic::error(
                "invalid-request",
                "give exactly one of `scenario` or `profile`",
            )])
        }
    };
    diagnostics_response(StatusCode::OK, &diags)
}
