use std::future::Future;
use std::net::SocketAddr;
use std::sync::Arc;

use axum::extract::{Path, Query, State};
use axum::http::header::{ACCEPT, CONTENT_TYPE};
use axum::http::{HeaderMap, HeaderValue, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::Router;
use concordia_core::{ConcordanceIndex, MatchMode, QueryError};
use serde::{Deserialize, Serialize};
use tokio::net::TcpListener;
use tower_http::cors::{AllowOrigin, CorsLayer};

use crate::config::{ConfigError, ServiceConfig};
use crate::html;
use crate::query::{
    lemma_listing, letters, run_query, ContextForm, QueryKind, QueryRequest, QueryResponse,
};
use crate::site::{encode_segment, entry_html, file_name, letter_html, SiteOptions};

/// Shared read-only state; cloning is cheap.
#[derive(Clone)]
pub struct AppState {
    index: Arc<ConcordanceIndex>,
    site: Arc<SiteOptions>,
}

impl AppState {
    pub fn new(index: ConcordanceIndex, default_k: usize) -> Self {
        Self {
            index: Arc::new(index),
            site: Arc::new(SiteOptions {
                api_base: String::new(),
                default_k,
            }),
        }
    }

    pub fn index(&self) -> &ConcordanceIndex {
        &self.index
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Html,
}

/// `format=json|html` wins; otherwise the first of `text/html` or
/// `application/json` in `Accept`; JSON by default.
fn negotiate(param: Option<&str>, headers: &HeaderMap) -> Result<Format, ApiError> {
    match param {
        Some("json") => return Ok(Format::Json),
        Some("html") => return Ok(Format::Html),
        Some(other) => {
            return Err(ApiError::bad_request(
                Format::Json,
                format!("unknown format `{other}` (expected json or html)"),
            ))
        }
        None => {}
    }
    let accept = headers.get(ACCEPT).and_then(|v| v.to_str().ok()).unwrap_or("");
    for item in accept.split(',') {
        match item.split(';').next().unwrap_or("").trim() {
            "text/html" | "application/xhtml+xml" => return Ok(Format::Html),
            "application/json" => return Ok(Format::Json),
            _ => {}
        }
    }
    Ok(Format::Json)
}

#[derive(Debug, Serialize)]
struct ErrorBody<'a> {
    status: u16,
    error: &'a str,
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    message: String,
    format: Format,
}

impl ApiError {
    fn bad_request(format: Format, message: impl Into<String>) -> Self {
        Self {
            status: StatusCode::BAD_REQUEST,
            message: message.into(),
            format,
        }
    }

    fn from_query(format: Format, err: QueryError) -> Self {
        let status = match err {
            QueryError::EmptyQuery => StatusCode::BAD_REQUEST,
            QueryError::UnknownLetter(_) => StatusCode::NOT_FOUND,
        };
        Self {
            status,
            message: err.to_string(),
            format,
        }
    }

    fn not_found(format: Format) -> Self {
        Self {
            status: StatusCode::NOT_FOUND,
            message: "not found".into(),
            format,
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = match self.format {
            Format::Json => render(
                Format::Json,
                &ErrorBody {
                    status: self.status.as_u16(),
                    error: &self.message,
                },
                |_| String::new(),
            ),
            Format::Html => render(Format::Html, &(), |_| html::error_page(self.status.as_u16(), &self.message)),
        };
        (self.status, body).into_response()
    }
}

const JSON: &str = "application/json";
const HTML: &str = "text/html; charset=utf-8";

fn render<T: Serialize>(format: Format, value: &T, page: impl FnOnce(&T) -> String) -> Response {
    match format {
        Format::Json => {
            let body = serde_json::to_string(value).expect("response types serialize");
            ([(CONTENT_TYPE, JSON)], body).into_response()
        }
        Format::Html => ([(CONTENT_TYPE, HTML)], page(value)).into_response(),
    }
}

#[derive(Debug, Default, Deserialize)]
pub struct Params {
    lemma: Option<String>,
    q: Option<String>,
    #[serde(rename = "match")]
    match_mode: Option<String>,
    context: Option<String>,
    k: Option<String>,
    format: Option<String>,
}

impl Params {
    fn request(&self, kind: QueryKind, text: String, default_k: usize, format: Format) -> Result<QueryRequest, ApiError> {
        let bad = |m: String| ApiError::bad_request(format, m);
        let context = match self.context.as_deref() {
            None | Some("") => ContextForm::Kwic,
            Some(c) => c.parse().map_err(bad)?,
        };
        let k = match self.k.as_deref() {
            None | Some("") => default_k,
            Some(raw) => match raw.parse::<usize>() {
                Ok(k) if k >= 1 => k,
                _ => return Err(bad(format!("k must be a positive integer, got `{raw}`"))),
            },
        };
        let match_mode = match kind {
            QueryKind::Lemma => None,
            QueryKind::Form => Some(match self.match_mode.as_deref() {
                None | Some("") => MatchMode::Exact,
                Some(m) => m.parse().map_err(bad)?,
            }),
        };
        if text.trim().is_empty() {
            return Err(ApiError::from_query(format, QueryError::EmptyQuery));
        }
        Ok(QueryRequest {
            kind,
            text,
            match_mode,
            context,
            k: (context == ContextForm::Kwic).then_some(k),
        })
    }
}

async fn get_letters(State(st): State<AppState>, Query(p): Query<Params>, headers: HeaderMap) -> Result<Response, ApiError> {
    let format = negotiate(p.format.as_deref(), &headers)?;
    let body = letters(&st.index);
    Ok(render(format, &body, |b| {
        html::letters_page(&b.letters, |l| format!("/api/lemmas/{}?format=html", encode_segment(&l.slug)))
    }))
}

async fn get_lemmas(
    State(st): State<AppState>,
    Path(letter): Path<String>,
    Query(p): Query<Params>,
    headers: HeaderMap,
) -> Result<Response, ApiError> {
    let format = negotiate(p.format.as_deref(), &headers)?;
    let listing = lemma_listing(&st.index, &letter, &st.site.api_base, format == Format::Html)
        .map_err(|e| ApiError::from_query(format, e))?;
    let bar = letters(&st.index).letters;
    Ok(render(format, &listing, |l| {
        html::letter_page(l, &bar, |b| format!("/letters/{}", file_name(&b.slug)))
    }))
}

fn respond(st: &AppState, req: QueryRequest, format: Format) -> Result<Response, ApiError> {
    let resp: QueryResponse = run_query(&st.index, req).map_err(|e| ApiError::from_query(format, e))?;
    Ok(render(format, &resp, html::query_page))
}

async fn get_concordance(State(st): State<AppState>, Query(p): Query<Params>, headers: HeaderMap) -> Result<Response, ApiError> {
    let format = negotiate(p.format.as_deref(), &headers)?;
    let lemma = p
        .lemma
        .clone()
        .ok_or_else(|| ApiError::bad_request(format, "missing `lemma` parameter"))?;
    let req = p.request(QueryKind::Lemma, lemma, st.site.default_k, format)?;
    respond(&st, req, format)
}

async fn get_search(State(st): State<AppState>, Query(p): Query<Params>, headers: HeaderMap) -> Result<Response, ApiError> {
    let format = negotiate(p.format.as_deref(), &headers)?;
    let q = p.q.clone().unwrap_or_default();
    let req = p.request(QueryKind::Form, q, st.site.default_k, format)?;
    respond(&st, req, format)
}

async fn get_entry(State(st): State<AppState>) -> Response {
    ([(CONTENT_TYPE, HTML)], entry_html(&st.index, &st.site)).into_response()
}

async fn get_letter_page(State(st): State<AppState>, Path(file): Path<String>) -> Result<Response, ApiError> {
    let slug = file.strip_suffix(".html").ok_or(ApiError::not_found(Format::Html))?;
    let page = letter_html(&st.index, slug, &st.site).ok_or(ApiError::not_found(Format::Html))?;
    Ok(([(CONTENT_TYPE, HTML)], page).into_response())
}

fn cors(origin: Option<&str>) -> Result<Option<CorsLayer>, ConfigError> {
    let Some(origin) = origin else { return Ok(None) };
    let allow = if origin == "*" {
        AllowOrigin::any()
    } else {
        let value = HeaderValue::from_str(origin)
            .map_err(|_| ConfigError::Invalid(format!("cors_origin `{origin}` is not a valid header value")))?;
        AllowOrigin::list([value])
    };
    Ok(Some(
        CorsLayer::new()
            .allow_origin(allow)
            .allow_methods([Method::GET])
            .allow_headers([ACCEPT]),
    ))
}

/// All routes. Every handler only reads the shared index.
pub fn router(state: AppState, cors_origin: Option<&str>) -> Result<Router, ConfigError> {
    let router = Router::new()
        .route("/api/letters", get(get_letters))
        .route("/api/lemmas/{letter}", get(get_lemmas))
        .route("/api/concordance", get(get_concordance))
        .route("/api/search", get(get_search))
        .route("/", get(get_entry))
        .route("/index.html", get(get_entry))
        .route("/letters/{file}", get(get_letter_page))
        .with_state(state);
    Ok(match cors(cors_origin)? {
        Some(layer) => router.layer(layer),
        None => router,
    })
}

#[derive(Debug, thiserror::Error)]
pub enum ServeError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("cannot listen on {addr}: {source}")]
    Bind {
        addr: SocketAddr,
        source: std::io::Error,
    },
    #[error("server error: {0}")]
    Io(#[from] std::io::Error),
}

/// A bound listener with its routes. Binding happens after the index is
/// built, so accepted connections always see a complete index.
pub struct Server {
    listener: TcpListener,
    router: Router,
}

impl Server {
    pub async fn bind(config: &ServiceConfig, index: ConcordanceIndex) -> Result<Self, ServeError> {
        let router = router(AppState::new(index, config.default_k), config.cors_origin.as_deref())?;
        let addr = config.socket_addr();
        let listener = TcpListener::bind(addr)
            .await
            .map_err(|source| ServeError::Bind { addr, source })?;
        Ok(Self { listener, router })
    }

    pub fn local_addr(&self) -> std::io::Result<SocketAddr> {
        self.listener.local_addr()
    }

    /// Serves until `shutdown` resolves, then drains in-flight requests.
    pub async fn run(self, shutdown: impl Future<Output = ()> + Send + 'static) -> Result<(), ServeError> {
        axum::serve(self.listener, self.router)
            .with_graceful_shutdown(shutdown)
            .await?;
        Ok(())
    }
}

/// Resolves on Ctrl-C or SIGTERM.
pub async fn shutdown_signal() {
    let ctrl_c = async {
        let _ = tokio::signal::ctrl_c().await;
    };
    #[cfg(unix)]
    let term = async {
        match tokio::signal::unix::signal(tokio::signal::unix::SignalKind::terminate()) {
            Ok(mut s) => {
                s.recv().await;
            }
            Err(_) => std::future::pending::<()>().await,
        }
    };
    #[cfg(not(unix))]
    let term = std::future::pending::<()>();
    tokio::select! {
        _ = ctrl_c => {},
        _ = term => {},
    }
    log::info!("shutting down");
}
