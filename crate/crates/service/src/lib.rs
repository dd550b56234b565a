//! Read-only HTTP service over a concordance index: JSON and HTML
//! endpoints, the search entry page, and a static-site exporter.

pub mod api;
pub mod config;
pub mod html;
pub mod load;
pub mod query;
pub mod site;

pub use api::{router, shutdown_signal, AppState, ServeError, Server};
pub use config::{ConfigError, ServiceConfig};
pub use load::{load_corpus, LoadError, LoadedCorpus};
pub use query::{run_query, ContextForm, QueryKind, QueryRequest, QueryResponse};
pub use site::{export_site, SiteError, SiteOptions};
