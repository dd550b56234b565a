use std::net::{IpAddr, Ipv4Addr, SocketAddr};
use std::path::{Path, PathBuf};

use concordia_core::{ParagraphMode, DEFAULT_KWIC_WORDS};
use serde::Deserialize;

/// Environment variables that override config-file keys, in the order they
/// are applied.
pub const ENV_VARS: &[(&str, &str)] = &[
    ("CONCORDIA_LISTEN", "listen"),
    ("CONCORDIA_PORT", "port"),
    ("CONCORDIA_CORPUS", "corpus"),
    ("CONCORDIA_LEMMAS", "lemmas"),
    ("CONCORDIA_DEFAULT_K", "default_k"),
    ("CONCORDIA_PARAGRAPH_MODE", "paragraph_mode"),
    ("CONCORDIA_CORS_ORIGIN", "cors_origin"),
];

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ServiceConfig {
    pub listen: IpAddr,
    /// 0 picks a free port.
    pub port: u16,
    /// Tagged corpus, or raw text when `lemmas` is set.
    pub corpus: Option<PathBuf>,
    /// Lemma table for annotating a raw corpus at startup.
    pub lemmas: Option<PathBuf>,
    pub default_k: usize,
    pub paragraph_mode: ParagraphMode,
    /// Origin allowed by CORS; `*` allows any.
    pub cors_origin: Option<String>,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        Self {
            listen: IpAddr::V4(Ipv4Addr::LOCALHOST),
            port: 8080,
            corpus: None,
            lemmas: None,
            default_k: DEFAULT_KWIC_WORDS,
            paragraph_mode: ParagraphMode::Line,
            cors_origin: None,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid config {path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("invalid value for {var}: {reason}")]
    Env { var: String, reason: String },
    #[error("invalid config: {0}")]
    Invalid(String),
}

impl ServiceConfig {
    pub fn from_toml(text: &str, path: &Path) -> Result<Self, ConfigError> {
        let config: Self = toml::from_str(text).map_err(|e| ConfigError::Parse {
            path: path.to_path_buf(),
            message: e.message().to_string(),
        })?;
        config.validate()?;
        Ok(config)
    }

    /// Reads `path` (defaults when `None`), then applies the process
    /// environment.
    pub fn load(path: Option<&Path>) -> Result<Self, ConfigError> {
        let mut config = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|source| ConfigError::Io {
                    path: p.to_path_buf(),
                    source,
                })?;
                Self::from_toml(&text, p)?
            }
            None => Self::default(),
        };
        config.apply_env(|k| std::env::var(k).ok())?;
        Ok(config)
    }

    pub fn apply_env(&mut self, var: impl Fn(&str) -> Option<String>) -> Result<(), ConfigError> {
        for &(name, _) in ENV_VARS {
            let Some(value) = var(name) else { continue };
            let bad = |reason: String| ConfigError::Env {
                var: name.to_string(),
                reason,
            };
            match name {
                "CONCORDIA_LISTEN" => self.listen = value.parse().map_err(|e| bad(format!("{e}")))?,
                "CONCORDIA_PORT" => self.port = value.parse().map_err(|e| bad(format!("{e}")))?,
                "CONCORDIA_CORPUS" => self.corpus = Some(value.into()),
                "CONCORDIA_LEMMAS" => self.lemmas = Some(value.into()),
                "CONCORDIA_DEFAULT_K" => self.default_k = value.parse().map_err(|e| bad(format!("{e}")))?,
                "CONCORDIA_PARAGRAPH_MODE" => self.paragraph_mode = value.parse().map_err(bad)?,
                "CONCORDIA_CORS_ORIGIN" => self.cors_origin = Some(value),
                _ => unreachable!("every listed variable is handled"),
            }
        }
        self.validate()
    }

    fn validate(&self) -> Result<(), ConfigError> {
        if self.default_k == 0 {
            return Err(ConfigError::Invalid("default_k must be at least 1".into()));
        }
        Ok(())
    }

    pub fn socket_addr(&self) -> SocketAddr {
        SocketAddr::new(self.listen, self.port)
    }
}
