#![allow(dead_code)]

use std::path::PathBuf;

use concordia_core::ConcordanceIndex;
use concordia_service::{load_corpus, Server, ServiceConfig};
use tokio::sync::oneshot;
use tokio::task::JoinHandle;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

pub fn dialogue_config() -> ServiceConfig {
    ServiceConfig {
        port: 0,
        corpus: Some(fixture("dialogue.txt")),
        lemmas: Some(fixture("fixture.lemma")),
        cors_origin: Some("http://localhost:5173".into()),
        ..ServiceConfig::default()
    }
}

pub fn load(config: &ServiceConfig) -> ConcordanceIndex {
    load_corpus(config.corpus.as_deref().unwrap(), config.lemmas.as_deref(), config.paragraph_mode)
        .unwrap()
        .index
}

pub struct TestServer {
    pub base: String,
    stop: Option<oneshot::Sender<()>>,
    handle: Option<JoinHandle<()>>,
}

impl TestServer {
    pub async fn start(config: ServiceConfig) -> Self {
        let index = load(&config);
        Self::with_index(config, index).await
    }

    pub async fn with_index(config: ServiceConfig, index: ConcordanceIndex) -> Self {
        let server = Server::bind(&config, index).await.unwrap();
        let base = format!("http://{}", server.local_addr().unwrap());
        let (stop, rx) = oneshot::channel::<()>();
        let handle = tokio::spawn(async move {
            server
                .run(async {
                    let _ = rx.await;
                })
                .await
                .unwrap();
        });
        Self {
            base,
            stop: Some(stop),
            handle: Some(handle),
        }
    }

    pub fn url(&self, path: &str) -> String {
        format!("{}{path}", self.base)
    }

    pub async fn get(&self, path: &str) -> (u16, String, String) {
        get_with(&self.url(path), None).await
    }

    pub async fn get_accept(&self, path: &str, accept: &str) -> (u16, String, String) {
        get_with(&self.url(path), Some(accept)).await
    }

    pub async fn json(&self, path: &str) -> serde_json::Value {
        let (status, _, body) = self.get(path).await;
        assert_eq!(status, 200, "{path}: {body}");
        serde_json::from_str(&body).unwrap()
    }

    pub async fn stop(mut self) {
        let _ = self.stop.take().unwrap().send(());
        self.handle.take().unwrap().await.unwrap();
    }
}

/// (status, content type, body)
pub async fn get_with(url: &str, accept: Option<&str>) -> (u16, String, String) {
    let client = reqwest::Client::new();
    let mut req = client.get(url);
    if let Some(a) = accept {
        req = req.header("accept", a);
    }
    let resp = req.send().await.unwrap();
    let status = resp.status().as_u16();
    let ctype = resp
        .headers()
        .get("content-type")
        .map(|v| v.to_str().unwrap().to_string())
        .unwrap_or_default();
    (status, ctype, resp.text().await.unwrap())
}

pub fn encode(s: &str) -> String {
    form_urlencoded::byte_serialize(s.as_bytes()).collect()
}

fn unescape(s: &str) -> String {
    s.replace("&lt;", "<")
        .replace("&gt;", ">")
        .replace("&quot;", "\"")
        .replace("&#39;", "'")
        .replace("&amp;", "&")
}

/// Text of every `<li>` inside `<ol class="windows">` lists, tags removed.
pub fn html_lines(page: &str) -> Vec<String> {
    let mut out = Vec::new();
    for list in page.split("<ol class=\"windows\">").skip(1) {
        let list = list.split("</ol>").next().unwrap();
        for item in list.split("<li").skip(1) {
            let inner = &item[item.find('>').unwrap() + 1..item.find("</li>").unwrap()];
            out.push(unescape(&inner.replace("<b>", "").replace("</b>", "")));
        }
    }
    out
}

/// Contents of every `<b>` element.
pub fn bold(page: &str) -> Vec<String> {
    page.split("<b>")
        .skip(1)
        .map(|s| unescape(s.split("</b>").next().unwrap()))
        .collect()
}

/// Every `href` value, unescaped.
pub fn hrefs(page: &str) -> Vec<String> {
    page.split("href=\"")
        .skip(1)
        .map(|s| unescape(s.split('"').next().unwrap()))
        .collect()
}

/// All window lines of a JSON query response, groups flattened.
pub fn json_lines(v: &serde_json::Value) -> Vec<String> {
    let mut out = Vec::new();
    let take = |ws: &serde_json::Value, out: &mut Vec<String>| {
        for w in ws.as_array().unwrap() {
            out.push(w["line"].as_str().unwrap().to_string());
        }
    };
    if let Some(ws) = v.get("windows") {
        take(ws, &mut out);
    }
    if let Some(gs) = v.get("groups") {
        for g in gs.as_array().unwrap() {
            take(&g["windows"], &mut out);
        }
    }
    out
}
