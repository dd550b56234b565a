mod common;

use std::collections::BTreeMap;
use std::path::Path;

use common::*;
use concordia_core::{parse_tagged, ConcordanceIndex, ParagraphMode};
use concordia_service::{export_site, ServiceConfig, SiteOptions};

fn tree(root: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in std::fs::read_dir(&dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let rel = path.strip_prefix(root).unwrap().to_string_lossy().into_owned();
                out.insert(rel, std::fs::read(&path).unwrap());
            }
        }
    }
    out
}

#[test]
fn two_letters_give_two_pages() {
    let doc = parse_tagged("баба<N|БАБА> і пан<N|ПАН>.", ParagraphMode::Line).unwrap();
    let index = ConcordanceIndex::build(doc);
    // `і` carries no tag, so only Б and П have lemmas
    let dir = tempfile::tempdir().unwrap();
    let written = export_site(&index, dir.path(), &SiteOptions::default()).unwrap();
    assert_eq!(written.len(), 3);
    let files: Vec<String> = tree(dir.path()).into_keys().collect();
    assert_eq!(files, ["index.html", "letters/Б.html", "letters/П.html"]);
}

#[test]
fn export_is_byte_identical() {
    let index = load(&dialogue_config());
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let opts = SiteOptions {
        api_base: "http://api.example".into(),
        default_k: 7,
    };
    export_site(&index, a.path(), &opts).unwrap();
    export_site(&load(&dialogue_config()), b.path(), &opts).unwrap();
    let (ta, tb) = (tree(a.path()), tree(b.path()));
    assert!(!ta.is_empty());
    assert_eq!(ta, tb);
    let entry = String::from_utf8(ta["index.html"].clone()).unwrap();
    assert!(entry.contains("action=\"http://api.example/api/search\""));
}

#[test]
fn unwritable_target_names_the_path() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "x").unwrap();
    let index = load(&dialogue_config());
    let err = export_site(&index, &blocker, &SiteOptions::default()).unwrap_err();
    assert!(err.to_string().contains("file"), "{err}");
}

#[tokio::test(flavor = "multi_thread")]
async fn exported_links_resolve_against_the_service() {
    let config = ServiceConfig {
        port: 0,
        ..dialogue_config()
    };
    let srv = TestServer::start(config).await;
    let index = load(&dialogue_config());
    let dir = tempfile::tempdir().unwrap();
    let opts = SiteOptions {
        api_base: srv.base.clone(),
        default_k: 7,
    };
    export_site(&index, dir.path(), &opts).unwrap();
    let files = tree(dir.path());
    let mut checked = 0;
    for (name, bytes) in &files {
        let page = String::from_utf8(bytes.clone()).unwrap();
        for href in hrefs(&page) {
            if href.starts_with("http") {
                let (status, ctype, _) = get_with(&href, None).await;
                assert_eq!(status, 200, "{href}");
                assert!(ctype.starts_with("text/html"), "{href}");
            } else {
                let dir_of = Path::new(name).parent().unwrap();
                let decoded: String = form_urlencoded::parse(format!("x={href}").as_bytes())
                    .next()
                    .unwrap()
                    .1
                    .into_owned();
                let target = dir_of.join(decoded).to_string_lossy().into_owned();
                assert!(files.contains_key(&target), "{name} links to missing {target}");
            }
            checked += 1;
        }
    }
    assert!(checked > index.lemma_count());
    srv.stop().await;
}
