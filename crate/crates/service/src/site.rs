//! Static export: an entry page plus one page per non-empty letter.

use std::path::{Path, PathBuf};

use concordia_core::{ConcordanceIndex, DEFAULT_KWIC_WORDS};

use crate::html;
use crate::query::{lemma_listing, letters, LetterCount};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiteOptions {
    /// Prefix of the query endpoints in emitted links; empty means the
    /// pages are served by the API host itself.
    pub api_base: String,
    pub default_k: usize,
}

impl Default for SiteOptions {
    fn default() -> Self {
        Self {
            api_base: String::new(),
            default_k: DEFAULT_KWIC_WORDS,
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("{path}: {source}")]
pub struct SiteError {
    pub path: PathBuf,
    pub source: std::io::Error,
}

pub(crate) fn encode_segment(slug: &str) -> String {
    form_urlencoded::byte_serialize(slug.as_bytes()).collect()
}

pub(crate) fn file_name(slug: &str) -> String {
    format!("{}.html", encode_segment(slug))
}

/// Entry page; letter links are relative to the site root.
pub fn entry_html(index: &ConcordanceIndex, opts: &SiteOptions) -> String {
    let bar = letters(index).letters;
    html::entry_page(&bar, &opts.api_base, |l| format!("letters/{}", file_name(&l.slug)), opts.default_k)
}

/// Page for one letter-bar entry; `None` for an unknown slug.
pub fn letter_html(index: &ConcordanceIndex, slug: &str, opts: &SiteOptions) -> Option<String> {
    let listing = lemma_listing(index, slug, &opts.api_base, true).ok()?;
    let bar = letters(index).letters;
    Some(html::letter_page(&listing, &bar, |l: &LetterCount| file_name(&l.slug)))
}

fn write(path: PathBuf, contents: &str) -> Result<PathBuf, SiteError> {
    std::fs::write(&path, contents).map_err(|source| SiteError {
        path: path.clone(),
        source,
    })?;
    Ok(path)
}

/// Writes `index.html` and `letters/<slug>.html` under `out_dir`. Output is
/// a pure function of the index and options. Returns the written files.
pub fn export_site(index: &ConcordanceIndex, out_dir: &Path, opts: &SiteOptions) -> Result<Vec<PathBuf>, SiteError> {
    let letters_dir = out_dir.join("letters");
    std::fs::create_dir_all(&letters_dir).map_err(|source| SiteError {
        path: letters_dir.clone(),
        source,
    })?;
    let mut written = vec![write(out_dir.join("index.html"), &entry_html(index, opts))?];
    for l in letters(index).letters.iter().filter(|l| l.count > 0) {
        let page = letter_html(index, &l.slug, opts).expect("bar entries resolve");
        written.push(write(letters_dir.join(format!("{}.html", l.slug)), &page)?);
    }
    Ok(written)
}
