use std::path::{Path, PathBuf};

use concordia_core::annotate::UnknownWordform;
use concordia_core::lexicon::parse_lemma_file;
use concordia_core::text::segment_paragraphs;
use concordia_core::{annotate, parse_tagged, ConcordanceIndex, LexiconError, ParagraphMode, TextError};

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {source}")]
    Text {
        path: PathBuf,
        /// 1-based; the column counts characters.
        line: usize,
        column: usize,
        source: TextError,
    },
    #[error("{path}: {source}")]
    Lexicon {
        path: PathBuf,
        source: LexiconError,
    },
    #[error("no corpus configured")]
    NoCorpus,
}

pub struct LoadedCorpus {
    pub index: ConcordanceIndex,
    /// Words the lemma table did not cover (raw corpora only).
    pub unknown: Vec<UnknownWordform>,
}

fn read(path: &Path) -> Result<String, LoadError> {
    std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..text.floor_char_boundary(offset.min(text.len()))];
    let line_start = before.rfind('\n').map_or(0, |i| i + 1);
    (before.matches('\n').count() + 1, before[line_start..].chars().count() + 1)
}

/// Builds the index from a tagged corpus, or from raw text plus a lemma
/// table when `lemmas` is given.
pub fn load_corpus(corpus: &Path, lemmas: Option<&Path>, mode: ParagraphMode) -> Result<LoadedCorpus, LoadError> {
    let text = read(corpus)?;
    let text_err = |source: TextError| {
        let (line, column) = line_column(&text, source.offset());
        LoadError::Text {
            path: corpus.to_path_buf(),
            line,
            column,
            source,
        }
    };
    let (mut document, unknown) = match lemmas {
        Some(table_path) => {
            let table = parse_lemma_file(&read(table_path)?).map_err(|source| LoadError::Lexicon {
                path: table_path.to_path_buf(),
                source,
            })?;
            let ann = annotate(&segment_paragraphs(&text, mode), &table).map_err(text_err)?;
            (ann.document, ann.unknown)
        }
        None => (parse_tagged(&text, mode).map_err(text_err)?, Vec::new()),
    };
    document.provenance.source = Some(corpus.display().to_string());
    Ok(LoadedCorpus {
        index: ConcordanceIndex::build(document),
        unknown,
    })
}
