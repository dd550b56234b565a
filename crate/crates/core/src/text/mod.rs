//! Document structure: paragraphs, tokens and sentences.

mod escape;
mod sentence;
mod tokenize;

use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use escape::decode_escapes;
pub use sentence::{sentence_spans, Lexeme, SentenceSpan};
pub use tokenize::{detokenize, is_dash, strip_translations, tokenize, Token, TokenKind};

pub(crate) use tokenize::scan;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TextError {
    #[error("`{{` without matching `}}` at byte {offset}")]
    UnbalancedBrace { offset: usize },
    #[error("malformed tag at byte {offset}: {reason}")]
    MalformedTag { offset: usize, reason: String },
}

impl TextError {
    pub(crate) fn shifted(self, by: usize) -> Self {
        match self {
            TextError::UnbalancedBrace { offset } => TextError::UnbalancedBrace { offset: offset + by },
            TextError::MalformedTag { offset, reason } => TextError::MalformedTag {
                offset: offset + by,
                reason,
            },
        }
    }

    pub fn offset(&self) -> usize {
        match self {
            TextError::UnbalancedBrace { offset } | TextError::MalformedTag { offset, .. } => *offset,
        }
    }
}

/// How the source text is split into paragraphs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParagraphMode {
    /// Every non-blank line is a paragraph.
    #[default]
    Line,
    /// Paragraphs are separated by blank lines.
    BlankLine,
}

impl FromStr for ParagraphMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "line" => Ok(ParagraphMode::Line),
            "blank-line" | "blank" => Ok(ParagraphMode::BlankLine),
            other => Err(format!("unknown paragraph mode `{other}` (expected `line` or `blank-line`)")),
        }
    }
}

/// Source text split into trimmed paragraphs. `separators` holds the text
/// between paragraphs (one more entry than paragraphs), so the source can be
/// rebuilt byte for byte.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RawDocument {
    pub paragraphs: Vec<String>,
    pub separators: Vec<String>,
}

impl RawDocument {
    pub fn source(&self) -> String {
        interleave(&self.separators, self.paragraphs.iter().map(String::as_str))
    }

    /// Byte offset of each paragraph within the source.
    pub fn paragraph_offsets(&self) -> Vec<usize> {
        let mut offset = 0;
        self.paragraphs
            .iter()
            .zip(&self.separators)
            .map(|(p, sep)| {
                offset += sep.len();
                let here = offset;
                offset += p.len();
                here
            })
            .collect()
    }
}

pub(crate) fn interleave<'a>(separators: &[String], parts: impl Iterator<Item = &'a str>) -> String {
    let mut out = String::new();
    for (sep, part) in separators.iter().zip(parts) {
        out.push_str(sep);
        out.push_str(part);
    }
    if let Some(last) = separators.last() {
        out.push_str(last);
    }
    out
}

/// Splits source text into paragraphs. Total: never fails, loses no bytes.
pub fn segment_paragraphs(source: &str, mode: ParagraphMode) -> RawDocument {
    // (start, end) of each paragraph's trimmed content
    let mut spans: Vec<(usize, usize)> = Vec::new();
    let mut push_trimmed = |start: usize, end: usize| {
        let block = &source[start..end];
        let trimmed = block.trim();
        if !trimmed.is_empty() {
            let lead = block.len() - block.trim_start().len();
            spans.push((start + lead, start + lead + trimmed.len()));
        }
    };
    let mut line_start = 0;
    let mut block_start: Option<usize> = None;
    for line in source.split_inclusive('\n') {
        let end = line_start + line.len();
        match mode {
            ParagraphMode::Line => push_trimmed(line_start, end),
            ParagraphMode::BlankLine => {
                if line.trim().is_empty() {
                    if let Some(start) = block_start.take() {
                        push_trimmed(start, line_start);
                    }
                } else if block_start.is_none() {
                    block_start = Some(line_start);
                }
            }
        }
        line_start = end;
    }
    if let Some(start) = block_start {
        push_trimmed(start, source.len());
    }

    let mut doc = RawDocument::default();
    let mut prev_end = 0;
    for (start, end) in spans {
        doc.separators.push(source[prev_end..start].to_string());
        doc.paragraphs.push(source[start..end].to_string());
        prev_end = end;
    }
    doc.separators.push(source[prev_end..].to_string());
    doc
}
