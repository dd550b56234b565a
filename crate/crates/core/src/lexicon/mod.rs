//! Source word lists and the unified wordform → lemma table.
//!
//! Three tab-separated formats are read and written here:
//!
//! * frequency list: `frequency	LEMMA	POS`
//! * wordform list: `SURFACE#	FORM(qualifier)	form_freq	LEMMA	[lemma_freq]`
//! * `.lemma` file: `SURFACE#	LEMMA	POS`

mod parse;
mod table;

pub use parse::{parse_frequency_list, parse_wordform_list, FrequencyRecord, WordformRecord};
pub use table::{
    build_lemma_table, parse_lemma_file, serialize_lemma_file, FrequencyMismatch, LemmaBuild,
    LemmaEntry, LemmaInfo, LemmaTable,
};

use crate::PosTag;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LexiconError {
    #[error("line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("line {line}: unknown part-of-speech code `{code}`")]
    UnknownPosCode { line: usize, code: String },
    #[error("line {line}: lemma `{lemma}` declared with frequency {first} and {second}")]
    InconsistentGroup {
        line: usize,
        lemma: String,
        first: u64,
        second: u64,
    },
    #[error("line {line}: lemma `{lemma}` listed twice in the frequency list")]
    DuplicateLemma { line: usize, lemma: String },
    #[error("duplicate wordform `{surface}`{}", line_suffix(*.line))]
    DuplicateSurface { surface: String, line: Option<usize> },
    #[error("wordform `{surface}` refers to lemma `{lemma}` which is missing from the frequency list")]
    LemmaWithoutPos { lemma: String, surface: String },
    #[error("lemma `{lemma}` has two parts of speech: {first} and {second}{}", line_suffix(*.line))]
    InconsistentPos {
        lemma: String,
        first: PosTag,
        second: PosTag,
        line: Option<usize>,
    },
}

fn line_suffix(line: Option<usize>) -> String {
    line.map(|l| format!(" (line {l})")).unwrap_or_default()
}

impl LexiconError {
    /// 1-based source line, when the error points at one.
    pub fn line(&self) -> Option<usize> {
        match self {
            LexiconError::MalformedLine { line, .. }
            | LexiconError::UnknownPosCode { line, .. }
            | LexiconError::InconsistentGroup { line, .. }
            | LexiconError::DuplicateLemma { line, .. } => Some(*line),
            LexiconError::DuplicateSurface { line, .. } | LexiconError::InconsistentPos { line, .. } => *line,
            LexiconError::LemmaWithoutPos { .. } => None,
        }
    }
}

/// Non-empty lines with their 1-based numbers; a trailing `\r` is dropped.
pub(crate) fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.split('\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .filter(|(_, l)| !l.trim().is_empty())
}
