//! Immutable concordance index over a tagged document.

mod context;
mod snapshot;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use context::{ContextMode, ContextWindow, DEFAULT_KWIC_WORDS};
pub use snapshot::{parse_snapshot, write_snapshot, Snapshot, SnapshotError};

use crate::annotate::TaggedDocument;
use crate::collation::{alphabet, bucket_for, collate, parse_letter};
use crate::normalize::fold_key;
use crate::text::decode_escapes;
use crate::PosTag;

/// One tagged word of the document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Occurrence {
    pub paragraph_index: usize,
    pub sentence_index: usize,
    pub token_index: usize,
    /// Display surface (escapes decoded, case as in the text).
    pub surface: String,
    pub lemma: String,
    pub pos: PosTag,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaOccurrences {
    pub lemma: String,
    pub pos: PosTag,
    pub occurrences: Vec<Occurrence>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchMode {
    Exact,
    Prefix,
    Substring,
}

impl std::str::FromStr for MatchMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(MatchMode::Exact),
            "prefix" => Ok(MatchMode::Prefix),
            "substring" => Ok(MatchMode::Substring),
            other => Err(format!("unknown match mode `{other}`")),
        }
    }
}

/// Wordforms matching a search, with their occurrences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormMatch {
    /// Uppercase folded wordform.
    pub surface: String,
    pub occurrences: Vec<Occurrence>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QueryError {
    #[error("empty query")]
    EmptyQuery,
    #[error("unknown index letter `{0}`")]
    UnknownLetter(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcordanceIndex {
    by_lemma: BTreeMap<String, LemmaOccurrences>,
    by_form: BTreeMap<String, Vec<Occurrence>>,
    alphabet_map: Vec<(String, Vec<String>)>,
    document: TaggedDocument,
}

impl ConcordanceIndex {
    /// Indexes every tagged word. Untagged words and notes are skipped.
    pub fn build(document: TaggedDocument) -> Self {
        let mut by_lemma: BTreeMap<String, LemmaOccurrences> = BTreeMap::new();
        let mut by_form: BTreeMap<String, Vec<Occurrence>> = BTreeMap::new();
        for (pi, para) in document.paragraphs.iter().enumerate() {
            for (ti, token) in para.tokens.iter().enumerate() {
                let Some(tag) = token.tag.as_ref().filter(|_| token.is_word()) else {
                    continue;
                };
                let occ = Occurrence {
                    paragraph_index: pi,
                    sentence_index: para.sentence_of(ti),
                    token_index: ti,
                    surface: decode_escapes(&token.surface).into_owned(),
                    lemma: tag.lemma.clone(),
                    pos: tag.pos,
                };
                by_form.entry(fold_key(&token.surface)).or_default().push(occ.clone());
                by_lemma
                    .entry(fold_key(&tag.lemma))
                    .or_insert_with(|| LemmaOccurrences {
                        lemma: tag.lemma.clone(),
                        pos: tag.pos,
                        occurrences: Vec::new(),
                    })
                    .occurrences
                    .push(occ);
            }
        }

        let mut buckets: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for entry in by_lemma.values() {
            buckets.entry(bucket_for(&entry.lemma)).or_default().push(entry.lemma.clone());
        }
        let alphabet_map = alphabet()
            .into_iter()
            .map(|letter| {
                let mut lemmas = buckets.remove(&letter).unwrap_or_default();
                lemmas.sort_by(|a, b| collate(a, b));
                (letter, lemmas)
            })
            .collect();

        Self {
            by_lemma,
            by_form,
            alphabet_map,
            document,
        }
    }

    pub fn document(&self) -> &TaggedDocument {
        &self.document
    }

    pub fn lemma_count(&self) -> usize {
        self.by_lemma.len()
    }

    pub fn form_count(&self) -> usize {
        self.by_form.len()
    }

    pub fn occurrence_count(&self) -> usize {
        self.by_lemma.values().map(|l| l.occurrences.len()).sum()
    }

    pub fn lemma(&self, lemma: &str) -> Option<&LemmaOccurrences> {
        self.by_lemma.get(&fold_key(lemma))
    }

    /// Occurrences of a lemma in document order; empty when absent.
    pub fn occurrences(&self, lemma: &str) -> &[Occurrence] {
        self.lemma(lemma).map_or(&[], |l| &l.occurrences)
    }

    /// All lemmas, in collation order.
    pub fn lemmas(&self) -> Vec<&LemmaOccurrences> {
        let mut v: Vec<&LemmaOccurrences> = self.by_lemma.values().collect();
        v.sort_by(|a, b| collate(&a.lemma, &b.lemma));
        v
    }

    pub fn form(&self, surface: &str) -> &[Occurrence] {
        self.by_form.get(&fold_key(surface)).map_or(&[], Vec::as_slice)
    }

    /// Letter bar with the lemmas filed under each letter.
    pub fn alphabet_map(&self) -> &[(String, Vec<String>)] {
        &self.alphabet_map
    }

    pub fn lemmas_for_letter(&self, letter: &str) -> Result<&[String], QueryError> {
        let key = parse_letter(letter).ok_or_else(|| QueryError::UnknownLetter(letter.to_string()))?;
        Ok(self
            .alphabet_map
            .iter()
            .find(|(l, _)| *l == key)
            .map(|(_, lemmas)| lemmas.as_slice())
            .unwrap_or(&[]))
    }

    /// Case-insensitive wordform search; groups come back in collation order.
    pub fn search_forms(&self, query: &str, mode: MatchMode) -> Result<Vec<FormMatch>, QueryError> {
        let query = query.trim();
        if query.is_empty() {
            return Err(QueryError::EmptyQuery);
        }
        let q = fold_key(query);
        let mut out: Vec<FormMatch> = match mode {
            MatchMode::Exact => self
                .by_form
                .get_key_value(&q)
                .map(|(k, v)| FormMatch {
                    surface: k.clone(),
                    occurrences: v.clone(),
                })
                .into_iter()
                .collect(),
            MatchMode::Prefix | MatchMode::Substring => self
                .by_form
                .iter()
                .filter(|(k, _)| match mode {
                    MatchMode::Prefix => k.starts_with(&q),
                    _ => k.contains(&q),
                })
                .map(|(k, v)| FormMatch {
                    surface: k.clone(),
                    occurrences: v.clone(),
                })
                .collect(),
        };
        out.sort_by(|a, b| collate(&a.surface, &b.surface));
        Ok(out)
    }

    /// Numbered windows for every occurrence of `lemma`.
    pub fn concordance_for_lemma(&self, lemma: &str, mode: ContextMode) -> Vec<ContextWindow> {
        self.windows(self.occurrences(lemma), mode)
    }

    /// Numbered windows (from 1) for a list of occurrences.
    pub fn windows(&self, occurrences: &[Occurrence], mode: ContextMode) -> Vec<ContextWindow> {
        occurrences
            .iter()
            .enumerate()
            .map(|(i, occ)| {
                let mut w = self.context(occ, mode);
                w.number = i + 1;
                w
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annotate::parse_tagged;
    use crate::text::ParagraphMode;

    fn index(text: &str) -> ConcordanceIndex {
        ConcordanceIndex::build(parse_tagged(text, ParagraphMode::Line).unwrap())
    }

    #[test]
    fn empty_document() {
        let idx = index("");
        assert_eq!(idx.lemma_count(), 0);
        assert_eq!(idx.occurrence_count(), 0);
        assert!(idx.concordance_for_lemma("Я", ContextMode::Kwic(7)).is_empty());
        assert!(idx.alphabet_map().iter().all(|(_, l)| l.is_empty()));
    }

    #[test]
    fn untagged_and_notes_skipped() {
        let idx = index("пан<N|ПАН> Бабій {пан} пан<N|ПАН>!");
        assert_eq!(idx.occurrences("ПАН").len(), 2);
        assert_eq!(idx.occurrence_count(), 2);
        assert!(idx.form("Бабій").is_empty());
    }

    #[test]
    fn lemmas_by_letter() {
        let idx = index("баба<N|БАБА> пан<N|ПАН> aequam<J|AEQUUS(лат.)> А<AR|A(част.)>");
        assert_eq!(idx.lemmas_for_letter("Б").unwrap(), ["БАБА"]);
        assert_eq!(idx.lemmas_for_letter("А").unwrap(), ["A(част.)"]);
        assert_eq!(idx.lemmas_for_letter("A...Z").unwrap(), ["AEQUUS(лат.)"]);
        assert!(idx.lemmas_for_letter("Ш").unwrap().is_empty());
        assert_eq!(idx.lemmas_for_letter("??"), Err(QueryError::UnknownLetter("??".into())));
    }

    #[test]
    fn search_modes() {
        let idx = index("служу<V|СЛУЖИТИ> слуга<N|СЛУГА> услужливий<J|УСЛУЖЛИВИЙ>");
        let names = |m: MatchMode, q: &str| -> Vec<String> {
            idx.search_forms(q, m).unwrap().into_iter().map(|f| f.surface).collect()
        };
        assert_eq!(names(MatchMode::Exact, "СЛУЖУ"), ["СЛУЖУ"]);
        assert_eq!(names(MatchMode::Prefix, "слу"), ["СЛУГА", "СЛУЖУ"]);
        assert_eq!(names(MatchMode::Substring, "луж"), ["СЛУЖУ", "УСЛУЖЛИВИЙ"]);
        assert!(names(MatchMode::Substring, "ZZZ").is_empty());
        assert_eq!(idx.search_forms("  ", MatchMode::Exact), Err(QueryError::EmptyQuery));
    }
}
