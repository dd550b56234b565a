//! Response model shared by the JSON API, the HTML pages and the static
//! export.

use concordia_core::collation::{alphabet, parse_letter, DIGIT_BUCKET, LATIN_BUCKET};
use concordia_core::{ConcordanceIndex, ContextMode, ContextWindow, MatchMode, PosTag, QueryError};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ContextForm {
    Kwic,
    Sentence,
}

impl std::str::FromStr for ContextForm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "kwic" => Ok(ContextForm::Kwic),
            "sentence" => Ok(ContextForm::Sentence),
            other => Err(format!("unknown context `{other}` (expected kwic or sentence)")),
        }
    }
}

impl ContextForm {
    pub fn as_str(self) -> &'static str {
        match self {
            ContextForm::Kwic => "kwic",
            ContextForm::Sentence => "sentence",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QueryKind {
    Lemma,
    Form,
}

/// A validated concordance or search request.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryRequest {
    pub kind: QueryKind,
    pub text: String,
    /// Form queries only.
    #[serde(rename = "match", skip_serializing_if = "Option::is_none")]
    pub match_mode: Option<MatchMode>,
    pub context: ContextForm,
    /// Window size; KWIC only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

impl QueryRequest {
    pub fn context_mode(&self) -> ContextMode {
        match (self.context, self.k) {
            (ContextForm::Kwic, Some(k)) => ContextMode::Kwic(k),
            (ContextForm::Kwic, None) => ContextMode::default(),
            (ContextForm::Sentence, _) => ContextMode::Sentence,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowView {
    #[serde(flatten)]
    pub window: ContextWindow,
    /// Plain rendering of the whole line.
    pub line: String,
}

impl From<ContextWindow> for WindowView {
    fn from(window: ContextWindow) -> Self {
        let line = window.line();
        Self { window, line }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormGroup {
    pub surface: String,
    pub total: usize,
    /// Numbered from 1 inside the group.
    pub windows: Vec<WindowView>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QueryResponse {
    pub query: QueryRequest,
    pub total: usize,
    /// Lemma queries: every occurrence, numbered from 1.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub windows: Option<Vec<WindowView>>,
    /// Form queries: one group per matching wordform, in collation order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub groups: Option<Vec<FormGroup>>,
}

pub fn run_query(index: &ConcordanceIndex, req: QueryRequest) -> Result<QueryResponse, QueryError> {
    let mode = req.context_mode();
    match req.kind {
        QueryKind::Lemma => {
            let windows: Vec<WindowView> = index
                .concordance_for_lemma(&req.text, mode)
                .into_iter()
                .map(WindowView::from)
                .collect();
            Ok(QueryResponse {
                total: windows.len(),
                windows: Some(windows),
                groups: None,
                query: req,
            })
        }
        QueryKind::Form => {
            let matches = index.search_forms(&req.text, req.match_mode.unwrap_or(MatchMode::Exact))?;
            let groups: Vec<FormGroup> = matches
                .into_iter()
                .map(|m| FormGroup {
                    total: m.occurrences.len(),
                    windows: index
                        .windows(&m.occurrences, mode)
                        .into_iter()
                        .map(WindowView::from)
                        .collect(),
                    surface: m.surface,
                })
                .collect();
            Ok(QueryResponse {
                total: groups.iter().map(|g| g.total).sum(),
                windows: None,
                groups: Some(groups),
                query: req,
            })
        }
    }
}

/// Path-safe name of an alphabet-bar entry: the letter itself, `latin` or
/// `digits`.
pub fn slug_for(letter: &str) -> String {
    match letter {
        LATIN_BUCKET => "latin".to_string(),
        DIGIT_BUCKET => "digits".to_string(),
        other => other.to_string(),
    }
}

/// Resolves a slug, a bar label or any single letter/digit to its bar
/// entry.
pub fn letter_for(slug: &str) -> Option<String> {
    match slug {
        "latin" => Some(LATIN_BUCKET.to_string()),
        "digits" => Some(DIGIT_BUCKET.to_string()),
        other => parse_letter(other),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LetterCount {
    pub letter: String,
    pub slug: String,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LettersResponse {
    pub letters: Vec<LetterCount>,
    pub total_lemmas: usize,
}

pub fn letters(index: &ConcordanceIndex) -> LettersResponse {
    debug_assert_eq!(index.alphabet_map().len(), alphabet().len());
    let letters: Vec<LetterCount> = index
        .alphabet_map()
        .iter()
        .map(|(letter, lemmas)| LetterCount {
            slug: slug_for(letter),
            letter: letter.clone(),
            count: lemmas.len(),
        })
        .collect();
    LettersResponse {
        total_lemmas: letters.iter().map(|l| l.count).sum(),
        letters,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaLink {
    pub lemma: String,
    pub pos: PosTag,
    pub frequency: usize,
    /// Concordance for this lemma (KWIC, default window).
    pub href: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaListing {
    pub letter: String,
    pub slug: String,
    pub lemmas: Vec<LemmaLink>,
}

/// `{base}/api/concordance?lemma=..&context=..` with the lemma
/// form-encoded.
pub fn concordance_href(base: &str, lemma: &str, context: ContextForm, html: bool) -> String {
    let mut q = form_urlencoded::Serializer::new(String::new());
    q.append_pair("lemma", lemma).append_pair("context", context.as_str());
    if html {
        q.append_pair("format", "html");
    }
    format!("{base}/api/concordance?{}", q.finish())
}

pub fn lemma_listing(index: &ConcordanceIndex, slug: &str, base: &str, html: bool) -> Result<LemmaListing, QueryError> {
    let letter = letter_for(slug).ok_or_else(|| QueryError::UnknownLetter(slug.to_string()))?;
    let lemmas = index
        .lemmas_for_letter(&letter)?
        .iter()
        .map(|lemma| {
            let entry = index.lemma(lemma).expect("alphabet map lists indexed lemmas");
            LemmaLink {
                lemma: entry.lemma.clone(),
                pos: entry.pos,
                frequency: entry.occurrences.len(),
                href: concordance_href(base, &entry.lemma, ContextForm::Kwic, html),
            }
        })
        .collect();
    Ok(LemmaListing {
        slug: slug_for(&letter),
        letter,
        lemmas,
    })
}
