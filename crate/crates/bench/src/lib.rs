//! Workloads shared by the benchmarks.

use concordia_core::lexicon::parse_lemma_file;
use concordia_core::text::segment_paragraphs;
use concordia_core::{annotate, ConcordanceIndex, LemmaTable, ParagraphMode, RawDocument};

pub const DIALOGUE: &str = include_str!("../../core/fixtures/dialogue.txt");
pub const LEMMAS: &str = include_str!("../../core/fixtures/fixture.lemma");

pub fn table() -> LemmaTable {
    parse_lemma_file(LEMMAS).expect("fixture table parses")
}

/// The dialogue fixture repeated until it has at least `paragraphs`
/// paragraphs.
pub fn text(paragraphs: usize) -> String {
    let per_copy = DIALOGUE.lines().filter(|l| !l.trim().is_empty()).count();
    DIALOGUE.repeat(paragraphs.div_ceil(per_copy).max(1))
}

pub fn raw(paragraphs: usize) -> RawDocument {
    segment_paragraphs(&text(paragraphs), ParagraphMode::Line)
}

pub fn index(paragraphs: usize) -> ConcordanceIndex {
    let ann = annotate(&raw(paragraphs), &table()).expect("fixture text is well formed");
    ConcordanceIndex::build(ann.document)
}
