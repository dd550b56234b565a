//! Context windows in the two presentation forms: ±k words (KWIC) and the
//! surrounding sentences. Windows never leave the occurrence's paragraph
//! and never show translation notes.

use serde::{Deserialize, Serialize};

use super::{ConcordanceIndex, Occurrence};
use crate::annotate::{TaggedParagraph, TaggedToken};
use crate::text::{decode_escapes, is_dash, tokenize, TokenKind};

pub const DEFAULT_KWIC_WORDS: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "form", content = "k")]
pub enum ContextMode {
    /// Up to `k` words on each side.
    Kwic(usize),
    /// Previous, own and next sentence.
    Sentence,
}

impl Default for ContextMode {
    fn default() -> Self {
        ContextMode::Kwic(DEFAULT_KWIC_WORDS)
    }
}

/// One numbered concordance line. The keyword is kept apart from its
/// context; presentation decides how to highlight it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextWindow {
    pub number: usize,
    pub left: String,
    pub keyword: String,
    pub right: String,
    /// Whether the source separates the keyword from `left` / `right`.
    pub space_before_keyword: bool,
    pub space_after_keyword: bool,
    pub occurrence: Occurrence,
}

impl ContextWindow {
    /// The whole line, spaced as in the source.
    pub fn line(&self) -> String {
        self.line_with(|k| k.to_string())
    }

    /// The whole line with the keyword passed through `mark`.
    pub fn line_with(&self, mark: impl Fn(&str) -> String) -> String {
        let mut out = String::new();
        if !self.left.is_empty() {
            out.push_str(&self.left);
            if self.space_before_keyword {
                out.push(' ');
            }
        }
        out.push_str(&mark(&self.keyword));
        if !self.right.is_empty() {
            if self.space_after_keyword {
                out.push(' ');
            }
            out.push_str(&self.right);
        }
        out
    }
}

/// Tokens that use up the KWIC budget: words and free-standing dashes.
fn is_budget_unit(t: &TaggedToken) -> bool {
    t.kind == TokenKind::Word || (t.kind == TokenKind::Punctuation && is_dash(&t.surface))
}

/// True when `a` written directly before `b` would read as other tokens.
fn would_fuse(a: &TaggedToken, b: &TaggedToken) -> bool {
    let joined = format!("{}{}", a.surface, b.surface);
    tokenize(&joined).map_or(true, |t| t.len() != 2)
}

/// Paragraph tokens with notes dropped; rendering keeps source spacing.
struct Visible<'a> {
    tokens: &'a [TaggedToken],
    idx: Vec<usize>,
}

impl<'a> Visible<'a> {
    fn new(para: &'a TaggedParagraph, range: std::ops::Range<usize>) -> Self {
        let idx = range
            .filter(|&i| para.tokens[i].kind != TokenKind::TranslationNote)
            .collect();
        Self {
            tokens: &para.tokens,
            idx,
        }
    }

    fn get(&self, pos: usize) -> &TaggedToken {
        &self.tokens[self.idx[pos]]
    }

    fn position_of(&self, token: usize) -> usize {
        self.idx
            .binary_search(&token)
            .expect("occurrence token is visible")
    }

    /// Whitespace between visible positions `pos - 1` and `pos`.
    fn gap(&self, pos: usize) -> &str {
        let (prev, next) = (self.idx[pos - 1], self.idx[pos]);
        let next_space = self.tokens[next].space_before.as_str();
        if next == prev + 1 {
            return next_space;
        }
        // a note was dropped in between; keep the space that preceded it
        let dropped = self.tokens[prev + 1].space_before.as_str();
        if next_space.is_empty() && !would_fuse(&self.tokens[prev], &self.tokens[next]) {
            return "";
        }
        match (dropped.is_empty(), next_space.is_empty()) {
            (false, _) => dropped,
            (true, false) => next_space,
            (true, true) => " ",
        }
    }

    fn render(&self, from: usize, to: usize) -> String {
        let mut out = String::new();
        for pos in from..to {
            if pos > from {
                out.push_str(self.gap(pos));
            }
            let t = self.get(pos);
            match t.kind {
                TokenKind::Word => out.push_str(&decode_escapes(&t.surface)),
                _ => out.push_str(&t.surface),
            }
        }
        out
    }

    fn window(&self, occ: &Occurrence, key: usize, from: usize, to: usize) -> ContextWindow {
        ContextWindow {
            number: 0,
            left: self.render(from, key),
            keyword: occ.surface.clone(),
            right: self.render(key + 1, to),
            space_before_keyword: key > from && !self.gap(key).is_empty(),
            space_after_keyword: key + 1 < to && !self.gap(key + 1).is_empty(),
            occurrence: occ.clone(),
        }
    }
}

impl ConcordanceIndex {
    fn paragraph(&self, occ: &Occurrence) -> &TaggedParagraph {
        &self.document().paragraphs[occ.paragraph_index]
    }

    pub fn context(&self, occ: &Occurrence, mode: ContextMode) -> ContextWindow {
        match mode {
            ContextMode::Kwic(k) => self.kwic_context(occ, k),
            ContextMode::Sentence => self.sentence_context(occ),
        }
    }

    /// Up to `k` words left and right of the keyword inside its paragraph.
    ///
    /// Punctuation between counted words rides along. On the left, text
    /// before the first counted word is shown only when the window reaches
    /// the paragraph start; on the right, punctuation after the last
    /// counted word is kept up to the next word.
    pub fn kwic_context(&self, occ: &Occurrence, k: usize) -> ContextWindow {
        let para = self.paragraph(occ);
        let vis = Visible::new(para, 0..para.tokens.len());
        let key = vis.position_of(occ.token_index);

        let mut from = 0;
        let mut count = 0;
        for pos in (0..key).rev() {
            if is_budget_unit(vis.get(pos)) {
                count += 1;
                if count == k {
                    from = pos;
                    break;
                }
            }
        }
        if k == 0 {
            from = key;
        }

        let len = vis.idx.len();
        let mut to = len;
        let mut count = 0;
        if k == 0 {
            to = key + 1;
        } else {
            for pos in key + 1..len {
                if is_budget_unit(vis.get(pos)) {
                    count += 1;
                    if count == k {
                        to = pos + 1;
                        while to < len && !is_budget_unit(vis.get(to)) {
                            to += 1;
                        }
                        break;
                    }
                }
            }
        }
        vis.window(occ, key, from, to)
    }

    /// The occurrence's sentence with its neighbours in the same paragraph.
    pub fn sentence_context(&self, occ: &Occurrence) -> ContextWindow {
        let para = self.paragraph(occ);
        let s = occ.sentence_index;
        let first = &para.sentences[s.saturating_sub(1)];
        let last = &para.sentences[(s + 1).min(para.sentences.len() - 1)];
        let vis = Visible::new(para, first.start..last.end);
        let key = vis.position_of(occ.token_index);
        vis.window(occ, key, 0, vis.idx.len())
    }
}
