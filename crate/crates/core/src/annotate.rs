//! Inline `wordform<POS|LEMMA>` annotation.
//!
//! [`annotate`] marks raw text against a [`LemmaTable`]; [`parse_tagged`]
//! reads marked text back. Rendering a parsed document reproduces its
//! input byte for byte.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::ops::Range;

use sha2::{Digest, Sha256};

use crate::lexicon::LemmaTable;
use crate::text::{
    interleave, scan, segment_paragraphs, sentence_spans, tokenize, Lexeme, ParagraphMode, RawDocument,
    TextError, TokenKind,
};
use crate::PosTag;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tag {
    pub pos: PosTag,
    pub lemma: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedToken {
    pub kind: TokenKind,
    /// Marker-free surface. Notes keep their braces.
    pub surface: String,
    /// Present on every word the lemma table resolved.
    pub tag: Option<Tag>,
    pub space_before: String,
}

impl TaggedToken {
    pub fn is_word(&self) -> bool {
        self.kind == TokenKind::Word
    }

    pub fn lemma(&self) -> Option<&str> {
        self.tag.as_ref().map(|t| t.lemma.as_str())
    }

    pub fn pos(&self) -> Option<PosTag> {
        self.tag.as_ref().map(|t| t.pos)
    }
}

impl Lexeme for TaggedToken {
    fn kind(&self) -> TokenKind {
        self.kind
    }
    fn surface(&self) -> &str {
        &self.surface
    }
    fn space_before(&self) -> &str {
        &self.space_before
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TaggedParagraph {
    pub tokens: Vec<TaggedToken>,
    /// Ordered, disjoint token ranges covering `tokens`.
    pub sentences: Vec<Range<usize>>,
}

impl TaggedParagraph {
    fn new(tokens: Vec<TaggedToken>) -> Self {
        let sentences = sentence_spans(&tokens);
        Self { tokens, sentences }
    }

    /// Index of the sentence holding token `token`.
    pub fn sentence_of(&self, token: usize) -> usize {
        self.sentences
            .partition_point(|s| s.end <= token)
            .min(self.sentences.len().saturating_sub(1))
    }

    fn write(&self, out: &mut String, with_tags: bool) {
        for t in &self.tokens {
            out.push_str(&t.space_before);
            out.push_str(&t.surface);
            if with_tags {
                if let Some(tag) = &t.tag {
                    let _ = write!(out, "<{}|{}>", tag.pos, tag.lemma);
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Provenance {
    pub source: Option<String>,
    pub table_checksum: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TaggedDocument {
    pub paragraphs: Vec<TaggedParagraph>,
    /// Text between paragraphs; one more entry than `paragraphs`.
    pub separators: Vec<String>,
    pub provenance: Provenance,
}

impl TaggedDocument {
    /// The tagged-corpus text.
    pub fn render(&self) -> String {
        self.join(true)
    }

    fn join(&self, with_tags: bool) -> String {
        let parts: Vec<String> = self
            .paragraphs
            .iter()
            .map(|p| {
                let mut s = String::new();
                p.write(&mut s, with_tags);
                s
            })
            .collect();
        interleave(&self.separators, parts.iter().map(String::as_str))
    }

    /// SHA-256 of the rendered corpus.
    pub fn checksum(&self) -> String {
        hex::encode(Sha256::digest(self.render().as_bytes()))
    }

    pub fn word_count(&self) -> usize {
        self.words().count()
    }

    /// Every word token with its (paragraph, token) position.
    pub fn words(&self) -> impl Iterator<Item = (usize, usize, &TaggedToken)> {
        self.paragraphs.iter().enumerate().flat_map(|(pi, p)| {
            p.tokens
                .iter()
                .enumerate()
                .filter(|(_, t)| t.is_word())
                .map(move |(ti, t)| (pi, ti, t))
        })
    }
}

/// Plain text with tags removed; translation notes stay in braces.
pub fn strip_tags(doc: &TaggedDocument) -> String {
    doc.join(false)
}

/// A wordform missing from the lemma table. Coordinates are 1-based and
/// point at the first occurrence; `count` covers the whole document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownWordform {
    pub surface: String,
    pub paragraph: usize,
    pub sentence: usize,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Annotation {
    pub document: TaggedDocument,
    pub unknown: Vec<UnknownWordform>,
}

impl Annotation {
    pub fn tagged_count(&self) -> usize {
        self.document.words().filter(|(_, _, t)| t.tag.is_some()).count()
    }
}

/// Marks every word of `doc` with its lemma and POS.
///
/// Unknown wordforms do not stop the run: they are emitted untagged and
/// listed in [`Annotation::unknown`].
pub fn annotate(doc: &RawDocument, table: &LemmaTable) -> Result<Annotation, TextError> {
    let offsets = doc.paragraph_offsets();
    let mut paragraphs = Vec::with_capacity(doc.paragraphs.len());
    let mut unknown: Vec<UnknownWordform> = Vec::new();
    let mut seen: HashMap<String, usize> = HashMap::new();

    for (pi, (text, offset)) in doc.paragraphs.iter().zip(offsets).enumerate() {
        let raw = tokenize(text).map_err(|e| e.shifted(offset))?;
        let sentences = sentence_spans(&raw);
        let mut tokens = Vec::with_capacity(raw.len());
        for (ti, t) in raw.into_iter().enumerate() {
            let tag = if t.is_word() {
                match table.lookup(&t.surface, t.homograph_marker) {
                    Some(entry) => Some(Tag {
                        pos: entry.pos,
                        lemma: entry.lemma.clone(),
                    }),
                    None => {
                        let key = t.marked_surface();
                        match seen.get(&key) {
                            Some(&i) => unknown[i].count += 1,
                            None => {
                                let si = sentences.iter().position(|s| s.contains(&ti)).unwrap_or(0);
                                seen.insert(key.clone(), unknown.len());
                                unknown.push(UnknownWordform {
                                    surface: key,
                                    paragraph: pi + 1,
                                    sentence: si + 1,
                                    count: 1,
                                });
                            }
                        }
                        None
                    }
                }
            } else {
                None
            };
            tokens.push(TaggedToken {
                kind: t.kind,
                surface: t.surface,
                tag,
                space_before: t.space_before,
            });
        }
        paragraphs.push(TaggedParagraph { tokens, sentences });
    }

    Ok(Annotation {
        document: TaggedDocument {
            paragraphs,
            separators: doc.separators.clone(),
            provenance: Provenance {
                source: None,
                table_checksum: Some(table.checksum()),
            },
        },
        unknown,
    })
}

/// Parses a tagged corpus. Errors carry the byte offset within `text`.
pub fn parse_tagged(text: &str, mode: ParagraphMode) -> Result<TaggedDocument, TextError> {
    let raw = segment_paragraphs(text, mode);
    let offsets = raw.paragraph_offsets();
    let mut paragraphs = Vec::with_capacity(raw.paragraphs.len());
    for (p, offset) in raw.paragraphs.iter().zip(offsets) {
        let scanned = scan(p, true).map_err(|e| e.shifted(offset))?;
        let mut tokens = Vec::with_capacity(scanned.len());
        for s in scanned {
            if s.token.homograph_marker > 0 {
                return Err(TextError::MalformedTag {
                    offset: offset + s.token.source_span.start,
                    reason: "homograph marker in tagged text".into(),
                });
            }
            let tag = s.tag.map(|raw| Tag {
                // validated by the scanner
                pos: PosTag::from_code(&raw.pos).expect("scanner checks POS codes"),
                lemma: raw.lemma,
            });
            tokens.push(TaggedToken {
                kind: s.token.kind,
                surface: s.token.surface,
                tag,
                space_before: s.token.space_before,
            });
        }
        paragraphs.push(TaggedParagraph::new(tokens));
    }
    Ok(TaggedDocument {
        paragraphs,
        separators: raw.separators,
        provenance: Provenance::default(),
    })
}

/// Unknown-wordform report: `surface	paragraph	sentence	count` per line.
pub fn write_unknown_report(unknown: &[UnknownWordform]) -> String {
    let mut out = String::new();
    for u in unknown {
        let _ = writeln!(out, "{}\t{}\t{}\t{}", u.surface, u.paragraph, u.sentence, u.count);
    }
    out
}
