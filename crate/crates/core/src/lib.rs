//! Concordance engine for a lemmatized literary corpus.
//!
//! Pipeline: source word lists → [`LemmaTable`] → inline-tagged
//! [`TaggedDocument`] → [`ConcordanceIndex`] → numbered [`ContextWindow`]s
//! in KWIC or sentence form.

pub mod annotate;
pub mod collation;
pub mod index;
pub mod lexicon;
pub mod normalize;
mod pos;
pub mod text;
#[cfg(feature = "testkit")]
pub mod testkit;

pub use annotate::{annotate, parse_tagged, strip_tags, Annotation, TaggedDocument, TaggedToken};
pub use index::{ConcordanceIndex, ContextMode, ContextWindow, MatchMode, Occurrence, QueryError};
pub use lexicon::{LemmaTable, LexiconError};
pub use pos::{PosTag, UnknownPosCode};
pub use text::{ParagraphMode, RawDocument, TextError, Token, TokenKind};

pub use index::DEFAULT_KWIC_WORDS;
