use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::escape::escape_len;
use super::TextError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TokenKind {
    Word,
    Punctuation,
    TranslationNote,
}

/// One token of a paragraph.
///
/// `surface` never carries homograph markers; a note's surface is the whole
/// `{...}` span including braces. `space_before` holds the exact whitespace
/// that preceded the token, so a token list reproduces its paragraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub surface: String,
    pub homograph_marker: usize,
    pub source_span: Range<usize>,
    pub space_before: String,
}

impl Token {
    pub fn is_word(&self) -> bool {
        self.kind == TokenKind::Word
    }

    /// Surface followed by its `#` markers, as written in the source.
    pub fn marked_surface(&self) -> String {
        let mut s = self.surface.clone();
        s.extend(std::iter::repeat_n('#', self.homograph_marker));
        s
    }
}

/// A raw `<POS|LEMMA>` tag found right after a word in tagged text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RawTag {
    pub pos: String,
    pub lemma: String,
}

pub(crate) struct Scanned {
    pub token: Token,
    pub tag: Option<RawTag>,
}

fn is_apostrophe(c: char) -> bool {
    matches!(c, '\'' | '’' | 'ʼ')
}

fn is_dash_char(c: char) -> bool {
    matches!(c, '-' | '‒' | '–' | '—' | '―')
}

/// True for a free-standing dash token (`--`, `–`, `—`, `-`).
pub fn is_dash(surface: &str) -> bool {
    !surface.is_empty() && surface.chars().all(is_dash_char)
}

/// Byte length of a word-start unit at `s`: a letter or an escape sequence.
fn word_unit(s: &str) -> Option<usize> {
    let c = s.chars().next()?;
    if c.is_alphabetic() {
        Some(c.len_utf8())
    } else if c == '&' {
        escape_len(s)
    } else {
        None
    }
}

fn word_end(s: &str) -> usize {
    let mut pos = 0;
    while pos < s.len() {
        let rest = &s[pos..];
        if let Some(len) = word_unit(rest) {
            pos += len;
            continue;
        }
        let c = rest.chars().next().unwrap();
        if (is_apostrophe(c) || c == '-') && word_unit(&rest[c.len_utf8()..]).is_some() {
            pos += c.len_utf8();
            continue;
        }
        break;
    }
    pos
}

fn punct_end(s: &str) -> usize {
    let c = s.chars().next().unwrap();
    let run = |pred: &dyn Fn(char) -> bool| {
        s.char_indices()
            .find(|(_, ch)| !pred(*ch))
            .map_or(s.len(), |(i, _)| i)
    };
    match c {
        '.' => run(&|ch| ch == '.'),
        '-' => run(&|ch| ch == '-'),
        d if d.is_ascii_digit() => run(&|ch| ch.is_ascii_digit()),
        _ => c.len_utf8(),
    }
}

fn parse_tag(s: &str, offset: usize) -> Result<(RawTag, usize), TextError> {
    debug_assert!(s.starts_with('<'));
    let malformed = |reason: &str| TextError::MalformedTag {
        offset,
        reason: reason.to_string(),
    };
    let close = s.find(['>', '\n']).ok_or_else(|| malformed("missing `>`"))?;
    if s.as_bytes()[close] != b'>' {
        return Err(malformed("missing `>`"));
    }
    let body = &s[1..close];
    if body.contains('<') {
        return Err(malformed("nested `<`"));
    }
    let (pos, lemma) = body
        .split_once('|')
        .ok_or_else(|| malformed("missing `|`"))?;
    if lemma.contains('|') {
        return Err(malformed("more than one `|`"));
    }
    if lemma.is_empty() {
        return Err(malformed("empty lemma"));
    }
    if crate::PosTag::from_code(pos).is_none() {
        return Err(malformed(&format!("unknown POS `{pos}`")));
    }
    Ok((
        RawTag {
            pos: pos.to_string(),
            lemma: lemma.to_string(),
        },
        close + 1,
    ))
}

/// Shared scanner for raw and tagged paragraphs. With `tagged` set, a `<`
/// right after a word opens a tag, and stray `<`, `>`, `|` are errors.
pub(crate) fn scan(paragraph: &str, tagged: bool) -> Result<Vec<Scanned>, TextError> {
    let mut out = Vec::new();
    let mut pos = 0;
    let mut space_start = 0;
    while pos < paragraph.len() {
        let rest = &paragraph[pos..];
        let c = rest.chars().next().unwrap();
        if c.is_whitespace() {
            pos += c.len_utf8();
            continue;
        }
        let space_before = paragraph[space_start..pos].to_string();
        let start = pos;
        let (kind, surface, marker, mut tag) = if word_unit(rest).is_some() {
            let end = word_end(rest);
            let hashes = rest[end..].bytes().take_while(|&b| b == b'#').count();
            pos += end + hashes;
            (TokenKind::Word, rest[..end].to_string(), hashes, None)
        } else if c == '{' {
            let close = rest.find('}').ok_or(TextError::UnbalancedBrace { offset: start })?;
            pos += close + 1;
            (TokenKind::TranslationNote, rest[..=close].to_string(), 0, None)
        } else if c == '}' {
            return Err(TextError::UnbalancedBrace { offset: start });
        } else if tagged && matches!(c, '<' | '>' | '|') {
            return Err(TextError::MalformedTag {
                offset: start,
                reason: format!("stray `{c}`"),
            });
        } else {
            let end = punct_end(rest);
            pos += end;
            (TokenKind::Punctuation, rest[..end].to_string(), 0, None)
        };
        if tagged && kind == TokenKind::Word && paragraph[pos..].starts_with('<') {
            let (raw, len) = parse_tag(&paragraph[pos..], pos)?;
            pos += len;
            tag = Some(raw);
        }
        out.push(Scanned {
            token: Token {
                kind,
                surface,
                homograph_marker: marker,
                source_span: start..pos,
                space_before,
            },
            tag,
        });
        space_start = pos;
    }
    Ok(out)
}

/// Splits a paragraph into words, punctuation and translation notes.
///
/// Words are maximal runs of letters (and `&name^` escapes) joined by single
/// internal apostrophes or hyphens; trailing `#` runs become the homograph
/// marker. Whitespace after the last token is not kept.
pub fn tokenize(paragraph: &str) -> Result<Vec<Token>, TextError> {
    Ok(scan(paragraph, false)?
        .into_iter()
        .map(|s| s.token)
        .collect())
}

/// Inverse of [`tokenize`] for paragraphs without trailing whitespace.
pub fn detokenize(tokens: &[Token]) -> String {
    let mut out = String::new();
    for t in tokens {
        out.push_str(&t.space_before);
        out.push_str(&t.surface);
        out.extend(std::iter::repeat_n('#', t.homograph_marker));
    }
    out
}

/// Copy of `tokens` without translation notes.
pub fn strip_translations(tokens: &[Token]) -> Vec<Token> {
    tokens
        .iter()
        .filter(|t| t.kind != TokenKind::TranslationNote)
        .cloned()
        .collect()
}
