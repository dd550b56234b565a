//! Sentence segmentation inside one paragraph.
//!
//! A run of `.`, `!`, `?`, `…` ends a sentence when the next word starts
//! with an uppercase letter. Closing quotes and
//! brackets glued to the terminator stay with the finished sentence; a
//! dialogue dash after it opens the next one. A single `.` after an
//! initial or a listed abbreviation never ends a sentence.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::{Token, TokenKind};

/// Anything a sentence splitter can look at.
pub trait Lexeme {
    fn kind(&self) -> TokenKind;
    fn surface(&self) -> &str;
    fn space_before(&self) -> &str;
}

impl Lexeme for Token {
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

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentenceSpan {
    pub paragraph_index: usize,
    pub token_range: Range<usize>,
}

const ABBREVIATIONS: &[&str] = &["т", "д", "р", "с", "зв", "ін", "под", "пор", "див", "напр", "тис", "рр", "пп", "ім"];

fn is_terminator(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| matches!(c, '.' | '!' | '?' | '…'))
}

fn is_closing<L: Lexeme>(t: &L) -> bool {
    match t.surface() {
        "»" | "”" | "“" | "’" | ")" | "]" => true,
        "\"" | "'" => t.space_before().is_empty(),
        _ => false,
    }
}

fn is_abbreviation(word: &str) -> bool {
    let mut chars = word.chars();
    let initial = matches!((chars.next(), chars.next()), (Some(c), None) if c.is_uppercase());
    initial || ABBREVIATIONS.contains(&word.to_lowercase().as_str())
}

/// Half-open token ranges of the sentences of one paragraph. The ranges are
/// ordered, disjoint and cover every token.
pub fn sentence_spans<L: Lexeme>(tokens: &[L]) -> Vec<Range<usize>> {
    let mut spans = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i < tokens.len() {
        let t = &tokens[i];
        if t.kind() != TokenKind::Punctuation || !is_terminator(t.surface()) {
            i += 1;
            continue;
        }
        if t.surface() == "." && i > 0 && tokens[i - 1].kind() == TokenKind::Word
            && t.space_before().is_empty()
            && is_abbreviation(tokens[i - 1].surface())
        {
            i += 1;
            continue;
        }
        let mut end = i + 1;
        while end < tokens.len()
            && tokens[end].kind() == TokenKind::Punctuation
            && (is_closing(&tokens[end]) || is_terminator(tokens[end].surface()))
        {
            end += 1;
        }
        let next_word = tokens[end..].iter().find(|t| t.kind() == TokenKind::Word);
        let breaks = match next_word {
            Some(w) => w.surface().chars().next().is_some_and(char::is_uppercase),
            None => false,
        };
        if breaks {
            spans.push(start..end);
            start = end;
        }
        i = end;
    }
    if start < tokens.len() {
        spans.push(start..tokens.len());
    }
    spans
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::tokenize;

    fn sentences(p: &str) -> Vec<String> {
        let toks = tokenize(p).unwrap();
        sentence_spans(&toks)
            .into_iter()
            .map(|r| crate::text::detokenize(&toks[r]).trim().to_string())
            .collect()
    }

    #[test]
    fn splits_on_capital_after_terminator() {
        assert_eq!(
            sentences("-- Авжеж, авжеж! Я в суді. Пан меценас ще тут незнайомі... Я тут офіціал."),
            vec!["-- Авжеж, авжеж!", "Я в суді.", "Пан меценас ще тут незнайомі...", "Я тут офіціал."]
        );
    }

    #[test]
    fn lowercase_continuation_keeps_sentence() {
        assert_eq!(
            sentences("-- Що, не пізнають мене пан меценас? – говорив він. -- А, не диво!"),
            vec!["-- Що, не пізнають мене пан меценас? – говорив він.", "-- А, не диво!"]
        );
    }

    #[test]
    fn initials_and_abbreviations() {
        assert_eq!(sentences("Як зазначав Ж. Вандрієс, так."), vec!["Як зазначав Ж. Вандрієс, так."]);
        assert_eq!(sentences("Це т. зв. KWIC. Далі."), vec!["Це т. зв. KWIC.", "Далі."]);
        assert_eq!(sentences("Адвокат д-р Євгеній."), vec!["Адвокат д-р Євгеній."]);
        assert_eq!(sentences("Це я. Потім ти."), vec!["Це я.", "Потім ти."]);
        assert_eq!(sentences("і т. д. Але"), vec!["і т. д. Але"]);
    }

    #[test]
    fn closing_quote_stays_with_sentence() {
        assert_eq!(
            sentences("Він сказав: \"Так.\" Потім пішов."),
            vec!["Він сказав: \"Так.\"", "Потім пішов."]
        );
    }

    #[test]
    fn spans_cover_tokens() {
        let toks = tokenize("Раз. Два! Три? чотири…").unwrap();
        let spans = sentence_spans(&toks);
        assert_eq!(spans.first().unwrap().start, 0);
        assert_eq!(spans.last().unwrap().end, toks.len());
        for w in spans.windows(2) {
            assert_eq!(w[0].end, w[1].start);
        }
        assert!(sentence_spans::<Token>(&[]).is_empty());
    }
}
