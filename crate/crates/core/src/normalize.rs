//! Homoglyph handling and folded lookup keys.
//!
//! The source lists mix Cyrillic and Latin lookalike letters (`АС` vs `AC`,
//! `A##` vs `А##`). Stored strings keep their spelling; every lookup,
//! comparison and alphabet decision goes through [`fold_key`].

use crate::text::decode_escapes;

/// Uppercase Cyrillic/Latin pairs that render identically.
const LOOKALIKES: [(char, char); 12] = [
    ('А', 'A'),
    ('В', 'B'),
    ('Е', 'E'),
    ('І', 'I'),
    ('К', 'K'),
    ('М', 'M'),
    ('Н', 'H'),
    ('О', 'O'),
    ('Р', 'P'),
    ('С', 'C'),
    ('Т', 'T'),
    ('Х', 'X'),
];

const LOWER_LOOKALIKES: [(char, char); 7] = [
    ('а', 'a'),
    ('е', 'e'),
    ('і', 'i'),
    ('о', 'o'),
    ('р', 'p'),
    ('с', 'c'),
    ('х', 'x'),
];

fn cyrillic_to_latin(c: char) -> Option<char> {
    LOOKALIKES
        .iter()
        .chain(LOWER_LOOKALIKES.iter())
        .find(|(cyr, _)| *cyr == c)
        .map(|(_, lat)| *lat)
}

fn latin_to_cyrillic(c: char) -> Option<char> {
    LOOKALIKES
        .iter()
        .chain(LOWER_LOOKALIKES.iter())
        .find(|(_, lat)| *lat == c)
        .map(|(cyr, _)| *cyr)
}

pub(crate) fn is_cyrillic(c: char) -> bool {
    matches!(c, '\u{0400}'..='\u{04FF}' | '\u{0500}'..='\u{052F}')
}

pub(crate) fn is_latin(c: char) -> bool {
    c.is_ascii_alphabetic() || (c.is_alphabetic() && ('\u{00C0}'..='\u{024F}').contains(&c))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Script {
    Cyrillic,
    Latin,
    Ambiguous,
    Mixed,
}

fn script_of(s: &str) -> Script {
    let mut cyr = false;
    let mut lat = false;
    for c in s.chars() {
        if is_cyrillic(c) && cyrillic_to_latin(c).is_none() {
            cyr = true;
        } else if is_latin(c) && latin_to_cyrillic(c).is_none() {
            lat = true;
        }
    }
    match (cyr, lat) {
        (true, true) => Script::Mixed,
        (true, false) => Script::Cyrillic,
        (false, true) => Script::Latin,
        (false, false) => Script::Ambiguous,
    }
}

/// Maps every Cyrillic lookalike to its Latin twin. Used for POS codes.
pub fn latinize_lookalikes(s: &str) -> String {
    s.chars().map(|c| cyrillic_to_latin(c).unwrap_or(c)).collect()
}

/// Splits `ЩО(спол.)` into `("ЩО", "(спол.)")`.
pub fn split_qualifier(s: &str) -> (&str, &str) {
    match s.find('(') {
        Some(i) if s.ends_with(')') => s.split_at(i),
        _ => (s, ""),
    }
}

/// Normalizes a lemma spelled in Latin script: Cyrillic lookalikes in the
/// word part become Latin. Cyrillic, mixed and ambiguous lemmas are returned
/// unchanged; the qualifier is never touched.
pub fn normalize_lemma(lemma: &str) -> String {
    let (word, qualifier) = split_qualifier(lemma);
    if script_of(word) == Script::Latin {
        let mut out = latinize_lookalikes(word);
        out.push_str(qualifier);
        out
    } else {
        lemma.to_string()
    }
}

fn fold_word(word: &str) -> String {
    match script_of(word) {
        Script::Latin => latinize_lookalikes(word),
        Script::Cyrillic | Script::Ambiguous => word
            .chars()
            .map(|c| latin_to_cyrillic(c).unwrap_or(c))
            .collect(),
        Script::Mixed => word.to_string(),
    }
}

/// Folded key used for every lookup: escapes decoded, uppercased, lookalike
/// letters unified to one script (Cyrillic unless the word has Latin-only
/// letters).
pub fn fold_key(s: &str) -> String {
    let upper = decode_escapes(s).to_uppercase();
    let (word, qualifier) = split_qualifier(&upper);
    let mut out = fold_word(word);
    out.push_str(qualifier);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn latin_a_folds_to_cyrillic() {
        assert_eq!(fold_key("A##"), "А##");
        assert_eq!(fold_key("а#"), "А#");
        assert_eq!(fold_key("A(част.)"), fold_key("А(част.)"));
    }

    #[test]
    fn latin_words_stay_latin() {
        assert_eq!(fold_key("aequam"), "AEQUAM");
        assert_eq!(fold_key("BEH&Ouml^RDEN"), "BEHÖRDEN");
        // Cyrillic Е and О inside an otherwise Latin word
        assert_eq!(fold_key("MЕNS"), "MENS");
    }

    #[test]
    fn cyrillic_words_fold_latin_lookalikes() {
        assert_eq!(fold_key("Гратулюю"), "ГРАТУЛЮЮ");
        assert_eq!(fold_key("MЕЦЕНAС"), "МЕЦЕНАС");
    }

    #[test]
    fn lemma_normalization() {
        assert_eq!(normalize_lemma("АЕQUUS(лат.)"), "AEQUUS(лат.)");
        assert_eq!(normalize_lemma("A(част.)"), "A(част.)");
        assert_eq!(normalize_lemma("ЩО(спол.)"), "ЩО(спол.)");
    }

    #[test]
    fn qualifier_split() {
        assert_eq!(split_qualifier("БАБІЙ(прізв.)"), ("БАБІЙ", "(прізв.)"));
        assert_eq!(split_qualifier("БАБА"), ("БАБА", ""));
        assert_eq!(split_qualifier("Д-Р"), ("Д-Р", ""));
    }
}
