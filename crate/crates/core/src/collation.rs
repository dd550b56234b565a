//! Ukrainian alphabetical order and the index-letter bar.
//!
//! Order: Ukrainian letters (Ґ after Г, И before І), then Latin, then
//! digits. Apostrophes and hyphens are ignored; other symbols sort before
//! letters. Comparison runs on folded keys, so case and lookalike script do
//! not matter; ties fall back to the raw strings.

use std::cmp::Ordering;

use crate::normalize::fold_key;

pub const UKRAINIAN_ALPHABET: [char; 33] = [
    'А', 'Б', 'В', 'Г', 'Ґ', 'Д', 'Е', 'Є', 'Ж', 'З', 'И', 'І', 'Ї', 'Й', 'К', 'Л', 'М', 'Н', 'О', 'П',
    'Р', 'С', 'Т', 'У', 'Ф', 'Х', 'Ц', 'Ч', 'Ш', 'Щ', 'Ь', 'Ю', 'Я',
];

pub const LATIN_BUCKET: &str = "A...Z";
pub const DIGIT_BUCKET: &str = "0...9";

/// Non-Ukrainian Cyrillic letters and the Ukrainian letter they file under.
const CYRILLIC_EXTRAS: [(char, char); 4] = [('Ё', 'Е'), ('Э', 'Е'), ('Ы', 'И'), ('Ъ', 'Ь')];

fn ukrainian_rank(c: char) -> Option<u32> {
    UKRAINIAN_ALPHABET
        .iter()
        .position(|&l| l == c)
        .map(|i| i as u32 * 2)
}

fn char_key(c: char) -> Option<(u8, u32)> {
    if matches!(c, '\'' | '’' | 'ʼ' | '-') {
        return None;
    }
    if let Some(rank) = ukrainian_rank(c) {
        return Some((1, rank));
    }
    if let Some((_, base)) = CYRILLIC_EXTRAS.iter().find(|(x, _)| *x == c) {
        return Some((1, ukrainian_rank(*base).unwrap() + 1));
    }
    if c.is_ascii_digit() {
        return Some((3, c as u32));
    }
    if c.is_alphabetic() {
        return Some((2, c as u32));
    }
    Some((0, c as u32))
}

/// Sort key for a word or lemma.
pub fn collation_key(s: &str) -> Vec<(u8, u32)> {
    fold_key(s).chars().filter_map(char_key).collect()
}

pub fn collate(a: &str, b: &str) -> Ordering {
    collation_key(a)
        .cmp(&collation_key(b))
        .then_with(|| a.cmp(b))
}

/// Every entry of the letter bar, in display order.
pub fn alphabet() -> Vec<String> {
    UKRAINIAN_ALPHABET
        .iter()
        .map(|c| c.to_string())
        .chain([LATIN_BUCKET.to_string(), DIGIT_BUCKET.to_string()])
        .collect()
}

/// The letter-bar entry a lemma is filed under.
pub fn bucket_for(lemma: &str) -> String {
    let folded = fold_key(lemma);
    let Some(first) = folded.chars().find(|c| c.is_alphanumeric()) else {
        return DIGIT_BUCKET.to_string();
    };
    if ukrainian_rank(first).is_some() {
        return first.to_string();
    }
    if let Some((_, base)) = CYRILLIC_EXTRAS.iter().find(|(x, _)| *x == first) {
        return base.to_string();
    }
    if first.is_alphabetic() {
        LATIN_BUCKET.to_string()
    } else {
        DIGIT_BUCKET.to_string()
    }
}

/// Resolves a letter-bar request. Any Latin letter names the Latin bucket
/// and any digit the digit bucket.
pub fn parse_letter(letter: &str) -> Option<String> {
    let upper = letter.trim().to_uppercase();
    if upper == LATIN_BUCKET || upper == DIGIT_BUCKET {
        return Some(upper);
    }
    let mut chars = upper.chars();
    let c = chars.next()?;
    if chars.next().is_some() {
        return None;
    }
    if ukrainian_rank(c).is_some() {
        Some(c.to_string())
    } else if c.is_ascii_alphabetic() {
        Some(LATIN_BUCKET.to_string())
    } else if c.is_ascii_digit() {
        Some(DIGIT_BUCKET.to_string())
    } else {
        None
    }
}
