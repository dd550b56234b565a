use std::collections::HashMap;

use super::{data_lines, LexiconError};
use crate::normalize::{fold_key, normalize_lemma, split_qualifier};
use crate::PosTag;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyRecord {
    pub frequency: u64,
    pub lemma: String,
    pub pos: PosTag,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordformRecord {
    pub surface_key: String,
    pub disambiguated_form: String,
    pub form_frequency: u64,
    pub lemma: String,
    pub lemma_frequency: Option<u64>,
    /// 1-based line in the source list.
    pub line: usize,
}

fn parse_frequency(field: &str, line: usize) -> Result<u64, LexiconError> {
    match field.trim().parse::<u64>() {
        Ok(n) if n >= 1 => Ok(n),
        Ok(_) => Err(LexiconError::MalformedLine {
            line,
            reason: "frequency must be at least 1".into(),
        }),
        Err(_) => Err(LexiconError::MalformedLine {
            line,
            reason: format!("`{}` is not a frequency", field.trim()),
        }),
    }
}

fn parse_lemma(field: &str, line: usize) -> Result<String, LexiconError> {
    let lemma = field.trim();
    if lemma.is_empty() {
        return Err(LexiconError::MalformedLine {
            line,
            reason: "empty lemma".into(),
        });
    }
    let opens = lemma.matches('(').count();
    let closes = lemma.matches(')').count();
    let (word, qualifier) = split_qualifier(lemma);
    let well_formed = match (opens, closes) {
        (0, 0) => true,
        (1, 1) => !word.is_empty() && qualifier.len() > 2,
        _ => false,
    };
    if !well_formed {
        return Err(LexiconError::MalformedLine {
            line,
            reason: format!("lemma `{lemma}` must carry at most one trailing (qualifier)"),
        });
    }
    Ok(normalize_lemma(lemma))
}

pub(crate) fn parse_pos(field: &str, line: usize) -> Result<PosTag, LexiconError> {
    PosTag::parse_lenient(field).ok_or_else(|| LexiconError::UnknownPosCode {
        line,
        code: field.trim().to_string(),
    })
}

fn check_fields(fields: &[&str], allowed: &[usize], line: usize) -> Result<(), LexiconError> {
    if allowed.contains(&fields.len()) {
        Ok(())
    } else {
        Err(LexiconError::MalformedLine {
            line,
            reason: format!("expected {allowed:?} tab-separated fields, found {}", fields.len()),
        })
    }
}

/// Parses the lemma frequency list (3 columns).
pub fn parse_frequency_list(text: &str) -> Result<Vec<FrequencyRecord>, LexiconError> {
    data_lines(text)
        .map(|(line, l)| {
            let fields: Vec<&str> = l.split('\t').collect();
            check_fields(&fields, &[3], line)?;
            Ok(FrequencyRecord {
                frequency: parse_frequency(fields[0], line)?,
                lemma: parse_lemma(fields[1], line)?,
                pos: parse_pos(fields[2], line)?,
            })
        })
        .collect()
}

/// Parses the alphabetical wordform list (4 or 5 columns; the fifth is the
/// lemma frequency and appears on a group's first row only).
pub fn parse_wordform_list(text: &str) -> Result<Vec<WordformRecord>, LexiconError> {
    let mut declared: HashMap<String, u64> = HashMap::new();
    let mut out = Vec::new();
    for (line, l) in data_lines(text) {
        let fields: Vec<&str> = l.split('\t').collect();
        check_fields(&fields, &[4, 5], line)?;
        let surface_key = fields[0].trim().to_string();
        let bare = surface_key.trim_end_matches('#');
        if bare.is_empty() {
            return Err(LexiconError::MalformedLine {
                line,
                reason: "empty wordform".into(),
            });
        }
        let disambiguated_form = fields[1].trim().to_string();
        let (form_word, _) = split_qualifier(&disambiguated_form);
        if fold_key(form_word) != fold_key(bare) {
            return Err(LexiconError::MalformedLine {
                line,
                reason: format!("form `{disambiguated_form}` does not match wordform `{surface_key}`"),
            });
        }
        let form_frequency = parse_frequency(fields[2], line)?;
        let lemma = parse_lemma(fields[3], line)?;
        let lemma_frequency = match fields.get(4).map(|f| f.trim()) {
            None | Some("") => None,
            Some(f) => Some(parse_frequency(f, line)?),
        };
        if let Some(freq) = lemma_frequency {
            match declared.get(&fold_key(&lemma)) {
                Some(&first) if first != freq => {
                    return Err(LexiconError::InconsistentGroup {
                        line,
                        lemma,
                        first,
                        second: freq,
                    })
                }
                _ => {
                    declared.insert(fold_key(&lemma), freq);
                }
            }
        }
        out.push(WordformRecord {
            surface_key,
            disambiguated_form,
            form_frequency,
            lemma,
            lemma_frequency,
            line,
        });
    }
    Ok(out)
}
