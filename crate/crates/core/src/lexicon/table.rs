use std::collections::BTreeMap;

use sha2::{Digest, Sha256};

use super::parse::parse_pos;
use super::{data_lines, FrequencyRecord, LexiconError, WordformRecord};
use crate::collation::collate;
use crate::normalize::{fold_key, normalize_lemma};
use crate::PosTag;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaEntry {
    /// Wordform as written in the lists, with its `#` markers.
    pub surface_key: String,
    pub lemma: String,
    pub pos: PosTag,
    /// Known only when the table was built from a wordform list.
    pub form_frequency: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaInfo {
    pub lemma: String,
    pub pos: PosTag,
    pub expected_frequency: Option<u64>,
    /// Member surface keys in collation order.
    pub members: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyMismatch {
    pub lemma: String,
    pub expected: u64,
    /// Sum of the member wordform frequencies.
    pub observed: u64,
    /// Lemma frequency from the wordform list, when it disagrees with the
    /// frequency list.
    pub declared: Option<u64>,
}

impl std::fmt::Display for FrequencyMismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "lemma `{}`: expected frequency {}, wordforms sum to {}",
            self.lemma, self.expected, self.observed
        )?;
        if let Some(d) = self.declared {
            write!(f, ", wordform list declares {d}")?;
        }
        Ok(())
    }
}

/// Validated wordform → (lemma, POS) mapping.
///
/// Entries are keyed by the folded surface key, so `A##` and `А##` are the
/// same wordform whatever script the lists used.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LemmaTable {
    entries: BTreeMap<String, LemmaEntry>,
    lemmas: BTreeMap<String, LemmaInfo>,
}

impl LemmaTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lemma_count(&self) -> usize {
        self.lemmas.len()
    }

    /// Adds one wordform. The lemma's POS must agree with earlier entries.
    pub fn insert(&mut self, entry: LemmaEntry) -> Result<(), LexiconError> {
        let key = fold_key(&entry.surface_key);
        if self.entries.contains_key(&key) {
            return Err(LexiconError::DuplicateSurface {
                surface: entry.surface_key,
                line: None,
            });
        }
        let info = self
            .lemmas
            .entry(fold_key(&entry.lemma))
            .or_insert_with(|| LemmaInfo {
                lemma: entry.lemma.clone(),
                pos: entry.pos,
                expected_frequency: None,
                members: Vec::new(),
            });
        if info.pos != entry.pos {
            return Err(LexiconError::InconsistentPos {
                lemma: entry.lemma,
                first: info.pos,
                second: entry.pos,
                line: None,
            });
        }
        let pos = info
            .members
            .binary_search_by(|m| collate(m, &entry.surface_key))
            .unwrap_or_else(|p| p);
        info.members.insert(pos, entry.surface_key.clone());
        self.entries.insert(key, entry);
        Ok(())
    }

    /// Looks up a text wordform with `marker` trailing `#` signs.
    pub fn lookup(&self, surface: &str, marker: usize) -> Option<&LemmaEntry> {
        let mut key = fold_key(surface);
        key.extend(std::iter::repeat_n('#', marker));
        self.entries.get(&key)
    }

    pub fn lemma_info(&self, lemma: &str) -> Option<&LemmaInfo> {
        self.lemmas.get(&fold_key(lemma))
    }

    /// Entries in collation order of their surface keys.
    pub fn entries(&self) -> Vec<&LemmaEntry> {
        let mut v: Vec<&LemmaEntry> = self.entries.values().collect();
        v.sort_by(|a, b| collate(&a.surface_key, &b.surface_key));
        v
    }

    pub fn lemmas(&self) -> impl Iterator<Item = &LemmaInfo> {
        self.lemmas.values()
    }

    /// Checks every lemma with a known expected frequency against the sum of
    /// its member wordform frequencies.
    pub fn validate(&self) -> Vec<FrequencyMismatch> {
        let mut out: Vec<FrequencyMismatch> = self
            .lemmas
            .values()
            .filter_map(|info| {
                let expected = info.expected_frequency?;
                let freqs: Option<Vec<u64>> = info
                    .members
                    .iter()
                    .map(|m| self.entries[&fold_key(m)].form_frequency)
                    .collect();
                let observed: u64 = freqs?.iter().sum();
                (observed != expected).then(|| FrequencyMismatch {
                    lemma: info.lemma.clone(),
                    expected,
                    observed,
                    declared: None,
                })
            })
            .collect();
        out.sort_by(|a, b| collate(&a.lemma, &b.lemma));
        out
    }

    /// Same wordform → (lemma, POS) mapping, ignoring frequencies.
    pub fn same_mapping(&self, other: &LemmaTable) -> bool {
        self.entries.len() == other.entries.len()
            && self.entries.iter().all(|(k, e)| {
                other
                    .entries
                    .get(k)
                    .is_some_and(|o| o.surface_key == e.surface_key && o.lemma == e.lemma && o.pos == e.pos)
            })
    }

    /// SHA-256 of the serialized `.lemma` form.
    pub fn checksum(&self) -> String {
        hex::encode(Sha256::digest(serialize_lemma_file(self).as_bytes()))
    }
}

/// Result of [`build_lemma_table`]: the table plus non-fatal frequency
/// mismatches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaBuild {
    pub table: LemmaTable,
    pub mismatches: Vec<FrequencyMismatch>,
}

/// Joins the wordform list with the frequency list. POS comes from the
/// lemma's frequency record.
pub fn build_lemma_table(
    freq: &[FrequencyRecord],
    forms: &[WordformRecord],
) -> Result<LemmaBuild, LexiconError> {
    let mut by_lemma: BTreeMap<String, &FrequencyRecord> = BTreeMap::new();
    for (i, rec) in freq.iter().enumerate() {
        if by_lemma.insert(fold_key(&rec.lemma), rec).is_some() {
            return Err(LexiconError::DuplicateLemma {
                line: i + 1,
                lemma: rec.lemma.clone(),
            });
        }
    }

    let mut table = LemmaTable::new();
    let mut declared: BTreeMap<String, u64> = BTreeMap::new();
    for form in forms {
        let lemma_key = fold_key(&form.lemma);
        let rec = by_lemma
            .get(&lemma_key)
            .ok_or_else(|| LexiconError::LemmaWithoutPos {
                lemma: form.lemma.clone(),
                surface: form.surface_key.clone(),
            })?;
        if let Some(f) = form.lemma_frequency {
            declared.insert(lemma_key, f);
        }
        table
            .insert(LemmaEntry {
                surface_key: form.surface_key.clone(),
                lemma: rec.lemma.clone(),
                pos: rec.pos,
                form_frequency: Some(form.form_frequency),
            })
            .map_err(|e| match e {
                LexiconError::DuplicateSurface { surface, .. } => LexiconError::DuplicateSurface {
                    surface,
                    line: Some(form.line),
                },
                other => other,
            })?;
    }

    for (key, info) in table.lemmas.iter_mut() {
        info.expected_frequency = Some(by_lemma[key].frequency);
    }

    let mut mismatches = table.validate();
    for (key, &decl) in &declared {
        let info = &table.lemmas[key];
        let expected = info.expected_frequency.unwrap_or(decl);
        if decl == expected {
            continue;
        }
        match mismatches.iter_mut().find(|m| fold_key(&m.lemma) == *key) {
            Some(m) => m.declared = Some(decl),
            None => {
                let observed = info
                    .members
                    .iter()
                    .filter_map(|m| table.entries[&fold_key(m)].form_frequency)
                    .sum();
                mismatches.push(FrequencyMismatch {
                    lemma: info.lemma.clone(),
                    expected,
                    observed,
                    declared: Some(decl),
                });
            }
        }
    }
    mismatches.sort_by(|a, b| collate(&a.lemma, &b.lemma));
    Ok(LemmaBuild { table, mismatches })
}

/// Writes the 3-column `.lemma` TSV, rows in collation order.
pub fn serialize_lemma_file(table: &LemmaTable) -> String {
    let mut out = String::new();
    for e in table.entries() {
        out.push_str(&e.surface_key);
        out.push('\t');
        out.push_str(&e.lemma);
        out.push('\t');
        out.push_str(e.pos.code());
        out.push('\n');
    }
    out
}

/// Reads a `.lemma` TSV. The format carries no frequencies.
pub fn parse_lemma_file(text: &str) -> Result<LemmaTable, LexiconError> {
    let mut table = LemmaTable::new();
    for (line, l) in data_lines(text) {
        let fields: Vec<&str> = l.split('\t').collect();
        if fields.len() != 3 {
            return Err(LexiconError::MalformedLine {
                line,
                reason: format!("expected 3 tab-separated fields, found {}", fields.len()),
            });
        }
        let surface_key = fields[0].trim();
        let lemma = fields[1].trim();
        if surface_key.trim_end_matches('#').is_empty() || lemma.is_empty() {
            return Err(LexiconError::MalformedLine {
                line,
                reason: "empty wordform or lemma".into(),
            });
        }
        let pos = parse_pos(fields[2], line)?;
        table
            .insert(LemmaEntry {
                surface_key: surface_key.to_string(),
                lemma: normalize_lemma(lemma),
                pos,
                form_frequency: None,
            })
            .map_err(|e| match e {
                LexiconError::DuplicateSurface { surface, .. } => LexiconError::DuplicateSurface {
                    surface,
                    line: Some(line),
                },
                LexiconError::InconsistentPos {
                    lemma, first, second, ..
                } => LexiconError::InconsistentPos {
                    lemma,
                    first,
                    second,
                    line: Some(line),
                },
                other => other,
            })?;
    }
    Ok(table)
}
