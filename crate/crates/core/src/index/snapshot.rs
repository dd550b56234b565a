//! Line-oriented index snapshot.
//!
//! ```text
//! concordia-index	1
//! document-sha256	<hex>
//! occurrences	<n>
//! <paragraph>	<sentence>	<token>	<surface>	<lemma>	<POS>
//! ...
//! ```
//!
//! Indices are 0-based; records follow document order.

use std::fmt::Write as _;

use super::{ConcordanceIndex, Occurrence};
use crate::PosTag;

pub const SNAPSHOT_MAGIC: &str = "concordia-index";
pub const SNAPSHOT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snapshot {
    pub document_checksum: String,
    pub occurrences: Vec<Occurrence>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SnapshotError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("unsupported snapshot version {0}")]
    Version(u32),
}

impl ConcordanceIndex {
    /// Every occurrence in document order.
    pub fn snapshot(&self) -> Snapshot {
        let mut occurrences: Vec<Occurrence> = self
            .by_lemma
            .values()
            .flat_map(|l| l.occurrences.iter().cloned())
            .collect();
        occurrences.sort_by_key(|o| (o.paragraph_index, o.token_index));
        Snapshot {
            document_checksum: self.document().checksum(),
            occurrences,
        }
    }
}

pub fn write_snapshot(snapshot: &Snapshot) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{SNAPSHOT_MAGIC}\t{SNAPSHOT_VERSION}");
    let _ = writeln!(out, "document-sha256\t{}", snapshot.document_checksum);
    let _ = writeln!(out, "occurrences\t{}", snapshot.occurrences.len());
    for o in &snapshot.occurrences {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            o.paragraph_index, o.sentence_index, o.token_index, o.surface, o.lemma, o.pos
        );
    }
    out
}

pub fn parse_snapshot(text: &str) -> Result<Snapshot, SnapshotError> {
    let malformed = |line: usize, reason: &str| SnapshotError::Malformed {
        line,
        reason: reason.to_string(),
    };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let mut header = |name: &str| -> Result<String, SnapshotError> {
        let (n, l) = lines.next().ok_or_else(|| malformed(0, "truncated header"))?;
        match l.split_once('\t') {
            Some((k, v)) if k == name => Ok(v.to_string()),
            _ => Err(malformed(n, &format!("expected `{name}` header"))),
        }
    };
    let version: u32 = header(SNAPSHOT_MAGIC)?
        .parse()
        .map_err(|_| malformed(1, "bad version"))?;
    if version != SNAPSHOT_VERSION {
        return Err(SnapshotError::Version(version));
    }
    let document_checksum = header("document-sha256")?;
    let count: usize = header("occurrences")?
        .parse()
        .map_err(|_| malformed(3, "bad occurrence count"))?;

    let mut occurrences = Vec::with_capacity(count);
    for (n, l) in lines {
        let f: Vec<&str> = l.split('\t').collect();
        if f.len() != 6 {
            return Err(malformed(n, "expected 6 fields"));
        }
        let num = |s: &str| s.parse::<usize>().map_err(|_| malformed(n, "bad index"));
        occurrences.push(Occurrence {
            paragraph_index: num(f[0])?,
            sentence_index: num(f[1])?,
            token_index: num(f[2])?,
            surface: f[3].to_string(),
            lemma: f[4].to_string(),
            pos: PosTag::from_code(f[5]).ok_or_else(|| malformed(n, "bad POS"))?,
        });
    }
    if occurrences.len() != count {
        return Err(malformed(3, "occurrence count does not match records"));
    }
    Ok(Snapshot {
        document_checksum,
        occurrences,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annotate::parse_tagged;
    use crate::text::ParagraphMode;

    #[test]
    fn write_then_parse() {
        let doc = parse_tagged("Се<P|СЕЙ> було<V|БУТИ>.\nвін<P|ВІН>", ParagraphMode::Line).unwrap();
        let snap = ConcordanceIndex::build(doc).snapshot();
        let text = write_snapshot(&snap);
        assert!(text.starts_with("concordia-index\t1\ndocument-sha256\t"));
        assert!(text.ends_with("occurrences\t3\n0\t0\t0\tСе\tСЕЙ\tP\n0\t0\t1\tбуло\tБУТИ\tV\n1\t0\t0\tвін\tВІН\tP\n"));
        assert_eq!(parse_snapshot(&text).unwrap(), snap);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_snapshot("").is_err());
        assert_eq!(
            parse_snapshot("concordia-index\t2\n"),
            Err(SnapshotError::Version(2))
        );
        assert!(parse_snapshot("concordia-index\t1\ndocument-sha256\tx\noccurrences\t1\n").is_err());
    }
}
