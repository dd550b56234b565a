//! Random corpora and the invariant checks run against them.
//!
//! Shared by the property tests and the acceptance suite. Every check
//! recomputes its expectation from the token stream instead of trusting
//! the code under test.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use crate::collation::alphabet;
use crate::index::{parse_snapshot, write_snapshot};
use crate::lexicon::LemmaEntry;
use crate::normalize::fold_key;
use crate::text::{
    decode_escapes, detokenize, is_dash, segment_paragraphs, sentence_spans, strip_translations,
    tokenize,
};
use crate::{
    annotate, parse_tagged, strip_tags, Annotation, ConcordanceIndex, ContextMode, ContextWindow,
    LemmaTable, MatchMode, ParagraphMode, PosTag, TaggedToken, TokenKind,
};

const CYRILLIC: &[char] = &[
    'а', 'б', 'в', 'г', 'ґ', 'д', 'е', 'є', 'ж', 'з', 'и', 'і', 'ї', 'й', 'к', 'л', 'м', 'н', 'о',
    'п', 'р', 'с', 'т', 'у', 'ф', 'х', 'ц', 'ч', 'ш', 'щ', 'ь', 'ю', 'я',
];
// no `q`: note payloads are spelled with it and must stay unique
const LATIN: &[char] = &['a', 'b', 'd', 'e', 'g', 'l', 'm', 'n', 'o', 'r', 's', 't', 'u', 'v'];
const ESCAPES: &[&str] = &["&auml^", "&ouml^", "&uuml^", "&szlig^", "&eacute^", "&lstrok^", "&zdot^"];
const PUNCTUATION: &[&str] = &[
    ",", ",", ",", ".", ".", "!", "?", "...", "…", ";", ":", "--", "–", "—", "\"", "«", "»", "(",
    ")", "1848", "!..",
];

/// A generated text with the lemma table it is annotated against.
#[derive(Debug, Clone)]
pub struct GeneratedCorpus {
    pub text: String,
    pub table: LemmaTable,
    /// Payloads of the `{...}` notes; none of them occurs elsewhere.
    pub notes: Vec<String>,
    /// Search strings derived from the vocabulary.
    pub queries: Vec<String>,
    pub token_count: usize,
}

#[derive(Debug, Clone)]
enum Item {
    Word { vocab: usize, marker: usize, capital: bool },
    Punct { idx: usize, glued: bool },
    Note { glued: bool },
    Break { blank: bool, trailing_space: bool },
}

fn cyrillic_word() -> impl Strategy<Value = String> {
    let part = || prop::collection::vec(prop::sample::select(CYRILLIC), 1..6);
    (part(), prop::option::weighted(0.15, (prop::sample::select(&["'", "’", "-"][..]), part())))
        .prop_map(|(a, tail)| {
            let mut w: String = a.into_iter().collect();
            if let Some((joint, b)) = tail {
                w.push_str(joint);
                w.extend(b);
            }
            w
        })
}

fn latin_word() -> impl Strategy<Value = String> {
    (
        prop::collection::vec(prop::sample::select(LATIN), 1..4),
        prop::sample::select(ESCAPES),
        prop::collection::vec(prop::sample::select(LATIN), 0..3),
    )
        .prop_map(|(a, esc, b)| {
            let mut w: String = a.into_iter().collect();
            w.push_str(esc);
            w.extend(b);
            w
        })
}

fn item(vocab: usize) -> impl Strategy<Value = Item> {
    prop_oneof![
        12 => (0..vocab, prop::sample::select(&[0usize, 0, 0, 0, 1, 2][..]), prop::bool::weighted(0.25))
            .prop_map(|(vocab, marker, capital)| Item::Word { vocab, marker, capital }),
        5 => (0..PUNCTUATION.len(), any::<bool>()).prop_map(|(idx, glued)| Item::Punct { idx, glued }),
        1 => prop::bool::weighted(0.3).prop_map(|glued| Item::Note { glued }),
        1 => (any::<bool>(), prop::bool::weighted(0.2))
            .prop_map(|(blank, trailing_space)| Item::Break { blank, trailing_space }),
    ]
}

fn capitalize(word: &str) -> String {
    let mut chars = word.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() => c.to_uppercase().chain(chars).collect(),
        _ => word.to_string(),
    }
}

/// Corpora of at most `max_items` tokens (notes and words each count one).
pub fn corpus(max_items: usize) -> impl Strategy<Value = GeneratedCorpus> {
    let vocab = prop::collection::vec(
        prop_oneof![8 => cyrillic_word(), 1 => latin_word()],
        1..30,
    )
    .prop_map(|words| {
        let mut seen = BTreeSet::new();
        words
            .into_iter()
            .filter(|w| seen.insert(fold_key(w)))
            .collect::<Vec<_>>()
    });
    vocab.prop_flat_map(move |vocab| {
        let n = vocab.len();
        (
            Just(vocab),
            prop::collection::vec(item(n), 0..=max_items),
            // (known?, lemma index) for every (word, marker) pair
            prop::collection::vec((prop::bool::weighted(0.85), 0..n), n * 3),
            prop::collection::vec((0..n, 0usize..4, 0usize..3, any::<bool>()), 1..6),
        )
            .prop_map(|(vocab, items, entries, queries)| assemble(&vocab, &items, &entries, &queries))
    })
}

fn assemble(
    vocab: &[String],
    items: &[Item],
    entries: &[(bool, usize)],
    queries: &[(usize, usize, usize, bool)],
) -> GeneratedCorpus {
    let mut table = LemmaTable::new();
    for (i, &(known, lemma)) in entries.iter().enumerate() {
        if !known {
            continue;
        }
        let (word, marker) = (&vocab[i / 3], i % 3);
        let qualifier = if lemma % 4 == 1 { "(ім.)" } else { "" };
        table
            .insert(LemmaEntry {
                surface_key: format!("{word}{}", "#".repeat(marker)),
                lemma: format!("{}{qualifier}", decode_escapes(&vocab[lemma]).to_uppercase()),
                pos: PosTag::ALL[lemma % PosTag::ALL.len()],
                form_frequency: None,
            })
            .expect("generated table is consistent");
    }

    let mut text = String::new();
    let mut notes = Vec::new();
    let mut token_count = 0;
    let mut line_start = true;
    for it in items {
        match it {
            Item::Break { blank, trailing_space } => {
                if *trailing_space {
                    text.push(' ');
                }
                text.push('\n');
                if *blank {
                    text.push('\n');
                }
                line_start = true;
                continue;
            }
            Item::Word { vocab: v, marker, capital } => {
                if !line_start {
                    text.push(' ');
                }
                let w = &vocab[*v];
                text.push_str(&if *capital { capitalize(w) } else { w.clone() });
                text.push_str(&"#".repeat(*marker));
            }
            Item::Punct { idx, glued } => {
                if !line_start && !glued {
                    text.push(' ');
                }
                text.push_str(PUNCTUATION[*idx]);
            }
            Item::Note { glued } => {
                if !line_start && !glued {
                    text.push(' ');
                }
                let payload = format!("qz{}q", notes.len());
                text.push('{');
                text.push_str(&payload);
                text.push_str(" qq}");
                notes.push(payload);
            }
        }
        token_count += 1;
        line_start = false;
    }

    let queries = queries
        .iter()
        .map(|&(v, cut, shape, upper)| {
            let word = decode_escapes(&vocab[v]).into_owned();
            let chars: Vec<char> = word.chars().collect();
            let cut = cut.min(chars.len().saturating_sub(1));
            let q: String = match shape {
                0 => word.clone(),
                1 => chars[..chars.len() - cut].iter().collect(),
                _ => chars[cut.min(chars.len() / 2)..].iter().collect(),
            };
            if upper {
                q.to_uppercase()
            } else {
                q
            }
        })
        .collect();

    GeneratedCorpus {
        text,
        table,
        notes,
        queries,
        token_count,
    }
}

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

pub fn annotated(c: &GeneratedCorpus) -> Annotation {
    annotate(&segment_paragraphs(&c.text, ParagraphMode::Line), &c.table)
        .expect("generated text is well formed")
}

pub fn indexed(c: &GeneratedCorpus) -> ConcordanceIndex {
    ConcordanceIndex::build(annotated(c).document)
}

/// Text with whitespace removed, for spacing-independent comparison.
fn ink(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

fn visible_ink(tokens: &[TaggedToken]) -> String {
    tokens
        .iter()
        .filter(|t| t.kind != TokenKind::TranslationNote)
        .map(|t| decode_escapes(&t.surface).into_owned())
        .collect()
}

fn is_unit(kind: TokenKind, surface: &str) -> bool {
    kind == TokenKind::Word || (kind == TokenKind::Punctuation && is_dash(surface))
}

/// (words, budget units) in a rendered context side.
fn count_side(side: &str) -> Result<(usize, usize), String> {
    let tokens = tokenize(side).map_err(|e| format!("window side `{side}` does not tokenize: {e}"))?;
    let words = tokens.iter().filter(|t| t.is_word()).count();
    let units = tokens.iter().filter(|t| is_unit(t.kind, &t.surface)).count();
    Ok((words, units))
}

/// detokenize(tokenize(p)) == p; words never carry markup characters;
/// strip_translations drops exactly the notes.
pub fn check_tokenize_round_trip(c: &GeneratedCorpus) -> Check {
    let doc = segment_paragraphs(&c.text, ParagraphMode::Line);
    for p in &doc.paragraphs {
        let tokens = tokenize(p).map_err(|e| e.to_string())?;
        ensure!(detokenize(&tokens) == *p, "round trip changed `{p}`");
        for t in tokens.iter().filter(|t| t.is_word()) {
            ensure!(
                !t.surface.contains(['#', '{', '}', '<', '>', '|']),
                "word `{}` carries markup",
                t.surface
            );
        }
        let stripped = strip_translations(&tokens);
        let kept: Vec<_> = tokens
            .iter()
            .filter(|t| t.kind != TokenKind::TranslationNote)
            .cloned()
            .collect();
        ensure!(stripped == kept, "strip_translations touched non-note tokens in `{p}`");
    }
    ensure!(doc.source() == c.text, "paragraph segmentation lost text");
    Ok(())
}

/// strip_tags(annotate(raw)) == raw without markers; parse_tagged(render)
/// restores the document; every word is tagged or reported.
pub fn check_annotate_round_trip(c: &GeneratedCorpus) -> Check {
    let ann = annotated(c);
    let doc = &ann.document;
    ensure!(
        strip_tags(doc) == c.text.replace('#', ""),
        "strip_tags differs from the marker-free source"
    );
    let reparsed = parse_tagged(&doc.render(), ParagraphMode::Line).map_err(|e| e.to_string())?;
    ensure!(
        reparsed.paragraphs == doc.paragraphs && reparsed.separators == doc.separators,
        "parse_tagged(render(doc)) != doc"
    );
    let reported: BTreeSet<String> = ann.unknown.iter().map(|u| fold_key(&u.surface)).collect();
    let raw = segment_paragraphs(&c.text, ParagraphMode::Line);
    for (p, para) in raw.paragraphs.iter().zip(&doc.paragraphs) {
        let tokens = tokenize(p).map_err(|e| e.to_string())?;
        for (raw_tok, tok) in tokens.iter().zip(&para.tokens) {
            if !raw_tok.is_word() {
                ensure!(tok.tag.is_none(), "non-word `{}` tagged", tok.surface);
                continue;
            }
            let known = c.table.lookup(&raw_tok.surface, raw_tok.homograph_marker);
            match (known, &tok.tag) {
                (Some(e), Some(tag)) => ensure!(
                    e.lemma == tag.lemma && e.pos == tag.pos,
                    "`{}` tagged with the wrong lemma",
                    tok.surface
                ),
                (None, None) => ensure!(
                    reported.contains(&fold_key(&raw_tok.marked_surface())),
                    "untagged `{}` missing from the report",
                    raw_tok.marked_surface()
                ),
                _ => return Err(format!("`{}` tag disagrees with the table", tok.surface)),
            }
        }
    }
    ensure!(annotated(c).document.render() == doc.render(), "annotation is not deterministic");
    Ok(())
}

fn check_window_common(idx: &ConcordanceIndex, w: &ContextWindow) -> Check {
    let occ = &w.occurrence;
    let para = &idx.document().paragraphs[occ.paragraph_index];
    let token = &para.tokens[occ.token_index];
    ensure!(token.is_word(), "occurrence points at a non-word");
    ensure!(
        token.lemma() == Some(occ.lemma.as_str()) && token.pos() == Some(occ.pos),
        "occurrence lemma differs from its token"
    );
    ensure!(
        w.keyword == occ.surface && occ.surface == decode_escapes(&token.surface),
        "keyword `{}` is not the occurrence surface",
        w.keyword
    );
    ensure!(
        visible_ink(&para.tokens).contains(&ink(&w.line())),
        "window `{}` leaves its paragraph",
        w.line()
    );
    Ok(())
}

/// KWIC sides hold at most `k` words and exactly min(k, available) budget
/// units (words plus free-standing dashes), inside the paragraph.
pub fn check_kwic_bounds(c: &GeneratedCorpus, k: usize) -> Check {
    let idx = indexed(c);
    for entry in idx.lemmas() {
        let windows = idx.concordance_for_lemma(&entry.lemma, ContextMode::Kwic(k));
        ensure!(windows.len() == entry.occurrences.len(), "window count differs for {}", entry.lemma);
        for (i, w) in windows.iter().enumerate() {
            ensure!(w.number == i + 1, "windows not numbered from 1");
            check_window_common(&idx, w)?;
            let para = &idx.document().paragraphs[w.occurrence.paragraph_index];
            let ti = w.occurrence.token_index;
            let units = |r: &[TaggedToken]| r.iter().filter(|t| is_unit(t.kind, &t.surface)).count();
            let (avail_left, avail_right) = (units(&para.tokens[..ti]), units(&para.tokens[ti + 1..]));
            let (lw, lu) = count_side(&w.left)?;
            let (rw, ru) = count_side(&w.right)?;
            ensure!(lw <= k && rw <= k, "more than {k} words in `{}`", w.line());
            ensure!(
                lu == k.min(avail_left) && ru == k.min(avail_right),
                "window `{}` has {lu}/{ru} units, expected {}/{}",
                w.line(),
                k.min(avail_left),
                k.min(avail_right)
            );
        }
    }
    Ok(())
}

/// Sentence windows cover the previous, own and next sentence of the
/// paragraph (1 to 3 sentences).
pub fn check_sentence_windows(c: &GeneratedCorpus) -> Check {
    let idx = indexed(c);
    for entry in idx.lemmas() {
        for w in idx.concordance_for_lemma(&entry.lemma, ContextMode::Sentence) {
            check_window_common(&idx, &w)?;
            let para = &idx.document().paragraphs[w.occurrence.paragraph_index];
            let spans = sentence_spans(&para.tokens);
            ensure!(spans == para.sentences, "stored sentence spans are stale");
            let mut cursor = 0;
            for s in &spans {
                ensure!(s.start == cursor && s.end > s.start, "sentence spans do not partition");
                cursor = s.end;
            }
            ensure!(cursor == para.tokens.len(), "sentence spans do not cover the paragraph");
            let s = w.occurrence.sentence_index;
            ensure!(spans[s].contains(&w.occurrence.token_index), "occurrence outside its sentence");
            let first = s.saturating_sub(1);
            let last = (s + 1).min(spans.len() - 1);
            ensure!((1..=3).contains(&(last - first + 1)), "window spans {} sentences", last - first + 1);
            let expected = visible_ink(&para.tokens[spans[first].start..spans[last].end]);
            ensure!(
                ink(&w.line()) == expected,
                "sentence window `{}` is not sentences {first}..={last}",
                w.line()
            );
        }
    }
    Ok(())
}

/// exact ⊆ prefix ⊆ substring, and every mode equals a linear scan.
pub fn check_search(c: &GeneratedCorpus) -> Check {
    let idx = indexed(c);
    let doc = idx.document();
    for q in &c.queries {
        if q.trim().is_empty() {
            ensure!(idx.search_forms(q, MatchMode::Exact).is_err(), "blank query accepted");
            continue;
        }
        let key = fold_key(q.trim());
        let mut by_mode = Vec::new();
        for mode in [MatchMode::Exact, MatchMode::Prefix, MatchMode::Substring] {
            let got: BTreeMap<String, usize> = idx
                .search_forms(q, mode)
                .map_err(|e| e.to_string())?
                .into_iter()
                .map(|m| (m.surface, m.occurrences.len()))
                .collect();
            let mut naive: BTreeMap<String, usize> = BTreeMap::new();
            for (_, _, t) in doc.words().filter(|(_, _, t)| t.tag.is_some()) {
                let form = fold_key(&t.surface);
                let hit = match mode {
                    MatchMode::Exact => form == key,
                    MatchMode::Prefix => form.starts_with(&key),
                    MatchMode::Substring => form.contains(&key),
                };
                if hit {
                    *naive.entry(form).or_default() += 1;
                }
            }
            ensure!(got == naive, "{mode:?} search for `{q}` differs from a linear scan");
            by_mode.push(got.into_keys().collect::<BTreeSet<_>>());
        }
        ensure!(
            by_mode[0].is_subset(&by_mode[1]) && by_mode[1].is_subset(&by_mode[2]),
            "match modes are not nested for `{q}`"
        );
    }
    Ok(())
}

/// No note payload shows up in any window of either form.
pub fn check_notes_excluded(c: &GeneratedCorpus, k: usize) -> Check {
    let idx = indexed(c);
    for entry in idx.lemmas() {
        for mode in [ContextMode::Kwic(k), ContextMode::Sentence] {
            for w in idx.concordance_for_lemma(&entry.lemma, mode) {
                let line = w.line();
                for note in &c.notes {
                    ensure!(!line.contains(note.as_str()), "note `{note}` leaked into `{line}`");
                }
                ensure!(!line.contains(['{', '}']), "brace leaked into `{line}`");
            }
        }
    }
    Ok(())
}

/// Writing and re-reading a snapshot, or rebuilding the index from the
/// rendered corpus, gives the same snapshot.
pub fn check_snapshot_identity(c: &GeneratedCorpus) -> Check {
    let idx = indexed(c);
    let snap = idx.snapshot();
    let written = write_snapshot(&snap);
    let parsed = parse_snapshot(&written).map_err(|e| e.to_string())?;
    ensure!(parsed == snap, "snapshot does not survive a write/parse cycle");
    let rebuilt = ConcordanceIndex::build(
        parse_tagged(&idx.document().render(), ParagraphMode::Line).map_err(|e| e.to_string())?,
    );
    ensure!(write_snapshot(&rebuilt.snapshot()) == written, "rebuilt index differs");
    Ok(())
}

/// Per-lemma counts agree across the index, the concordance and a scan; the
/// alphabet map partitions the lemmas.
pub fn check_frequency_identity(c: &GeneratedCorpus) -> Check {
    let idx = indexed(c);
    let mut scan: BTreeMap<String, usize> = BTreeMap::new();
    for (_, _, t) in idx.document().words() {
        if let Some(l) = t.lemma() {
            *scan.entry(fold_key(l)).or_default() += 1;
        }
    }
    ensure!(scan.len() == idx.lemma_count(), "lemma count differs from a scan");
    let mut listed = BTreeSet::new();
    for entry in idx.lemmas() {
        let n = scan.get(&fold_key(&entry.lemma)).copied().unwrap_or(0);
        ensure!(entry.occurrences.len() == n, "{} indexed {} times, scanned {n}", entry.lemma, entry.occurrences.len());
        ensure!(
            idx.concordance_for_lemma(&entry.lemma, ContextMode::Sentence).len() == n,
            "concordance size differs for {}",
            entry.lemma
        );
        listed.insert(entry.lemma.clone());
    }
    let mut bucketed = BTreeSet::new();
    ensure!(idx.alphabet_map().len() == alphabet().len(), "alphabet map is incomplete");
    for (_, lemmas) in idx.alphabet_map() {
        for l in lemmas {
            ensure!(bucketed.insert(l.clone()), "{l} listed under two letters");
        }
    }
    ensure!(bucketed == listed, "alphabet map does not cover the lemmas");
    Ok(())
}
