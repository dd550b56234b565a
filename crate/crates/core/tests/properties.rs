//! Randomized invariants over generated corpora.

use concordia_core::collation::collate;
use concordia_core::lexicon::{
    build_lemma_table, parse_lemma_file, serialize_lemma_file, FrequencyRecord, WordformRecord,
};
use concordia_core::testkit::{self, corpus, GeneratedCorpus};
use concordia_core::text::decode_escapes;
use concordia_core::PosTag;
use proptest::prelude::*;

fn run(check: testkit::Check) -> Result<(), TestCaseError> {
    check.map_err(TestCaseError::fail)
}

fn small() -> impl Strategy<Value = GeneratedCorpus> {
    corpus(200)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn tokenize_round_trip(c in small()) {
        run(testkit::check_tokenize_round_trip(&c))?;
    }

    #[test]
    fn annotate_round_trip(c in small()) {
        run(testkit::check_annotate_round_trip(&c))?;
    }

    #[test]
    fn kwic_bounds(c in small(), k in 1usize..9) {
        run(testkit::check_kwic_bounds(&c, k))?;
    }

    #[test]
    fn sentence_windows(c in small()) {
        run(testkit::check_sentence_windows(&c))?;
    }

    #[test]
    fn search_modes(c in small()) {
        run(testkit::check_search(&c))?;
    }

    #[test]
    fn notes_never_shown(c in small()) {
        run(testkit::check_notes_excluded(&c, 7))?;
    }

    #[test]
    fn snapshot_identity(c in small()) {
        run(testkit::check_snapshot_identity(&c))?;
    }

    #[test]
    fn frequency_identity(c in small()) {
        run(testkit::check_frequency_identity(&c))?;
    }

    #[test]
    fn lemma_file_round_trip(c in small()) {
        let text = serialize_lemma_file(&c.table);
        let back = parse_lemma_file(&text).unwrap();
        prop_assert!(back.same_mapping(&c.table));
        prop_assert_eq!(serialize_lemma_file(&back), text);
    }

    #[test]
    fn decode_is_idempotent(s in "[a-zа-я&#^x0-9;]{0,24}") {
        let once = decode_escapes(&s).into_owned();
        prop_assert_eq!(decode_escapes(&once).into_owned(), once);
    }

    #[test]
    fn collation_is_a_total_order(a in "[а-яґєії'A-Za-z0-9-]{0,6}", b in "[а-яґєії'A-Za-z0-9-]{0,6}") {
        prop_assert_eq!(collate(&a, &b), collate(&b, &a).reverse());
        prop_assert_eq!(collate(&a, &b) == std::cmp::Ordering::Equal, a == b);
    }
}

fn lexicon() -> impl Strategy<Value = (Vec<FrequencyRecord>, Vec<WordformRecord>)> {
    prop::collection::btree_map("[а-я]{1,6}", (1u64..20, prop::collection::btree_set("[а-я]{1,6}", 1..4)), 1..12)
        .prop_map(|lemmas| {
            let mut freq = Vec::new();
            let mut forms = Vec::new();
            let mut used = std::collections::BTreeSet::new();
            for (i, (lemma, (f, surfaces))) in lemmas.into_iter().enumerate() {
                let lemma = lemma.to_uppercase();
                let mut total = 0;
                for s in surfaces {
                    let s = s.to_uppercase();
                    if !used.insert(s.clone()) {
                        continue;
                    }
                    total += f;
                    forms.push(WordformRecord {
                        surface_key: s.clone(),
                        disambiguated_form: s,
                        form_frequency: f,
                        lemma: lemma.clone(),
                        lemma_frequency: None,
                        line: forms.len() + 1,
                    });
                }
                if total > 0 {
                    freq.push(FrequencyRecord { frequency: total, lemma, pos: PosTag::ALL[i % 11] });
                }
            }
            (freq, forms)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn build_is_order_insensitive((freq, forms) in lexicon(), seed in any::<u64>()) {
        let a = build_lemma_table(&freq, &forms).unwrap();
        prop_assert!(a.mismatches.is_empty());
        let mut f2 = freq.clone();
        let mut w2 = forms.clone();
        let rot = (seed as usize) % f2.len().max(1);
        f2.rotate_left(rot);
        f2.reverse();
        let rot = (seed as usize >> 8) % w2.len().max(1);
        w2.rotate_left(rot);
        w2.reverse();
        let b = build_lemma_table(&f2, &w2).unwrap();
        prop_assert_eq!(&a.table, &b.table);
        prop_assert_eq!(a.table.checksum(), b.table.checksum());
    }
}
