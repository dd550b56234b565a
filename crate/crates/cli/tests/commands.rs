use std::io::{BufRead, BufReader, Read, Write};
use std::net::TcpStream;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};
use std::time::Duration;

use concordia_core::index::parse_snapshot;
use concordia_core::{parse_tagged, ConcordanceIndex, ParagraphMode};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn concordia(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_concordia"))
        .args(args)
        .env_remove("RUST_LOG")
        .output()
        .expect("binary runs")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn build_lemmas_writes_the_lemma_table() {
    let dir = tempfile::tempdir().unwrap();
    let freq = dir.path().join("a.freq");
    let forms = dir.path().join("a.forms");
    let out = dir.path().join("a.lemma");
    // frequency rows use Cyrillic POS codes, as in the source lists
    std::fs::write(&freq, "1065\tА(спол.)\tАС\n20\tАБИ\tАС\n3\tАБІХТ(ім'я)\tN\n").unwrap();
    std::fs::write(
        &forms,
        "А\tА(спол.)\t1065\tА(спол.)\t1065\nАБИ\tАБИ\t20\tАБИ\t20\nАБІХТ\tАБІХТ\t3\tАБІХТ(ім'я)\t3\n",
    )
    .unwrap();
    let run = concordia(&["build-lemmas", "--freq", p(&freq), "--forms", p(&forms), "--out", p(&out)]);
    assert!(run.status.success(), "{}", stderr(&run));
    let table = std::fs::read_to_string(&out).unwrap();
    assert!(table.lines().any(|l| l == "АБИ\tАБИ\tAC"), "{table}");
    assert!(table.lines().any(|l| l == "А\tА(спол.)\tAC"), "{table}");
    assert!(table.lines().any(|l| l == "АБІХТ\tАБІХТ(ім'я)\tN"), "{table}");
    assert!(stderr(&run).contains("lemmas 3, wordforms 3, mismatches 0"), "{}", stderr(&run));
}

#[test]
fn build_lemmas_over_the_b_lists() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("b.lemma");
    let run = concordia(&[
        "build-lemmas",
        "--freq",
        p(&fixture("b_frequency.tsv")),
        "--forms",
        p(&fixture("b_wordforms.tsv")),
        "--out",
        p(&out),
    ]);
    assert!(run.status.success(), "{}", stderr(&run));
    assert!(stderr(&run).contains("lemmas 8, wordforms 12, mismatches 0"), "{}", stderr(&run));
    let table = std::fs::read_to_string(&out).unwrap();
    assert!(table.contains("БАРАНОВІ#\tБАРАНІВ(прикм.)\tJ\n"));
    assert!(table.contains("БАРАНОВІ\tБАРАН(прізв.)\tN\n"));
}

#[test]
fn frequency_mismatch_warns_but_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let freq = dir.path().join("b.freq");
    let text = std::fs::read_to_string(fixture("b_frequency.tsv")).unwrap();
    std::fs::write(&freq, text.replace("9\tБАБА\tN", "8\tБАБА\tN")).unwrap();
    let out = dir.path().join("b.lemma");
    let run = concordia(&[
        "build-lemmas",
        "--freq",
        p(&freq),
        "--forms",
        p(&fixture("b_wordforms.tsv")),
        "--out",
        p(&out),
    ]);
    assert!(run.status.success(), "{}", stderr(&run));
    let err = stderr(&run);
    assert!(err.contains("warning: lemma `БАБА`: expected frequency 8, wordforms sum to 9"), "{err}");
    assert!(err.contains("mismatches 1"), "{err}");
    assert!(out.exists());
}

#[test]
fn empty_inputs_give_empty_table_with_warnings() {
    let dir = tempfile::tempdir().unwrap();
    let (freq, forms, out) = (dir.path().join("f"), dir.path().join("w"), dir.path().join("o"));
    std::fs::write(&freq, "").unwrap();
    std::fs::write(&forms, "").unwrap();
    let run = concordia(&["build-lemmas", "--freq", p(&freq), "--forms", p(&forms), "--out", p(&out)]);
    assert!(run.status.success(), "{}", stderr(&run));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "");
    assert!(stderr(&run).contains("warning: "), "{}", stderr(&run));
}

#[test]
fn broken_line_exits_1_naming_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let freq = dir.path().join("broken.freq");
    std::fs::write(&freq, "89\tБ\tAR\nчотири\tБА\tAI\n").unwrap();
    let out = dir.path().join("o");
    let run = concordia(&[
        "build-lemmas",
        "--freq",
        p(&freq),
        "--forms",
        p(&fixture("b_wordforms.tsv")),
        "--out",
        p(&out),
    ]);
    assert_eq!(run.status.code(), Some(1));
    let err = stderr(&run);
    assert!(err.contains("broken.freq") && err.contains("line 2"), "{err}");
    assert!(!out.exists());
}

#[test]
fn annotate_reproduces_the_marked_opening() {
    let dir = tempfile::tempdir().unwrap();
    let (out, report) = (dir.path().join("opening.tagged"), dir.path().join("unknown.tsv"));
    let run = concordia(&[
        "annotate",
        "--text",
        p(&fixture("opening.txt")),
        "--lemmas",
        p(&fixture("fixture.lemma")),
        "--out",
        p(&out),
        "--report",
        p(&report),
    ]);
    assert!(run.status.success(), "{}", stderr(&run));
    assert_eq!(
        std::fs::read(&out).unwrap(),
        std::fs::read(fixture("opening.tagged")).unwrap()
    );
    assert_eq!(std::fs::read_to_string(&report).unwrap(), "");
    assert!(stderr(&run).contains("tokens 67, tagged 67, unknown 0"), "{}", stderr(&run));
}

#[test]
fn annotate_reports_unknown_words() {
    let dir = tempfile::tempdir().unwrap();
    let text = dir.path().join("t.txt");
    std::fs::write(&text, "Я служу.\nЯ шмигаю.\n").unwrap();
    let (out, report) = (dir.path().join("t.tagged"), dir.path().join("r.tsv"));
    let run = concordia(&[
        "annotate",
        "--text",
        p(&text),
        "--lemmas",
        p(&fixture("fixture.lemma")),
        "--out",
        p(&out),
        "--report",
        p(&report),
    ]);
    assert!(run.status.success(), "{}", stderr(&run));
    assert_eq!(std::fs::read_to_string(&report).unwrap(), "шмигаю\t2\t1\t1\n");
    assert!(stderr(&run).contains("tokens 4, tagged 3, unknown 1 (1 distinct)"), "{}", stderr(&run));
    let tagged = std::fs::read_to_string(&out).unwrap();
    assert!(tagged.contains("Я<P|Я> шмигаю."), "{tagged}");
}

#[test]
fn unbalanced_brace_aborts_with_coordinates() {
    let dir = tempfile::tempdir().unwrap();
    let text = dir.path().join("t.txt");
    std::fs::write(&text, "Я служу.\nЯ {служу.\n").unwrap();
    let out = dir.path().join("t.tagged");
    let run = concordia(&["annotate", "--text", p(&text), "--lemmas", p(&fixture("fixture.lemma")), "--out", p(&out)]);
    assert_eq!(run.status.code(), Some(1));
    assert!(stderr(&run).contains("t.txt:2:3:"), "{}", stderr(&run));
}

#[test]
fn malformed_tag_aborts_with_coordinates() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("c.tagged");
    std::fs::write(&corpus, "я<P|Я>\nслужу<V СЛУЖИТИ>\n").unwrap();
    let run = concordia(&["stats", "--corpus", p(&corpus)]);
    assert_eq!(run.status.code(), Some(1));
    assert!(stderr(&run).contains("c.tagged:2:"), "{}", stderr(&run));
}

/// The dialogue fixture tagged through the CLI, for the corpus commands.
fn tagged_dialogue(dir: &Path) -> PathBuf {
    let out = dir.join("dialogue.tagged");
    let run = concordia(&[
        "annotate",
        "--text",
        p(&fixture("dialogue.txt")),
        "--lemmas",
        p(&fixture("fixture.lemma")),
        "--out",
        p(&out),
    ]);
    assert!(run.status.success(), "{}", stderr(&run));
    out
}

#[test]
fn stats_lists_lemmas_by_frequency() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = tagged_dialogue(dir.path());
    let run = concordia(&["stats", "--corpus", p(&corpus)]);
    assert!(run.status.success(), "{}", stderr(&run));
    let out = stdout(&run);
    assert!(out.lines().any(|l| l == "Я P 12"), "{out}");

    let rows: Vec<(String, usize)> = out
        .lines()
        .skip_while(|l| !l.is_empty())
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(' ').collect();
            (f[0].to_string(), f[2].parse().unwrap())
        })
        .collect();
    assert!(rows.windows(2).all(|w| w[0].1 >= w[1].1));

    let doc = parse_tagged(&std::fs::read_to_string(&corpus).unwrap(), ParagraphMode::Line).unwrap();
    let index = ConcordanceIndex::build(doc);
    assert_eq!(rows.len(), index.lemma_count());
    assert_eq!(rows.iter().map(|r| r.1).sum::<usize>(), index.occurrence_count());
    assert!(out.starts_with(&format!(
        "lemmas\t{}\nwordforms\t{}\ntokens\t{}\n",
        index.lemma_count(),
        index.form_count(),
        index.occurrence_count()
    )));
}

#[test]
fn stats_of_empty_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("empty");
    std::fs::write(&corpus, "").unwrap();
    let run = concordia(&["stats", "--corpus", p(&corpus)]);
    assert!(run.status.success());
    assert_eq!(stdout(&run), "lemmas\t0\nwordforms\t0\ntokens\t0\n\n");
}

#[test]
fn snapshot_is_deterministic_and_matches_a_fresh_build() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = tagged_dialogue(dir.path());
    let (a, b) = (dir.path().join("a.idx"), dir.path().join("b.idx"));
    for out in [&a, &b] {
        let run = concordia(&["index", "--corpus", p(&corpus), "--out", p(out)]);
        assert!(run.status.success(), "{}", stderr(&run));
    }
    let bytes = std::fs::read(&a).unwrap();
    assert_eq!(bytes, std::fs::read(&b).unwrap());

    let doc = parse_tagged(&std::fs::read_to_string(&corpus).unwrap(), ParagraphMode::Line).unwrap();
    let fresh = ConcordanceIndex::build(doc).snapshot();
    assert_eq!(parse_snapshot(std::str::from_utf8(&bytes).unwrap()).unwrap(), fresh);
}

#[test]
fn paragraph_mode_flag_changes_segmentation() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("c.tagged");
    std::fs::write(&corpus, "я<P|Я>\nя<P|Я>\n\nя<P|Я>\n").unwrap();
    let count = |mode: &str| {
        let out = dir.path().join(format!("{mode}.idx"));
        let run = concordia(&["--paragraph-mode", mode, "index", "--corpus", p(&corpus), "--out", p(&out)]);
        assert!(run.status.success(), "{}", stderr(&run));
        let snap = parse_snapshot(&std::fs::read_to_string(&out).unwrap()).unwrap();
        snap.occurrences.iter().map(|o| o.paragraph_index).max().unwrap() + 1
    };
    assert_eq!(count("line"), 3);
    assert_eq!(count("blank-line"), 2);

    let run = concordia(&["stats", "--corpus", p(&corpus), "--paragraph-mode", "pages"]);
    assert_eq!(run.status.code(), Some(2));
    assert!(stderr(&run).contains("pages"));
}

#[test]
fn export_site_writes_entry_and_letter_pages() {
    let dir = tempfile::tempdir().unwrap();
    let site = dir.path().join("site");
    let run = concordia(&[
        "export-site",
        "--corpus",
        p(&fixture("dialogue.txt")),
        "--lemmas",
        p(&fixture("fixture.lemma")),
        "--out",
        p(&site),
    ]);
    assert!(run.status.success(), "{}", stderr(&run));
    let entry = std::fs::read_to_string(site.join("index.html")).unwrap();
    assert!(entry.contains("href=\"letters/%D0%AF.html\""), "{entry}");
    let letter = std::fs::read_to_string(site.join("letters/Я.html")).unwrap();
    assert!(letter.contains("/api/concordance?lemma=%D0%AF&amp;context=kwic&amp;format=html"), "{letter}");
}

fn http_get(addr: &str, path: &str) -> (u16, String) {
    let mut stream = TcpStream::connect(addr).unwrap();
    stream.set_read_timeout(Some(Duration::from_secs(10))).unwrap();
    write!(stream, "GET {path} HTTP/1.1\r\nHost: {addr}\r\nConnection: close\r\n\r\n").unwrap();
    let mut response = String::new();
    stream.read_to_string(&mut response).unwrap();
    let status = response.split(' ').nth(1).unwrap().parse().unwrap();
    let body = response.split_once("\r\n\r\n").map(|(_, b)| b.to_string()).unwrap_or_default();
    (status, body)
}

#[test]
fn serve_answers_letters() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("concordia.toml");
    std::fs::write(&config, "listen = \"127.0.0.1\"\nport = 0\n").unwrap();
    let mut child = Command::new(env!("CARGO_BIN_EXE_concordia"))
        .args([
            "serve",
            "--config",
            p(&config),
            "--corpus",
            p(&fixture("dialogue.txt")),
            "--lemmas",
            p(&fixture("fixture.lemma")),
        ])
        .env_remove("RUST_LOG")
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut lines = BufReader::new(child.stderr.take().unwrap()).lines();
    let addr = loop {
        let line = lines.next().expect("server announces its address").unwrap();
        if let Some(a) = line.strip_prefix("listening on http://") {
            break a.to_string();
        }
    };
    let (status, body) = http_get(&addr, "/api/letters");
    let (missing, _) = http_get(&addr, "/api/lemmas/zz");
    child.kill().unwrap();
    child.wait().unwrap();
    assert_eq!(status, 200);
    assert!(body.contains("\"letter\":\"Я\""), "{body}");
    assert_eq!(missing, 404);
}

#[test]
fn bad_config_key_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("concordia.toml");
    std::fs::write(&config, "port = 0\ncorpus_file = \"x.txt\"\n").unwrap();
    let run = concordia(&["serve", "--config", p(&config), "--corpus", p(&fixture("dialogue.txt"))]);
    assert_eq!(run.status.code(), Some(1));
    let err = stderr(&run);
    assert!(err.contains("corpus_file"), "{err}");
    assert!(err.contains("concordia.toml"), "{err}");
}

#[test]
fn serve_without_corpus_fails() {
    let run = concordia(&["serve"]);
    assert_eq!(run.status.code(), Some(1));
    assert!(stderr(&run).contains("no corpus"));
}

#[test]
fn missing_input_is_an_io_error() {
    let run = concordia(&["stats", "--corpus", "/nonexistent/corpus.tagged"]);
    assert_eq!(run.status.code(), Some(1));
    assert!(stderr(&run).contains("/nonexistent/corpus.tagged"));
}
