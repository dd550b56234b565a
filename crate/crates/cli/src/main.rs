//! `concordia`: lemma tables, annotation, indexing, statistics, serving and
//! static export.
//!
//! Data goes to stdout, diagnostics to stderr. Exit status is 0 on success
//! (warnings included) and 1 on any parse or I/O error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use concordia_core::annotate::write_unknown_report;
use concordia_core::index::write_snapshot;
use concordia_core::lexicon::{
    build_lemma_table, parse_frequency_list, parse_wordform_list, serialize_lemma_file,
};
use concordia_core::{ConcordanceIndex, ParagraphMode};
use concordia_service::{export_site, load_corpus, LoadedCorpus, Server, ServiceConfig, SiteOptions};

#[derive(Debug, Parser)]
#[command(name = "concordia", version, about = "Lemmatized concordance toolkit")]
struct Cli {
    /// How paragraphs are delimited in corpus files: `line` or `blank-line`.
    #[arg(long, global = true, value_name = "MODE")]
    paragraph_mode: Option<ParagraphMode>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Merge a frequency list and wordform lists into a `.lemma` table.
    BuildLemmas {
        #[arg(long, value_name = "FILE")]
        freq: PathBuf,
        #[arg(long, value_name = "FILE", num_args = 1.., required = true)]
        forms: Vec<PathBuf>,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Tag every word of a raw text with its lemma and part of speech.
    Annotate {
        #[arg(long, value_name = "FILE")]
        text: PathBuf,
        #[arg(long, value_name = "FILE")]
        lemmas: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        /// Unknown-wordform report: surface, paragraph, sentence, count.
        #[arg(long, value_name = "FILE")]
        report: Option<PathBuf>,
    },
    /// Write an index snapshot of a tagged corpus.
    Index {
        #[arg(long, value_name = "FILE")]
        corpus: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Print counts and the lemma frequency table of a tagged corpus.
    Stats {
        #[arg(long, value_name = "FILE")]
        corpus: PathBuf,
    },
    /// Serve the query API and HTML pages.
    Serve {
        #[command(flatten)]
        source: OptionalSource,
        /// TOML config; `CONCORDIA_*` variables and flags override it.
        #[arg(long, value_name = "FILE")]
        config: Option<PathBuf>,
    },
    /// Write the static entry page and per-letter lemma pages.
    ExportSite {
        #[command(flatten)]
        source: CorpusSource,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
        /// Prefix for query links, e.g. `https://host:8080`; empty keeps
        /// them relative to the site host.
        #[arg(long, value_name = "URL", default_value = "")]
        api_base: String,
        /// KWIC window of the entry page search panel.
        #[arg(long, value_name = "K", default_value_t = concordia_core::DEFAULT_KWIC_WORDS,
              value_parser = positive)]
        k: usize,
    },
}

/// A tagged corpus, or raw text plus the table to annotate it with.
#[derive(Debug, Args)]
struct CorpusSource {
    #[arg(long, value_name = "FILE")]
    corpus: PathBuf,
    #[arg(long, value_name = "FILE")]
    lemmas: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OptionalSource {
    #[arg(long, value_name = "FILE")]
    corpus: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    lemmas: Option<PathBuf>,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(k) if k >= 1 => Ok(k),
        _ => Err(format!("expected a positive integer, got `{s}`")),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("concordia: error: {}", describe(&e));
            ExitCode::FAILURE
        }
    }
}

/// The error chain joined by `: `, skipping causes the previous message
/// already quotes.
fn describe(e: &anyhow::Error) -> String {
    let mut out = String::new();
    for cause in e.chain() {
        let text = cause.to_string();
        if !out.contains(&text) {
            if !out.is_empty() {
                out.push_str(": ");
            }
            out.push_str(&text);
        }
    }
    out
}

fn run(cli: Cli) -> Result<()> {
    let mode = cli.paragraph_mode;
    match cli.command {
        Command::BuildLemmas { freq, forms, out } => build_lemmas(&freq, &forms, &out),
        Command::Annotate { text, lemmas, out, report } => {
            annotate(&text, &lemmas, &out, report.as_deref(), mode.unwrap_or_default())
        }
        Command::Index { corpus, out } => index(&corpus, &out, mode.unwrap_or_default()),
        Command::Stats { corpus } => stats(&corpus, mode.unwrap_or_default()),
        Command::Serve { source, config } => serve(source, config.as_deref(), mode),
        Command::ExportSite { source, out, api_base, k } => {
            let loaded = load(&source.corpus, source.lemmas.as_deref(), mode.unwrap_or_default())?;
            let written = export_site(&loaded.index, &out, &SiteOptions { api_base, default_k: k })?;
            eprintln!("wrote {} pages under {}", written.len(), out.display());
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

fn warn(message: impl std::fmt::Display) {
    eprintln!("warning: {message}");
}

fn build_lemmas(freq: &Path, forms: &[PathBuf], out: &Path) -> Result<()> {
    let freq_records =
        parse_frequency_list(&read(freq)?).with_context(|| freq.display().to_string())?;
    if freq_records.is_empty() {
        warn(format!("{}: no frequency records", freq.display()));
    }
    let mut form_records = Vec::new();
    for path in forms {
        let records = parse_wordform_list(&read(path)?).with_context(|| path.display().to_string())?;
        if records.is_empty() {
            warn(format!("{}: no wordform records", path.display()));
        }
        form_records.extend(records);
    }
    // wordform line numbers are per file; name the file when there is one
    let build = build_lemma_table(&freq_records, &form_records).with_context(|| match forms {
        [only] => format!("{} + {}", freq.display(), only.display()),
        _ => format!("{} + {} wordform lists", freq.display(), forms.len()),
    })?;
    write(out, &serialize_lemma_file(&build.table))?;
    for m in &build.mismatches {
        warn(m);
    }
    eprintln!(
        "lemmas {}, wordforms {}, mismatches {}",
        build.table.lemma_count(),
        build.table.len(),
        build.mismatches.len()
    );
    Ok(())
}

fn load(corpus: &Path, lemmas: Option<&Path>, mode: ParagraphMode) -> Result<LoadedCorpus> {
    Ok(load_corpus(corpus, lemmas, mode)?)
}

fn annotate(text: &Path, lemmas: &Path, out: &Path, report: Option<&Path>, mode: ParagraphMode) -> Result<()> {
    let loaded = load(text, Some(lemmas), mode)?;
    let doc = loaded.index.document();
    write(out, &doc.render())?;
    if let Some(report) = report {
        write(report, &write_unknown_report(&loaded.unknown))?;
    }
    let words = doc.word_count();
    let unknown: usize = loaded.unknown.iter().map(|u| u.count).sum();
    eprintln!(
        "tokens {words}, tagged {}, unknown {unknown} ({} distinct)",
        words - unknown,
        loaded.unknown.len()
    );
    Ok(())
}

fn index(corpus: &Path, out: &Path, mode: ParagraphMode) -> Result<()> {
    let loaded = load(corpus, None, mode)?;
    let snapshot = loaded.index.snapshot();
    write(out, &write_snapshot(&snapshot))?;
    eprintln!("occurrences {}", snapshot.occurrences.len());
    Ok(())
}

/// Header counts, then `LEMMA POS frequency` rows by descending frequency;
/// ties keep collation order.
fn stats_report(index: &ConcordanceIndex) -> String {
    let mut rows: Vec<_> = index.lemmas();
    rows.sort_by_key(|l| std::cmp::Reverse(l.occurrences.len()));
    let mut out = format!(
        "lemmas\t{}\nwordforms\t{}\ntokens\t{}\n\n",
        index.lemma_count(),
        index.form_count(),
        index.occurrence_count()
    );
    for l in rows {
        out.push_str(&format!("{} {} {}\n", l.lemma, l.pos.code(), l.occurrences.len()));
    }
    out
}

fn stats(corpus: &Path, mode: ParagraphMode) -> Result<()> {
    let loaded = load(corpus, None, mode)?;
    print!("{}", stats_report(&loaded.index));
    Ok(())
}

fn serve(source: OptionalSource, config_path: Option<&Path>, mode: Option<ParagraphMode>) -> Result<()> {
    let mut config = ServiceConfig::load(config_path)?;
    if let Some(c) = source.corpus {
        config.corpus = Some(c);
    }
    if let Some(l) = source.lemmas {
        config.lemmas = Some(l);
    }
    if let Some(m) = mode {
        config.paragraph_mode = m;
    }
    let corpus = config
        .corpus
        .clone()
        .context("no corpus: pass --corpus or set `corpus` in the config")?;
    let loaded = load(&corpus, config.lemmas.as_deref(), config.paragraph_mode)?;
    if !loaded.unknown.is_empty() {
        warn(format!("{} wordforms missing from the lemma table", loaded.unknown.len()));
    }
    log::info!(
        "indexed {} lemmas, {} occurrences",
        loaded.index.lemma_count(),
        loaded.index.occurrence_count()
    );

    let runtime = tokio::runtime::Runtime::new().context("cannot start the async runtime")?;
    runtime.block_on(async {
        let server = Server::bind(&config, loaded.index).await?;
        // scripts and tests read the bound port from this line
        eprintln!("listening on http://{}", server.local_addr()?);
        server.run(concordia_service::shutdown_signal()).await?;
        Ok(())
    })
}
