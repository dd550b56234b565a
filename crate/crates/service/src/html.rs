//! Server-rendered pages. Window text is the same string the JSON carries;
//! markup only wraps the keyword in `<b>` and numbers the lines.

use concordia_core::DEFAULT_KWIC_WORDS;
use maud::{html, Markup, DOCTYPE};

use crate::query::{ContextForm, LemmaListing, LetterCount, QueryKind, QueryResponse, WindowView};

fn page(title: &str, body: Markup) -> String {
    html! {
        (DOCTYPE)
        html lang="uk" {
            head {
                meta charset="utf-8";
                meta name="viewport" content="width=device-width, initial-scale=1";
                title { (title) }
            }
            body { (body) }
        }
    }
    .into_string()
}

fn window_line(w: &WindowView) -> Markup {
    let win = &w.window;
    html! {
        @if !win.left.is_empty() {
            (win.left)
            @if win.space_before_keyword { " " }
        }
        b { (win.keyword) }
        @if !win.right.is_empty() {
            @if win.space_after_keyword { " " }
            (win.right)
        }
    }
}

fn window_list(windows: &[WindowView]) -> Markup {
    html! {
        ol class="windows" {
            @for w in windows {
                li value=(w.window.number) { (window_line(w)) }
            }
        }
    }
}

pub fn query_page(resp: &QueryResponse) -> String {
    let q = &resp.query;
    let heading = match q.kind {
        QueryKind::Lemma => format!("Лема {}", q.text),
        QueryKind::Form => format!("Словоформа {}", q.text),
    };
    let context = match q.context {
        ContextForm::Kwic => format!("±{} слів", q.k.unwrap_or(DEFAULT_KWIC_WORDS)),
        ContextForm::Sentence => "речення".to_string(),
    };
    page(
        &heading,
        html! {
            h1 { (heading) }
            p class="context" { "Форма контексту: " (context) }
            p class="total" { "Контекстів: " span class="count" { (resp.total) } }
            @if let Some(windows) = &resp.windows {
                (window_list(windows))
            }
            @if let Some(groups) = &resp.groups {
                @for g in groups {
                    section class="group" {
                        h2 { (g.surface) " " span class="count" { "(" (g.total) ")" } }
                        (window_list(&g.windows))
                    }
                }
            }
        },
    )
}

pub fn error_page(status: u16, message: &str) -> String {
    page(
        &format!("Помилка {status}"),
        html! {
            h1 { "Помилка " (status) }
            p class="error" { (message) }
        },
    )
}

fn letter_bar(letters: &[LetterCount], href: impl Fn(&LetterCount) -> String) -> Markup {
    html! {
        nav class="letters" {
            @for l in letters {
                @if l.count > 0 {
                    a href=(href(l)) { (l.letter) }
                } @else {
                    span class="empty" { (l.letter) }
                }
                " "
            }
        }
    }
}

/// Letter bar on its own page.
pub fn letters_page(letters: &[LetterCount], href: impl Fn(&LetterCount) -> String) -> String {
    page(
        "Покажчик лем",
        html! {
            h1 { "Покажчик лем" }
            (letter_bar(letters, href))
        },
    )
}

/// One letter's lemmas with frequencies, each linking to its concordance.
pub fn letter_page(listing: &LemmaListing, letters: &[LetterCount], letter_href: impl Fn(&LetterCount) -> String) -> String {
    page(
        &format!("Леми на {}", listing.letter),
        html! {
            (letter_bar(letters, letter_href))
            h1 { (listing.letter) }
            ul class="lemmas" {
                @for l in &listing.lemmas {
                    li {
                        a href=(l.href) { (l.lemma) }
                        " " span class="pos" { (l.pos.code()) }
                        " " span class="frequency" { (l.frequency) }
                    }
                }
            }
        },
    )
}

fn search_panel(base: &str, context: ContextForm, k: usize) -> Markup {
    let label = match context {
        ContextForm::Kwic => format!("Форма контексту: ±{k} слів"),
        ContextForm::Sentence => "Форма контексту: речення".to_string(),
    };
    html! {
        form class="panel" method="get" action=(format!("{base}/api/search")) {
            h2 { (label) }
            input type="hidden" name="context" value=(context.as_str());
            @if context == ContextForm::Kwic {
                input type="hidden" name="k" value=(k);
            }
            input type="hidden" name="format" value="html";
            input type="text" name="q" required;
            " "
            button type="submit" { "Шукати" }
            fieldset {
                legend { "Пошук за" }
                label { input type="radio" name="match" value="exact" checked; " словоформою" }
                label { input type="radio" name="match" value="prefix"; " початковими літерами" }
                label { input type="radio" name="match" value="substring"; " довільною частиною слова" }
            }
        }
    }
}

/// Entry page: one search panel per context form and the letter bar.
pub fn entry_page(letters: &[LetterCount], base: &str, letter_href: impl Fn(&LetterCount) -> String, k: usize) -> String {
    page(
        "Конкорданс",
        html! {
            h1 { "Конкорданс" }
            div class="panels" {
                (search_panel(base, ContextForm::Kwic, k))
                (search_panel(base, ContextForm::Sentence, k))
            }
            h2 { "Пошук за лемою" }
            (letter_bar(letters, letter_href))
        },
    )
}
