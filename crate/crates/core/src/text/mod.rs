//! Text pipeline: tokenizing, acronym expansion, stop-word removal and
//! lemmatization for documentation strings and URI nodes.

mod lemma;
mod lexicon;

pub use lemma::{is_plural, lemmatize};
pub use lexicon::{crud_class_of, CrudClass, CrudLexicon};

use serde::{Deserialize, Serialize};

use crate::corpus::{AcronymDictionary, StopWordList};

/// Case-preserving word pieces of an identifier or phrase.
///
/// Splits on every non-letter character (digits are dropped) and on
/// lower-to-upper transitions, so `smokeCoAlarms` gives `smoke`, `Co`,
/// `Alarms` while `HVAC` stays whole.
pub fn word_pieces(s: &str) -> Vec<String> {
    let mut words = Vec::new();
    let mut current = String::new();
    let mut prev_lower = false;
    for c in s.chars() {
        if !c.is_alphabetic() {
            if !current.is_empty() {
                words.push(std::mem::take(&mut current));
            }
            prev_lower = false;
            continue;
        }
        if c.is_uppercase() && prev_lower && !current.is_empty() {
            words.push(std::mem::take(&mut current));
        }
        prev_lower = c.is_lowercase();
        current.push(c);
    }
    if !current.is_empty() {
        words.push(current);
    }
    words
}

/// Lowercase tokens of free text, before any filtering.
pub fn tokenize(text: &str) -> Vec<String> {
    word_pieces(text).into_iter().map(|w| w.to_lowercase()).collect()
}

/// Documentation after the full pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProcessedDoc {
    pub raw: String,
    pub tokens: Vec<String>,
}

impl ProcessedDoc {
    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

/// Run text through acronym expansion, stop-word removal and lemmatization.
///
/// Acronyms are matched on whole chunks (`IoT`), then on camel-case pieces,
/// then on the lemma. Expansion words are kept verbatim apart from
/// stop-word filtering. Single-letter tokens are dropped.
pub fn preprocess(text: &str, stopwords: &StopWordList, acronyms: &AcronymDictionary) -> ProcessedDoc {
    let mut tokens = Vec::new();
    let push_expansion = |tokens: &mut Vec<String>, words: &[String]| {
        for w in words {
            let w = w.to_lowercase();
            if !stopwords.contains(&w) {
                tokens.push(w);
            }
        }
    };
    for chunk in text.split(|c: char| !c.is_alphanumeric()) {
        if chunk.is_empty() {
            continue;
        }
        if let Some(exp) = acronyms.expand(chunk) {
            push_expansion(&mut tokens, exp);
            continue;
        }
        for piece in word_pieces(chunk) {
            if let Some(exp) = acronyms.expand(&piece) {
                push_expansion(&mut tokens, exp);
                continue;
            }
            let lower = piece.to_lowercase();
            if lower.chars().count() < 2 || stopwords.contains(&lower) {
                continue;
            }
            let lemma = lemmatize(&lower);
            if stopwords.contains(&lemma) {
                continue;
            }
            match acronyms.expand(&lemma) {
                Some(exp) => push_expansion(&mut tokens, exp),
                None => tokens.push(lemma),
            }
        }
    }
    ProcessedDoc {
        raw: text.to_string(),
        tokens,
    }
}
