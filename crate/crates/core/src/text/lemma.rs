//! Rule-based English lemmatizer.
//!
//! Suffix rules (noun plurals, `-ed`, `-ing`) are applied repeatedly until
//! the word stops changing, after consulting an embedded table of irregular
//! forms and a list of words that only look inflected. Every rule shortens
//! the word and every exception maps to a fixed point, so the loop ends and
//! the result is idempotent.

use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

const EXCEPTIONS: &str = include_str!("../../data/lemma_exceptions.tsv");

/// Nouns that are not plurals even when they end in `s`, and mass nouns.
const UNCOUNTABLE: &[&str] = &[
    "access", "advice", "aircraft", "alias", "analytics", "atlas", "bias", "canvas", "chaos",
    "data", "deer", "diagnostics", "economics", "electronics", "equipment", "ethos", "evidence",
    "feedback", "firmware", "fish", "furniture", "gas", "genetics", "hardware", "headquarters",
    "health", "info", "information", "knowledge", "kudos", "lens", "logistics", "luggage",
    "mathematics", "means", "media", "metadata", "money", "music", "news", "personnel",
    "physics", "research", "robotics", "series", "sheep", "software", "species", "statistics",
    "status", "telemetry", "traffic", "weather",
];

/// Base forms whose endings would otherwise trigger a suffix rule.
const PROTECTED: &[&str] = &[
    "anything", "bed", "binding", "bleed", "breed", "bred", "building", "ceiling", "during",
    "embed", "evening", "everything", "exceed", "feed", "finding", "hundred", "kindred", "king",
    "listing", "mapping", "meeting", "morning", "need", "nothing", "opening", "painting", "ping", "posting",
    "proceed", "reading", "recording", "red", "ring", "sacred", "seed", "setting", "shed",
    "shred", "sled", "something", "speed", "spring", "string", "succeed", "thing", "warning",
    "wed", "wing",
];

struct Tables {
    exceptions: HashMap<&'static str, (&'static str, bool)>,
    uncountable: HashSet<&'static str>,
    protected: HashSet<&'static str>,
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut exceptions = HashMap::new();
        for line in EXCEPTIONS.lines() {
            if line.starts_with('#') || line.trim().is_empty() {
                continue;
            }
            let mut cols = line.split('\t');
            let (Some(form), Some(base), Some(kind)) = (cols.next(), cols.next(), cols.next())
            else {
                panic!("malformed lemma exception line: {line}");
            };
            if form != base {
                exceptions.insert(form, (base, kind == "n"));
            }
        }
        Tables {
            exceptions,
            uncountable: UNCOUNTABLE.iter().copied().collect(),
            protected: PROTECTED.iter().copied().collect(),
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rule {
    Plural,
    Verb,
    Irregular { plural: bool },
}

fn is_vowel_at(chars: &[char], i: usize) -> bool {
    match chars[i] {
        'a' | 'e' | 'i' | 'o' | 'u' => true,
        'y' => i > 0 && !is_vowel_at(chars, i - 1),
        _ => false,
    }
}

/// Number of vowel-consonant sequences in the stem.
fn measure(chars: &[char]) -> usize {
    let mut m = 0;
    let mut prev_vowel = false;
    for i in 0..chars.len() {
        let v = is_vowel_at(chars, i);
        if prev_vowel && !v {
            m += 1;
        }
        prev_vowel = v;
    }
    m
}

fn ends_cvc(chars: &[char]) -> bool {
    let n = chars.len();
    n >= 3
        && !is_vowel_at(chars, n - 3)
        && is_vowel_at(chars, n - 2)
        && !is_vowel_at(chars, n - 1)
        && !matches!(chars[n - 1], 'w' | 'x' | 'y')
}

fn has_vowel(chars: &[char]) -> bool {
    (0..chars.len()).any(|i| is_vowel_at(chars, i))
}

/// Rebuild a verb base after `-ed` / `-ing` has been cut off.
fn restore_stem(stem: &str) -> String {
    let chars: Vec<char> = stem.chars().collect();
    let n = chars.len();
    let last = chars[n - 1];
    let prev = chars[n - 2];
    let consonant = |i: usize| !is_vowel_at(&chars, i);

    if last == prev && consonant(n - 1) && !matches!(last, 'l' | 's' | 'z') {
        return chars[..n - 1].iter().collect();
    }

    let needs_e = matches!(last, 'v' | 'u')
        || (last == 'z' && prev != 'z')
        || stem.ends_with("bl")
        || stem.ends_with("rg")
        || stem.ends_with("dg")
        || stem.ends_with("ag")
        || stem.ends_with("ang")
        || stem.ends_with("rs")
        || stem.ends_with("ns")
        || stem.ends_with("rc")
        || stem.ends_with("nc")
        // consonant + l: handl, cycl, schedul
        || (last == 'l'
            && (matches!(prev, 'b' | 'c' | 'd' | 'f' | 'g' | 'k' | 'p' | 't' | 'z')
                || (prev == 'u' && n >= 3 && consonant(n - 3))))
        // single vowel + c: replac, produc
        || (last == 'c' && !consonant(n - 2) && n >= 3 && consonant(n - 3))
        // requir, expir, desir but not pair, chair
        || (last == 'r' && prev == 'i' && n >= 3 && chars[n - 3] != 'a')
        // two vowels + s: increas, caus, hous
        || (last == 's' && n >= 3 && !consonant(n - 2) && !consonant(n - 3))
        // consonant + vowel + {t after a, d, k, r, t after u}
        || (n >= 3
            && consonant(n - 3)
            && match (prev, last) {
                ('a', 't') | ('u', 't') => true,
                ('i' | 'o' | 'u', 'd') => true,
                ('a' | 'i' | 'o' | 'u', 'k') => true,
                ('u', 'r') => true,
                _ => false,
            });
    if needs_e {
        return format!("{stem}e");
    }
    if measure(&chars) == 1 && ends_cvc(&chars) {
        return format!("{stem}e");
    }
    stem.to_string()
}

fn strip<'a>(w: &'a str, suffix: &str) -> &'a str {
    &w[..w.len() - suffix.len()]
}

fn step(word: &str) -> Option<(String, Rule)> {
    let t = tables();
    if let Some(&(base, plural)) = t.exceptions.get(word) {
        return Some((base.to_string(), Rule::Irregular { plural }));
    }
    if t.uncountable.contains(word) || t.protected.contains(word) {
        return None;
    }
    if word.chars().count() <= 3 || !word.is_ascii() {
        return None;
    }
    let plural = |s: String| Some((s, Rule::Plural));
    let verb = |s: String| Some((s, Rule::Verb));

    if word.ends_with("ies") && word.len() > 4 {
        return plural(format!("{}y", strip(word, "ies")));
    }
    if word.ends_with("sses")
        || word.ends_with("xes")
        || word.ends_with("ches")
        || word.ends_with("shes")
        || word.ends_with("zzes")
    {
        return plural(strip(word, "es").to_string());
    }
    if word.ends_with('s') {
        if word.ends_with("ss") || word.ends_with("us") || word.ends_with("is") {
            return None;
        }
        return plural(strip(word, "s").to_string());
    }
    if word.ends_with("ied") && word.len() > 4 {
        return verb(format!("{}y", strip(word, "ied")));
    }
    if word.ends_with("eed") {
        return None;
    }
    for suffix in ["ed", "ing"] {
        if let Some(stem) = word.strip_suffix(suffix) {
            let chars: Vec<char> = stem.chars().collect();
            if chars.len() >= 3 && has_vowel(&chars) {
                return verb(restore_stem(stem));
            }
            return None;
        }
    }
    None
}

/// Base form of a lowercase word.
pub fn lemmatize(word: &str) -> String {
    let mut current = word.to_string();
    // every step shortens the word or lands on a fixed point; the bound is a backstop
    for _ in 0..16 {
        match step(&current) {
            Some((next, Rule::Irregular { .. })) => return next,
            Some((next, _)) => current = next,
            None => break,
        }
    }
    current
}

/// True for plural nouns: irregular plurals and words a plural rule changes.
pub fn is_plural(word: &str) -> bool {
    matches!(
        step(word),
        Some((_, Rule::Plural)) | Some((_, Rule::Irregular { plural: true }))
    )
}
