//! Shared fixtures for the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;
use std::path::PathBuf;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use restling::corpus::{ApiCollection, ApiEntry, OracleLabels};
use restling::detectors::{HierarchyTable, RuleId, Verdict};
use restling::semantics::{SimilarityProvider, TopicModel, TopicWord};
use restling::text::{is_plural, lemmatize, CrudLexicon};
use restling::uri::HttpMethod;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn entry(id: &str, method: HttpMethod, uri: &str, doc: &str) -> ApiEntry {
    ApiEntry {
        id: id.into(),
        uri: uri.into(),
        method,
        documentation: doc.into(),
    }
}

pub fn verdict(antipattern: bool) -> Verdict {
    if antipattern {
        Verdict::Antipattern
    } else {
        Verdict::Pattern
    }
}

// ---------------------------------------------------------------------------
// Nest similarity matrix: three topics of fifteen words, scored against the
// six path words of two Nest URIs. Identical words score 2 on this scale.

pub const MATRIX_NODES: [&str; 6] = ["device", "thermostat", "locale", "structure", "alarm", "state"];

type Row = (&'static str, [f64; 6]);

pub const TOPIC_1: [Row; 15] = [
    ("eco", [0.0528, 0.0130, 0.0275, 0.0207, 0.0146, 0.0064]),
    ("record", [0.0068, 0.0, 0.0, 0.0, 0.0129, 0.0]),
    ("estimate", [0.0611, 0.0192, 0.0241, 0.0928, 0.0239, 0.0]),
    ("lock", [0.2254, 0.3378, 0.0055, 0.1275, 0.1955, 0.0]),
    ("adjust", [0.2026, 0.2575, 0.0170, 0.0721, 0.1936, 0.0]),
    ("format", [0.5311, 0.0922, 0.0451, 0.1478, 0.0990, 0.0]),
    ("related", [0.0349, 0.0129, 0.0, 0.0327, 0.0232, 0.0]),
    ("json", [0.1962, 0.0182, 0.0253, 0.0702, 0.0313, 0.0]),
    ("call", [0.0656, 0.0081, 0.0058, 0.0648, 0.0915, 0.0]),
    ("sign", [0.0, 0.0, 0.0057, 0.0, 0.0060, 0.0058]),
    ("home", [0.0, 0.0, 0.0703, 0.0817, 0.0, 0.0062]),
    ("sound", [0.1645, 0.0919, 0.1588, 0.1853, 0.2277, 0.0]),
    ("bandwidth", [0.7259, 0.2130, 0.0317, 0.0944, 0.2545, 0.0]),
    ("low", [0.0517, 0.0958, 0.0113, 0.0521, 0.0636, 0.0]),
    ("image", [0.3504, 0.0788, 0.1595, 0.5273, 0.1274, 0.0]),
];

pub const TOPIC_2: [Row; 15] = [
    ("smoke", [0.0054, 0.1065, 0.0058, 0.0059, 0.0609, 0.0]),
    ("sound", [0.1645, 0.0919, 0.1588, 0.1853, 0.2277, 0.0]),
    ("snapshot", [0.3066, 0.0178, 0.0395, 0.0732, 0.0863, 0.0]),
    ("status", [0.0588, 0.0135, 0.1419, 0.2592, 0.0188, 0.0291]),
    ("change", [0.0976, 0.0603, 0.0805, 0.3649, 0.0852, 0.0]),
    ("list", [0.0348, 0.0069, 0.0741, 0.1001, 0.0054, 0.1672]),
    ("display", [0.7431, 0.1763, 0.0842, 0.2419, 0.1894, 0.0]),
    ("nest", [0.0054, 0.0, 0.0495, 0.0118, 0.0, 0.0061]),
    ("expire", [0.0442, 0.0, 0.0060, 0.0055, 0.0072, 0.0364]),
    ("home", [0.0, 0.0, 0.0703, 0.0817, 0.0, 0.0062]),
    ("detect", [0.3562, 0.1291, 0.0, 0.1933, 0.3026, 0.0]),
    ("subscription", [0.2463, 0.0113, 0.0059, 0.0180, 0.0687, 0.0]),
    ("field", [0.1114, 0.0193, 0.1001, 0.1900, 0.0117, 0.0136]),
    ("live", [0.0, 0.0, 0.0836, 0.0260, 0.0062, 0.0069]),
    ("motion", [0.3378, 0.1946, 0.0657, 0.4712, 0.2228, 0.0]),
];

pub const TOPIC_3: [Row; 15] = [
    ("device", [2.0, 0.4916, 0.0242, 0.2111, 0.4377, 0.0]),
    ("structure", [0.2111, 0.0569, 0.1645, 2.0, 0.0210, 0.0]),
    ("thermostat", [0.4916, 2.0, 0.0057, 0.0569, 0.3944, 0.0]),
    ("event", [0.0175, 0.0118, 0.1557, 0.0507, 0.0152, 0.0]),
    ("nest", [0.0054, 0.0, 0.0495, 0.0118, 0.0, 0.0061]),
    ("camera", [1.0680, 0.3072, 0.0177, 0.1089, 0.4096, 0.0]),
    ("url", [0.2685, 0.0117, 0.0177, 0.0577, 0.0766, 0.0]),
    ("display", [0.7431, 0.1763, 0.0842, 0.2419, 0.1894, 0.0]),
    ("temperature", [0.0987, 0.2084, 0.0645, 0.1731, 0.0681, 0.0]),
    ("require", [0.4377, 0.3944, 0.0, 0.0210, 0.1611, 0.0]),
    ("alarm", [0.3914, 0.1334, 0.0167, 0.1543, 2.0, 0.0140]),
    ("hvac", [0.3133, 0.8992, 0.0, 0.0351, 0.2735, 0.0]),
    ("aware", [0.0060, 0.0, 0.0, 0.0116, 0.1789, 0.0]),
    ("zone", [0.0729, 0.0402, 0.4626, 0.2317, 0.0195, 0.0727]),
    ("activity", [0.1565, 0.0371, 0.2037, 0.3848, 0.0912, 0.0053]),
];

pub fn matrix_topics() -> [&'static [Row; 15]; 3] {
    [&TOPIC_1, &TOPIC_2, &TOPIC_3]
}

pub fn topic_words(topic: &[Row; 15]) -> Vec<&'static str> {
    topic.iter().map(|(w, _)| *w).collect()
}

/// Looks up (path word, topic word) cells of the matrix verbatim.
///
/// The matrix is not symmetric (`device`/`alarm` differs from
/// `alarm`/`device`), so the path word must come first.
pub struct MatrixProvider {
    cells: HashMap<(String, String), f64>,
}

impl MatrixProvider {
    pub fn new() -> Self {
        let mut cells = HashMap::new();
        for topic in matrix_topics() {
            for (word, row) in topic.iter() {
                for (node, v) in MATRIX_NODES.iter().zip(row) {
                    cells.insert((node.to_string(), word.to_string()), *v);
                }
            }
        }
        MatrixProvider { cells }
    }
}

impl SimilarityProvider for MatrixProvider {
    fn similarity(&self, a: &str, b: &str) -> f64 {
        self.cells.get(&(a.to_string(), b.to_string())).copied().unwrap_or(0.0)
    }

    fn contains(&self, word: &str) -> bool {
        MATRIX_NODES.contains(&word) || self.cells.keys().any(|(_, w)| w == word)
    }
}

/// A topic model whose top words are the three matrix topics.
pub fn matrix_topic_model() -> TopicModel {
    let topics: Vec<Vec<TopicWord>> = matrix_topics()
        .iter()
        .map(|t| {
            t.iter()
                .map(|(w, _)| TopicWord {
                    word: w.to_string(),
                    weight: 1.0 / 15.0,
                })
                .collect()
        })
        .collect();
    let mut vocabulary: Vec<String> = topics.iter().flatten().map(|w| w.word.clone()).collect();
    vocabulary.sort();
    vocabulary.dedup();
    let topic_word = topics
        .iter()
        .map(|t| {
            vocabulary
                .iter()
                .map(|v| if t.iter().any(|w| &w.word == v) { 1.0 / 15.0 } else { 0.0 })
                .collect()
        })
        .collect();
    TopicModel {
        k: 3,
        seed: 0,
        vocabulary,
        topic_word,
        topics,
    }
}

// ---------------------------------------------------------------------------
// Synthetic IoT collections whose syntactic and lexical verdicts are known
// by construction.

/// Nouns that never take part in a hierarchy relation; endpoints and
/// sub-resources are drawn from these.
const ENDPOINT_NOUNS: &[(&str, &str, [&str; 4])] = &[
    ("alert", "alerts", ["threshold", "severity", "notification", "message"]),
    ("recipe", "recipes", ["ingredient", "cooking", "oven", "timer"]),
    ("invoice", "invoices", ["amount", "currency", "payment", "customer"]),
    ("widget", "widgets", ["layout", "colour", "size", "position"]),
    ("profile", "profiles", ["preference", "language", "avatar", "contact"]),
    ("playlist", "playlists", ["song", "track", "artist", "album"]),
    ("valve", "valves", ["flow", "pipe", "leak", "water"]),
    ("charger", "chargers", ["power", "cable", "vehicle", "plug"]),
    ("coupon", "coupons", ["discount", "code", "expiry", "merchant"]),
    ("meter", "meters", ["consumption", "energy", "tariff", "billing"]),
    ("webhook", "webhooks", ["callback", "payload", "delivery", "retry"]),
    ("certificate", "certificates", ["issuer", "signature", "trust", "chain"]),
];

const QUALIFIERS: &[&str] = &["smart", "outdoor", "indoor", "remote", "legacy", "public", "private", "mobile", "wireless", "solar"];

const SUB_NOUNS: &[(&str, &str)] = &[
    ("badge", "badges"),
    ("note", "notes"),
    ("tag", "tags"),
    ("label", "labels"),
    ("quota", "quotas"),
    ("policy", "policies"),
    ("reminder", "reminders"),
    ("comment", "comments"),
];

/// General-to-specific pairs present in the shipped hierarchy table.
const HIERARCHY_PAIRS: &[((&str, &str), (&str, &str))] = &[
    (("site", "sites"), ("floor", "floors")),
    (("floor", "floors"), ("room", "rooms")),
    (("room", "rooms"), ("sensor", "sensors")),
    (("room", "rooms"), ("light", "lights")),
    (("network", "networks"), ("gateway", "gateways")),
    (("gateway", "gateways"), ("sensor", "sensors")),
    (("home", "homes"), ("door", "doors")),
];

/// Path verbs, disjoint from the documentation verbs below.
const CRUD_NODES: &[&str] = &["search", "find", "generate", "edit", "erase", "show", "purge", "fetch"];

const DOC_VERBS: [(HttpMethod, &[&str]); 4] = [
    (HttpMethod::Post, &["create", "add", "register"]),
    (HttpMethod::Get, &["retrieve", "read"]),
    (HttpMethod::Put, &["update", "modify"]),
    (HttpMethod::Delete, &["delete", "remove"]),
];

const METHODS: [HttpMethod; 4] = [HttpMethod::Get, HttpMethod::Post, HttpMethod::Put, HttpMethod::Delete];

/// Ground truth for one generated entry.
#[derive(Debug, Clone, Default)]
pub struct Truth {
    pub amorphous: bool,
    pub crudy: bool,
    pub non_hierarchical: bool,
    pub pluralised: bool,
    pub inconsistent: bool,
    pub unversioned: bool,
    pub non_standard: bool,
}

impl Truth {
    pub fn verdict(&self, rule: RuleId) -> Option<Verdict> {
        let v = match rule {
            RuleId::AmorphousUri => self.amorphous,
            RuleId::CrudyUri => self.crudy,
            RuleId::NonHierarchicalNodes => self.non_hierarchical,
            RuleId::PluralisedNodes => self.pluralised,
            RuleId::InconsistentDocumentation => self.inconsistent,
            RuleId::UnversionedUri => self.unversioned,
            RuleId::NonStandardUri => self.non_standard,
            RuleId::ContextlessResourceNames | RuleId::NonPertinentDocumentation => return None,
        };
        Some(verdict(v))
    }
}

/// Check the word lists against the shipped lexicon, lemmatizer and
/// hierarchy so that the construction-time truth cannot drift.
fn check_vocabulary() {
    let lexicon = CrudLexicon::default();
    let table = HierarchyTable::embedded();
    let pair_nouns: Vec<&str> = HIERARCHY_PAIRS.iter().flat_map(|(g, s)| [g.0, s.0]).collect();
    let nouns = ENDPOINT_NOUNS
        .iter()
        .map(|(s, p, _)| (*s, *p))
        .chain(SUB_NOUNS.iter().copied())
        .chain(HIERARCHY_PAIRS.iter().flat_map(|(g, s)| [*g, *s]));
    for (singular, plural) in nouns {
        assert_eq!(lemmatize(plural), singular, "lemma of {plural}");
        assert_eq!(lemmatize(singular), singular, "lemma of {singular}");
        assert!(is_plural(plural) && !is_plural(singular), "{singular}/{plural}");
        assert!(lexicon.class_of(singular).is_none(), "{singular} is a CRUD word");
    }
    for (noun, _, related) in ENDPOINT_NOUNS {
        for w in related.iter().chain(QUALIFIERS) {
            assert!(lexicon.class_of(&lemmatize(w)).is_none(), "{w} is a CRUD word");
        }
        let subs = SUB_NOUNS.iter().map(|(s, _)| s);
        for other in pair_nouns.iter().chain(CRUD_NODES).chain(subs) {
            assert!(!table.contains(noun, other) && !table.contains(other, noun), "{noun} ~ {other}");
        }
    }
    for (sub, _) in SUB_NOUNS {
        for other in &pair_nouns {
            assert!(!table.contains(sub, other) && !table.contains(other, sub), "{sub} ~ {other}");
        }
    }
    for ((g, _), (s, _)) in HIERARCHY_PAIRS {
        assert!(table.contains(g, s) && !table.contains(s, g), "{g} > {s}");
    }
    for w in CRUD_NODES {
        assert!(lexicon.class_of(w).is_some() && !is_plural(w), "{w}");
    }
}

/// `n` entries over `max(3, n / 25)` endpoints, with labels for the seven
/// rules whose verdict follows from the construction.
pub fn synthetic_collection(n: usize, seed: u64) -> (ApiCollection, Vec<Truth>) {
    check_vocabulary();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut endpoints: Vec<(String, usize)> = Vec::new();
    for q in QUALIFIERS {
        for (i, (_, plural, _)) in ENDPOINT_NOUNS.iter().enumerate() {
            endpoints.push((format!("{q}-{plural}"), i));
        }
    }
    let n_endpoints = (n / 25).clamp(3, endpoints.len());
    let endpoints = &endpoints[..n_endpoints];

    let mut entries = Vec::with_capacity(n);
    let mut truths = Vec::with_capacity(n);
    for idx in 0..n {
        let mut t = Truth::default();
        let method = *METHODS.choose(&mut rng).unwrap();
        let (endpoint, noun_idx) = &endpoints[idx % endpoints.len()];
        let (noun, _, related) = ENDPOINT_NOUNS[*noun_idx];
        let mut endpoint = endpoint.clone();

        // the word that decides singular/plural, and whether it is plural
        let mut subject_plural = true;
        let mut nodes: Vec<String> = Vec::new();

        t.unversioned = !rng.random_bool(0.7);
        if !t.unversioned {
            nodes.push(["v1", "v2", "v1.1", "v3.0"].choose(&mut rng).unwrap().to_string());
        }

        if rng.random_bool(0.08) {
            t.non_standard = true;
            endpoint = if rng.random_bool(0.5) {
                endpoint.replacen('-', " ", 1)
            } else {
                endpoint.replacen('-', "--", 1)
            };
        }
        let mut trailing = false;
        if rng.random_bool(0.12) {
            t.amorphous = true;
            // an underscore would overwrite the injected character
            let kinds = if t.non_standard { 2 } else { 3 };
            match rng.random_range(0..kinds) {
                0 => endpoint = capitalize(&endpoint),
                2 => endpoint = endpoint.replacen('-', "_", 1),
                _ => trailing = true,
            }
        }
        nodes.push(endpoint);

        match rng.random_range(0..3) {
            0 => {}
            1 => {
                let (s, p) = *SUB_NOUNS.choose(&mut rng).unwrap();
                nodes.push(format!("{{{noun}Id}}"));
                subject_plural = rng.random_bool(0.5);
                nodes.push(if subject_plural { p } else { s }.to_string());
            }
            _ => {
                let (g, s) = *HIERARCHY_PAIRS.choose(&mut rng).unwrap();
                let (first, second) = if rng.random_bool(0.3) {
                    t.non_hierarchical = true;
                    (s, g)
                } else {
                    (g, s)
                };
                nodes.push(format!("{{{noun}Id}}"));
                nodes.push(first.1.to_string());
                nodes.push(format!("{{{}Id}}", first.0));
                subject_plural = rng.random_bool(0.5);
                nodes.push(if subject_plural { second.1 } else { second.0 }.to_string());
            }
        }
        if rng.random_bool(0.1) {
            t.crudy = true;
            subject_plural = false;
            nodes.push(CRUD_NODES.choose(&mut rng).unwrap().to_string());
        }
        if rng.random_bool(0.25) {
            nodes.push("{id}".into());
        }
        t.pluralised = match method {
            HttpMethod::Put | HttpMethod::Delete => subject_plural,
            HttpMethod::Post => !subject_plural,
            _ => false,
        };

        let mut uri = format!("/{}", nodes.join("/"));
        if trailing {
            uri.push('/');
        }

        let verb_method = if rng.random_bool(0.15) {
            t.inconsistent = true;
            *METHODS.iter().filter(|m| **m != method).collect::<Vec<_>>().choose(&mut rng).unwrap()
        } else {
            &method
        };
        let verbs = DOC_VERBS.iter().find(|(m, _)| m == verb_method).unwrap().1;
        let verb = verbs.choose(&mut rng).unwrap();
        let r: Vec<&str> = related.choose_multiple(&mut rng, 3).copied().collect();
        let doc = format!(
            "{} the {noun} with its {} and {}. The {noun} {} is reported for each {}.",
            capitalize(verb),
            r[0],
            r[1],
            r[2],
            QUALIFIERS.choose(&mut rng).unwrap(),
        );
        entries.push(entry(&format!("e{idx}"), method, &uri, &doc));
        truths.push(t);
    }
    let collection = ApiCollection::new(format!("synthetic-{n}"), entries).expect("unique ids");
    (collection, truths)
}

/// Labels for every rule of every entry. The two semantic rules are
/// labelled pattern: generated paths always name the documented resource.
pub fn synthetic_oracle(collection: &ApiCollection, truths: &[Truth]) -> OracleLabels {
    let mut oracle = OracleLabels::default();
    for (e, t) in collection.entries.iter().zip(truths) {
        for rule in RuleId::ALL {
            oracle.insert(e.id.clone(), rule, t.verdict(rule).unwrap_or(Verdict::Pattern));
        }
    }
    oracle
}

fn capitalize(s: &str) -> String {
    let mut c = s.chars();
    match c.next() {
        Some(f) => f.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

// ---------------------------------------------------------------------------
// Random URIs over a small alphabet and naive character-scan oracles for
// the three syntactic rules.

const PIECES: &[&str] = &[
    "a", "ab", "cd", "v", "V", "1", "2", "1.1", ".", "_", "-", "--", "{", "}", "[", "]", "$", ":", "é", " ", "json", ".tiff",
    "Cam", "ID", "_id", "X_Y", "version", "~", "&", "=",
];

pub fn random_uri(rng: &mut impl Rng) -> String {
    let segments = rng.random_range(0..5);
    let mut uri = String::new();
    for _ in 0..segments {
        uri.push('/');
        for _ in 0..rng.random_range(1..4) {
            uri.push_str(PIECES.choose(rng).unwrap());
        }
    }
    if segments == 0 || rng.random_bool(0.2) {
        uri.push('/');
    }
    uri
}

fn segments(uri: &str) -> Vec<&str> {
    uri.split('/').filter(|s| !s.is_empty()).collect()
}

fn is_param(seg: &str) -> bool {
    let b = seg.as_bytes();
    let n = b.len();
    if n >= 2 && ((b[0] == b'{' && b[n - 1] == b'}') || (b[0] == b'[' && b[n - 1] == b']')) {
        return true;
    }
    let mut bare = seg;
    while let Some(rest) = bare.strip_prefix('$').or_else(|| bare.strip_prefix(':')) {
        bare = rest;
    }
    if seg.starts_with(':') && !bare.is_empty() {
        return true;
    }
    let mut underscore = false;
    let mut upper = false;
    let mut caps_only = true;
    for ch in bare.chars() {
        match ch {
            '_' => underscore = true,
            'A'..='Z' => upper = true,
            '0'..='9' => {}
            _ => caps_only = false,
        }
    }
    if underscore && upper && caps_only {
        return true;
    }
    let id_charset = seg.chars().all(|ch| matches!(ch, 'a'..='z' | '0'..='9' | '_' | '-'));
    id_charset
        && ["_id", "-id", "_ids", "-ids"].iter().any(|s| seg.len() > s.len() && seg.ends_with(s))
}

pub fn naive_amorphous(uri: &str) -> bool {
    let segs = segments(uri);
    for seg in &segs {
        if is_param(seg) {
            continue;
        }
        let mut chars = seg.chars();
        let camel = matches!(chars.next(), Some('a'..='z')) && chars.all(|ch| ch.is_ascii_alphanumeric());
        if seg.chars().any(|ch| ch.is_uppercase()) && !camel {
            return true;
        }
        if seg.contains('_') {
            return true;
        }
    }
    if let Some(last) = segs.last() {
        if let Some(dot) = last.rfind('.') {
            let (name, ext) = (&last[..dot], &last[dot + 1..]);
            let known = ["json", "xml", "html", "htm", "tiff", "jpg", "jpeg", "png", "gif", "pdf", "txt", "csv", "zip"];
            if !name.is_empty() && known.contains(&ext.to_ascii_lowercase().as_str()) {
                return true;
            }
        }
    }
    uri.ends_with('/')
}

/// `digits(.digits)*`, returning the number of groups.
fn digit_groups(s: &str) -> Option<usize> {
    let groups: Vec<&str> = s.split('.').collect();
    groups
        .iter()
        .all(|g| !g.is_empty() && g.bytes().all(|b| b.is_ascii_digit()))
        .then_some(groups.len())
}

pub fn naive_unversioned(uri: &str) -> bool {
    let segs = segments(uri);
    for (i, seg) in segs.iter().enumerate() {
        let versioned = match seg.strip_prefix(['v', 'V']) {
            Some(rest) => digit_groups(rest).is_some(),
            None => digit_groups(seg).is_some_and(|g| g >= 2),
        } || (seg.to_ascii_lowercase() == "version" && segs.get(i + 1).and_then(|s| digit_groups(s)).is_some());
        if versioned {
            return false;
        }
    }
    true
}

/// Hits, counting a run of hyphens once.
pub fn naive_non_standard(uri: &str) -> usize {
    let chars: Vec<char> = uri.chars().collect();
    let mut hits = 0;
    for (i, ch) in chars.iter().enumerate() {
        let bad = match ch {
            '-' => i + 1 < chars.len() && chars[i + 1] == '-' && (i == 0 || chars[i - 1] != '-'),
            'a'..='z' | 'A'..='Z' | '0'..='9' => false,
            '.' | '_' | '~' | '/' | '?' | ':' | '{' | '}' | '[' | ']' => false,
            _ => true,
        };
        hits += bad as usize;
    }
    hits
}
