//! Loading and validation of API collections and their auxiliary files.
//!
//! On-disk formats:
//!
//! * collection JSON: `{"name": .., "entries": [{"id"?, "uri", "method", "documentation"?}]}`,
//!   or several collections as `{"apis": [collection, ..]}`
//! * acronym file: `ACRONYM<TAB>expansion words`, `#` comments
//! * stop-word file: one word per line
//! * oracle JSON: `{"<entry id>": {"<rule id>": "pattern" | "antipattern"}}`

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::detectors::{RuleId, Verdict};
use crate::uri::HttpMethod;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApiEntry {
    pub id: String,
    pub uri: String,
    pub method: HttpMethod,
    pub documentation: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApiCollection {
    pub name: String,
    pub entries: Vec<ApiEntry>,
    pub acronyms: AcronymDictionary,
    pub stopwords: StopWordList,
}

impl ApiCollection {
    pub fn new(name: impl Into<String>, entries: Vec<ApiEntry>) -> Result<Self> {
        let collection = ApiCollection {
            name: name.into(),
            entries,
            acronyms: AcronymDictionary::default(),
            stopwords: StopWordList::english(),
        };
        collection.validate()?;
        Ok(collection)
    }

    pub fn with_acronyms(mut self, acronyms: AcronymDictionary) -> Self {
        self.acronyms = acronyms;
        self
    }

    pub fn with_stopwords(mut self, stopwords: StopWordList) -> Self {
        self.stopwords = stopwords;
        self
    }

    pub fn entry(&self, id: &str) -> Option<&ApiEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    fn validate(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for entry in &self.entries {
            if entry.uri.trim().is_empty() {
                return Err(Error::Validation(format!(
                    "collection `{}`: entry `{}` has an empty uri",
                    self.name, entry.id
                )));
            }
            if !seen.insert(entry.id.as_str()) {
                return Err(Error::Validation(format!(
                    "collection `{}`: duplicate entry id `{}`",
                    self.name, entry.id
                )));
            }
        }
        Ok(())
    }

    /// Serialize back to the collection schema (ids always written).
    pub fn to_json(&self) -> String {
        let raw = RawCollection {
            name: self.name.clone(),
            entries: self
                .entries
                .iter()
                .map(|e| RawEntry {
                    id: Some(e.id.clone()),
                    uri: e.uri.clone(),
                    method: e.method.as_str().to_string(),
                    documentation: Some(e.documentation.clone()),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("collection serializes") + "\n"
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct RawEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    id: Option<String>,
    uri: String,
    method: String,
    #[serde(default)]
    documentation: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawCollection {
    name: String,
    entries: Vec<RawEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawFile {
    Many { apis: Vec<RawCollection> },
    One(RawCollection),
}

fn convert(raw: RawCollection) -> Result<ApiCollection> {
    let name = raw.name;
    let entries = raw
        .entries
        .into_iter()
        .enumerate()
        .map(|(index, e)| {
            let id = e.id.unwrap_or_else(|| format!("e{index}"));
            let method = e.method.parse::<HttpMethod>().map_err(|_| {
                Error::Validation(format!(
                    "collection `{name}`: entry `{id}` has unknown HTTP method `{}`",
                    e.method
                ))
            })?;
            Ok(ApiEntry {
                id,
                uri: e.uri,
                method,
                documentation: e.documentation.unwrap_or_default(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ApiCollection::new(name, entries)
}

/// Parse collection JSON held in memory. `origin` is used in error messages.
pub fn parse_collections(text: &str, origin: &Path) -> Result<Vec<ApiCollection>> {
    let raw: RawFile = serde_json::from_str(text).map_err(|e| Error::json(origin, &e))?;
    match raw {
        RawFile::Many { apis } => apis.into_iter().map(convert).collect(),
        RawFile::One(c) => Ok(vec![convert(c)?]),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn load_collections(path: impl AsRef<Path>) -> Result<Vec<ApiCollection>> {
    let path = path.as_ref();
    parse_collections(&read(path)?, path)
}

/// Load a file holding exactly one collection.
pub fn load_collection(path: impl AsRef<Path>) -> Result<ApiCollection> {
    let path = path.as_ref();
    let mut all = load_collections(path)?;
    match all.len() {
        1 => Ok(all.remove(0)),
        n => Err(Error::Validation(format!(
            "{}: expected one collection, found {n}",
            path.display()
        ))),
    }
}

/// API-specific acronyms and their expansions.
///
/// Keys are matched against whole tokens. A key written in lowercase also
/// matches the token in any case (`hvac` matches `HVAC`); a key with
/// capitals (`IoT`) matches only that exact spelling.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AcronymDictionary {
    map: BTreeMap<String, Vec<String>>,
}

impl AcronymDictionary {
    pub fn from_pairs<I, K, V>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (K, V)>,
        K: Into<String>,
        V: IntoIterator,
        V::Item: Into<String>,
    {
        let mut map = BTreeMap::new();
        for (key, expansion) in pairs {
            let key: String = key.into();
            let expansion: Vec<String> = expansion
                .into_iter()
                .map(|w| w.into().to_lowercase())
                .collect();
            if key.trim().is_empty() {
                return Err(Error::Validation("acronym with empty key".into()));
            }
            if expansion.is_empty() {
                return Err(Error::Validation(format!("acronym `{key}` has an empty expansion")));
            }
            if expansion.iter().any(|w| w.eq_ignore_ascii_case(&key)) {
                return Err(Error::Validation(format!("acronym `{key}` maps to itself")));
            }
            map.insert(key, expansion);
        }
        for (key, expansion) in &map {
            if let Some(w) = expansion.iter().find(|w| map.contains_key(w.as_str())) {
                return Err(Error::Validation(format!(
                    "acronym `{key}` expands to `{w}`, which is itself an acronym"
                )));
            }
        }
        Ok(AcronymDictionary { map })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let (key, expansion) = line.split_once('\t').ok_or_else(|| {
                Error::Validation(format!("acronym line {}: missing tab separator", lineno + 1))
            })?;
            let words: Vec<String> = expansion.split_whitespace().map(str::to_string).collect();
            pairs.push((key.trim().to_string(), words));
        }
        Self::from_pairs(pairs)
    }

    pub fn expand(&self, token: &str) -> Option<&[String]> {
        self.map
            .get(token)
            .or_else(|| self.map.get(&token.to_lowercase()))
            .map(Vec::as_slice)
    }

    pub fn contains_key(&self, key: &str) -> bool {
        self.map.contains_key(key)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.map.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

pub fn load_acronyms(path: impl AsRef<Path>) -> Result<AcronymDictionary> {
    let path = path.as_ref();
    AcronymDictionary::parse(&read(path)?).map_err(|e| match e {
        Error::Validation(msg) => Error::Validation(format!("{}: {msg}", path.display())),
        other => other,
    })
}

const ENGLISH_STOPWORDS: &str = include_str!("../data/stopwords.txt");

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StopWordList {
    words: BTreeSet<String>,
}

impl StopWordList {
    pub fn parse(text: &str) -> Self {
        StopWordList {
            words: text
                .lines()
                .map(|l| l.trim().to_lowercase())
                .filter(|w| !w.is_empty() && !w.starts_with('#'))
                .collect(),
        }
    }

    /// The bundled English function-word list.
    pub fn english() -> Self {
        Self::parse(ENGLISH_STOPWORDS)
    }

    pub fn from_words<I: IntoIterator<Item = S>, S: AsRef<str>>(words: I) -> Self {
        StopWordList {
            words: words
                .into_iter()
                .map(|w| w.as_ref().trim().to_lowercase())
                .filter(|w| !w.is_empty())
                .collect(),
        }
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

pub fn load_stopwords(path: impl AsRef<Path>) -> Result<StopWordList> {
    Ok(StopWordList::parse(&read(path.as_ref())?))
}

/// Ground-truth verdicts keyed by (entry id, rule).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OracleLabels {
    labels: BTreeMap<(String, RuleId), Verdict>,
}

impl OracleLabels {
    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let raw: BTreeMap<String, BTreeMap<String, String>> =
            serde_json::from_str(text).map_err(|e| Error::json(origin, &e))?;
        let mut labels = BTreeMap::new();
        for (entry, rules) in raw {
            for (rule, verdict) in rules {
                let rule_id: RuleId = rule.parse().map_err(|_| {
                    let valid: Vec<&str> = RuleId::ALL.iter().map(|r| r.as_str()).collect();
                    Error::Validation(format!(
                        "oracle entry `{entry}`: unknown rule id `{rule}` (valid: {})",
                        valid.join(", ")
                    ))
                })?;
                let verdict: Verdict = verdict.parse().map_err(|_| {
                    Error::Validation(format!(
                        "oracle entry `{entry}`, rule `{rule}`: verdict must be `pattern` or `antipattern`, got `{verdict}`"
                    ))
                })?;
                labels.insert((entry.clone(), rule_id), verdict);
            }
        }
        Ok(OracleLabels { labels })
    }

    pub fn insert(&mut self, entry_id: impl Into<String>, rule: RuleId, verdict: Verdict) {
        self.labels.insert((entry_id.into(), rule), verdict);
    }

    pub fn get(&self, entry_id: &str, rule: RuleId) -> Option<Verdict> {
        // BTreeMap<(String, _)> cannot be queried by (&str, _) without allocating
        self.labels.get(&(entry_id.to_string(), rule)).copied()
    }

    /// Fail when a label names an entry the collection does not contain.
    pub fn check_entries(&self, collection: &ApiCollection) -> Result<()> {
        let ids: HashSet<&str> = collection.entries.iter().map(|e| e.id.as_str()).collect();
        match self.labels.keys().find(|(id, _)| !ids.contains(id.as_str())) {
            Some((id, _)) => Err(Error::Validation(format!(
                "oracle references unknown entry `{id}` in collection `{}`",
                collection.name
            ))),
            None => Ok(()),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, RuleId, Verdict)> {
        self.labels.iter().map(|((id, rule), v)| (id.as_str(), *rule, *v))
    }

    pub fn to_json(&self) -> String {
        let mut out: BTreeMap<&str, BTreeMap<&str, &str>> = BTreeMap::new();
        for ((id, rule), verdict) in &self.labels {
            out.entry(id.as_str()).or_default().insert(rule.as_str(), verdict.as_str());
        }
        serde_json::to_string_pretty(&out).expect("labels serialize") + "\n"
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

pub fn load_oracle(path: impl AsRef<Path>) -> Result<OracleLabels> {
    let path = path.as_ref();
    OracleLabels::parse(&read(path)?, path)
}
