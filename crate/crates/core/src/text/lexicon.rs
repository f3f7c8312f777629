use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CrudClass {
    Create,
    Read,
    Update,
    Delete,
}

impl CrudClass {
    pub const ALL: [CrudClass; 4] = [CrudClass::Create, CrudClass::Read, CrudClass::Update, CrudClass::Delete];

    pub fn as_str(self) -> &'static str {
        match self {
            CrudClass::Create => "create",
            CrudClass::Read => "read",
            CrudClass::Update => "update",
            CrudClass::Delete => "delete",
        }
    }
}

impl fmt::Display for CrudClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// CRUD verbs and their synonyms, one disjoint set per class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrudLexicon {
    sets: [BTreeSet<String>; 4],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLexicon {
    create: Vec<String>,
    read: Vec<String>,
    update: Vec<String>,
    delete: Vec<String>,
}

impl Default for CrudLexicon {
    fn default() -> Self {
        let set = |ws: &[&str]| ws.iter().map(|w| w.to_string()).collect();
        CrudLexicon {
            sets: [
                set(&["create", "make", "add", "new", "insert", "build", "generate", "register", "post"]),
                set(&["read", "get", "fetch", "retrieve", "show", "view", "list", "search", "find", "query"]),
                set(&["update", "modify", "edit", "change", "set", "put", "patch"]),
                set(&["delete", "remove", "destroy", "erase", "clear", "purge"]),
            ],
        }
    }
}

impl CrudLexicon {
    /// Build from explicit word lists; words must be lowercase and each may
    /// belong to one class only.
    pub fn new(create: Vec<String>, read: Vec<String>, update: Vec<String>, delete: Vec<String>) -> Result<Self> {
        let mut sets: [BTreeSet<String>; 4] = Default::default();
        for (i, words) in [create, read, update, delete].into_iter().enumerate() {
            for w in words {
                let w = w.trim().to_string();
                if w.is_empty() || w != w.to_lowercase() {
                    return Err(Error::Validation(format!("lexicon word `{w}` must be non-empty lowercase")));
                }
                sets[i].insert(w);
            }
        }
        for i in 0..4 {
            for j in i + 1..4 {
                if let Some(w) = sets[i].intersection(&sets[j]).next() {
                    return Err(Error::Validation(format!(
                        "lexicon word `{w}` appears in both {} and {}",
                        CrudClass::ALL[i],
                        CrudClass::ALL[j]
                    )));
                }
            }
        }
        Ok(CrudLexicon { sets })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawLexicon =
            serde_json::from_str(text).map_err(|e| Error::Validation(format!("lexicon: {e}")))?;
        Self::new(raw.create, raw.read, raw.update, raw.delete)
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn class_of(&self, word: &str) -> Option<CrudClass> {
        CrudClass::ALL
            .into_iter()
            .zip(&self.sets)
            .find(|(_, set)| set.contains(word))
            .map(|(c, _)| c)
    }

    pub fn words(&self, class: CrudClass) -> impl Iterator<Item = &str> {
        self.sets[class as usize].iter().map(String::as_str)
    }
}

pub fn crud_class_of(word: &str, lexicon: &CrudLexicon) -> Option<CrudClass> {
    lexicon.class_of(word)
}
