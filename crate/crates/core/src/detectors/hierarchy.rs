use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::OnceLock;

use crate::error::{Error, Result};

const EMBEDDED: &str = include_str!("../../data/hierarchy.tsv");

/// General-before-specific relations between nouns (`team` ⊇ `player`).
///
/// Lookups use the transitive closure, so `university` ⊇ `professor`
/// follows from `university` ⊇ `faculty` ⊇ `professor`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HierarchyTable {
    direct: BTreeMap<String, BTreeSet<String>>,
    closure: BTreeMap<String, BTreeSet<String>>,
}

impl HierarchyTable {
    pub fn from_pairs<I, A, B>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<String>,
        B: Into<String>,
    {
        let mut direct: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for (general, specific) in pairs {
            let (g, s) = (general.into(), specific.into());
            if g != s {
                direct.entry(g).or_default().insert(s);
            }
        }
        let closure = direct
            .keys()
            .map(|root| {
                let mut seen = BTreeSet::new();
                let mut stack: Vec<&String> = direct[root].iter().collect();
                while let Some(w) = stack.pop() {
                    if seen.insert(w.clone()) {
                        if let Some(next) = direct.get(w) {
                            stack.extend(next.iter());
                        }
                    }
                }
                seen.remove(root);
                (root.clone(), seen)
            })
            .collect();
        HierarchyTable { direct, closure }
    }

    /// Tab-separated `general<TAB>specific` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (g, s) = line.split_once('\t').ok_or_else(|| {
                Error::Validation(format!("hierarchy line {}: expected `general<TAB>specific`", lineno + 1))
            })?;
            pairs.push((g.trim().to_lowercase(), s.trim().to_lowercase()));
        }
        Ok(Self::from_pairs(pairs))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    /// The table shipped with the crate.
    pub fn embedded() -> &'static HierarchyTable {
        static TABLE: OnceLock<HierarchyTable> = OnceLock::new();
        TABLE.get_or_init(|| Self::parse(EMBEDDED).expect("embedded hierarchy table parses"))
    }

    /// True when `general` is recorded (directly or transitively) above `specific`.
    pub fn contains(&self, general: &str, specific: &str) -> bool {
        self.closure.get(general).is_some_and(|s| s.contains(specific))
    }

    /// Number of directly recorded pairs.
    pub fn len(&self) -> usize {
        self.direct.values().map(BTreeSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.direct.is_empty()
    }
}
