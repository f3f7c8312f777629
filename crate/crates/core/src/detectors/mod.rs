//! The nine linguistic rules and the batch runner.
//!
//! Each rule is named after its antipattern; a [`Verdict::Pattern`] means the
//! paired good practice holds for that entry.

mod hierarchy;
mod lexical;
mod runner;
mod semantic;
mod syntactic;

pub use hierarchy::HierarchyTable;
pub use lexical::{detect_crudy, detect_inconsistent_doc, detect_non_hierarchical, detect_pluralised};
pub use runner::{run_all, Analysis, DetectionConfig, DEFAULT_THRESHOLD};
pub use semantic::{detect_contextless, detect_non_pertinent_doc, SemanticResources};
pub use syntactic::{detect_amorphous, detect_non_standard, detect_unversioned};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleId {
    AmorphousUri,
    ContextlessResourceNames,
    CrudyUri,
    NonHierarchicalNodes,
    PluralisedNodes,
    NonPertinentDocumentation,
    InconsistentDocumentation,
    UnversionedUri,
    NonStandardUri,
}

impl RuleId {
    pub const ALL: [RuleId; 9] = [
        RuleId::AmorphousUri,
        RuleId::ContextlessResourceNames,
        RuleId::CrudyUri,
        RuleId::NonHierarchicalNodes,
        RuleId::PluralisedNodes,
        RuleId::NonPertinentDocumentation,
        RuleId::InconsistentDocumentation,
        RuleId::UnversionedUri,
        RuleId::NonStandardUri,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::AmorphousUri => "amorphous_uri",
            RuleId::ContextlessResourceNames => "contextless_resource_names",
            RuleId::CrudyUri => "crudy_uri",
            RuleId::NonHierarchicalNodes => "non_hierarchical_nodes",
            RuleId::PluralisedNodes => "pluralised_nodes",
            RuleId::NonPertinentDocumentation => "non_pertinent_documentation",
            RuleId::InconsistentDocumentation => "inconsistent_documentation",
            RuleId::UnversionedUri => "unversioned_uri",
            RuleId::NonStandardUri => "non_standard_uri",
        }
    }

    /// Human names of the (antipattern, pattern) pair.
    pub fn names(self) -> (&'static str, &'static str) {
        match self {
            RuleId::AmorphousUri => ("Amorphous URI", "Tidy URI"),
            RuleId::ContextlessResourceNames => ("Contextless Resource Names", "Contextual Resource Names"),
            RuleId::CrudyUri => ("CRUDy URI", "Verbless URI"),
            RuleId::NonHierarchicalNodes => ("Non-hierarchical Nodes", "Hierarchical Nodes"),
            RuleId::PluralisedNodes => ("Pluralised Nodes", "Singularised Nodes"),
            RuleId::NonPertinentDocumentation => ("Non-pertinent Documentation", "Pertinent Documentation"),
            RuleId::InconsistentDocumentation => ("Inconsistent Documentation", "Consistent Documentation"),
            RuleId::UnversionedUri => ("Unversioned URI", "Versioned URI"),
            RuleId::NonStandardUri => ("Non-standard URI", "Standard URI"),
        }
    }

    /// Rules that need the similarity space built from documentation.
    pub fn is_semantic(self) -> bool {
        matches!(self, RuleId::ContextlessResourceNames | RuleId::NonPertinentDocumentation)
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RuleId {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        RuleId::ALL
            .into_iter()
            .find(|r| r.as_str() == s.trim())
            .ok_or_else(|| {
                let valid: Vec<&str> = RuleId::ALL.iter().map(|r| r.as_str()).collect();
                crate::Error::Validation(format!("unknown rule `{s}` (expected one of {})", valid.join(", ")))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pattern,
    Antipattern,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pattern => "pattern",
            Verdict::Antipattern => "antipattern",
        }
    }

    pub fn is_antipattern(self) -> bool {
        self == Verdict::Antipattern
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Verdict {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "pattern" => Ok(Verdict::Pattern),
            "antipattern" => Ok(Verdict::Antipattern),
            _ => Err(crate::Error::Validation(format!(
                "unknown verdict `{s}` (expected pattern or antipattern)"
            ))),
        }
    }
}

/// Where in the entry a piece of evidence points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Location {
    /// Index into the parsed path nodes.
    Node(usize),
    /// Index into the preprocessed documentation tokens.
    Token(usize),
    /// Character offset into the raw URI.
    Offset(usize),
    Uri,
    Documentation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub location: Location,
    pub message: String,
}

impl Evidence {
    pub fn new(location: Location, message: impl Into<String>) -> Self {
        Evidence {
            location,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub entry_id: String,
    pub rule: RuleId,
    pub verdict: Verdict,
    pub evidence: Vec<Evidence>,
    /// Similarity score behind a semantic verdict.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub score: Option<f64>,
}

impl Finding {
    /// Antipattern when there is evidence, pattern otherwise.
    pub(crate) fn from_evidence(entry_id: &str, rule: RuleId, evidence: Vec<Evidence>) -> Self {
        let verdict = if evidence.is_empty() { Verdict::Pattern } else { Verdict::Antipattern };
        Finding {
            entry_id: entry_id.to_string(),
            rule,
            verdict,
            evidence,
            score: None,
        }
    }
}
