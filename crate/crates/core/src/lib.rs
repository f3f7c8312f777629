//! Linguistic quality checks for REST API endpoint collections.
//!
//! The crate detects nine pairs of linguistic patterns and antipatterns in
//! resource URIs and their documentation. Purely lexical rules work on the
//! parsed URI alone; the semantic rules combine an LDA topic model trained on
//! the collection's documentation with a second-order distributional
//! similarity space built from the same corpus.
//!
//! ```no_run
//! use restling::{corpus, detectors::{self, DetectionConfig}};
//!
//! let collection = corpus::load_collection("api.json")?;
//! let analysis = detectors::run_all(&collection, &DetectionConfig::default());
//! for finding in &analysis.findings {
//!     println!("{} {} {}", finding.entry_id, finding.rule, finding.verdict);
//! }
//! # Ok::<(), restling::Error>(())
//! ```

pub mod corpus;
pub mod detectors;
mod error;
pub mod exec;
pub mod report;
pub mod semantics;
pub mod text;
pub mod uri;

pub use error::{Error, Result};
