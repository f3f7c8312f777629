//! Corpus building, topic modelling and node/topic similarity scoring.

mod lda;
mod similarity;

pub use lda::{
    train_lda, LdaParams, TopicModel, TopicWord, DEFAULT_BETA, DEFAULT_ITERATIONS, DEFAULT_SEED, DEFAULT_TOP_WORDS,
};
pub use similarity::{
    second_order_similarity, CooccurrenceOptions, CooccurrenceSpace, SimilarityProvider, VectorSpace,
};

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::corpus::{AcronymDictionary, ApiCollection, StopWordList};
use crate::error::{Error, Result};
use crate::text::{preprocess, ProcessedDoc};
use crate::uri::{is_version_token, parse_uri, ResourceUri};

/// Preprocessed documentation of a collection, one document per entry.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Corpus {
    pub documents: Vec<ProcessedDoc>,
    /// Token frequencies over all documents.
    pub vocabulary: BTreeMap<String, usize>,
}

impl Corpus {
    pub fn from_documents(documents: Vec<ProcessedDoc>) -> Self {
        let mut vocabulary = BTreeMap::new();
        for d in &documents {
            for t in &d.tokens {
                *vocabulary.entry(t.clone()).or_insert(0) += 1;
            }
        }
        Corpus { documents, vocabulary }
    }
}

pub fn build_corpus(collection: &ApiCollection) -> Corpus {
    Corpus::from_documents(
        collection
            .entries
            .iter()
            .map(|e| preprocess(&e.documentation, &collection.stopwords, &collection.acronyms))
            .collect(),
    )
}

/// Topic count: distinct first literal path nodes (endpoints), ignoring
/// version segments, clamped to `[1, vocabulary size]`.
pub fn choose_k(collection: &ApiCollection, corpus: &Corpus) -> usize {
    let endpoints: BTreeSet<String> = collection
        .entries
        .iter()
        .filter_map(|e| {
            parse_uri(&e.uri)
                .literal_nodes()
                .map(|(_, n)| n)
                .find(|n| !is_version_token(&n.raw) && !n.words.is_empty())
                .map(|n| n.raw.to_lowercase())
        })
        .collect();
    endpoints.len().clamp(1, corpus.vocabulary.len().max(1))
}

/// Lowercase tokens too generic to carry meaning in a path.
const NOISE: &[&str] = &["api", "uuid", "guid", "id", "ids"];

/// Content words of a URI path, in order and without repeats.
///
/// Every node is split and run through the text pipeline, so a template
/// like `device_id` contributes `device`. Version segments, words shorter
/// than three letters and generic identifiers are skipped.
pub fn node_words(
    uri: &ResourceUri,
    literal_only: bool,
    stopwords: &StopWordList,
    acronyms: &AcronymDictionary,
) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for node in &uri.nodes {
        if (literal_only && !node.is_literal()) || is_version_token(&node.raw) {
            continue;
        }
        for w in preprocess(&node.raw, stopwords, acronyms).tokens {
            if w.chars().count() >= 3 && !NOISE.contains(&w.as_str()) && !out.contains(&w) {
                out.push(w);
            }
        }
    }
    out
}

/// Mean over `nodes` of the best similarity against any word of `topic`.
pub fn aggregate_node_topic_score<S: AsRef<str>, T: AsRef<str>>(
    nodes: &[S],
    topic: &[T],
    provider: &dyn SimilarityProvider,
) -> Result<f64> {
    if nodes.is_empty() {
        return Err(Error::InvalidArgument("no nodes to score".into()));
    }
    if topic.is_empty() {
        return Err(Error::InvalidArgument("topic has no words".into()));
    }
    let total: f64 = nodes
        .iter()
        .map(|n| max_similarity(n.as_ref(), topic, provider))
        .sum();
    Ok(total / nodes.len() as f64)
}

fn max_similarity<T: AsRef<str>>(word: &str, others: &[T], provider: &dyn SimilarityProvider) -> f64 {
    others
        .iter()
        .map(|o| provider.similarity(word, o.as_ref()))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// How one node relates to every topic.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodeTopicMembership {
    pub node: String,
    /// Best similarity against each topic's top words.
    pub scores: Vec<f64>,
    /// `scores[t] > threshold`.
    pub fits: Vec<bool>,
}

impl NodeTopicMembership {
    pub fn topics(&self) -> impl Iterator<Item = usize> + '_ {
        self.fits.iter().enumerate().filter(|(_, f)| **f).map(|(t, _)| t)
    }

    pub fn fits_any(&self) -> bool {
        self.fits.iter().any(|f| *f)
    }
}

pub fn node_topic_memberships<S: AsRef<str>>(
    nodes: &[S],
    model: &TopicModel,
    provider: &dyn SimilarityProvider,
    threshold: f64,
) -> Vec<NodeTopicMembership> {
    let topics: Vec<Vec<&str>> = (0..model.k).map(|t| model.topic_words(t).collect()).collect();
    nodes
        .iter()
        .map(|n| {
            let scores: Vec<f64> = topics
                .iter()
                .map(|words| if words.is_empty() { 0.0 } else { max_similarity(n.as_ref(), words, provider) })
                .collect();
            let fits = scores.iter().map(|s| *s > threshold).collect();
            NodeTopicMembership {
                node: n.as_ref().to_string(),
                scores,
                fits,
            }
        })
        .collect()
}
