//! Rules that score URI words against the documentation's meaning.

use super::{Evidence, Finding, Location, RuleId, Verdict};
use crate::corpus::{AcronymDictionary, ApiEntry, StopWordList};
use crate::semantics::{aggregate_node_topic_score, node_topic_memberships, node_words, SimilarityProvider, TopicModel};
use crate::text::preprocess;
use crate::uri::ResourceUri;

/// What the semantic rules share for one collection.
#[derive(Clone, Copy)]
pub struct SemanticResources<'a> {
    pub provider: &'a dyn SimilarityProvider,
    pub stopwords: &'a StopWordList,
    pub acronyms: &'a AcronymDictionary,
    pub threshold: f64,
}

fn topic_list(topics: &[usize]) -> String {
    if topics.is_empty() {
        return "no topic".into();
    }
    let names: Vec<String> = topics.iter().map(|t| (t + 1).to_string()).collect();
    format!("topics {{{}}}", names.join(", "))
}

/// Path words that do not belong to a common topic.
///
/// A word fits a topic when its best similarity to the topic's top words
/// exceeds the threshold. The URI is contextless when two consecutive
/// fitting words share no topic, or when most of its words fit no topic at
/// all. The score is the best per-topic average over all words.
pub fn detect_contextless(entry: &ApiEntry, uri: &ResourceUri, model: &TopicModel, res: &SemanticResources) -> Finding {
    let words = node_words(uri, false, res.stopwords, res.acronyms);
    if words.is_empty() {
        return Finding::from_evidence(&entry.id, RuleId::ContextlessResourceNames, Vec::new());
    }
    let rows = node_topic_memberships(&words, model, res.provider, res.threshold);
    let mut evidence = Vec::new();

    let unfit: Vec<&str> = rows.iter().filter(|r| !r.fits_any()).map(|r| r.node.as_str()).collect();
    if 2 * unfit.len() > rows.len() {
        evidence.push(Evidence::new(
            Location::Uri,
            format!("{} of {} path words fit no topic: {}", unfit.len(), rows.len(), unfit.join(", ")),
        ));
    }
    let fitting: Vec<_> = rows.iter().filter(|r| r.fits_any()).collect();
    for pair in fitting.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let shared = a.fits.iter().zip(&b.fits).any(|(x, y)| *x && *y);
        if !shared {
            let ta: Vec<usize> = a.topics().collect();
            let tb: Vec<usize> = b.topics().collect();
            evidence.push(Evidence::new(
                Location::Uri,
                format!("`{}` ({}) and `{}` ({}) share no topic", a.node, topic_list(&ta), b.node, topic_list(&tb)),
            ));
        }
    }

    let uri_score = (0..model.k)
        .map(|t| rows.iter().map(|r| r.scores[t]).sum::<f64>() / rows.len() as f64)
        .fold(0.0, f64::max);
    let mut f = Finding::from_evidence(&entry.id, RuleId::ContextlessResourceNames, evidence);
    f.score = Some(uri_score);
    f
}

/// How well the documentation speaks about the resource the path names:
/// the mean, over literal path words, of the best similarity to any
/// documentation token.
pub fn detect_non_pertinent_doc(entry: &ApiEntry, uri: &ResourceUri, res: &SemanticResources) -> Finding {
    let rule = RuleId::NonPertinentDocumentation;
    let doc = preprocess(&entry.documentation, res.stopwords, res.acronyms);
    if doc.is_empty() {
        return Finding::from_evidence(&entry.id, rule, vec![Evidence::new(Location::Documentation, "no documentation")]);
    }
    let words = node_words(uri, true, res.stopwords, res.acronyms);
    if words.is_empty() {
        return Finding::from_evidence(&entry.id, rule, Vec::new());
    }
    let score = aggregate_node_topic_score(&words, &doc.tokens, res.provider).expect("both sides non-empty");
    let evidence = if score >= res.threshold {
        Vec::new()
    } else {
        vec![Evidence::new(
            Location::Documentation,
            format!("documentation relatedness {score:.4} is below {}", res.threshold),
        )]
    };
    let mut f = Finding::from_evidence(&entry.id, rule, evidence);
    debug_assert_eq!(f.verdict == Verdict::Pattern, score >= res.threshold);
    f.score = Some(score);
    f
}
