use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use super::semantic::SemanticResources;
use super::*;
use crate::corpus::{ApiCollection, ApiEntry};
use crate::exec::Execution;
use crate::semantics::{
    build_corpus, choose_k, train_lda, Corpus, CooccurrenceOptions, CooccurrenceSpace, LdaParams, SimilarityProvider, TopicModel,
    DEFAULT_BETA, DEFAULT_ITERATIONS, DEFAULT_SEED,
};
use crate::text::CrudLexicon;
use crate::uri::{parse_uri, ResourceUri};

pub const DEFAULT_THRESHOLD: f64 = 0.3;

#[derive(Clone)]
pub struct DetectionConfig {
    pub threshold: f64,
    /// Topic count; by default one per distinct endpoint.
    pub topics_k: Option<usize>,
    pub seed: u64,
    pub iterations: usize,
    pub alpha: Option<f64>,
    pub beta: f64,
    /// Rules to run. Duplicates are ignored and output follows the
    /// canonical rule order.
    pub rules: Vec<RuleId>,
    pub lexicon: CrudLexicon,
    /// Noun hierarchy; `None` uses the embedded table.
    pub hierarchy: Option<Arc<HierarchyTable>>,
    /// Replaces the corpus-derived similarity space.
    pub vectors: Option<Arc<dyn SimilarityProvider>>,
    pub cooccurrence: CooccurrenceOptions,
    pub execution: Execution,
}

impl Default for DetectionConfig {
    fn default() -> Self {
        DetectionConfig {
            threshold: DEFAULT_THRESHOLD,
            topics_k: None,
            seed: DEFAULT_SEED,
            iterations: DEFAULT_ITERATIONS,
            alpha: None,
            beta: DEFAULT_BETA,
            rules: RuleId::ALL.to_vec(),
            lexicon: CrudLexicon::default(),
            hierarchy: None,
            vectors: None,
            cooccurrence: CooccurrenceOptions::default(),
            execution: Execution::default(),
        }
    }
}

impl DetectionConfig {
    pub fn lda_params(&self, k: usize) -> LdaParams {
        LdaParams {
            k,
            seed: self.seed,
            iterations: self.iterations,
            alpha: self.alpha,
            beta: self.beta,
            ..LdaParams::new(k)
        }
    }

    fn selected_rules(&self) -> Vec<RuleId> {
        RuleId::ALL.into_iter().filter(|r| self.rules.contains(r)).collect()
    }
}

/// Result of running the rules over a collection.
#[derive(Debug, Clone, Default)]
pub struct Analysis {
    /// Rules that produced a verdict for every entry, in canonical order.
    pub rules: Vec<RuleId>,
    /// Entry-major: all rule findings of the first entry, then the next.
    pub findings: Vec<Finding>,
    /// Wall-clock seconds spent on each rule over the whole collection.
    pub timings: BTreeMap<RuleId, f64>,
    /// Set when the topic model could not be trained; the rules that need
    /// it are then missing from `rules` and `findings`.
    pub semantic_error: Option<String>,
    pub topic_model: Option<TopicModel>,
}

impl Analysis {
    pub fn has_antipattern(&self) -> bool {
        self.findings.iter().any(|f| f.verdict.is_antipattern())
    }

    pub fn findings_for(&self, rule: RuleId) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(move |f| f.rule == rule)
    }
}

struct Semantic {
    corpus: Corpus,
    provider: Arc<dyn SimilarityProvider>,
}

/// Run the configured rules over every entry.
///
/// Rules run one after the other so each can be timed; within a rule the
/// entries are checked according to `config.execution`. The similarity
/// space and topic model are built the first time a rule needs them and
/// that cost is charged to the rule.
pub fn run_all(collection: &ApiCollection, config: &DetectionConfig) -> Analysis {
    let rules = config.selected_rules();
    let mut analysis = Analysis::default();
    if collection.entries.is_empty() {
        analysis.rules = rules;
        return analysis;
    }
    let uris: Vec<ResourceUri> = collection.entries.iter().map(|e| parse_uri(&e.uri)).collect();
    let items: Vec<(&ApiEntry, &ResourceUri)> = collection.entries.iter().zip(&uris).collect();
    let hierarchy = config.hierarchy.as_deref().unwrap_or_else(|| HierarchyTable::embedded());
    let ex = config.execution;

    let mut semantic: Option<Semantic> = None;
    let mut per_rule: Vec<Vec<Finding>> = Vec::new();
    for rule in rules {
        let start = Instant::now();
        if rule.is_semantic() && semantic.is_none() {
            let corpus = build_corpus(collection);
            let provider: Arc<dyn SimilarityProvider> = match &config.vectors {
                Some(v) => Arc::clone(v),
                None => Arc::new(CooccurrenceSpace::build(&corpus, config.cooccurrence, ex)),
            };
            semantic = Some(Semantic { corpus, provider });
        }
        let res = semantic.as_ref().map(|s| SemanticResources {
            provider: s.provider.as_ref(),
            stopwords: &collection.stopwords,
            acronyms: &collection.acronyms,
            threshold: config.threshold,
        });
        let findings = match rule {
            RuleId::AmorphousUri => ex.map(&items, |(e, u)| detect_amorphous(e, u)),
            RuleId::UnversionedUri => ex.map(&items, |(e, u)| detect_unversioned(e, u)),
            RuleId::NonStandardUri => ex.map(&items, |(e, u)| detect_non_standard(e, u)),
            RuleId::CrudyUri => ex.map(&items, |(e, u)| detect_crudy(e, u, &config.lexicon)),
            RuleId::PluralisedNodes => ex.map(&items, |(e, u)| detect_pluralised(e, u)),
            RuleId::NonHierarchicalNodes => ex.map(&items, |(e, u)| detect_non_hierarchical(e, u, hierarchy)),
            RuleId::InconsistentDocumentation => ex.map(&items, |(e, u)| {
                detect_inconsistent_doc(e, u, &config.lexicon, &collection.stopwords, &collection.acronyms)
            }),
            RuleId::NonPertinentDocumentation => {
                let res = res.expect("semantic resources built");
                ex.map(&items, |(e, u)| detect_non_pertinent_doc(e, u, &res))
            }
            RuleId::ContextlessResourceNames => {
                let res = res.expect("semantic resources built");
                let corpus = &semantic.as_ref().expect("semantic resources built").corpus;
                let k = config.topics_k.unwrap_or_else(|| choose_k(collection, corpus));
                match train_lda(corpus, &config.lda_params(k)) {
                    Ok(model) => {
                        let found = ex.map(&items, |(e, u)| detect_contextless(e, u, &model, &res));
                        analysis.topic_model = Some(model);
                        found
                    }
                    Err(err) => {
                        analysis.semantic_error = Some(format!("{rule}: {err}"));
                        continue;
                    }
                }
            }
        };
        analysis.timings.insert(rule, start.elapsed().as_secs_f64());
        analysis.rules.push(rule);
        per_rule.push(findings);
    }

    let mut columns: Vec<_> = per_rule.into_iter().map(Vec::into_iter).collect();
    for _ in 0..items.len() {
        for col in columns.iter_mut() {
            analysis.findings.push(col.next().expect("one finding per entry"));
        }
    }
    analysis
}
