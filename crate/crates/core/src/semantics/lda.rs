//! Latent Dirichlet allocation by collapsed Gibbs sampling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Corpus;
use crate::error::{Error, Result};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_ITERATIONS: usize = 1000;
pub const DEFAULT_BETA: f64 = 0.01;
pub const DEFAULT_TOP_WORDS: usize = 15;

#[derive(Debug, Clone, PartialEq)]
pub struct LdaParams {
    pub k: usize,
    pub seed: u64,
    pub iterations: usize,
    /// Symmetric document-topic prior; `None` means `50 / k`.
    pub alpha: Option<f64>,
    pub beta: f64,
    pub top_words: usize,
}

impl LdaParams {
    pub fn new(k: usize) -> Self {
        LdaParams {
            k,
            seed: DEFAULT_SEED,
            iterations: DEFAULT_ITERATIONS,
            alpha: None,
            beta: DEFAULT_BETA,
            top_words: DEFAULT_TOP_WORDS,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha.unwrap_or(50.0 / self.k as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopicWord {
    pub word: String,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TopicModel {
    pub k: usize,
    pub seed: u64,
    pub vocabulary: Vec<String>,
    /// `k` rows of `P(word | topic)` over the whole vocabulary.
    pub topic_word: Vec<Vec<f64>>,
    /// Highest-weight words of each topic, descending, ties broken by word.
    pub topics: Vec<Vec<TopicWord>>,
}

impl TopicModel {
    pub fn word_index(&self, word: &str) -> Option<usize> {
        self.vocabulary.binary_search_by(|w| w.as_str().cmp(word)).ok()
    }

    /// `P(word | topic)`, zero for unknown words.
    pub fn weight(&self, topic: usize, word: &str) -> f64 {
        self.word_index(word).map_or(0.0, |i| self.topic_word[topic][i])
    }

    pub fn topic_words(&self, topic: usize) -> impl Iterator<Item = &str> {
        self.topics[topic].iter().map(|t| t.word.as_str())
    }

    /// `{"k", "seed", "topics": [[{"word", "weight"}]]}`, keys sorted.
    pub fn to_json(&self) -> String {
        let value = serde_json::json!({
            "k": self.k,
            "seed": self.seed,
            "topics": self.topics,
        });
        let mut s = serde_json::to_string_pretty(&value).expect("topic model serializes");
        s.push('\n');
        s
    }
}

/// Train a topic model on `corpus`.
///
/// The sampler is single-threaded and driven by one seeded ChaCha stream,
/// so identical inputs give a bit-identical model.
pub fn train_lda(corpus: &Corpus, params: &LdaParams) -> Result<TopicModel> {
    if params.k == 0 {
        return Err(Error::InvalidArgument("topic count must be at least 1".into()));
    }
    if params.iterations == 0 {
        return Err(Error::InvalidArgument("iterations must be at least 1".into()));
    }
    if corpus.vocabulary.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let vocabulary: Vec<String> = corpus.vocabulary.keys().cloned().collect();
    let v = vocabulary.len();
    let k = params.k;
    let alpha = params.alpha();
    let beta = params.beta;
    let v_beta = v as f64 * beta;

    let docs: Vec<Vec<usize>> = corpus
        .documents
        .iter()
        .map(|d| {
            d.tokens
                .iter()
                .map(|t| vocabulary.binary_search(t).expect("token in vocabulary"))
                .collect()
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut n_dk = vec![vec![0u32; k]; docs.len()];
    let mut n_kw = vec![vec![0u32; v]; k];
    let mut n_k = vec![0u32; k];
    let mut z: Vec<Vec<usize>> = Vec::with_capacity(docs.len());
    for (d, doc) in docs.iter().enumerate() {
        let mut zd = Vec::with_capacity(doc.len());
        for &w in doc {
            let t = rng.random_range(0..k);
            n_dk[d][t] += 1;
            n_kw[t][w] += 1;
            n_k[t] += 1;
            zd.push(t);
        }
        z.push(zd);
    }

    let mut p = vec![0.0f64; k];
    for _ in 0..params.iterations {
        for (d, doc) in docs.iter().enumerate() {
            for (i, &w) in doc.iter().enumerate() {
                let old = z[d][i];
                n_dk[d][old] -= 1;
                n_kw[old][w] -= 1;
                n_k[old] -= 1;

                let mut total = 0.0;
                for t in 0..k {
                    total += (n_dk[d][t] as f64 + alpha) * (n_kw[t][w] as f64 + beta)
                        / (n_k[t] as f64 + v_beta);
                    p[t] = total;
                }
                let u = rng.random::<f64>() * total;
                let new = p.iter().position(|&c| u < c).unwrap_or(k - 1);

                z[d][i] = new;
                n_dk[d][new] += 1;
                n_kw[new][w] += 1;
                n_k[new] += 1;
            }
        }
    }

    let topic_word: Vec<Vec<f64>> = (0..k)
        .map(|t| {
            let denom = n_k[t] as f64 + v_beta;
            n_kw[t].iter().map(|&c| (c as f64 + beta) / denom).collect()
        })
        .collect();
    let topics = topic_word
        .iter()
        .map(|row| {
            let mut ranked: Vec<usize> = (0..v).collect();
            ranked.sort_by(|&a, &b| row[b].total_cmp(&row[a]).then_with(|| vocabulary[a].cmp(&vocabulary[b])));
            ranked
                .into_iter()
                .take(params.top_words)
                .map(|i| TopicWord {
                    word: vocabulary[i].clone(),
                    weight: row[i],
                })
                .collect()
        })
        .collect();

    Ok(TopicModel {
        k,
        seed: params.seed,
        vocabulary,
        topic_word,
        topics,
    })
}
