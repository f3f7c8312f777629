//! Word-similarity providers.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use super::Corpus;
use crate::error::{Error, Result};
use crate::exec::Execution;

/// Scores word pairs in `[0, 1]`.
///
/// Implementations must be symmetric, give 1 for an in-vocabulary word
/// against itself and 0 when either word is unknown.
pub trait SimilarityProvider: Send + Sync {
    fn similarity(&self, a: &str, b: &str) -> f64;
    fn contains(&self, word: &str) -> bool;
}

pub fn second_order_similarity(a: &str, b: &str, provider: &dyn SimilarityProvider) -> f64 {
    provider.similarity(a, b)
}

type SparseVec = Vec<(u32, f64)>;

fn dot(a: &SparseVec, b: &SparseVec) -> f64 {
    let (mut i, mut j, mut s) = (0, 0, 0.0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                s += a[i].1 * b[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    s
}

fn normalize(v: &mut SparseVec) {
    let norm = v.iter().map(|(_, x)| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        for (_, x) in v.iter_mut() {
            *x /= norm;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CooccurrenceOptions {
    /// Tokens on each side counted as context.
    pub window: usize,
    /// Nearest first-order neighbours kept in a word's similarity vector.
    pub neighbours: usize,
}

impl Default for CooccurrenceOptions {
    fn default() -> Self {
        CooccurrenceOptions {
            window: 3,
            neighbours: 50,
        }
    }
}

/// Second-order distributional space derived from a corpus.
///
/// Each word gets a positional co-occurrence vector (context word and its
/// signed offset) weighted by positive PMI. Cosine over those vectors is the
/// first-order similarity. A word's second-order vector holds its
/// first-order similarities to its nearest neighbours, and the score of a
/// pair is the cosine of their second-order vectors.
#[derive(Debug, Clone)]
pub struct CooccurrenceSpace {
    index: HashMap<String, u32>,
    vectors: Vec<SparseVec>,
}

impl CooccurrenceSpace {
    pub fn build(corpus: &Corpus, options: CooccurrenceOptions, execution: Execution) -> Self {
        let vocab: Vec<&String> = corpus.vocabulary.keys().collect();
        let index: HashMap<String, u32> = vocab.iter().enumerate().map(|(i, w)| ((*w).clone(), i as u32)).collect();
        let n = vocab.len();
        let w = options.window.max(1);
        let slots = 2 * w;

        let mut counts: Vec<BTreeMap<u32, f64>> = vec![BTreeMap::new(); n];
        for doc in &corpus.documents {
            let ids: Vec<u32> = doc.tokens.iter().map(|t| index[t]).collect();
            for (i, &a) in ids.iter().enumerate() {
                let lo = i.saturating_sub(w);
                let hi = (i + w).min(ids.len().saturating_sub(1));
                for (j, &b) in ids.iter().enumerate().take(hi + 1).skip(lo) {
                    if j == i {
                        continue;
                    }
                    let offset = j as isize - i as isize;
                    let slot = if offset < 0 { (offset + w as isize) as usize } else { w + offset as usize - 1 };
                    let feature = b * slots as u32 + slot as u32;
                    *counts[a as usize].entry(feature).or_default() += 1.0;
                }
            }
        }

        let total: f64 = counts.iter().flat_map(|m| m.values()).sum();
        let mut feature_totals: HashMap<u32, f64> = HashMap::new();
        for m in &counts {
            for (&f, &c) in m {
                *feature_totals.entry(f).or_default() += c;
            }
        }
        let first: Vec<SparseVec> = counts
            .iter()
            .map(|m| {
                let row: f64 = m.values().sum();
                let mut v: SparseVec = m
                    .iter()
                    .filter_map(|(&f, &c)| {
                        let pmi = (c * total / (row * feature_totals[&f])).ln();
                        (pmi > 0.0).then_some((f, pmi))
                    })
                    .collect();
                normalize(&mut v);
                v
            })
            .collect();

        // feature -> words carrying it, for sparse all-pairs cosine
        let mut postings: HashMap<u32, Vec<(u32, f64)>> = HashMap::new();
        for (wid, v) in first.iter().enumerate() {
            for &(f, x) in v {
                postings.entry(f).or_default().push((wid as u32, x));
            }
        }

        let k = options.neighbours.max(1);
        let vectors = execution.map_range(n, |a| {
            let mut acc: HashMap<u32, f64> = HashMap::new();
            for &(f, x) in &first[a] {
                for &(b, y) in &postings[&f] {
                    if b as usize != a {
                        *acc.entry(b).or_default() += x * y;
                    }
                }
            }
            let mut nearest: Vec<(u32, f64)> = acc.into_iter().filter(|&(_, s)| s > 0.0).collect();
            nearest.sort_by(|x, y| y.1.total_cmp(&x.1).then(x.0.cmp(&y.0)));
            nearest.truncate(k);
            nearest.push((a as u32, 1.0));
            nearest.sort_by_key(|&(id, _)| id);
            normalize(&mut nearest);
            nearest
        });

        CooccurrenceSpace { index, vectors }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

impl SimilarityProvider for CooccurrenceSpace {
    fn similarity(&self, a: &str, b: &str) -> f64 {
        let (Some(&ia), Some(&ib)) = (self.index.get(a), self.index.get(b)) else {
            return 0.0;
        };
        if ia == ib {
            return 1.0;
        }
        dot(&self.vectors[ia as usize], &self.vectors[ib as usize]).clamp(0.0, 1.0)
    }

    fn contains(&self, word: &str) -> bool {
        self.index.contains_key(word)
    }
}

/// Pre-computed word vectors, one `word v1 ... vd` line per word.
///
/// Similarity is the cosine clipped at zero.
#[derive(Debug, Clone, Default)]
pub struct VectorSpace {
    index: HashMap<String, usize>,
    vectors: Vec<Vec<f64>>,
}

impl VectorSpace {
    pub fn parse(text: &str) -> Result<Self> {
        let mut space = VectorSpace::default();
        let mut dim = None;
        for (lineno, line) in text.lines().enumerate() {
            let mut parts = line.split_whitespace();
            let Some(word) = parts.next() else { continue };
            let values: Vec<f64> = parts
                .map(|p| p.parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Validation(format!("vectors line {}: {e}", lineno + 1)))?;
            if values.is_empty() {
                return Err(Error::Validation(format!("vectors line {}: no components", lineno + 1)));
            }
            match dim {
                None => dim = Some(values.len()),
                Some(d) if d != values.len() => {
                    return Err(Error::Validation(format!(
                        "vectors line {}: expected {d} components, found {}",
                        lineno + 1,
                        values.len()
                    )))
                }
                _ => {}
            }
            let norm = values.iter().map(|x| x * x).sum::<f64>().sqrt();
            let unit = values.iter().map(|x| if norm > 0.0 { x / norm } else { 0.0 }).collect();
            let word = word.to_lowercase();
            match space.index.get(&word) {
                Some(&i) => space.vectors[i] = unit,
                None => {
                    space.index.insert(word, space.vectors.len());
                    space.vectors.push(unit);
                }
            }
        }
        Ok(space)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

impl SimilarityProvider for VectorSpace {
    fn similarity(&self, a: &str, b: &str) -> f64 {
        let (Some(&ia), Some(&ib)) = (self.index.get(a), self.index.get(b)) else {
            return 0.0;
        };
        if ia == ib {
            return 1.0;
        }
        let s: f64 = self.vectors[ia].iter().zip(&self.vectors[ib]).map(|(x, y)| x * y).sum();
        s.clamp(0.0, 1.0)
    }

    fn contains(&self, word: &str) -> bool {
        self.index.contains_key(word)
    }
}
