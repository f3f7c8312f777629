//! `restling`: lint REST endpoint collections for linguistic antipatterns.
//!
//! Exit codes: 0 success, 1 unreadable or malformed input, 2 invalid
//! configuration or oracle, 3 antipattern found with `--fail-on-antipattern`,
//! 4 the topic model or similarity space could not be built.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use restling::corpus::{
    load_acronyms, load_collection, load_collections, load_oracle, load_stopwords, ApiCollection, ApiEntry,
};
use restling::detectors::{run_all, Analysis, DetectionConfig, RuleId, DEFAULT_THRESHOLD};
use restling::report::{
    evaluate, export_evaluation, export_report, fit_time_growth, summarize, Format, Report,
};
use restling::semantics::{build_corpus, choose_k, train_lda, TopicModel, VectorSpace, DEFAULT_ITERATIONS, DEFAULT_SEED};
use restling::text::CrudLexicon;
use restling::Error;

#[derive(Parser)]
#[command(name = "restling", version, about = "Linguistic antipattern detection for REST API collections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the detectors and write a report.
    Analyze {
        collection: PathBuf,
        #[command(flatten)]
        opts: Options,
        /// Exit with status 3 when any entry shows an antipattern.
        #[arg(long)]
        fail_on_antipattern: bool,
    },
    /// Score the detectors against hand-labelled verdicts.
    Eval {
        collection: PathBuf,
        oracle: PathBuf,
        #[command(flatten)]
        opts: Options,
    },
    /// Train and print the topic model of a collection's documentation.
    Topics {
        collection: PathBuf,
        #[command(flatten)]
        opts: Options,
    },
    /// Time every rule on resampled collections of increasing size.
    Bench {
        collection: PathBuf,
        #[command(flatten)]
        opts: Options,
        /// Comma-separated collection sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
    },
}

#[derive(Args)]
struct Options {
    /// Similarity a word needs to count as related, in (0, 1).
    #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
    threshold: f64,
    /// Number of topics; defaults to the number of distinct endpoints.
    #[arg(long)]
    topics_k: Option<usize>,
    #[arg(long, env = "REST_LING_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Gibbs sampling sweeps.
    #[arg(long, default_value_t = DEFAULT_ITERATIONS)]
    iterations: usize,
    /// Stop-word list, one word per line (replaces the built-in list).
    #[arg(long)]
    stopwords: Option<PathBuf>,
    /// Acronym expansions, `ACRONYM<TAB>expansion words` per line.
    #[arg(long)]
    acronyms: Option<PathBuf>,
    /// CRUD verb lexicon as JSON with create/read/update/delete lists.
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// Pre-computed word vectors, `word v1 v2 ...` per line.
    #[arg(long)]
    vectors: Option<PathBuf>,
    /// Comma-separated rule ids; defaults to all nine.
    #[arg(long, value_delimiter = ',')]
    rules: Vec<String>,
    /// json, csv or text.
    #[arg(long, default_value = "json")]
    format: String,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include per-rule wall-clock seconds in reports.
    #[arg(long)]
    timings: bool,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(err: Error) -> Self {
        Failure { code: 1, message: err.to_string() }
    }

    fn config(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    /// Unreadable files are input errors; readable but invalid ones are
    /// configuration errors.
    fn setting(err: Error) -> Self {
        match err {
            Error::Io { .. } | Error::Parse { .. } => Failure::input(err),
            other => Failure::config(other.to_string()),
        }
    }
}

type CmdResult = Result<Outcome, Failure>;

/// What a command produced: output text, exit status, and an optional
/// warning for standard error.
struct Outcome {
    text: String,
    code: u8,
    warning: Option<String>,
}

struct Settings {
    config: DetectionConfig,
    format: Format,
    stopwords: Option<PathBuf>,
    acronyms: Option<PathBuf>,
    timings: bool,
}

impl Options {
    fn settings(&self) -> Result<Settings, Failure> {
        if !(self.threshold > 0.0 && self.threshold < 1.0) {
            return Err(Failure::config(format!("--threshold must lie in (0, 1), got {}", self.threshold)));
        }
        if self.iterations == 0 {
            return Err(Failure::config("--iterations must be at least 1"));
        }
        if self.topics_k == Some(0) {
            return Err(Failure::config("--topics-k must be at least 1"));
        }
        let format: Format = self.format.parse().map_err(|e: Error| Failure::config(e.to_string()))?;
        let rules = if self.rules.is_empty() {
            RuleId::ALL.to_vec()
        } else {
            self.rules
                .iter()
                .map(|r| r.trim().parse::<RuleId>().map_err(|e| Failure::config(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?
        };
        let lexicon = match &self.lexicon {
            Some(p) => CrudLexicon::load(p).map_err(Failure::setting)?,
            None => CrudLexicon::default(),
        };
        let vectors = match &self.vectors {
            Some(p) => {
                let space = VectorSpace::load(p).map_err(Failure::setting)?;
                Some(Arc::new(space) as Arc<dyn restling::semantics::SimilarityProvider>)
            }
            None => None,
        };
        let config = DetectionConfig {
            threshold: self.threshold,
            topics_k: self.topics_k,
            seed: self.seed,
            iterations: self.iterations,
            rules,
            lexicon,
            vectors,
            ..DetectionConfig::default()
        };
        Ok(Settings {
            config,
            format,
            stopwords: self.stopwords.clone(),
            acronyms: self.acronyms.clone(),
            timings: self.timings,
        })
    }
}

impl Settings {
    /// Attach the user's stop words and acronyms to a loaded collection.
    fn prepare(&self, mut c: ApiCollection) -> Result<ApiCollection, Failure> {
        if let Some(p) = &self.stopwords {
            c = c.with_stopwords(load_stopwords(p).map_err(Failure::setting)?);
        }
        if let Some(p) = &self.acronyms {
            c = c.with_acronyms(load_acronyms(p).map_err(Failure::setting)?);
        }
        Ok(c)
    }

    fn load_many(&self, path: &Path) -> Result<Vec<ApiCollection>, Failure> {
        load_collections(path)
            .map_err(Failure::input)?
            .into_iter()
            .map(|c| self.prepare(c))
            .collect()
    }

    fn load_one(&self, path: &Path) -> Result<ApiCollection, Failure> {
        self.prepare(load_collection(path).map_err(Failure::input)?)
    }
}

fn semantic_warning(name: &str, analysis: &Analysis) -> Option<String> {
    analysis.semantic_error.as_ref().map(|e| format!("{name}: {e}"))
}

fn analyze(path: &Path, opts: &Options, gate: bool) -> CmdResult {
    let s = opts.settings()?;
    let collections = s.load_many(path)?;
    let mut reports = Vec::new();
    let mut warnings = Vec::new();
    let mut flagged = false;
    for c in &collections {
        let analysis = run_all(c, &s.config);
        warnings.extend(semantic_warning(&c.name, &analysis));
        flagged |= analysis.has_antipattern();
        let mut summary = summarize(&analysis, c).map_err(Failure::input)?;
        if !s.timings {
            summary = summary.without_timings();
        }
        reports.push(Report::new(summary, analysis.findings));
    }
    let text = match (s.format, reports.len()) {
        (_, 1) => export_report(&reports[0], s.format),
        (Format::Json, _) => restling::report::canonical_json(&reports),
        (Format::Csv, _) => {
            // one header for all collections
            let mut out = String::new();
            for (i, r) in reports.iter().enumerate() {
                let csv = export_report(r, Format::Csv);
                let body = if i == 0 { csv.as_str() } else { csv.split_once('\n').map_or("", |(_, b)| b) };
                out.push_str(body);
            }
            out
        }
        (Format::Text, _) => reports
            .iter()
            .map(|r| export_report(r, Format::Text))
            .collect::<Vec<_>>()
            .join("\n"),
    };
    let code = if !warnings.is_empty() {
        4
    } else if gate && flagged {
        3
    } else {
        0
    };
    Ok(Outcome {
        text,
        code,
        warning: (!warnings.is_empty()).then(|| warnings.join("\n")),
    })
}

fn eval(path: &Path, oracle: &Path, opts: &Options) -> CmdResult {
    let s = opts.settings()?;
    let c = s.load_one(path)?;
    let labels = load_oracle(oracle).map_err(Failure::setting)?;
    labels.check_entries(&c).map_err(Failure::setting)?;
    let analysis = run_all(&c, &s.config);
    let warning = semantic_warning(&c.name, &analysis);
    let evaluation = evaluate(&analysis.findings, &labels);
    Ok(Outcome {
        text: export_evaluation(&evaluation, s.format),
        code: if warning.is_some() { 4 } else { 0 },
        warning,
    })
}

fn topics_text(model: &TopicModel, format: Format) -> String {
    match format {
        Format::Json => model.to_json(),
        Format::Csv => {
            let mut out = String::from("topic,rank,word,weight\n");
            for (t, words) in model.topics.iter().enumerate() {
                for (rank, w) in words.iter().enumerate() {
                    let _ = writeln!(out, "{},{},{},{}", t + 1, rank + 1, w.word, w.weight);
                }
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for (t, words) in model.topics.iter().enumerate() {
                let list: Vec<&str> = words.iter().map(|w| w.word.as_str()).collect();
                let _ = writeln!(out, "Topic {}: {}", t + 1, list.join(", "));
            }
            out
        }
    }
}

fn topics(path: &Path, opts: &Options) -> CmdResult {
    let s = opts.settings()?;
    let c = s.load_one(path)?;
    let corpus = build_corpus(&c);
    let k = s.config.topics_k.unwrap_or_else(|| choose_k(&c, &corpus));
    match train_lda(&corpus, &s.config.lda_params(k)) {
        Ok(model) => Ok(Outcome {
            text: topics_text(&model, s.format),
            code: 0,
            warning: None,
        }),
        Err(e) => Err(Failure {
            code: 4,
            message: format!("{}: {e}", c.name),
        }),
    }
}

/// `size` entries drawn with replacement; the k-th copy of an entry gets
/// the id `<id>#k`.
fn resample(c: &ApiCollection, size: usize, rng: &mut ChaCha8Rng) -> ApiCollection {
    let mut copies: BTreeMap<usize, usize> = BTreeMap::new();
    let entries: Vec<ApiEntry> = (0..size)
        .map(|_| {
            let i = rng.random_range(0..c.entries.len());
            let k = copies.entry(i).or_insert(0);
            *k += 1;
            ApiEntry {
                id: format!("{}#{k}", c.entries[i].id),
                ..c.entries[i].clone()
            }
        })
        .collect();
    ApiCollection::new(c.name.clone(), entries)
        .expect("resampled ids are unique")
        .with_stopwords(c.stopwords.clone())
        .with_acronyms(c.acronyms.clone())
}

fn bench(path: &Path, opts: &Options, sizes: &[usize]) -> CmdResult {
    let s = opts.settings()?;
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(Failure::config("--sizes needs one or more positive sizes"));
    }
    let c = s.load_one(path)?;
    if c.entries.is_empty() {
        return Err(Failure::config(format!("{}: cannot resample an empty collection", c.name)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(s.config.seed);
    let mut table = String::from("size,rule_id,elapsed_sec,per_uri_sec\n");
    let mut series: BTreeMap<RuleId, Vec<(f64, f64)>> = BTreeMap::new();
    let mut warnings = Vec::new();
    for &size in sizes {
        let sample = resample(&c, size, &mut rng);
        let analysis = run_all(&sample, &s.config);
        warnings.extend(semantic_warning(&format!("{} (size {size})", c.name), &analysis));
        for (rule, secs) in &analysis.timings {
            let _ = writeln!(table, "{size},{rule},{secs:.6},{:.9}", secs / size as f64);
            series.entry(*rule).or_default().push((size as f64, *secs));
        }
    }
    table.push_str("\nrule_id,a,b,c,mean_elapsed_sec\n");
    for (rule, points) in &series {
        let (xs, ys): (Vec<f64>, Vec<f64>) = points.iter().copied().unzip();
        let mean = ys.iter().sum::<f64>() / ys.len() as f64;
        match fit_time_growth(&xs, &ys) {
            Ok(f) => {
                let _ = writeln!(table, "{rule},{:e},{:e},{:e},{mean:.6}", f.a, f.b, f.c);
            }
            Err(_) => {
                let _ = writeln!(table, "{rule},n/a,n/a,n/a,{mean:.6}");
            }
        }
    }
    let code = if warnings.is_empty() { 0 } else { 4 };
    Ok(Outcome {
        text: table,
        code,
        warning: (!warnings.is_empty()).then(|| warnings.join("\n")),
    })
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure {
            code: 1,
            message: format!("failed to write {}: {e}", p.display()),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, opts) = match &cli.command {
        Command::Analyze {
            collection,
            opts,
            fail_on_antipattern,
        } => (analyze(collection, opts, *fail_on_antipattern), opts),
        Command::Eval { collection, oracle, opts } => (eval(collection, oracle, opts), opts),
        Command::Topics { collection, opts } => (topics(collection, opts), opts),
        Command::Bench { collection, opts, sizes } => (bench(collection, opts, sizes), opts),
    };
    let outcome = result.and_then(|o| emit(&o.text, opts.out.as_deref()).map(|_| o));
    match outcome {
        Ok(o) => {
            if let Some(w) = o.warning {
                eprintln!("restling: {w}");
            }
            ExitCode::from(o.code)
        }
        Err(f) => {
            eprintln!("restling: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
