//! The staged filter separating vulnerability candidates from regular bugs:
//! commit linkage (S0), source-file changes (S1), test-only changes (S2),
//! label include/exclude (S3a/S3b), and keyword include/exclude (S4a/S4b),
//! with a per-stage audit ledger.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, IssueKey, LinkTable};
use crate::textcluster::{cosine_similarity, EmbeddingTable};
use crate::titlekw::tokenize_text;

#[derive(Debug, thiserror::Error)]
pub enum FilterError {
    #[error("project {project} missing from the source-suffix map")]
    MissingProjectSuffixes { project: String },
    #[error("label {label:?} appears in both include_labels and exclude_labels")]
    ConflictingLabels { label: String },
    #[error("keyword {keyword:?} appears in both include and exclude keyword groups")]
    ConflictingKeywords { keyword: String },
    #[error("no counted word is covered by the embedding table; check embedding coverage")]
    NoEmbeddingCoverage,
    #[error("ledger invariant violated: {0}")]
    LedgerInvariant(String),
}

/// Configuration for the whole filter pipeline. Ships a starter set with
/// every label and keyword named in the filtering method; the full lists
/// are data, extendable per deployment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FilterConfig {
    /// Per-project file suffixes counted as real source code.
    pub source_suffixes: BTreeMap<String, Vec<String>>,
    /// Path substrings marking test files.
    pub test_path_markers: Vec<String>,
    /// Labels that mark an issue as a vulnerability outright.
    pub include_labels: Vec<String>,
    /// Title prefixes with the same effect (e.g. "SEC-").
    pub title_prefix_markers: Vec<String>,
    /// Labels that exclude an issue unless it was already included.
    pub exclude_labels: Vec<String>,
    /// Keyword groups marking vulnerability text.
    pub include_keywords: Vec<Vec<String>>,
    /// Keyword groups marking non-vulnerability text.
    pub exclude_keywords: Vec<Vec<String>>,
    /// Words rarer than this never enter keyword clustering.
    pub min_word_frequency: u32,
    /// Cosine similarity threshold for grouping words into clusters.
    pub keyword_similarity_threshold: f64,
}

impl Default for FilterConfig {
    fn default() -> Self {
        let vec_of = |items: &[&str]| -> Vec<String> { items.iter().map(|s| s.to_string()).collect() };
        let mut source_suffixes = BTreeMap::new();
        source_suffixes.insert(
            "bitcoin".to_string(),
            vec_of(&[".cpp", ".h", ".py", ".sh", ".cc", ".c", ".java"]),
        );
        source_suffixes.insert("ethereum".to_string(), vec_of(&[".go", ".c", ".h"]));
        source_suffixes.insert(
            "monero".to_string(),
            vec_of(&[".cpp", ".h", ".c", ".cc", ".hpp"]),
        );
        source_suffixes.insert(
            "stellar".to_string(),
            vec_of(&[".cpp", ".h", ".c", ".cc", ".hpp"]),
        );
        Self {
            source_suffixes,
            test_path_markers: vec_of(&["test/", "tests/", "_test.", "qa/"]),
            include_labels: vec_of(&["Privacy", "obsolete:vuln"]),
            title_prefix_markers: vec_of(&["SEC-"]),
            exclude_labels: vec_of(&["Refactoring", "Docs", "type:feature"]),
            include_keywords: vec![
                vec_of(&["vulnerability", "vulnerabilities", "vuln"]),
                vec_of(&["exploit", "exploitable"]),
                vec_of(&["attack", "attacks"]),
                vec_of(&["dos", "denial-of-service"]),
                vec_of(&["double-spend", "double-spent"]),
                vec_of(&["overflow", "underflow"]),
                vec_of(&["race", "races"]),
                vec_of(&["deadlock"]),
                vec_of(&["crash", "segfault"]),
                vec_of(&["uninitialized"]),
                vec_of(&["out-of-bounds", "out-of-bound"]),
                vec_of(&["leak", "leaks"]),
                vec_of(&["insecure", "security"]),
            ],
            exclude_keywords: vec![
                vec_of(&["typo", "typos"]),
                vec_of(&["documentation", "readme", "docs"]),
                vec_of(&["refactor", "refactoring"]),
                vec_of(&["cleanup"]),
                vec_of(&["translation", "translations"]),
                vec_of(&["whitespace", "formatting"]),
            ],
            min_word_frequency: 2,
            keyword_similarity_threshold: 0.6,
        }
    }
}

impl FilterConfig {
    /// Checks the include/exclude disjointness invariants.
    pub fn validate(&self) -> Result<(), FilterError> {
        for label in &self.include_labels {
            if self.exclude_labels.contains(label) {
                return Err(FilterError::ConflictingLabels {
                    label: label.clone(),
                });
            }
        }
        let flat: BTreeSet<&String> = self.include_keywords.iter().flatten().collect();
        for word in self.exclude_keywords.iter().flatten() {
            if flat.contains(word) {
                return Err(FilterError::ConflictingKeywords {
                    keyword: word.clone(),
                });
            }
        }
        Ok(())
    }
}

/// Polarity a keyword cluster was reviewed into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Polarity {
    Vulnerability,
    NonVulnerability,
    Unreviewed,
}

/// A group of semantically close words sharing one review polarity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeywordCluster {
    pub representative: String,
    pub members: Vec<String>,
    pub polarity: Polarity,
}

impl KeywordCluster {
    pub fn new(polarity: Polarity, members: Vec<String>) -> Self {
        Self {
            representative: members.first().cloned().unwrap_or_default(),
            members,
            polarity,
        }
    }
}

/// Builds polarity-labeled clusters straight from the configured keyword
/// groups (each group is one cluster).
pub fn clusters_from_config(config: &FilterConfig) -> Vec<KeywordCluster> {
    let mut out = Vec::new();
    for group in &config.include_keywords {
        out.push(KeywordCluster::new(Polarity::Vulnerability, group.clone()));
    }
    for group in &config.exclude_keywords {
        out.push(KeywordCluster::new(Polarity::NonVulnerability, group.clone()));
    }
    out
}

fn issue_key(issue: &crate::corpus::IssueRecord) -> IssueKey {
    IssueKey::new(issue.project.clone(), issue.id)
}

/// S0: excludes every issue whose linked commit set is empty.
pub fn stage_commit_filter(corpus: &Corpus, links: &LinkTable) -> BTreeSet<IssueKey> {
    corpus
        .issues()
        .iter()
        .map(issue_key)
        .filter(|key| !links.is_linked(key))
        .collect()
}

fn file_has_suffix(file: &str, suffixes: &[String]) -> bool {
    let lower = file.to_lowercase();
    suffixes.iter().any(|s| lower.ends_with(&s.to_lowercase()))
}

/// S1: excludes issues none of whose linked commits touch a file with a
/// configured source suffix for the project.
pub fn stage_source_file_filter(
    corpus: &Corpus,
    links: &LinkTable,
    config: &FilterConfig,
) -> Result<BTreeSet<IssueKey>, FilterError> {
    let mut excluded = BTreeSet::new();
    for issue in corpus.issues() {
        let suffixes = config.source_suffixes.get(&issue.project).ok_or_else(|| {
            FilterError::MissingProjectSuffixes {
                project: issue.project.clone(),
            }
        })?;
        let key = issue_key(issue);
        let touches_source = links.commit_ids(&key).any(|cid| {
            corpus
                .commit(&issue.project, cid)
                .is_some_and(|c| c.files.iter().any(|f| file_has_suffix(f, suffixes)))
        });
        if !touches_source {
            excluded.insert(key);
        }
    }
    Ok(excluded)
}

fn is_test_only(files: &[String], markers: &[String]) -> bool {
    !files.is_empty()
        && files.iter().all(|f| {
            let lower = f.to_lowercase();
            markers.iter().any(|m| lower.contains(&m.to_lowercase()))
        })
}

/// S2: excludes issues all of whose linked commits are test-only (every
/// touched file path contains a test marker).
pub fn stage_test_only_filter(
    corpus: &Corpus,
    links: &LinkTable,
    config: &FilterConfig,
) -> BTreeSet<IssueKey> {
    corpus
        .issues()
        .iter()
        .filter(|issue| {
            let key = issue_key(issue);
            links.commit_ids(&key).all(|cid| {
                corpus
                    .commit(&issue.project, cid)
                    .is_none_or(|c| is_test_only(&c.files, &config.test_path_markers))
            })
        })
        .map(issue_key)
        .collect()
}

/// S3a: issues carrying an include label or a marked title prefix are
/// vulnerability candidates and bypass the later exclusion stages.
pub fn stage_label_include(corpus: &Corpus, config: &FilterConfig) -> BTreeSet<IssueKey> {
    corpus
        .issues()
        .iter()
        .filter(|issue| {
            issue
                .labels
                .iter()
                .any(|l| config.include_labels.contains(l))
                || config
                    .title_prefix_markers
                    .iter()
                    .any(|p| issue.title.trim_start().starts_with(p.as_str()))
        })
        .map(issue_key)
        .collect()
}

/// S3b: issues carrying an exclude label and not previously included.
pub fn stage_label_exclude(
    corpus: &Corpus,
    config: &FilterConfig,
    already_included: &BTreeSet<IssueKey>,
) -> BTreeSet<IssueKey> {
    corpus
        .issues()
        .iter()
        .filter(|issue| {
            issue
                .labels
                .iter()
                .any(|l| config.exclude_labels.contains(l))
        })
        .map(issue_key)
        .filter(|key| !already_included.contains(key))
        .collect()
}

fn keyword_in_tokens(tokens: &[String], keyword: &str) -> bool {
    let needle = tokenize_text(keyword);
    !needle.is_empty() && tokens.windows(needle.len()).any(|w| w == needle.as_slice())
}

fn issue_matches_polarity(
    issue: &crate::corpus::IssueRecord,
    clusters: &[KeywordCluster],
    polarity: Polarity,
    token_cache: &HashMap<IssueKey, Vec<String>>,
) -> bool {
    let tokens = &token_cache[&issue_key(issue)];
    clusters
        .iter()
        .filter(|c| c.polarity == polarity)
        .flat_map(|c| c.members.iter())
        .any(|word| keyword_in_tokens(tokens, word))
}

fn token_cache(corpus: &Corpus) -> HashMap<IssueKey, Vec<String>> {
    corpus
        .issues()
        .iter()
        .map(|i| {
            (
                issue_key(i),
                tokenize_text(&format!("{}\n{}", i.title, i.body)),
            )
        })
        .collect()
}

/// S4a: issues whose title/body contains any vulnerability-cluster word.
pub fn stage_keyword_include(corpus: &Corpus, clusters: &[KeywordCluster]) -> BTreeSet<IssueKey> {
    let cache = token_cache(corpus);
    corpus
        .issues()
        .iter()
        .filter(|i| issue_matches_polarity(i, clusters, Polarity::Vulnerability, &cache))
        .map(issue_key)
        .collect()
}

/// S4b: issues containing only non-vulnerability words (and no
/// vulnerability word). Issues matching neither polarity stay undecided.
pub fn stage_keyword_exclude(corpus: &Corpus, clusters: &[KeywordCluster]) -> BTreeSet<IssueKey> {
    let cache = token_cache(corpus);
    corpus
        .issues()
        .iter()
        .filter(|i| {
            issue_matches_polarity(i, clusters, Polarity::NonVulnerability, &cache)
                && !issue_matches_polarity(i, clusters, Polarity::Vulnerability, &cache)
        })
        .map(issue_key)
        .collect()
}

/// Groups frequent corpus words into clusters of semantically similar words
/// for human polarity review: words with frequency below the configured
/// minimum are dropped, the rest form connected components under
/// cosine-similarity ≥ threshold; out-of-vocabulary words stay singletons.
pub fn build_keyword_clusters(
    corpus: &Corpus,
    embeddings: &EmbeddingTable,
    config: &FilterConfig,
) -> Result<Vec<KeywordCluster>, FilterError> {
    let mut freq: BTreeMap<String, u32> = BTreeMap::new();
    for issue in corpus.issues() {
        for tok in tokenize_text(&format!("{}\n{}", issue.title, issue.body)) {
            *freq.entry(tok).or_insert(0) += 1;
        }
    }
    let words: Vec<(String, u32)> = freq
        .into_iter()
        .filter(|(_, c)| *c >= config.min_word_frequency)
        .collect();
    if words.is_empty() {
        return Ok(Vec::new());
    }
    if words.iter().all(|(w, _)| !embeddings.contains(w)) {
        return Err(FilterError::NoEmbeddingCoverage);
    }

    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let n = words.len();
    let mut parent: Vec<usize> = (0..n).collect();
    #[allow(clippy::needless_range_loop)]
    for i in 0..n {
        let Some(vi) = embeddings.get(&words[i].0) else {
            continue;
        };
        for j in (i + 1)..n {
            let Some(vj) = embeddings.get(&words[j].0) else {
                continue;
            };
            if cosine_similarity(vi, vj) >= config.keyword_similarity_threshold {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }
    let mut clusters: Vec<KeywordCluster> = groups
        .into_values()
        .map(|mut members| {
            // Representative: highest frequency, then lexicographic.
            members.sort_by(|&a, &b| {
                words[b].1.cmp(&words[a].1).then(words[a].0.cmp(&words[b].0))
            });
            KeywordCluster {
                representative: words[members[0]].0.clone(),
                members: members.iter().map(|&i| words[i].0.clone()).collect(),
                polarity: Polarity::Unreviewed,
            }
        })
        .collect();
    clusters.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(clusters)
}

/// Stage identifiers, in pipeline order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[allow(non_camel_case_types)]
pub enum StageId {
    S0,
    S1,
    S2,
    S3a,
    S3b,
    S4a,
    S4b,
}

impl fmt::Display for StageId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            StageId::S0 => "S0",
            StageId::S1 => "S1",
            StageId::S2 => "S2",
            StageId::S3a => "S3a",
            StageId::S3b => "S3b",
            StageId::S4a => "S4a",
            StageId::S4b => "S4b",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StageAction {
    Include,
    Exclude,
}

/// One ledger row. `delta` is the signed change of the undecided pool, so
/// `remaining_before + delta = remaining_after` holds at every stage
/// (inclusion also shrinks the pool: those issues are decided).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageRow {
    pub stage: StageId,
    pub action: StageAction,
    pub delta: i64,
    pub remaining: u64,
    pub members: Vec<IssueKey>,
}

/// The complete filter ledger plus the final three-way partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterReport {
    pub start: u64,
    pub stages: Vec<StageRow>,
    pub included: Vec<IssueKey>,
    pub discarded: Vec<IssueKey>,
    pub undecided: Vec<IssueKey>,
}

impl FilterReport {
    /// Ledger conservation and partition checks.
    pub fn validate(&self) -> Result<(), FilterError> {
        let mut remaining = self.start;
        for row in &self.stages {
            let expected = remaining as i64 + row.delta;
            if expected < 0 || row.remaining != expected as u64 {
                return Err(FilterError::LedgerInvariant(format!(
                    "stage {}: {} + ({}) != {}",
                    row.stage, remaining, row.delta, row.remaining
                )));
            }
            if row.delta != -(row.members.len() as i64) {
                return Err(FilterError::LedgerInvariant(format!(
                    "stage {}: delta {} does not match {} members",
                    row.stage,
                    row.delta,
                    row.members.len()
                )));
            }
            remaining = row.remaining;
        }
        let total = self.included.len() + self.discarded.len() + self.undecided.len();
        if total as u64 != self.start {
            return Err(FilterError::LedgerInvariant(format!(
                "partition sizes {} + {} + {} != {}",
                self.included.len(),
                self.discarded.len(),
                self.undecided.len(),
                self.start
            )));
        }
        Ok(())
    }
}

/// Runs S0, S1, S2, S3a, S3b, S4a, S4b in order over the shrinking pool.
/// Candidates are the union of the S3a and S4a survivors.
pub fn run_pipeline(
    corpus: &Corpus,
    links: &LinkTable,
    config: &FilterConfig,
    clusters: &[KeywordCluster],
) -> Result<FilterReport, FilterError> {
    config.validate()?;
    let mut pool: BTreeSet<IssueKey> = corpus.issues().iter().map(issue_key).collect();
    let start = pool.len() as u64;
    let mut stages = Vec::with_capacity(7);
    let mut included: BTreeSet<IssueKey> = BTreeSet::new();
    let mut discarded: BTreeSet<IssueKey> = BTreeSet::new();

    let mut apply = |pool: &mut BTreeSet<IssueKey>,
                     bucket: &mut BTreeSet<IssueKey>,
                     stage: StageId,
                     action: StageAction,
                     hits: BTreeSet<IssueKey>| {
        let members: Vec<IssueKey> = hits.intersection(pool).cloned().collect();
        for key in &members {
            pool.remove(key);
            bucket.insert(key.clone());
        }
        stages.push(StageRow {
            stage,
            action,
            delta: -(members.len() as i64),
            remaining: pool.len() as u64,
            members,
        });
    };

    apply(
        &mut pool,
        &mut discarded,
        StageId::S0,
        StageAction::Exclude,
        stage_commit_filter(corpus, links),
    );
    apply(
        &mut pool,
        &mut discarded,
        StageId::S1,
        StageAction::Exclude,
        stage_source_file_filter(corpus, links, config)?,
    );
    apply(
        &mut pool,
        &mut discarded,
        StageId::S2,
        StageAction::Exclude,
        stage_test_only_filter(corpus, links, config),
    );
    let s3a = stage_label_include(corpus, config);
    apply(
        &mut pool,
        &mut included,
        StageId::S3a,
        StageAction::Include,
        s3a.clone(),
    );
    apply(
        &mut pool,
        &mut discarded,
        StageId::S3b,
        StageAction::Exclude,
        stage_label_exclude(corpus, config, &s3a),
    );
    apply(
        &mut pool,
        &mut included,
        StageId::S4a,
        StageAction::Include,
        stage_keyword_include(corpus, clusters),
    );
    apply(
        &mut pool,
        &mut discarded,
        StageId::S4b,
        StageAction::Exclude,
        stage_keyword_exclude(corpus, clusters),
    );

    let report = FilterReport {
        start,
        stages,
        included: included.into_iter().collect(),
        discarded: discarded.into_iter().collect(),
        undecided: pool.into_iter().collect(),
    };
    report.validate()?;
    Ok(report)
}
