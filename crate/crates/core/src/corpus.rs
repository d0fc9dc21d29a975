//! Issue/commit corpus loading, validation, deduplication, and cross-linking.
//!
//! The corpus is immutable once loaded; every downstream stage produces new
//! views (id sets, tables, reports) and never mutates records.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

/// Version expected at the top of both corpus documents.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parsing {path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("{path}: unsupported schema_version {found} (expected {SCHEMA_VERSION})")]
    SchemaVersion { path: String, found: u32 },
    #[error("{kind} record #{index}: {message}")]
    Record {
        kind: &'static str,
        index: usize,
        message: String,
    },
    #[error("duplicate issue id {id} in project {project}")]
    DuplicateIssueId { project: String, id: u64 },
    #[error("duplicate commit id {id} in project {project}")]
    DuplicateCommitId { project: String, id: String },
    #[error("malformed unified diff at line {line}: {message}")]
    Diff { line: usize, message: String },
}

/// Marker of a single line inside a diff hunk body.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LineMarker {
    #[serde(rename = "+")]
    Added,
    #[serde(rename = "-")]
    Deleted,
    #[serde(rename = " ")]
    Context,
}

impl fmt::Display for LineMarker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineMarker::Added => write!(f, "+"),
            LineMarker::Deleted => write!(f, "-"),
            LineMarker::Context => write!(f, " "),
        }
    }
}

/// One line of a hunk body, marker plus raw text (marker column stripped).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HunkLine {
    pub marker: LineMarker,
    pub text: String,
}

/// A consecutive block of added/deleted/context lines in a unified diff.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hunk {
    pub file_path: String,
    #[serde(default)]
    pub header: String,
    pub lines: Vec<HunkLine>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IssueRecord {
    pub id: u64,
    pub title: String,
    pub body: String,
    pub labels: Vec<String>,
    pub event_commit_ids: Vec<String>,
    pub pr_commit_ids: Vec<String>,
    pub is_pr: bool,
    pub project: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommitRecord {
    pub id: String,
    pub title: String,
    pub message: String,
    pub files: Vec<String>,
    pub hunks: Vec<Hunk>,
    pub project: String,
}

/// Project-scoped issue identifier. Issue numbers are only unique within a
/// project, so every table in the pipeline keys on this pair.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IssueKey {
    pub project: String,
    pub id: u64,
}

impl IssueKey {
    pub fn new(project: impl Into<String>, id: u64) -> Self {
        Self {
            project: project.into(),
            id,
        }
    }
}

impl fmt::Display for IssueKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.project, self.id)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct IssuesDoc {
    schema_version: u32,
    issues: Vec<serde_json::Value>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CommitsDoc {
    schema_version: u32,
    commits: Vec<serde_json::Value>,
}

/// The loaded, validated corpus. Read-only after construction and safe to
/// share across concurrent readers.
#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    issues: Vec<IssueRecord>,
    commits: Vec<CommitRecord>,
    issue_index: HashMap<IssueKey, usize>,
    commit_index: HashMap<(String, String), usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusCounts {
    pub issues: usize,
    pub commits: usize,
    pub hunk_bearing_commits: usize,
}

impl Corpus {
    /// Builds a corpus from in-memory records, enforcing the load invariants
    /// (unique ids per project, deduplicated link lists, files non-empty for
    /// hunk-bearing commits).
    pub fn from_records(
        issues: Vec<IssueRecord>,
        commits: Vec<CommitRecord>,
    ) -> Result<Self, CorpusError> {
        let mut issue_index = HashMap::new();
        let mut issues = issues;
        for (i, issue) in issues.iter_mut().enumerate() {
            dedup_preserving_order(&mut issue.event_commit_ids);
            dedup_preserving_order(&mut issue.pr_commit_ids);
            let key = IssueKey::new(issue.project.clone(), issue.id);
            if issue_index.insert(key, i).is_some() {
                return Err(CorpusError::DuplicateIssueId {
                    project: issues[i].project.clone(),
                    id: issues[i].id,
                });
            }
        }
        let mut commit_index = HashMap::new();
        for (i, commit) in commits.iter().enumerate() {
            if !commit.hunks.is_empty() && commit.files.is_empty() {
                return Err(CorpusError::Record {
                    kind: "commit",
                    index: i,
                    message: format!("commit {} carries hunks but has an empty files list", commit.id),
                });
            }
            let key = (commit.project.clone(), commit.id.clone());
            if commit_index.insert(key, i).is_some() {
                return Err(CorpusError::DuplicateCommitId {
                    project: commits[i].project.clone(),
                    id: commits[i].id.clone(),
                });
            }
        }
        Ok(Self {
            issues,
            commits,
            issue_index,
            commit_index,
        })
    }

    pub fn issues(&self) -> &[IssueRecord] {
        &self.issues
    }

    pub fn commits(&self) -> &[CommitRecord] {
        &self.commits
    }

    pub fn issue(&self, key: &IssueKey) -> Option<&IssueRecord> {
        self.issue_index.get(key).map(|&i| &self.issues[i])
    }

    pub fn commit(&self, project: &str, id: &str) -> Option<&CommitRecord> {
        self.commit_index
            .get(&(project.to_string(), id.to_string()))
            .map(|&i| &self.commits[i])
    }

    pub fn counts(&self) -> CorpusCounts {
        CorpusCounts {
            issues: self.issues.len(),
            commits: self.commits.len(),
            hunk_bearing_commits: self.commits.iter().filter(|c| !c.hunks.is_empty()).count(),
        }
    }

    /// Serializes back to the two on-disk documents; `load_corpus` of the
    /// result round-trips to an equal corpus.
    pub fn to_documents(&self) -> (serde_json::Value, serde_json::Value) {
        let issues = serde_json::json!({
            "schema_version": SCHEMA_VERSION,
            "issues": self.issues,
        });
        let commits = serde_json::json!({
            "schema_version": SCHEMA_VERSION,
            "commits": self.commits,
        });
        (issues, commits)
    }
}

fn dedup_preserving_order(ids: &mut Vec<String>) {
    let mut seen = HashSet::new();
    ids.retain(|id| seen.insert(id.clone()));
}

fn read_json(path: &Path) -> Result<serde_json::Value, CorpusError> {
    let text = std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CorpusError::Json {
        path: path.display().to_string(),
        source,
    })
}

/// Loads and validates the issues and commits documents.
pub fn load_corpus(issues_path: &Path, commits_path: &Path) -> Result<Corpus, CorpusError> {
    let issues_doc: IssuesDoc = serde_json::from_value(read_json(issues_path)?).map_err(|source| {
        CorpusError::Json {
            path: issues_path.display().to_string(),
            source,
        }
    })?;
    if issues_doc.schema_version != SCHEMA_VERSION {
        return Err(CorpusError::SchemaVersion {
            path: issues_path.display().to_string(),
            found: issues_doc.schema_version,
        });
    }
    let commits_doc: CommitsDoc =
        serde_json::from_value(read_json(commits_path)?).map_err(|source| CorpusError::Json {
            path: commits_path.display().to_string(),
            source,
        })?;
    if commits_doc.schema_version != SCHEMA_VERSION {
        return Err(CorpusError::SchemaVersion {
            path: commits_path.display().to_string(),
            found: commits_doc.schema_version,
        });
    }

    let mut issues = Vec::with_capacity(issues_doc.issues.len());
    for (index, value) in issues_doc.issues.into_iter().enumerate() {
        let record: IssueRecord =
            serde_json::from_value(value).map_err(|e| CorpusError::Record {
                kind: "issue",
                index,
                message: e.to_string(),
            })?;
        issues.push(record);
    }
    let mut commits = Vec::with_capacity(commits_doc.commits.len());
    for (index, value) in commits_doc.commits.into_iter().enumerate() {
        let record: CommitRecord =
            serde_json::from_value(value).map_err(|e| CorpusError::Record {
                kind: "commit",
                index,
                message: e.to_string(),
            })?;
        commits.push(record);
    }
    Corpus::from_records(issues, commits)
}

/// How an issue→commit link was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkProvenance {
    /// The commit appeared in the issue page's event stream.
    Event,
    /// The commit came from a PR's commit list.
    PrList,
    /// The commit's title/message referenced the issue number.
    MessageRef,
}

/// A commit id that an issue referenced but that is absent from the corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkWarning {
    pub issue: IssueKey,
    pub commit_id: String,
    pub route: LinkProvenance,
}

/// Issue → commit links with per-link provenance, plus the unlinked set.
/// Serializes as a list of per-issue entries (JSON object keys must be
/// strings, so the map shape is not used on the wire).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(into = "LinkTableRepr", from = "LinkTableRepr")]
pub struct LinkTable {
    pub links: BTreeMap<IssueKey, BTreeMap<String, LinkProvenance>>,
    pub unlinked: BTreeSet<IssueKey>,
    pub warnings: Vec<LinkWarning>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct LinkEntry {
    issue: IssueKey,
    commits: Vec<(String, LinkProvenance)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct LinkTableRepr {
    links: Vec<LinkEntry>,
    unlinked: Vec<IssueKey>,
    warnings: Vec<LinkWarning>,
}

impl From<LinkTable> for LinkTableRepr {
    fn from(table: LinkTable) -> Self {
        Self {
            links: table
                .links
                .into_iter()
                .map(|(issue, commits)| LinkEntry {
                    issue,
                    commits: commits.into_iter().collect(),
                })
                .collect(),
            unlinked: table.unlinked.into_iter().collect(),
            warnings: table.warnings,
        }
    }
}

impl From<LinkTableRepr> for LinkTable {
    fn from(repr: LinkTableRepr) -> Self {
        Self {
            links: repr
                .links
                .into_iter()
                .map(|e| (e.issue, e.commits.into_iter().collect()))
                .collect(),
            unlinked: repr.unlinked.into_iter().collect(),
            warnings: repr.warnings,
        }
    }
}

impl LinkTable {
    pub fn commit_ids(&self, issue: &IssueKey) -> impl Iterator<Item = &str> {
        self.links
            .get(issue)
            .into_iter()
            .flat_map(|m| m.keys().map(String::as_str))
    }

    pub fn is_linked(&self, issue: &IssueKey) -> bool {
        self.links.get(issue).is_some_and(|m| !m.is_empty())
    }
}

/// Extracts `#N` issue/PR references from a commit title or message.
///
/// A reference is "#" followed by 1–7 decimal digits, delimited on both
/// sides by non-alphanumerics, so hex fragments like `a1#b2f` or long commit
/// ids never match. Results are deduplicated in first-occurrence order.
pub fn extract_issue_refs(text: &str) -> Vec<u64> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] != b'#' {
            i += 1;
            continue;
        }
        let before_ok = i == 0 || !bytes[i - 1].is_ascii_alphanumeric();
        let start = i + 1;
        let mut end = start;
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        let run = end - start;
        let after_ok = end == bytes.len() || !bytes[end].is_ascii_alphanumeric();
        if before_ok && after_ok && (1..=7).contains(&run) {
            let n: u64 = text[start..end].parse().expect("digit run fits in u64");
            if seen.insert(n) {
                out.push(n);
            }
        }
        i = end.max(i + 1);
    }
    out
}

/// Builds the issue→commit link table from the three available routes:
/// issue events, PR commit lists, and issue-number references in commit
/// titles/messages. Links to commits absent from the corpus are dropped
/// with a warning. References are scoped to the issue's own project.
pub fn link_issues_to_commits(corpus: &Corpus) -> LinkTable {
    let mut table = LinkTable::default();
    for issue in corpus.issues() {
        let key = IssueKey::new(issue.project.clone(), issue.id);
        let entry = table.links.entry(key.clone()).or_default();
        for (ids, route) in [
            (&issue.event_commit_ids, LinkProvenance::Event),
            (&issue.pr_commit_ids, LinkProvenance::PrList),
        ] {
            for cid in ids {
                if corpus.commit(&issue.project, cid).is_some() {
                    entry.entry(cid.clone()).or_insert(route);
                } else {
                    table.warnings.push(LinkWarning {
                        issue: key.clone(),
                        commit_id: cid.clone(),
                        route,
                    });
                }
            }
        }
    }
    // Message references run last so event/PR provenance wins on overlap.
    for commit in corpus.commits() {
        let text = format!("{}\n{}", commit.title, commit.message);
        for n in extract_issue_refs(&text) {
            let key = IssueKey::new(commit.project.clone(), n);
            if corpus.issue(&key).is_some() {
                table
                    .links
                    .entry(key)
                    .or_default()
                    .entry(commit.id.clone())
                    .or_insert(LinkProvenance::MessageRef);
            }
        }
    }
    for issue in corpus.issues() {
        let key = IssueKey::new(issue.project.clone(), issue.id);
        if !table.is_linked(&key) {
            table.unlinked.insert(key);
        }
    }
    table.links.retain(|_, commits| !commits.is_empty());
    table
}

/// Outcome of commit deduplication.
#[derive(Debug, Clone, PartialEq)]
pub struct DedupeResult {
    pub corpus: Corpus,
    /// (kept id, removed id) per collapsed duplicate, within one project.
    pub removed: Vec<(String, String)>,
    /// Commits carrying no hunks at all; retained but reported.
    pub empty_commits: Vec<(String, String)>,
}

/// Collapses commits whose full ordered hunk contents are byte-identical
/// (within a project), keeping the lexicographically smaller id. Commits
/// with zero hunks are never collapsed; they are flagged as empty instead.
pub fn dedupe_commits(corpus: &Corpus) -> DedupeResult {
    let mut groups: BTreeMap<(String, Vec<u8>), Vec<String>> = BTreeMap::new();
    let mut empty_commits = Vec::new();
    for commit in corpus.commits() {
        if commit.hunks.is_empty() {
            empty_commits.push((commit.project.clone(), commit.id.clone()));
            continue;
        }
        let payload = serde_json::to_vec(&commit.hunks).expect("hunks serialize");
        groups
            .entry((commit.project.clone(), payload))
            .or_default()
            .push(commit.id.clone());
    }
    let mut removed = Vec::new();
    let mut drop: HashSet<(String, String)> = HashSet::new();
    for ((project, _), mut ids) in groups {
        if ids.len() < 2 {
            continue;
        }
        ids.sort();
        let kept = ids[0].clone();
        for dup in &ids[1..] {
            removed.push((kept.clone(), dup.clone()));
            drop.insert((project.clone(), dup.clone()));
        }
    }
    removed.sort();
    let commits = corpus
        .commits()
        .iter()
        .filter(|c| !drop.contains(&(c.project.clone(), c.id.clone())))
        .cloned()
        .collect();
    let corpus = Corpus::from_records(corpus.issues().to_vec(), commits)
        .expect("dedup preserves validity");
    DedupeResult {
        corpus,
        removed,
        empty_commits,
    }
}

/// One file's hunks parsed out of unified-diff text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FileDiff {
    pub file_path: String,
    pub hunks: Vec<Hunk>,
}

/// Parses unified-diff text into per-file hunks. Only the `---`/`+++`
/// headers, `@@` hunk headers, and marker lines are interpreted; git
/// extended headers are skipped.
pub fn parse_unified_diff(text: &str) -> Result<Vec<FileDiff>, CorpusError> {
    let mut files: Vec<FileDiff> = Vec::new();
    let mut current_path: Option<String> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        if let Some(rest) = raw.strip_prefix("+++ ") {
            let path = rest
                .split('\t')
                .next()
                .unwrap_or(rest)
                .trim_start_matches("b/")
                .to_string();
            current_path = Some(path.clone());
            files.push(FileDiff {
                file_path: path,
                hunks: Vec::new(),
            });
            continue;
        }
        if raw.starts_with("--- ") || raw.starts_with("diff ") || raw.starts_with("index ") {
            continue;
        }
        if let Some(rest) = raw.strip_prefix("@@") {
            let file = files.last_mut().ok_or(CorpusError::Diff {
                line: line_no,
                message: "hunk header before any +++ file header".into(),
            })?;
            let header = rest.split_once("@@").map(|x| x.1)
                .map(str::trim)
                .unwrap_or("")
                .to_string();
            file.hunks.push(Hunk {
                file_path: current_path.clone().unwrap_or_default(),
                header,
                lines: Vec::new(),
            });
            continue;
        }
        if raw.starts_with('\\') {
            continue; // "\ No newline at end of file"
        }
        if let Some(file) = files.last_mut() {
            if let Some(hunk) = file.hunks.last_mut() {
                let (marker, text) = match raw.as_bytes().first() {
                    Some(b'+') => (LineMarker::Added, &raw[1..]),
                    Some(b'-') => (LineMarker::Deleted, &raw[1..]),
                    Some(b' ') => (LineMarker::Context, &raw[1..]),
                    None => (LineMarker::Context, ""),
                    _ => {
                        return Err(CorpusError::Diff {
                            line: line_no,
                            message: format!("unexpected marker in hunk body: {raw:?}"),
                        })
                    }
                };
                hunk.lines.push(HunkLine {
                    marker,
                    text: text.to_string(),
                });
            }
        }
    }
    Ok(files)
}
