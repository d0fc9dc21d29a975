//! Module-path extraction from patch file paths and mapping onto a layered
//! reference architecture.
//!
//! The module path is the folder name summarizing a file's module ("rpc/"),
//! or the first two segments under a generic root ("src/wallet/"). Files
//! directly under a generic root carry no module path and are flagged for
//! manual mapping.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, IssueKey, LinkTable};

#[derive(Debug, thiserror::Error)]
pub enum ModuleMapError {
    #[error("empty file path")]
    EmptyPath,
    #[error("no module-path rule for project {0}")]
    MissingRule(String),
    #[error("unmapped module paths under policy=report: {0:?}")]
    Unmapped(Vec<String>),
}

/// Per-project extraction rule: which top-level folders are generic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModulePathRule {
    pub project: String,
    pub generic_roots: Vec<String>,
}

impl ModulePathRule {
    pub fn new(project: impl Into<String>, generic_roots: &[&str]) -> Self {
        Self {
            project: project.into(),
            generic_roots: generic_roots.iter().map(|s| s.to_string()).collect(),
        }
    }
}

/// Default rules: "src" is generic everywhere; Ethereum's folder structure
/// adds "core", "swarm", and "eth".
pub fn default_rules() -> Vec<ModulePathRule> {
    vec![
        ModulePathRule::new("bitcoin", &["src"]),
        ModulePathRule::new("ethereum", &["src", "core", "swarm", "eth"]),
        ModulePathRule::new("monero", &["src"]),
        ModulePathRule::new("stellar", &["src"]),
    ]
}

/// Extracts the module path of a file: the first path segment, or the first
/// two when the first is a generic root. Normalized lowercase with a
/// trailing "/". Returns `None` (flagged for manual mapping) for files
/// directly under a generic root or at the repository root.
pub fn extract_module_path(
    file_path: &str,
    rule: &ModulePathRule,
) -> Result<Option<String>, ModuleMapError> {
    if file_path.trim().is_empty() {
        return Err(ModuleMapError::EmptyPath);
    }
    let lower = file_path.to_lowercase();
    let segments: Vec<&str> = lower.split('/').filter(|s| !s.is_empty()).collect();
    match segments.len() {
        0 => Err(ModuleMapError::EmptyPath),
        1 => Ok(None), // file at the repository root
        _ => {
            let first = segments[0];
            let generic = rule
                .generic_roots
                .iter()
                .any(|r| r.to_lowercase() == first);
            if !generic {
                Ok(Some(format!("{first}/")))
            } else if segments.len() == 2 {
                Ok(None) // file directly under the generic root
            } else {
                Ok(Some(format!("{first}/{}/", segments[1])))
            }
        }
    }
}

/// Architecture layer of a module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Layer {
    Policy,
    Peer,
    Network,
    #[serde(rename = "UI")]
    Ui,
    Other,
}

impl std::fmt::Display for Layer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Layer::Policy => "Policy",
            Layer::Peer => "Peer",
            Layer::Network => "Network",
            Layer::Ui => "UI",
            Layer::Other => "Other",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnmappedPolicy {
    Report,
    Drop,
}

/// Maps module paths to (module name, layer). Multiple paths may map to the
/// same module (e.g. "consensus/" and "src/scp/" both land in Consensus).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArchitectureMap {
    pub entries: BTreeMap<String, (String, Layer)>,
    pub unmapped_policy: UnmappedPolicy,
    /// Manual overrides for files without a module path (path → module).
    #[serde(default)]
    pub file_overrides: BTreeMap<String, String>,
}

impl ArchitectureMap {
    pub fn lookup(&self, module_path: &str) -> Option<&(String, Layer)> {
        self.entries.get(module_path)
    }
}

/// The reference architecture covering every module path named in the
/// layered map, extendable through config.
pub fn default_architecture() -> ArchitectureMap {
    let mut entries = BTreeMap::new();
    let mut add = |path: &str, module: &str, layer: Layer| {
        entries.insert(path.to_string(), (module.to_string(), layer));
    };
    add("consensus/", "Consensus", Layer::Policy);
    add("miner/", "Consensus", Layer::Policy);
    add("ethchain/", "Consensus", Layer::Policy);
    add("src/cryptonote_core/", "Consensus", Layer::Policy);
    add("src/scp/", "Consensus", Layer::Policy);
    add("src/ledger/", "Consensus", Layer::Policy);
    add("src/wallet/", "Wallet", Layer::Peer);
    add("accounts/", "Wallet", Layer::Peer);
    add("src/blockchain_db/", "Storage", Layer::Peer);
    add("src/leveldb/", "Storage", Layer::Peer);
    add("ethdb/", "Storage", Layer::Peer);
    add("src/net/", "NetConn", Layer::Network);
    add("p2p/", "NetConn", Layer::Network);
    add("src/overlay/", "NetConn", Layer::Network);
    add("rpc/", "RPC", Layer::Network);
    add("src/rpc/", "RPC", Layer::Network);
    add("src/qt/", "GUI/CMD", Layer::Ui);
    add("ethereal/ui/", "GUI/CMD", Layer::Ui);
    add("src/daemon/", "GUI/CMD", Layer::Ui);
    add("cmd/", "GUI/CMD", Layer::Ui);
    ArchitectureMap {
        entries,
        unmapped_policy: UnmappedPolicy::Report,
        file_overrides: BTreeMap::new(),
    }
}

/// Per-module and per-layer issue counts.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ModuleCounts {
    pub per_module: BTreeMap<String, u64>,
    pub per_layer: BTreeMap<Layer, u64>,
    /// Module paths seen but absent from the architecture map.
    pub unmapped_module_paths: Vec<String>,
    /// Files with no module path and no manual override.
    pub flagged_files: Vec<String>,
    pub issue_count: u64,
}

/// Counts candidate issues per module and layer. An issue touching k
/// modules increments k modules, so the per-module sum can exceed the
/// number of issues; layer totals sum their member modules.
pub fn aggregate_module_counts(
    candidates: &BTreeSet<IssueKey>,
    links: &LinkTable,
    corpus: &Corpus,
    map: &ArchitectureMap,
    rules: &[ModulePathRule],
) -> Result<ModuleCounts, ModuleMapError> {
    let rule_for = |project: &str| -> Result<&ModulePathRule, ModuleMapError> {
        rules
            .iter()
            .find(|r| r.project == project)
            .ok_or_else(|| ModuleMapError::MissingRule(project.to_string()))
    };
    let mut counts = ModuleCounts {
        issue_count: candidates.len() as u64,
        ..ModuleCounts::default()
    };
    let mut unmapped: BTreeSet<String> = BTreeSet::new();
    let mut flagged: BTreeSet<String> = BTreeSet::new();
    for key in candidates {
        let rule = rule_for(&key.project)?;
        // Modules this issue touches, deduplicated per issue.
        let mut modules: BTreeSet<(String, Layer)> = BTreeSet::new();
        for cid in links.commit_ids(key) {
            let Some(commit) = corpus.commit(&key.project, cid) else {
                continue;
            };
            for file in &commit.files {
                let module_path = match extract_module_path(file, rule)? {
                    Some(p) => Some(p),
                    None => match map.file_overrides.get(file) {
                        Some(module) => {
                            // Overrides name a module directly; find its layer.
                            let layer = map
                                .entries
                                .values()
                                .find(|(m, _)| m == module)
                                .map(|(_, l)| *l)
                                .unwrap_or(Layer::Other);
                            modules.insert((module.clone(), layer));
                            None
                        }
                        None => {
                            flagged.insert(file.clone());
                            None
                        }
                    },
                };
                if let Some(path) = module_path {
                    match map.lookup(&path) {
                        Some((module, layer)) => {
                            modules.insert((module.clone(), *layer));
                        }
                        None => {
                            unmapped.insert(path);
                        }
                    }
                }
            }
        }
        for (module, layer) in modules {
            *counts.per_module.entry(module).or_insert(0) += 1;
            *counts.per_layer.entry(layer).or_insert(0) += 1;
        }
    }
    counts.unmapped_module_paths = unmapped.into_iter().collect();
    counts.flagged_files = flagged.into_iter().collect();
    if map.unmapped_policy == UnmappedPolicy::Report && !counts.unmapped_module_paths.is_empty() {
        // Reported in the result rather than failing: callers decide.
        log::warn!(
            "unmapped module paths: {:?}",
            counts.unmapped_module_paths
        );
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{link_issues_to_commits, CommitRecord, IssueRecord};

    fn rule() -> ModulePathRule {
        ModulePathRule::new("bitcoin", &["src"])
    }

    #[test]
    fn plain_folder_is_module_path() {
        assert_eq!(
            extract_module_path("rpc/server.cpp", &rule()).unwrap(),
            Some("rpc/".into())
        );
    }

    #[test]
    fn generic_root_takes_two_segments() {
        assert_eq!(
            extract_module_path("src/wallet/wallet.cpp", &rule()).unwrap(),
            Some("src/wallet/".into())
        );
    }

    #[test]
    fn file_directly_under_generic_root_is_flagged() {
        assert_eq!(extract_module_path("src/main.cpp", &rule()).unwrap(), None);
        assert_eq!(extract_module_path("main.cpp", &rule()).unwrap(), None);
    }

    #[test]
    fn ethereum_extra_generic_roots() {
        let rule = ModulePathRule::new("ethereum", &["src", "core", "swarm", "eth"]);
        assert_eq!(
            extract_module_path("core/types/block.go", &rule).unwrap(),
            Some("core/types/".into())
        );
        assert_eq!(extract_module_path("core/tx_pool.go", &rule).unwrap(), None);
        assert_eq!(
            extract_module_path("accounts/manager.go", &rule).unwrap(),
            Some("accounts/".into())
        );
    }

    #[test]
    fn empty_path_errors() {
        assert!(extract_module_path("", &rule()).is_err());
        assert!(extract_module_path("   ", &rule()).is_err());
    }

    #[test]
    fn normalization_is_lowercase_trailing_slash() {
        assert_eq!(
            extract_module_path("RPC/Server.cpp", &rule()).unwrap(),
            Some("rpc/".into())
        );
    }

    fn corpus_with_files(files_per_issue: &[(u64, Vec<&str>)]) -> (Corpus, LinkTable) {
        let mut issues = Vec::new();
        let mut commits = Vec::new();
        for (id, files) in files_per_issue {
            issues.push(IssueRecord {
                id: *id,
                title: format!("issue {id}"),
                body: String::new(),
                labels: vec![],
                event_commit_ids: vec![format!("c{id}")],
                pr_commit_ids: vec![],
                is_pr: false,
                project: "bitcoin".into(),
            });
            commits.push(CommitRecord {
                id: format!("c{id}"),
                title: String::new(),
                message: String::new(),
                files: files.iter().map(|s| s.to_string()).collect(),
                hunks: vec![],
                project: "bitcoin".into(),
            });
        }
        let corpus = Corpus::from_records(issues, commits).unwrap();
        let links = link_issues_to_commits(&corpus);
        (corpus, links)
    }

    #[test]
    fn multi_module_issue_counts_in_each() {
        let (corpus, links) =
            corpus_with_files(&[(1, vec!["rpc/server.cpp", "src/wallet/wallet.cpp"])]);
        let candidates: BTreeSet<IssueKey> = [IssueKey::new("bitcoin", 1)].into();
        let counts = aggregate_module_counts(
            &candidates,
            &links,
            &corpus,
            &default_architecture(),
            &default_rules(),
        )
        .unwrap();
        assert_eq!(counts.per_module["RPC"], 1);
        assert_eq!(counts.per_module["Wallet"], 1);
        let module_sum: u64 = counts.per_module.values().sum();
        assert!(module_sum > counts.issue_count);
    }

    #[test]
    fn empty_candidates_all_zero() {
        let (corpus, links) = corpus_with_files(&[(1, vec!["rpc/a.cpp"])]);
        let counts = aggregate_module_counts(
            &BTreeSet::new(),
            &links,
            &corpus,
            &default_architecture(),
            &default_rules(),
        )
        .unwrap();
        assert!(counts.per_module.is_empty());
        assert_eq!(counts.issue_count, 0);
    }

    #[test]
    fn three_issues_one_module() {
        let (corpus, links) = corpus_with_files(&[
            (1, vec!["rpc/a.cpp"]),
            (2, vec!["rpc/b.cpp"]),
            (3, vec!["rpc/c.cpp"]),
        ]);
        let candidates: BTreeSet<IssueKey> = (1..=3).map(|i| IssueKey::new("bitcoin", i)).collect();
        let counts = aggregate_module_counts(
            &candidates,
            &links,
            &corpus,
            &default_architecture(),
            &default_rules(),
        )
        .unwrap();
        assert_eq!(counts.per_module["RPC"], 3);
        assert_eq!(counts.per_layer[&Layer::Network], 3);
    }

    #[test]
    fn flagged_files_and_overrides() {
        let (corpus, links) = corpus_with_files(&[(1, vec!["src/main.cpp"])]);
        let candidates: BTreeSet<IssueKey> = [IssueKey::new("bitcoin", 1)].into();
        let map = default_architecture();
        let counts =
            aggregate_module_counts(&candidates, &links, &corpus, &map, &default_rules()).unwrap();
        assert_eq!(counts.flagged_files, vec!["src/main.cpp".to_string()]);

        let mut with_override = map.clone();
        with_override
            .file_overrides
            .insert("src/main.cpp".into(), "Consensus".into());
        let counts = aggregate_module_counts(
            &candidates,
            &links,
            &corpus,
            &with_override,
            &default_rules(),
        )
        .unwrap();
        assert!(counts.flagged_files.is_empty());
        assert_eq!(counts.per_module["Consensus"], 1);
    }

    #[test]
    fn unmapped_paths_reported() {
        let (corpus, links) = corpus_with_files(&[(1, vec!["contrib/tool.py"])]);
        let candidates: BTreeSet<IssueKey> = [IssueKey::new("bitcoin", 1)].into();
        let counts = aggregate_module_counts(
            &candidates,
            &links,
            &corpus,
            &default_architecture(),
            &default_rules(),
        )
        .unwrap();
        assert_eq!(counts.unmapped_module_paths, vec!["contrib/".to_string()]);
    }
}
