//! The pipeline subcommands. Each reads its inputs, writes its artifacts
//! atomically, and prints a one-line summary.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use patchmine_core::codesig::{
    commit_fragments, fragment_signature, pair_changed_lines, signature_distance_matrix,
    LinePair, SigToken,
};
use patchmine_core::corpus::{
    dedupe_commits, link_issues_to_commits, load_corpus, CommitRecord, Corpus, CorpusCounts,
    IssueKey, IssueRecord, LinkTable, LinkWarning,
};
use patchmine_core::modulemap::{aggregate_module_counts, ModuleCounts};
use patchmine_core::patscan::{load_patterns, scan_repo, ScanReport};
use patchmine_core::textcluster::{
    affinity_propagation, default_k_grid, load_embeddings, pairwise_distance_matrix,
    sweep_clustering, ClusterAssignment, DistanceMatrix, SimilarityMatrix, SweepEntry, SweepSpec,
};
use patchmine_core::titlekw::{
    build_pos_vocabulary, clean_title, extract_type_keywords, select_targets, SelectionRule,
};
use patchmine_core::vulnfilter::{
    build_keyword_clusters, clusters_from_config, run_pipeline, FilterReport,
};

use crate::artifacts::{read_json, write_csv, write_json, write_text};
use crate::config::LoadedConfig;

#[derive(Debug, Serialize, Deserialize)]
struct CorpusArtifact {
    issues: Vec<IssueRecord>,
    commits: Vec<CommitRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
struct IngestReport {
    counts: CorpusCounts,
    duplicate_pairs: Vec<(String, String)>,
    empty_commits: Vec<(String, String)>,
    unlinked: Vec<IssueKey>,
    link_warnings: Vec<LinkWarning>,
}

fn load_artifact_corpus(cfg: &LoadedConfig) -> Result<Corpus> {
    let artifact: CorpusArtifact = read_json(&cfg.artifact("corpus.json"), "ingest")?;
    Ok(Corpus::from_records(artifact.issues, artifact.commits)?)
}

fn load_links(cfg: &LoadedConfig) -> Result<LinkTable> {
    read_json(&cfg.artifact("links.json"), "ingest")
}

fn load_filter_report(cfg: &LoadedConfig) -> Result<FilterReport> {
    read_json(&cfg.artifact("filter_report.json"), "filter")
}

/// ingest: load, validate, deduplicate, and link the corpus.
pub fn cmd_ingest(cfg: &LoadedConfig) -> Result<()> {
    let issues_path = cfg.resolve(&cfg.config.paths.issues);
    let commits_path = cfg.resolve(&cfg.config.paths.commits);
    let corpus = load_corpus(&issues_path, &commits_path)?;
    let deduped = dedupe_commits(&corpus);
    let links = link_issues_to_commits(&deduped.corpus);
    let counts = deduped.corpus.counts();

    write_json(
        &cfg.artifact("corpus.json"),
        &cfg.digest,
        &CorpusArtifact {
            issues: deduped.corpus.issues().to_vec(),
            commits: deduped.corpus.commits().to_vec(),
        },
    )?;
    write_json(&cfg.artifact("links.json"), &cfg.digest, &links)?;
    let report = IngestReport {
        counts,
        duplicate_pairs: deduped.removed.clone(),
        empty_commits: deduped.empty_commits.clone(),
        unlinked: links.unlinked.iter().cloned().collect(),
        link_warnings: links.warnings.clone(),
    };
    write_json(&cfg.artifact("ingest_report.json"), &cfg.digest, &report)?;
    println!(
        "ingest: {} issues, {} commits ({} with hunks), {} duplicates removed, {} empty, {} unlinked",
        counts.issues,
        counts.commits,
        counts.hunk_bearing_commits,
        report.duplicate_pairs.len(),
        report.empty_commits.len(),
        report.unlinked.len()
    );
    Ok(())
}

/// filter: run S0–S4b and write the report plus the ledger CSV.
pub fn cmd_filter(cfg: &LoadedConfig, emit_keyword_clusters: bool) -> Result<()> {
    let corpus = load_artifact_corpus(cfg)?;
    let links = load_links(cfg)?;
    let clusters = clusters_from_config(&cfg.config.filter);
    let report = run_pipeline(&corpus, &links, &cfg.config.filter, &clusters)?;

    write_json(&cfg.artifact("filter_report.json"), &cfg.digest, &report)?;
    let rows: Vec<Vec<String>> = report
        .stages
        .iter()
        .map(|s| {
            vec![
                s.stage.to_string(),
                s.delta.to_string(),
                s.remaining.to_string(),
            ]
        })
        .collect();
    write_csv(
        &cfg.artifact("filter_ledger.csv"),
        &cfg.digest,
        &["stage", "delta", "remaining"],
        &rows,
    )?;

    if emit_keyword_clusters {
        let Some(embeddings_path) = &cfg.config.paths.embeddings else {
            bail!("config paths.embeddings is required for --emit-keyword-clusters");
        };
        let embeddings = load_embeddings(&cfg.resolve(embeddings_path))?;
        let unreviewed = build_keyword_clusters(&corpus, &embeddings, &cfg.config.filter)?;
        write_json(
            &cfg.artifact("keyword_clusters.json"),
            &cfg.digest,
            &unreviewed,
        )?;
    }
    println!(
        "filter: {} candidates, {} discarded, {} undecided (of {})",
        report.included.len(),
        report.discarded.len(),
        report.undecided.len(),
        report.start
    );
    Ok(())
}

/// modules: module/layer counts over the filter candidates.
pub fn cmd_modules(cfg: &LoadedConfig) -> Result<()> {
    let corpus = load_artifact_corpus(cfg)?;
    let links = load_links(cfg)?;
    let report = load_filter_report(cfg)?;
    let candidates: BTreeSet<IssueKey> = report.included.iter().cloned().collect();
    let counts: ModuleCounts = aggregate_module_counts(
        &candidates,
        &links,
        &corpus,
        &cfg.config.architecture,
        &cfg.config.rules,
    )?;
    write_json(&cfg.artifact("modules.json"), &cfg.digest, &counts)?;
    let mut rows: Vec<Vec<String>> = Vec::new();
    for (module, count) in &counts.per_module {
        let layer = cfg
            .config
            .architecture
            .entries
            .values()
            .find(|(m, _)| m == module)
            .map(|(_, l)| l.to_string())
            .unwrap_or_else(|| "Other".into());
        rows.push(vec![layer, module.clone(), count.to_string()]);
    }
    write_csv(
        &cfg.artifact("modules.csv"),
        &cfg.digest,
        &["layer", "module", "count"],
        &rows,
    )?;
    println!(
        "modules: {} issues over {} modules ({} flagged files, {} unmapped paths)",
        counts.issue_count,
        counts.per_module.len(),
        counts.flagged_files.len(),
        counts.unmapped_module_paths.len()
    );
    Ok(())
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TypeRow {
    pub project: String,
    pub id: u64,
    pub raw_title: String,
    pub cleaned: Vec<String>,
    pub keywords: Vec<String>,
    pub target_verb: Option<String>,
    pub target_prep: Option<String>,
    pub rule_fired: SelectionRule,
}

/// types: clean titles and extract type keywords for the candidate set
/// (or every issue with --all / when no filter report exists).
pub fn cmd_types(cfg: &LoadedConfig, all: bool) -> Result<()> {
    let corpus = load_artifact_corpus(cfg)?;
    let report_path = cfg.artifact("filter_report.json");
    let selected: Vec<&IssueRecord> = if all || !report_path.exists() {
        corpus.issues().iter().collect()
    } else {
        let report = load_filter_report(cfg)?;
        let wanted: BTreeSet<IssueKey> = report.included.into_iter().collect();
        corpus
            .issues()
            .iter()
            .filter(|i| wanted.contains(&IssueKey::new(i.project.clone(), i.id)))
            .collect()
    };
    let cleaned: Vec<_> = selected
        .iter()
        .map(|i| clean_title(&i.title, &cfg.config.clean))
        .collect();
    let vocab = build_pos_vocabulary(&cleaned, &cfg.config.pos_seed);
    let rows: Vec<TypeRow> = selected
        .iter()
        .zip(&cleaned)
        .map(|(issue, title)| {
            let targets = select_targets(&title.tokens, &vocab);
            let kw = extract_type_keywords(&title.tokens, targets);
            TypeRow {
                project: issue.project.clone(),
                id: issue.id,
                raw_title: issue.title.clone(),
                cleaned: title.tokens.clone(),
                keywords: kw.keywords,
                target_verb: kw.target_verb,
                target_prep: kw.target_prep,
                rule_fired: kw.rule_fired,
            }
        })
        .collect();
    write_json(&cfg.artifact("types.json"), &cfg.digest, &rows)?;
    println!("types: {} rows", rows.len());
    Ok(())
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SignatureRow {
    pub id: String,
    pub commit_id: String,
    pub project: String,
    pub file_path: String,
    pub deleted_lines: Vec<String>,
    pub added_lines: Vec<String>,
    /// 1-based positions within the original hunk body.
    pub deleted_positions: Vec<usize>,
    pub added_positions: Vec<usize>,
    pub pairs: Vec<LinePair>,
    pub signature: Vec<SigToken>,
    pub rendered: String,
    pub empty: bool,
}

/// signatures: fragments and code change signatures for the candidates'
/// patch commits.
pub fn cmd_signatures(cfg: &LoadedConfig, all: bool) -> Result<()> {
    let corpus = load_artifact_corpus(cfg)?;
    let commits: Vec<&CommitRecord> = if all {
        corpus.commits().iter().collect()
    } else {
        let report = load_filter_report(cfg)?;
        let links = load_links(cfg)?;
        let mut wanted: BTreeSet<(String, String)> = BTreeSet::new();
        for key in &report.included {
            for cid in links.commit_ids(key) {
                wanted.insert((key.project.clone(), cid.to_string()));
            }
        }
        corpus
            .commits()
            .iter()
            .filter(|c| wanted.contains(&(c.project.clone(), c.id.clone())))
            .collect()
    };
    let mut sorted = commits;
    sorted.sort_by(|a, b| (&a.project, &a.id).cmp(&(&b.project, &b.id)));

    let mut rows = Vec::new();
    for commit in sorted {
        for fragment in commit_fragments(commit, &cfg.config.codesig) {
            let lang = cfg
                .config
                .codesig
                .language_for(&fragment.file_path)
                .expect("fragments only come from configured languages");
            let pairs = pair_changed_lines(&fragment);
            let signature = fragment_signature(&fragment, &pairs, lang);
            rows.push(SignatureRow {
                id: fragment.id.clone(),
                commit_id: commit.id.clone(),
                project: commit.project.clone(),
                file_path: fragment.file_path.clone(),
                deleted_lines: fragment.deleted_lines.clone(),
                added_lines: fragment.added_lines.clone(),
                deleted_positions: fragment.deleted_positions.clone(),
                added_positions: fragment.added_positions.clone(),
                pairs,
                rendered: signature.to_string(),
                empty: signature.empty,
                signature: signature.tokens,
            });
        }
    }
    write_json(&cfg.artifact("signatures.json"), &cfg.digest, &rows)?;
    let non_empty = rows.iter().filter(|r| !r.empty).count();
    println!("signatures: {} fragments ({} non-empty)", rows.len(), non_empty);
    Ok(())
}

#[derive(Debug, Serialize)]
struct ClusterArtifact {
    items: Vec<String>,
    assignment: ClusterAssignment,
    best_score: Option<f64>,
    table: Vec<SweepEntry>,
    /// Pairs where WMD fell back to Jaccard (text mode only).
    fallback_pairs: usize,
}

fn write_cluster_artifacts(
    cfg: &LoadedConfig,
    name: &str,
    artifact: &ClusterArtifact,
) -> Result<()> {
    write_json(&cfg.artifact(&format!("{name}.json")), &cfg.digest, artifact)?;
    let rows: Vec<Vec<String>> = artifact
        .table
        .iter()
        .map(|e| {
            vec![
                e.setting.clone(),
                e.clusters.to_string(),
                e.silhouette.map(|s| format!("{s:.6}")).unwrap_or_default(),
            ]
        })
        .collect();
    write_csv(
        &cfg.artifact(&format!("{name}_scores.csv")),
        &cfg.digest,
        &["setting", "clusters", "silhouette"],
        &rows,
    )?;
    Ok(())
}

/// cluster --text: WMD distances over type keywords, agglomerative sweep.
pub fn cmd_cluster_text(cfg: &LoadedConfig) -> Result<()> {
    let rows: Vec<TypeRow> = read_json(&cfg.artifact("types.json"), "types")?;
    if rows.len() < 2 {
        bail!("cluster --text needs at least 2 keyword rows, found {}", rows.len());
    }
    let Some(embeddings_path) = &cfg.config.paths.embeddings else {
        bail!("config paths.embeddings is required for cluster --text");
    };
    let embeddings = load_embeddings(&cfg.resolve(embeddings_path))?;
    let ids: Vec<String> = rows.iter().map(|r| format!("{}#{}", r.project, r.id)).collect();
    let keywords: Vec<Vec<String>> = rows.into_iter().map(|r| r.keywords).collect();
    let fallback = std::sync::atomic::AtomicUsize::new(0);
    let d = pairwise_distance_matrix(ids.clone(), &keywords, |a, b| {
        let result = patchmine_core::textcluster::wmd_distance(a, b, &embeddings);
        if result.fallback {
            fallback.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        }
        Ok(result.distance)
    })?;
    let n = d.len();
    let mut grid: Vec<usize> = if cfg.config.cluster.text_k_grid.is_empty() {
        default_k_grid()
    } else {
        cfg.config.cluster.text_k_grid.clone()
    };
    grid.retain(|&k| k <= n && k >= 1);
    if grid.is_empty() {
        // Small inputs: fall back to every scoreable cluster count.
        grid = (2..=n).collect();
    }
    let result = sweep_clustering(&d, &SweepSpec::Agglomerative { ks: grid })?;
    let artifact = ClusterArtifact {
        items: ids,
        assignment: result.best,
        best_score: Some(result.best_score),
        table: result.table,
        fallback_pairs: fallback.into_inner(),
    };
    write_cluster_artifacts(cfg, "cluster_text", &artifact)?;
    println!(
        "cluster --text: {} items, best {:?} silhouette {:.4}",
        artifact.items.len(),
        artifact.assignment.params,
        artifact.best_score.unwrap_or(f64::NAN)
    );
    Ok(())
}

/// cluster --code: normalized Levenshtein over fragment signatures,
/// affinity propagation (single run, or a damping sweep when configured).
pub fn cmd_cluster_code(cfg: &LoadedConfig) -> Result<()> {
    let rows: Vec<SignatureRow> = read_json(&cfg.artifact("signatures.json"), "signatures")?;
    let rows: Vec<SignatureRow> = rows.into_iter().filter(|r| !r.empty).collect();
    if rows.len() < 2 {
        bail!("cluster --code needs at least 2 non-empty signatures, found {}", rows.len());
    }
    let ids: Vec<String> = rows.iter().map(|r| r.id.clone()).collect();
    let signatures: Vec<patchmine_core::codesig::FragmentSignature> = rows
        .iter()
        .map(|r| patchmine_core::codesig::FragmentSignature {
            tokens: r.signature.clone(),
            empty: r.empty,
        })
        .collect();
    let d: DistanceMatrix = signature_distance_matrix(ids.clone(), &signatures)?;
    let base = cfg.config.cluster.ap.unwrap_or_default();
    let dampings = &cfg.config.cluster.code_damping_grid;
    let (assignment, best_score, table) = if dampings.is_empty() {
        let s = SimilarityMatrix::from_distances(&d);
        let assignment = affinity_propagation(&s, &base)?;
        (assignment, None, Vec::new())
    } else {
        let result = sweep_clustering(
            &d,
            &SweepSpec::AffinityPropagation {
                dampings: dampings.clone(),
                base,
            },
        )?;
        (result.best, Some(result.best_score), result.table)
    };
    let artifact = ClusterArtifact {
        items: ids,
        assignment,
        best_score,
        table,
        fallback_pairs: 0,
    };
    write_cluster_artifacts(cfg, "cluster_code", &artifact)?;
    println!(
        "cluster --code: {} signatures into {} clusters (converged: {})",
        artifact.items.len(),
        artifact.assignment.cluster_count(),
        artifact.assignment.converged
    );
    Ok(())
}

/// scan: pattern-based vulnerable-clone detection over a target tree.
/// Returns the number of VULNERABLE findings (nonzero exit for CI).
pub fn cmd_scan(cfg: &LoadedConfig, target: &Path, patterns_flag: Option<PathBuf>) -> Result<usize> {
    let patterns_path = match patterns_flag {
        Some(p) => p,
        None => cfg
            .config
            .paths
            .patterns
            .as_ref()
            .map(|p| cfg.resolve(p))
            .context("no patterns file: set config paths.patterns or pass --patterns")?,
    };
    let patterns = load_patterns(&patterns_path)?;
    let report: ScanReport = scan_repo(target, &patterns, &cfg.config.codesig)?;
    write_json(&cfg.artifact("scan.json"), &cfg.digest, &report)?;

    let mut table = String::new();
    table.push_str(&format!(
        "{:<11} {:<6} {:<44} {:<30} {:>7}\n",
        "verdict", "id", "file", "function", "score"
    ));
    for f in &report.findings {
        table.push_str(&format!(
            "{:<11} {:<6} {:<44} {:<30} {:>7.3} (lines {}-{})\n",
            f.verdict.to_string(),
            f.pattern_id,
            f.file,
            f.function,
            f.score,
            f.line_span.0,
            f.line_span.1
        ));
    }
    for w in &report.warnings {
        table.push_str(&format!("warning: {w}\n"));
    }
    write_text(&cfg.artifact("scan.txt"), &table)?;

    let vulnerable = report
        .findings
        .iter()
        .filter(|f| f.verdict == patchmine_core::patscan::Verdict::Vulnerable)
        .count();
    println!(
        "scan: {} findings ({} vulnerable, {} patched) across {} warnings",
        report.findings.len(),
        vulnerable,
        report
            .findings
            .iter()
            .filter(|f| f.verdict == patchmine_core::patscan::Verdict::Patched)
            .count(),
        report.warnings.len()
    );
    Ok(vulnerable)
}
