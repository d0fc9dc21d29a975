//! Pipeline configuration file.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use patchmine_core::codesig::CodesigConfig;
use patchmine_core::modulemap::{default_rules, ArchitectureMap, ModulePathRule};
use patchmine_core::textcluster::ApParams;
use patchmine_core::titlekw::{CleanConfig, PosSeed};
use patchmine_core::vulnfilter::FilterConfig;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PathsConfig {
    pub issues: PathBuf,
    pub commits: PathBuf,
    #[serde(default)]
    pub embeddings: Option<PathBuf>,
    #[serde(default)]
    pub patterns: Option<PathBuf>,
    #[serde(default = "default_out_dir")]
    pub out_dir: PathBuf,
}

fn default_out_dir() -> PathBuf {
    PathBuf::from("out")
}

/// Grid settings for the clustering sweeps. Empty grids fall back to the
/// built-in defaults.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct ClusterConfig {
    /// Cluster counts for the text sweep (agglomerative).
    pub text_k_grid: Vec<usize>,
    /// Damping factors for a code sweep; empty = single run at `ap.damping`.
    pub code_damping_grid: Vec<f64>,
    pub ap: Option<ApParams>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub schema_version: u32,
    pub paths: PathsConfig,
    #[serde(default)]
    pub filter: FilterConfig,
    #[serde(default)]
    pub clean: CleanConfig,
    #[serde(default)]
    pub pos_seed: PosSeed,
    #[serde(default = "default_rules")]
    pub rules: Vec<ModulePathRule>,
    #[serde(default = "patchmine_core::modulemap::default_architecture")]
    pub architecture: ArchitectureMap,
    #[serde(default)]
    pub codesig: CodesigConfig,
    #[serde(default)]
    pub cluster: ClusterConfig,
}

/// Loaded configuration plus the digest of its raw bytes (for artifact
/// provenance) and the directory relative paths resolve against.
pub struct LoadedConfig {
    pub config: PipelineConfig,
    pub digest: String,
    base_dir: PathBuf,
    pub out_override: Option<PathBuf>,
}

impl LoadedConfig {
    pub fn load(path: &Path, out_override: Option<PathBuf>) -> Result<Self> {
        let bytes = std::fs::read(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let config: PipelineConfig = serde_json::from_slice(&bytes)
            .with_context(|| format!("parsing config {}", path.display()))?;
        anyhow::ensure!(
            config.schema_version == 1,
            "unsupported config schema_version {}",
            config.schema_version
        );
        config.filter.validate()?;
        config
            .pos_seed
            .validate()
            .map_err(|e| anyhow::anyhow!("pos_seed: {e}"))?;
        use sha2::Digest;
        let digest = format!("sha256:{:x}", sha2::Sha256::digest(&bytes));
        let base_dir = path
            .parent()
            .map(Path::to_path_buf)
            .unwrap_or_else(|| PathBuf::from("."));
        Ok(Self {
            config,
            digest,
            base_dir,
            out_override,
        })
    }

    /// Resolves a configured path against the config file's directory.
    pub fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }

    pub fn out_dir(&self) -> PathBuf {
        match &self.out_override {
            Some(p) => p.clone(),
            None => self.resolve(&self.config.paths.out_dir),
        }
    }

    pub fn artifact(&self, name: &str) -> PathBuf {
        self.out_dir().join(name)
    }
}
