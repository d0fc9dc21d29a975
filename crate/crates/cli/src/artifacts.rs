//! Artifact files: JSON with a provenance header, CSV with a provenance
//! comment line, written atomically (temp file + rename) so re-runs either
//! fully replace an artifact or leave the old one intact.

use std::path::Path;

use anyhow::{Context, Result};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

pub const TOOL_NAME: &str = "patchmine";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArtifactHeader {
    pub tool: String,
    pub version: String,
    pub config_digest: String,
    pub schema_version: u32,
}

impl ArtifactHeader {
    pub fn new(config_digest: &str) -> Self {
        Self {
            tool: TOOL_NAME.into(),
            version: TOOL_VERSION.into(),
            config_digest: config_digest.into(),
            schema_version: 1,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Artifact<T> {
    pub header: ArtifactHeader,
    pub data: T,
}

fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)
            .with_context(|| format!("creating {}", parent.display()))?;
    }
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, bytes).with_context(|| format!("writing {}", tmp.display()))?;
    std::fs::rename(&tmp, path)
        .with_context(|| format!("renaming {} into place", tmp.display()))?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, digest: &str, data: &T) -> Result<()> {
    let artifact = Artifact {
        header: ArtifactHeader::new(digest),
        data,
    };
    let mut bytes = serde_json::to_vec_pretty(&artifact)?;
    bytes.push(b'\n');
    atomic_write(path, &bytes)
}

/// Reads an artifact produced by an upstream command; the error names the
/// command to run when the file is missing.
pub fn read_json<T: DeserializeOwned>(path: &Path, producer: &str) -> Result<T> {
    let bytes = std::fs::read(path).with_context(|| {
        format!(
            "missing artifact {}; run `patchmine {producer}` first",
            path.display()
        )
    })?;
    let artifact: Artifact<T> = serde_json::from_slice(&bytes)
        .with_context(|| format!("parsing artifact {}", path.display()))?;
    Ok(artifact.data)
}

/// CSV with a leading provenance comment. Fields are expected not to need
/// quoting (ids, counts, stage names); anything with a comma or quote is
/// quoted defensively.
pub fn write_csv(path: &Path, digest: &str, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut out = String::new();
    out.push_str(&format!(
        "# {TOOL_NAME} {TOOL_VERSION} config={digest}\n"
    ));
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        let rendered: Vec<String> = row
            .iter()
            .map(|field| {
                if field.contains(',') || field.contains('"') || field.contains('\n') {
                    format!("\"{}\"", field.replace('"', "\"\""))
                } else {
                    field.clone()
                }
            })
            .collect();
        out.push_str(&rendered.join(","));
        out.push('\n');
    }
    atomic_write(path, out.as_bytes())
}

pub fn write_text(path: &Path, content: &str) -> Result<()> {
    atomic_write(path, content.as_bytes())
}
