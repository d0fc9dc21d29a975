//! Repository-mining toolkit for security-patch analysis.
//!
//! The pipeline goes from a raw issue/commit corpus to actionable artifacts:
//!
//! * [`corpus`]: load, validate, deduplicate, and cross-link issues and commits.
//! * [`vulnfilter`]: the staged S0–S4b filter separating vulnerability
//!   candidates from regular bugs, with an auditable per-stage ledger.
//! * [`modulemap`]: module-path extraction from patch file paths and mapping
//!   onto a layered reference architecture.
//! * [`titlekw`]: title cleaning and type-keyword extraction via the
//!   verb/preposition grammatical pattern.
//! * [`textcluster`]: Word Mover's Distance, agglomerative and affinity
//!   propagation clustering, silhouette scoring, and parameter sweeps.
//! * [`codesig`]: diff-hunk cleaning, fragment splitting, changed-line
//!   pairing, and code change signature generation with a normalized
//!   Levenshtein metric.
//! * [`patscan`]: pattern-based scanning of target source trees for
//!   unpatched clones of known vulnerable code.

pub mod codesig;
pub mod corpus;
pub mod modulemap;
pub mod patscan;
pub mod textcluster;
pub mod titlekw;
pub mod vulnfilter;

pub use codesig::{CodeFragment, FragmentSignature, LinePair, LineSignature, SigToken};
pub use corpus::{CommitRecord, Corpus, Hunk, HunkLine, IssueKey, IssueRecord, LineMarker, LinkTable};
pub use patscan::{PatternSpec, ScanFinding, Verdict};
pub use textcluster::{ClusterAssignment, DistanceMatrix, EmbeddingTable};
pub use vulnfilter::{FilterConfig, FilterReport, KeywordCluster};
