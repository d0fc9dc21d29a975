//! Code change signatures: cleaned diff hunks become fragments, changed
//! lines are paired by edit-distance similarity, and each fragment collapses
//! into an abstract token sequence (function names kept, variables and
//! values abstracted) suitable for clustering and clone matching.

mod clean;
mod levenshtein;
mod signature;

pub use clean::{clean_hunk, commit_fragments, split_fragments, strip_comment_lines, ChangeKind, CleanedHunk, CleanedHunkLine, CleanedLine};
pub use levenshtein::{char_similarity, levenshtein, normalized_levenshtein};
pub use signature::{fragment_signature, line_signature, pair_changed_lines};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::textcluster::{pairwise_distance_matrix, ClusterError, DistanceMatrix};

/// One token of a line/fragment signature.
///
/// Control keywords and logical operators pass through; function calls keep
/// their name (rendered `name()`); everything else is abstracted. The
/// value-abstraction keywords never carry parentheses.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SigToken {
    If,
    For,
    While,
    Return,
    Throw,
    Defer,
    /// `||`
    Or,
    /// `&&`
    And,
    /// Named function call, e.g. `cn_fast_hash()`.
    Call(String),
    /// Variable with this many `[]` bracket groups.
    Var(u8),
    Nil,
    Bol,
    Num,
    Txt,
    Len,
    Size,
    Err,
    /// Separates the deleted-side and added-side halves of a paired line.
    PairArrow,
}

impl fmt::Display for SigToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigToken::If => write!(f, "if"),
            SigToken::For => write!(f, "for"),
            SigToken::While => write!(f, "while"),
            SigToken::Return => write!(f, "return"),
            SigToken::Throw => write!(f, "throw"),
            SigToken::Defer => write!(f, "defer"),
            SigToken::Or => write!(f, "||"),
            SigToken::And => write!(f, "&&"),
            SigToken::Call(name) => write!(f, "{name}()"),
            SigToken::Var(groups) => {
                write!(f, "VAR")?;
                for _ in 0..*groups {
                    write!(f, "[]")?;
                }
                Ok(())
            }
            SigToken::Nil => write!(f, "NIL"),
            SigToken::Bol => write!(f, "BOL"),
            SigToken::Num => write!(f, "NUM"),
            SigToken::Txt => write!(f, "TXT"),
            SigToken::Len => write!(f, "LEN"),
            SigToken::Size => write!(f, "SIZE"),
            SigToken::Err => write!(f, "ERR"),
            SigToken::PairArrow => write!(f, "==>"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("not a signature token: {0:?}")]
pub struct TokenParseError(String);

impl FromStr for SigToken {
    type Err = TokenParseError;

    fn from_str(s: &str) -> Result<Self, TokenParseError> {
        match s {
            "if" => return Ok(SigToken::If),
            "for" => return Ok(SigToken::For),
            "while" => return Ok(SigToken::While),
            "return" => return Ok(SigToken::Return),
            "throw" => return Ok(SigToken::Throw),
            "defer" => return Ok(SigToken::Defer),
            "||" => return Ok(SigToken::Or),
            "&&" => return Ok(SigToken::And),
            "NIL" => return Ok(SigToken::Nil),
            "BOL" => return Ok(SigToken::Bol),
            "NUM" => return Ok(SigToken::Num),
            "TXT" => return Ok(SigToken::Txt),
            "LEN" => return Ok(SigToken::Len),
            "SIZE" => return Ok(SigToken::Size),
            "ERR" => return Ok(SigToken::Err),
            "==>" => return Ok(SigToken::PairArrow),
            _ => {}
        }
        if let Some(mut rest) = s.strip_prefix("VAR") {
            let mut groups: u8 = 0;
            while let Some(r) = rest.strip_prefix("[]") {
                groups += 1;
                rest = r;
            }
            if rest.is_empty() {
                return Ok(SigToken::Var(groups));
            }
        }
        if let Some(name) = s.strip_suffix("()") {
            if !name.is_empty() && !name.contains(char::is_whitespace) {
                return Ok(SigToken::Call(name.to_string()));
            }
        }
        Err(TokenParseError(s.to_string()))
    }
}

impl Serialize for SigToken {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SigToken {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Signature of a single cleaned line. Empty for unclassifiable lines.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LineSignature {
    pub tokens: Vec<SigToken>,
}

impl LineSignature {
    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

impl fmt::Display for LineSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tokens(f, &self.tokens)
    }
}

/// Signature of a whole code fragment. `==>` separates the two halves of an
/// unequal paired line; it never appears first or last.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FragmentSignature {
    pub tokens: Vec<SigToken>,
    /// True when every line abstracted to nothing.
    pub empty: bool,
}

impl fmt::Display for FragmentSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tokens(f, &self.tokens)
    }
}

impl FromStr for FragmentSignature {
    type Err = TokenParseError;

    fn from_str(s: &str) -> Result<Self, TokenParseError> {
        let tokens: Result<Vec<SigToken>, _> =
            s.split_whitespace().map(SigToken::from_str).collect();
        let tokens = tokens?;
        Ok(FragmentSignature {
            empty: tokens.is_empty(),
            tokens,
        })
    }
}

fn write_tokens(f: &mut fmt::Formatter<'_>, tokens: &[SigToken]) -> fmt::Result {
    for (i, tok) in tokens.iter().enumerate() {
        if i > 0 {
            write!(f, " ")?;
        }
        write!(f, "{tok}")?;
    }
    Ok(())
}

/// A maximal run of changed lines inside a cleaned hunk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFragment {
    pub id: String,
    pub commit_id: String,
    pub file_path: String,
    pub deleted_lines: Vec<String>,
    pub added_lines: Vec<String>,
    /// 1-based positions within the original hunk body.
    pub deleted_positions: Vec<usize>,
    pub added_positions: Vec<usize>,
}

impl CodeFragment {
    pub fn line_count(&self) -> usize {
        self.deleted_lines.len() + self.added_lines.len()
    }
}

/// Pairing of a deleted line with an added line (or an unpaired side).
/// A pair with both sides set always has similarity ≥ 0.5.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinePair {
    pub deleted: Option<usize>,
    pub added: Option<usize>,
    pub similarity: f64,
}

/// Per-language lexical settings for cleaning and signature generation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LanguageSpec {
    pub name: String,
    pub suffixes: Vec<String>,
    pub line_comments: Vec<String>,
    pub block_comments: Vec<(String, String)>,
    /// Lines whose first token starts with one of these are dropped
    /// (preprocessor directives, import/package statements). A prefix
    /// ending in an identifier character only matches at a word boundary.
    pub drop_prefixes: Vec<String>,
    /// Call names abstracted to LEN.
    pub len_functions: Vec<String>,
    /// Call names abstracted to SIZE.
    pub size_functions: Vec<String>,
    /// Call names abstracted to ERR.
    pub error_functions: Vec<String>,
}

impl LanguageSpec {
    pub fn c_family() -> Self {
        Self {
            name: "c-family".into(),
            suffixes: [".c", ".cc", ".cpp", ".cxx", ".h", ".hpp"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            line_comments: vec!["//".into()],
            block_comments: vec![("/*".into(), "*/".into())],
            drop_prefixes: vec!["#".into()],
            len_functions: vec!["len".into(), "length".into()],
            size_functions: vec!["size".into(), "sizeof".into()],
            error_functions: vec![
                "Errorf".into(),
                "error".into(),
                "perror".into(),
                "strerror".into(),
            ],
        }
    }

    pub fn go() -> Self {
        Self {
            name: "go".into(),
            suffixes: vec![".go".into()],
            line_comments: vec!["//".into()],
            block_comments: vec![("/*".into(), "*/".into())],
            drop_prefixes: vec!["import".into(), "package".into()],
            len_functions: vec!["len".into(), "length".into()],
            size_functions: vec!["size".into(), "sizeof".into()],
            error_functions: vec![
                "Errorf".into(),
                "error".into(),
                "perror".into(),
                "strerror".into(),
            ],
        }
    }

    pub(crate) fn matches_suffix(&self, path: &str) -> bool {
        let lower = path.to_lowercase();
        self.suffixes.iter().any(|s| lower.ends_with(&s.to_lowercase()))
    }
}

/// Cleaning and signature configuration across languages.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodesigConfig {
    pub languages: Vec<LanguageSpec>,
    /// Path substrings marking test files; hunks in such files are dropped.
    pub test_path_markers: Vec<String>,
}

impl Default for CodesigConfig {
    fn default() -> Self {
        Self {
            languages: vec![LanguageSpec::c_family(), LanguageSpec::go()],
            test_path_markers: vec![
                "test/".into(),
                "tests/".into(),
                "_test.".into(),
                "test_".into(),
            ],
        }
    }
}

impl CodesigConfig {
    pub fn language_for(&self, path: &str) -> Option<&LanguageSpec> {
        self.languages.iter().find(|l| l.matches_suffix(path))
    }

    pub fn is_test_path(&self, path: &str) -> bool {
        let lower = path.to_lowercase();
        self.test_path_markers
            .iter()
            .any(|m| lower.contains(&m.to_lowercase()))
    }
}

/// Pairwise normalized Levenshtein distances between fragment signatures,
/// ready for affinity propagation over `1 - d` similarities.
pub fn signature_distance_matrix(
    ids: Vec<String>,
    signatures: &[FragmentSignature],
) -> Result<DistanceMatrix, ClusterError> {
    pairwise_distance_matrix(ids, signatures, |a, b| {
        Ok(normalized_levenshtein(&a.tokens, &b.tokens))
    })
}
