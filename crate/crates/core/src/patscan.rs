//! Pattern-based scanning of source trees for unpatched clones of known
//! vulnerable code.
//!
//! A pattern locates candidate functions through file globs or
//! function-name regexes, requires an anchor signature (the surrounding
//! code) to be present, then decides VULNERABLE / PATCHED / ANCHOR_ONLY by
//! matching the vulnerable and patched signatures against the function
//! body's token stream.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codesig::{
    line_signature, normalized_levenshtein, strip_comment_lines, CodesigConfig, LanguageSpec,
    SigToken,
};

pub const PATTERNS_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum ScanError {
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
    #[error("{path}: unsupported schema_version {found}")]
    SchemaVersion { path: String, found: u32 },
    #[error("pattern {id}: {message}")]
    InvalidPattern { id: String, message: String },
    #[error("duplicate pattern id {0}")]
    DuplicateId(String),
    #[error("invalid function pattern {pattern:?} in {id}: {message}")]
    BadRegex {
        id: String,
        pattern: String,
        message: String,
    },
}

fn default_threshold() -> f64 {
    0.8
}

/// A detection pattern: locators plus anchor/vulnerable/patched signatures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatternSpec {
    pub id: String,
    pub description: String,
    /// Where the encoding came from (issue/PR reference).
    #[serde(default)]
    pub provenance: String,
    #[serde(default)]
    pub file_globs: Vec<String>,
    #[serde(default)]
    pub function_patterns: Vec<String>,
    /// Surrounding-code tokens that must be present for the check to be
    /// meaningful. An empty anchor always passes.
    #[serde(default)]
    pub anchor_signature: Vec<SigToken>,
    pub vulnerable_signature: Vec<SigToken>,
    pub patched_signature: Vec<SigToken>,
    #[serde(default = "default_threshold")]
    pub match_threshold: f64,
}

#[derive(Debug, Clone, Deserialize)]
struct PatternsDoc {
    schema_version: u32,
    patterns: Vec<PatternSpec>,
}

/// Loads and validates a patterns file.
pub fn load_patterns(path: &Path) -> Result<Vec<PatternSpec>, ScanError> {
    let text = std::fs::read_to_string(path).map_err(|source| ScanError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let doc: PatternsDoc = serde_json::from_str(&text).map_err(|source| ScanError::Json {
        path: path.display().to_string(),
        source,
    })?;
    if doc.schema_version != PATTERNS_SCHEMA_VERSION {
        return Err(ScanError::SchemaVersion {
            path: path.display().to_string(),
            found: doc.schema_version,
        });
    }
    let mut seen = BTreeSet::new();
    for p in &doc.patterns {
        if !seen.insert(p.id.clone()) {
            return Err(ScanError::DuplicateId(p.id.clone()));
        }
        if p.vulnerable_signature.is_empty() {
            return Err(ScanError::InvalidPattern {
                id: p.id.clone(),
                message: "empty vulnerable_signature".into(),
            });
        }
        if p.patched_signature.is_empty() {
            return Err(ScanError::InvalidPattern {
                id: p.id.clone(),
                message: "empty patched_signature".into(),
            });
        }
        if !(p.match_threshold > 0.0 && p.match_threshold <= 1.0) {
            return Err(ScanError::InvalidPattern {
                id: p.id.clone(),
                message: format!("match_threshold {} outside (0, 1]", p.match_threshold),
            });
        }
    }
    Ok(doc.patterns)
}

/// Verdict for one (pattern, function) candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Vulnerable,
    Patched,
    AnchorOnly,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Vulnerable => write!(f, "VULNERABLE"),
            Verdict::Patched => write!(f, "PATCHED"),
            Verdict::AnchorOnly => write!(f, "ANCHOR_ONLY"),
        }
    }
}

/// A classified match in a scanned tree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanFinding {
    pub pattern_id: String,
    pub file: String,
    pub function: String,
    pub verdict: Verdict,
    /// 1-based inclusive line span of the matched window.
    pub line_span: (usize, usize),
    /// Score of the signature that decided the verdict.
    pub score: f64,
}

/// Scan output: findings plus per-file warnings (unreadable files,
/// unbalanced braces).
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct ScanReport {
    pub findings: Vec<ScanFinding>,
    pub warnings: Vec<String>,
}

impl ScanReport {
    pub fn has_vulnerable(&self) -> bool {
        self.findings
            .iter()
            .any(|f| f.verdict == Verdict::Vulnerable)
    }
}

/// Minimal glob matching over '/'-separated paths: `**` spans any number of
/// segments, `*` any run within a segment, `?` one character. Comparison is
/// case-insensitive.
pub fn glob_match(pattern: &str, path: &str) -> bool {
    let pat: Vec<String> = pattern
        .to_lowercase()
        .split('/')
        .map(str::to_string)
        .collect();
    let segs: Vec<String> = path
        .to_lowercase()
        .split('/')
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect();
    fn seg_match(p: &[char], s: &[char]) -> bool {
        match (p.first(), s.first()) {
            (None, None) => true,
            (Some('*'), _) => {
                seg_match(&p[1..], s) || (!s.is_empty() && seg_match(p, &s[1..]))
            }
            (Some('?'), Some(_)) => seg_match(&p[1..], &s[1..]),
            (Some(pc), Some(sc)) if pc == sc => seg_match(&p[1..], &s[1..]),
            _ => false,
        }
    }
    fn path_match(pat: &[String], segs: &[String]) -> bool {
        match pat.first() {
            None => segs.is_empty(),
            Some(p) if p == "**" => {
                path_match(&pat[1..], segs)
                    || (!segs.is_empty() && path_match(pat, &segs[1..]))
            }
            Some(p) => {
                if segs.is_empty() {
                    return false;
                }
                let pc: Vec<char> = p.chars().collect();
                let sc: Vec<char> = segs[0].chars().collect();
                seg_match(&pc, &sc) && path_match(&pat[1..], &segs[1..])
            }
        }
    }
    path_match(&pat, &segs)
}

/// A function found in a source file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FunctionSpan {
    pub name: String,
    /// 1-based inclusive (signature line, closing brace line).
    pub span: (usize, usize),
}

const SIGNATURE_KEYWORDS: [&str; 10] = [
    "if", "for", "while", "switch", "return", "throw", "catch", "else", "do", "sizeof",
];

/// Counts braces outside string/char literals; returns (depth delta,
/// position of each opening brace).
fn brace_scan(line: &str) -> Vec<(usize, char)> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '"' || c == '\'' || c == '`' {
            i += 1;
            while i < chars.len() {
                if chars[i] == '\\' && c != '`' {
                    i += 2;
                    continue;
                }
                if chars[i] == c {
                    i += 1;
                    break;
                }
                i += 1;
            }
            continue;
        }
        if c == '{' || c == '}' {
            out.push((i, c));
        }
        i += 1;
    }
    out
}

fn go_function_name(line: &str) -> Option<String> {
    let rest = line.trim_start().strip_prefix("func")?;
    let rest = rest.strip_prefix(|c: char| c.is_whitespace() || c == '(')?;
    let line = line.trim_start();
    let after_func = &line[4..];
    let after_func = after_func.trim_start();
    let _ = rest;
    if let Some(recv_rest) = after_func.strip_prefix('(') {
        // Method: func (recv *Type) Name(...)
        let close = recv_rest.find(')')?;
        let recv = &recv_rest[..close];
        let recv_type: String = recv
            .rsplit(|c: char| c.is_whitespace() || c == '*')
            .next()?
            .trim()
            .to_string();
        let tail = recv_rest[close + 1..].trim_start();
        let name: String = tail
            .chars()
            .take_while(|c| c.is_ascii_alphanumeric() || *c == '_')
            .collect();
        if name.is_empty() || recv_type.is_empty() {
            return None;
        }
        Some(format!("{recv_type}.{name}"))
    } else {
        let name: String = after_func
            .chars()
            .take_while(|c| c.is_ascii_alphanumeric() || *c == '_')
            .collect();
        if name.is_empty() {
            return None;
        }
        // Anonymous `func(...)` closures have no name.
        Some(name)
    }
}

fn c_function_name(line: &str) -> Option<String> {
    let trimmed = line.trim_start();
    if trimmed.starts_with('#') {
        return None;
    }
    let open = line.find('(')?;
    let prefix = &line[..open];
    let chars: Vec<char> = prefix.chars().collect();
    let mut end = chars.len();
    while end > 0 && chars[end - 1].is_whitespace() {
        end -= 1;
    }
    let mut start = end;
    while start > 0 {
        let c = chars[start - 1];
        if c.is_ascii_alphanumeric() || c == '_' || c == '~' {
            start -= 1;
        } else if c == ':' && start >= 2 && chars[start - 2] == ':' {
            start -= 2;
        } else {
            break;
        }
    }
    if start == end {
        return None;
    }
    let name: String = chars[start..end].iter().collect();
    let simple = name.rsplit("::").next().unwrap_or(&name);
    if simple.is_empty()
        || simple.chars().next().is_none_or(|c| c.is_ascii_digit())
        || SIGNATURE_KEYWORDS.contains(&simple.to_lowercase().as_str())
    {
        return None;
    }
    // Assignments and comparisons before the name mean a call, not a
    // definition ("x = foo(" / "== foo(").
    let before: String = chars[..start].iter().collect();
    if before.contains('=') || before.contains("return ") {
        return None;
    }
    Some(name)
}

/// Finds functions via signature-line heuristics plus brace-depth tracking
/// from the opening brace. Nested local functions (closures) are skipped:
/// scanning resumes after each function body. Returns an error message for
/// files with unbalanced braces.
pub fn extract_functions(source: &str, lang: &LanguageSpec) -> Result<Vec<FunctionSpan>, String> {
    let raw_lines: Vec<&str> = source.lines().collect();
    let stripped = strip_comment_lines(&raw_lines, lang);
    let is_go = lang.name == "go";
    let mut functions = Vec::new();
    let mut i = 0;
    while i < stripped.len() {
        let line = &stripped[i];
        let name = if is_go {
            // Only named funcs/methods at top level.
            if line.trim_start().starts_with("func") {
                go_function_name(line)
            } else {
                None
            }
        } else {
            c_function_name(line)
        };
        let Some(name) = name else {
            i += 1;
            continue;
        };
        // Find the body's opening brace before any ';' (which would make
        // this a prototype). Look a few lines ahead for split signatures.
        let mut open_line = None;
        'search: for (offset, candidate) in stripped[i..].iter().take(8).enumerate() {
            let text = if offset == 0 {
                // Skip past the parameter list on the signature line.
                candidate.as_str()
            } else {
                candidate.as_str()
            };
            for (pos, c) in brace_scan(text) {
                let _ = pos;
                if c == '{' {
                    open_line = Some(i + offset);
                    break 'search;
                }
            }
            if text.contains(';') {
                break;
            }
        }
        let Some(open_line) = open_line else {
            i += 1;
            continue;
        };
        // Track depth from the opening brace to its close.
        let mut depth = 0i32;
        let mut end_line = None;
        'body: for (offset, candidate) in stripped[open_line..].iter().enumerate() {
            for (_, c) in brace_scan(candidate) {
                match c {
                    '{' => depth += 1,
                    '}' => {
                        depth -= 1;
                        if depth == 0 {
                            end_line = Some(open_line + offset);
                            break 'body;
                        }
                    }
                    _ => {}
                }
            }
        }
        let Some(end_line) = end_line else {
            return Err(format!(
                "unbalanced braces in function starting at line {}",
                i + 1
            ));
        };
        functions.push(FunctionSpan {
            name,
            span: (i + 1, end_line + 1),
        });
        i = end_line + 1;
    }
    Ok(functions)
}

/// Best sliding-window match of `sig` against a function body's token
/// stream: score = 1 − normalized Levenshtein over a window of |sig|
/// consecutive tokens; blank and no-signature lines contribute nothing, so
/// formatting differences don't break matches.
pub fn match_signature(
    body_tokens: &[(SigToken, usize)],
    sig: &[SigToken],
) -> (f64, Option<(usize, usize)>) {
    if sig.is_empty() {
        return (1.0, None);
    }
    if body_tokens.is_empty() {
        return (0.0, None);
    }
    let stream: Vec<&SigToken> = body_tokens.iter().map(|(t, _)| t).collect();
    let window = sig.len().min(stream.len());
    let mut best = (f64::NEG_INFINITY, None);
    for start in 0..=(stream.len() - window) {
        let slice: Vec<SigToken> = stream[start..start + window]
            .iter()
            .map(|t| (*t).clone())
            .collect();
        let score = 1.0 - normalized_levenshtein(&slice, sig);
        if score > best.0 {
            let span = (
                body_tokens[start].1,
                body_tokens[start + window - 1].1,
            );
            best = (score, Some(span));
        }
    }
    (best.0, best.1)
}

/// Token stream of a function body with per-token line numbers.
/// `lines` are the comment-stripped source lines of the whole file;
/// `span` is the function's 1-based inclusive line range.
pub fn body_token_stream(
    lines: &[String],
    span: (usize, usize),
    lang: &LanguageSpec,
) -> Vec<(SigToken, usize)> {
    let mut out = Vec::new();
    for line_no in span.0..=span.1.min(lines.len()) {
        let sig = line_signature(&lines[line_no - 1], lang);
        for tok in sig.tokens {
            out.push((tok, line_no));
        }
    }
    out
}

struct CompiledPattern<'a> {
    spec: &'a PatternSpec,
    name_patterns: Vec<NamePattern>,
}

/// Anchored, case-sensitive subset of regex sufficient for function-name
/// patterns: literal text, '.' (any), '.*', '?', plus '^'/'$' anchors.
/// Unanchored patterns match as substrings.
#[derive(Debug, Clone)]
struct NamePattern {
    raw: String,
}

impl NamePattern {
    fn matches(&self, name: &str) -> bool {
        let mut pat = self.raw.as_str();
        let anchored_start = pat.starts_with('^');
        if anchored_start {
            pat = &pat[1..];
        }
        let anchored_end = pat.ends_with('$') && !pat.ends_with("\\$");
        if anchored_end {
            pat = &pat[..pat.len() - 1];
        }
        let pchars: Vec<char> = pat.chars().collect();
        let nchars: Vec<char> = name.chars().collect();
        fn rx(p: &[char], s: &[char], must_end: bool) -> bool {
            match p.first() {
                None => !must_end || s.is_empty(),
                Some('.') if p.get(1) == Some(&'*') => {
                    (0..=s.len()).any(|k| rx(&p[2..], &s[k..], must_end))
                }
                Some('.') => !s.is_empty() && rx(&p[1..], &s[1..], must_end),
                Some('\\') if p.len() > 1 => {
                    s.first() == p.get(1) && rx(&p[2..], &s[1..], must_end)
                }
                Some(c) => s.first() == Some(c) && rx(&p[1..], &s[1..], must_end),
            }
        }
        if anchored_start {
            rx(&pchars, &nchars, anchored_end)
        } else {
            (0..=nchars.len()).any(|k| rx(&pchars, &nchars[k..], anchored_end))
        }
    }
}

/// Scans a source tree against the patterns. Candidate functions come from
/// files matching a pattern's globs or functions matching its name
/// patterns; an anchor match at threshold gates the verdict. Findings are
/// sorted by (pattern id, path, line) so output is deterministic regardless
/// of scan parallelism.
pub fn scan_repo(
    root: &Path,
    patterns: &[PatternSpec],
    config: &CodesigConfig,
) -> Result<ScanReport, ScanError> {
    let compiled: Vec<CompiledPattern> = patterns
        .iter()
        .map(|spec| CompiledPattern {
            spec,
            name_patterns: spec
                .function_patterns
                .iter()
                .map(|p| NamePattern { raw: p.clone() })
                .collect(),
        })
        .collect();

    let mut files: Vec<(String, std::path::PathBuf)> = Vec::new();
    for entry in walkdir::WalkDir::new(root).sort_by_file_name() {
        let entry = match entry {
            Ok(e) => e,
            Err(_) => continue,
        };
        if !entry.file_type().is_file() {
            continue;
        }
        let rel = entry
            .path()
            .strip_prefix(root)
            .unwrap_or(entry.path())
            .to_string_lossy()
            .replace('\\', "/");
        if config.language_for(&rel).is_some() {
            files.push((rel, entry.path().to_path_buf()));
        }
    }

    let results: Vec<(Vec<ScanFinding>, Vec<String>)> = files
        .par_iter()
        .map(|(rel, abs)| scan_file(rel, abs, &compiled, config))
        .collect();

    let mut report = ScanReport::default();
    for (findings, warnings) in results {
        report.findings.extend(findings);
        report.warnings.extend(warnings);
    }
    report.findings.sort_by(|a, b| {
        (&a.pattern_id, &a.file, a.line_span.0).cmp(&(&b.pattern_id, &b.file, b.line_span.0))
    });
    report.warnings.sort();
    Ok(report)
}

fn scan_file(
    rel: &str,
    abs: &Path,
    patterns: &[CompiledPattern],
    config: &CodesigConfig,
) -> (Vec<ScanFinding>, Vec<String>) {
    let mut findings = Vec::new();
    let mut warnings = Vec::new();
    let Some(lang) = config.language_for(rel) else {
        return (findings, warnings);
    };
    let source = match std::fs::read_to_string(abs) {
        Ok(s) => s,
        Err(e) => {
            warnings.push(format!("skipping unreadable {rel}: {e}"));
            return (findings, warnings);
        }
    };
    let functions = match extract_functions(&source, lang) {
        Ok(f) => f,
        Err(message) => {
            warnings.push(format!("skipping {rel}: {message}"));
            return (findings, warnings);
        }
    };
    let raw_lines: Vec<&str> = source.lines().collect();
    let stripped = strip_comment_lines(&raw_lines, lang);

    for pattern in patterns {
        let file_hit = pattern
            .spec
            .file_globs
            .iter()
            .any(|g| glob_match(g, rel));
        for function in &functions {
            let name_hit = pattern
                .name_patterns
                .iter()
                .any(|p| p.matches(&function.name));
            if !file_hit && !name_hit {
                continue;
            }
            let tokens = body_token_stream(&stripped, function.span, lang);
            let threshold = pattern.spec.match_threshold;
            let (anchor_score, _) = match_signature(&tokens, &pattern.spec.anchor_signature);
            if anchor_score < threshold {
                continue;
            }
            let (patched_score, patched_span) =
                match_signature(&tokens, &pattern.spec.patched_signature);
            let (vuln_score, vuln_span) =
                match_signature(&tokens, &pattern.spec.vulnerable_signature);
            let (verdict, score, span) = if patched_score >= threshold {
                (Verdict::Patched, patched_score, patched_span)
            } else if vuln_score >= threshold {
                (Verdict::Vulnerable, vuln_score, vuln_span)
            } else {
                (Verdict::AnchorOnly, anchor_score, None)
            };
            findings.push(ScanFinding {
                pattern_id: pattern.spec.id.clone(),
                file: rel.to_string(),
                function: function.name.clone(),
                verdict,
                line_span: span.unwrap_or(function.span),
                score,
            });
        }
    }
    (findings, warnings)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfam() -> LanguageSpec {
        LanguageSpec::c_family()
    }

    fn golang() -> LanguageSpec {
        LanguageSpec::go()
    }

    #[test]
    fn extracts_qualified_cpp_method() {
        let src = "bool CBlock::CheckBlock() const {\n    int x = 1;\n    return true;\n}\n";
        let fns = extract_functions(src, &cfam()).unwrap();
        assert_eq!(fns.len(), 1);
        assert_eq!(fns[0].name, "CBlock::CheckBlock");
        assert_eq!(fns[0].span, (1, 4));
    }

    #[test]
    fn extracts_go_method_with_receiver() {
        let src = "func (pool *TxPool) ValidateTransaction(tx *types.Transaction) error {\n\treturn nil\n}\n";
        let fns = extract_functions(src, &golang()).unwrap();
        assert_eq!(fns.len(), 1);
        assert_eq!(fns[0].name, "TxPool.ValidateTransaction");
    }

    #[test]
    fn empty_file_has_no_functions() {
        assert!(extract_functions("", &cfam()).unwrap().is_empty());
    }

    #[test]
    fn prototypes_and_calls_skipped() {
        let src = "bool CheckBlock(int x);\nint y = foo(1);\nvoid Real() {\n}\n";
        let fns = extract_functions(src, &cfam()).unwrap();
        assert_eq!(fns.len(), 1);
        assert_eq!(fns[0].name, "Real");
    }

    #[test]
    fn opening_brace_on_next_line() {
        let src = "bool CChainState::ConnectBlock(const CBlock& block)\n{\n    return true;\n}\n";
        let fns = extract_functions(src, &cfam()).unwrap();
        assert_eq!(fns.len(), 1);
        assert_eq!(fns[0].name, "CChainState::ConnectBlock");
        assert_eq!(fns[0].span, (1, 4));
    }

    #[test]
    fn nested_go_closure_ignored() {
        let src = "func Outer() {\n\tgo func() {\n\t\twork()\n\t}()\n}\nfunc Next() {\n}\n";
        let fns = extract_functions(src, &golang()).unwrap();
        let names: Vec<&str> = fns.iter().map(|f| f.name.as_str()).collect();
        assert_eq!(names, ["Outer", "Next"]);
    }

    #[test]
    fn unbalanced_braces_reported() {
        let src = "void Broken() {\n    if (x) {\n";
        assert!(extract_functions(src, &cfam()).is_err());
    }

    #[test]
    fn glob_semantics() {
        assert!(glob_match("**/validation.cpp", "src/validation.cpp"));
        assert!(glob_match("**/validation.cpp", "validation.cpp"));
        assert!(glob_match("src/*.cpp", "src/main.cpp"));
        assert!(!glob_match("src/*.cpp", "src/wallet/wallet.cpp"));
        assert!(glob_match("**/*block*.go", "core/block_validator.go"));
        assert!(!glob_match("**/*.go", "src/main.cpp"));
    }

    #[test]
    fn name_pattern_semantics() {
        let p = NamePattern {
            raw: "CheckBlock".into(),
        };
        assert!(p.matches("CBlock::CheckBlock"));
        let anchored = NamePattern {
            raw: "^TxPool\\.Validate.*$".into(),
        };
        assert!(anchored.matches("TxPool.ValidateTransaction"));
        assert!(!anchored.matches("XTxPool.ValidateTransaction"));
    }

    #[test]
    fn exact_token_sequence_scores_one() {
        let lang = golang();
        let lines: Vec<String> = vec![
            "func (pool *TxPool) ValidateTransaction(tx *types.Transaction) error {".into(),
            "\tsenderAddr := tx.From()".into(),
            "\tif senderAddr == nil || len(senderAddr) != 20 {".into(),
            "\t\treturn fmt.Errorf(\"invalid sender\")".into(),
            "\t}".into(),
            "}".into(),
        ];
        let tokens = body_token_stream(&lines, (1, 6), &lang);
        let sig: Vec<SigToken> = "From() if NIL || LEN return ERR"
            .parse::<crate::codesig::FragmentSignature>()
            .unwrap()
            .tokens;
        let (score, span) = match_signature(&tokens, &sig);
        assert_eq!(score, 1.0);
        assert_eq!(span, Some((2, 4)));
    }

    #[test]
    fn empty_body_scores_zero() {
        let (score, _) = match_signature(&[], &[SigToken::Nil]);
        assert_eq!(score, 0.0);
    }

    fn write_patterns(json: &str) -> tempfile::NamedTempFile {
        use std::io::Write;
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(json.as_bytes()).unwrap();
        f
    }

    #[test]
    fn empty_patterns_file_loads_empty() {
        let f = write_patterns(r#"{"schema_version":1,"patterns":[]}"#);
        assert!(load_patterns(f.path()).unwrap().is_empty());
    }

    #[test]
    fn empty_signature_rejected() {
        let f = write_patterns(
            r#"{"schema_version":1,"patterns":[{"id":"P1","description":"d",
                "vulnerable_signature":[],"patched_signature":["NIL"]}]}"#,
        );
        let err = load_patterns(f.path()).unwrap_err();
        assert!(err.to_string().contains("empty vulnerable_signature"));
    }

    #[test]
    fn duplicate_pattern_id_rejected() {
        let f = write_patterns(
            r#"{"schema_version":1,"patterns":[
                {"id":"P1","description":"a","vulnerable_signature":["NIL"],"patched_signature":["NIL"]},
                {"id":"P1","description":"b","vulnerable_signature":["NIL"],"patched_signature":["NIL"]}]}"#,
        );
        assert!(matches!(
            load_patterns(f.path()).unwrap_err(),
            ScanError::DuplicateId(_)
        ));
    }
}
