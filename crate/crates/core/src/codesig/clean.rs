//! Hunk cleaning and fragment splitting.
//!
//! Cleaning keeps only meaningful changed lines: comments are stripped
//! (including block comments spanning lines), blank/comment-only/brace-only
//! lines and import-style statements are dropped, and hunks in non-source or
//! test files are discarded wholesale. Context lines survive only as
//! separators so fragment boundaries stay where the diff put them.

use serde::{Deserialize, Serialize};

use crate::corpus::{CommitRecord, Hunk, LineMarker};

use super::{CodeFragment, CodesigConfig, LanguageSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChangeKind {
    Deleted,
    Added,
}

/// A kept changed line: cleaned text plus its 1-based hunk position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CleanedLine {
    pub kind: ChangeKind,
    pub text: String,
    pub hunk_line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CleanedHunkLine {
    /// A context line (or a line dropped from a run boundary's perspective
    /// never matters: separators only split runs of changed lines).
    Separator,
    Changed(CleanedLine),
}

/// Hunk after cleaning; ready for fragment splitting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CleanedHunk {
    pub file_path: String,
    pub header: String,
    pub lines: Vec<CleanedHunkLine>,
}

/// Strips comments from an ordered sequence of lines belonging to one file
/// view, tracking block-comment state across lines. Returns the stripped
/// text per line (empty when the line was entirely comment).
pub fn strip_comment_lines(lines: &[&str], lang: &LanguageSpec) -> Vec<String> {
    let mut in_block: Option<usize> = None;
    lines
        .iter()
        .map(|line| strip_comments_one(line, lang, &mut in_block))
        .collect()
}

fn strip_comments_one(line: &str, lang: &LanguageSpec, in_block: &mut Option<usize>) -> String {
    let mut out = String::with_capacity(line.len());
    let bytes = line.as_bytes();
    let mut i = 0;
    'outer: while i < bytes.len() {
        if let Some(block_idx) = *in_block {
            let close = &lang.block_comments[block_idx].1;
            match line[i..].find(close.as_str()) {
                Some(rel) => {
                    i += rel + close.len();
                    *in_block = None;
                }
                None => break,
            }
            continue;
        }
        let ch = bytes[i] as char;
        if ch == '"' || ch == '\'' || ch == '`' {
            let quote = ch;
            out.push(ch);
            i += 1;
            while i < bytes.len() {
                let c = bytes[i] as char;
                out.push(c);
                if c == '\\' && quote != '`' && i + 1 < bytes.len() {
                    out.push(bytes[i + 1] as char);
                    i += 2;
                    continue;
                }
                i += 1;
                if c == quote {
                    continue 'outer;
                }
            }
            break;
        }
        for lc in &lang.line_comments {
            if line[i..].starts_with(lc.as_str()) {
                break 'outer;
            }
        }
        for (idx, (open, _)) in lang.block_comments.iter().enumerate() {
            if line[i..].starts_with(open.as_str()) {
                *in_block = Some(idx);
                i += open.len();
                continue 'outer;
            }
        }
        // Multibyte characters pass through untouched.
        let ch_len = line[i..].chars().next().map_or(1, char::len_utf8);
        out.push_str(&line[i..i + ch_len]);
        i += ch_len;
    }
    out
}

fn is_brace_only(text: &str) -> bool {
    !text.is_empty() && text.chars().all(|c| "{}();,".contains(c) || c.is_whitespace())
}

fn matches_drop_prefix(text: &str, lang: &LanguageSpec) -> bool {
    lang.drop_prefixes.iter().any(|prefix| {
        if !text.starts_with(prefix.as_str()) {
            return false;
        }
        let boundary_needed = prefix
            .chars()
            .last()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_');
        if !boundary_needed {
            return true;
        }
        match text[prefix.len()..].chars().next() {
            Some(c) => !(c.is_ascii_alphanumeric() || c == '_'),
            None => true,
        }
    })
}

/// Normalizes one kept changed line: trim, strip trailing open braces.
fn normalize_changed(text: &str) -> String {
    let mut t = text.trim();
    while let Some(stripped) = t.strip_suffix('{') {
        t = stripped.trim_end();
    }
    t.to_string()
}

/// Cleans a hunk. Returns `None` when the whole hunk is dropped: file
/// suffix is not a configured source language, or the file is a test file.
pub fn clean_hunk(hunk: &Hunk, config: &CodesigConfig) -> Option<CleanedHunk> {
    let lang = config.language_for(&hunk.file_path)?;
    if config.is_test_path(&hunk.file_path) {
        return None;
    }

    // Two passes, one per file view: deleted lines see the old-file comment
    // state, added lines the new-file state; context lines belong to both.
    let old_view: Vec<(usize, &str)> = hunk
        .lines
        .iter()
        .enumerate()
        .filter(|(_, l)| l.marker != LineMarker::Added)
        .map(|(i, l)| (i, l.text.as_str()))
        .collect();
    let new_view: Vec<(usize, &str)> = hunk
        .lines
        .iter()
        .enumerate()
        .filter(|(_, l)| l.marker != LineMarker::Deleted)
        .map(|(i, l)| (i, l.text.as_str()))
        .collect();
    let mut stripped: Vec<Option<String>> = vec![None; hunk.lines.len()];
    for view in [&old_view, &new_view] {
        let texts: Vec<&str> = view.iter().map(|(_, t)| *t).collect();
        for ((orig_idx, _), text) in view.iter().zip(strip_comment_lines(&texts, lang)) {
            // Context lines may be visited twice; either result is fine
            // because only changed lines carry text forward.
            stripped[*orig_idx] = Some(text);
        }
    }

    let mut lines = Vec::with_capacity(hunk.lines.len());
    for (idx, line) in hunk.lines.iter().enumerate() {
        let kind = match line.marker {
            LineMarker::Context => {
                lines.push(CleanedHunkLine::Separator);
                continue;
            }
            LineMarker::Deleted => ChangeKind::Deleted,
            LineMarker::Added => ChangeKind::Added,
        };
        let text = normalize_changed(stripped[idx].as_deref().unwrap_or(""));
        if text.is_empty() || is_brace_only(&text) || matches_drop_prefix(&text, lang) {
            continue;
        }
        lines.push(CleanedHunkLine::Changed(CleanedLine {
            kind,
            text,
            hunk_line: idx + 1,
        }));
    }
    Some(CleanedHunk {
        file_path: hunk.file_path.clone(),
        header: hunk.header.clone(),
        lines,
    })
}

/// Splits a cleaned hunk into fragments: each maximal run of changed lines
/// uninterrupted by context lines becomes one fragment, in order.
pub fn split_fragments(hunk: &CleanedHunk) -> Vec<CodeFragment> {
    let mut fragments = Vec::new();
    let mut current: Vec<&CleanedLine> = Vec::new();
    let flush = |run: &mut Vec<&CleanedLine>, fragments: &mut Vec<CodeFragment>| {
        if run.is_empty() {
            return;
        }
        let mut fragment = CodeFragment {
            id: format!("f{}", fragments.len() + 1),
            commit_id: String::new(),
            file_path: hunk.file_path.clone(),
            deleted_lines: Vec::new(),
            added_lines: Vec::new(),
            deleted_positions: Vec::new(),
            added_positions: Vec::new(),
        };
        for line in run.drain(..) {
            match line.kind {
                ChangeKind::Deleted => {
                    fragment.deleted_lines.push(line.text.clone());
                    fragment.deleted_positions.push(line.hunk_line);
                }
                ChangeKind::Added => {
                    fragment.added_lines.push(line.text.clone());
                    fragment.added_positions.push(line.hunk_line);
                }
            }
        }
        fragments.push(fragment);
    };
    for line in &hunk.lines {
        match line {
            CleanedHunkLine::Separator => flush(&mut current, &mut fragments),
            CleanedHunkLine::Changed(l) => current.push(l),
        }
    }
    flush(&mut current, &mut fragments);
    fragments
}

/// Cleans and splits every hunk of a commit, assigning stable fragment ids
/// `<commit>:h<hunk#>:f<fragment#>`.
pub fn commit_fragments(commit: &CommitRecord, config: &CodesigConfig) -> Vec<CodeFragment> {
    let mut out = Vec::new();
    for (h_idx, hunk) in commit.hunks.iter().enumerate() {
        let Some(cleaned) = clean_hunk(hunk, config) else {
            continue;
        };
        for (f_idx, mut fragment) in split_fragments(&cleaned).into_iter().enumerate() {
            fragment.id = format!("{}:h{}:f{}", commit.id, h_idx + 1, f_idx + 1);
            fragment.commit_id = commit.id.clone();
            out.push(fragment);
        }
    }
    out
}
