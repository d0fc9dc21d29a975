//! Line signatures and fragment signature assembly.
//!
//! The normalizer is deliberately lexical: no AST, no type resolution.
//! Control-flow keywords and logical operators pass through, the last
//! top-level call names a call statement, and values abstract to
//! NIL/BOL/TXT/NUM with size/error functions mapped to LEN/SIZE/ERR.

use super::levenshtein::char_similarity;
use super::{CodeFragment, FragmentSignature, LanguageSpec, LinePair, LineSignature, SigToken};

/// Placeholder for a masked string literal.
const STRING_SENTINEL: char = '\u{2}';

const CONTROL_KEYWORDS: [(&str, SigToken); 6] = [
    ("if", SigToken::If),
    ("for", SigToken::For),
    ("while", SigToken::While),
    ("return", SigToken::Return),
    ("throw", SigToken::Throw),
    ("defer", SigToken::Defer),
];

const NIL_WORDS: [&str; 4] = ["nil", "null", "none", "nullptr"];
const BOL_WORDS: [&str; 2] = ["true", "false"];

/// Words never treated as the declared/assigned variable of a statement.
const RESERVED_WORDS: [&str; 38] = [
    "auto", "bool", "break", "case", "catch", "char", "class", "const", "continue", "default",
    "delete", "do", "double", "else", "enum", "float", "func", "goto", "int", "long", "namespace",
    "new", "operator", "private", "protected", "public", "short", "signed", "static", "struct",
    "switch", "template", "this", "type", "typename", "union", "unsigned", "var",
];

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Replaces every string/char literal (quotes included) with a sentinel.
fn mask_strings(line: &str) -> String {
    let mut out = String::with_capacity(line.len());
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '"' || c == '\'' || c == '`' {
            out.push(STRING_SENTINEL);
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
        } else {
            out.push(c);
            i += 1;
        }
    }
    out
}

/// Identifier tokens with their char positions.
fn words(text: &str) -> Vec<(usize, String)> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if is_ident_start(chars[i]) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            out.push((start, chars[start..i].iter().collect()));
        } else {
            i += 1;
        }
    }
    out
}

/// Calls whose opening parenthesis sits at bracket depth zero of `text`:
/// (position, name) in order. Nested calls inside argument lists are not
/// reported.
fn top_level_calls(text: &str) -> Vec<(usize, String)> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut depth = 0i32;
    for (i, &c) in chars.iter().enumerate() {
        match c {
            '(' | '[' | '{' => {
                if c == '(' && depth == 0 {
                    if let Some(name) = call_name_before(&chars, i) {
                        out.push((i, name));
                    }
                }
                depth += 1;
            }
            ')' | ']' | '}' => depth -= 1,
            _ => {}
        }
    }
    out
}

/// The identifier immediately before an opening parenthesis (whitespace
/// allowed), unless it is a control keyword.
fn call_name_before(chars: &[char], open: usize) -> Option<String> {
    let mut j = open;
    while j > 0 && chars[j - 1].is_whitespace() {
        j -= 1;
    }
    let end = j;
    while j > 0 && is_ident_char(chars[j - 1]) {
        j -= 1;
    }
    if j == end || !is_ident_start(chars[j]) {
        return None;
    }
    let name: String = chars[j..end].iter().collect();
    let lowered = name.to_lowercase();
    const NOT_CALLS: [&str; 9] = [
        "if", "for", "while", "switch", "return", "throw", "defer", "catch", "else",
    ];
    if NOT_CALLS.contains(&lowered.as_str()) {
        return None;
    }
    Some(name)
}

/// Blanks the interiors of call argument lists (any depth) so operand
/// scanning inside an atom never sees argument sub-expressions.
fn mask_call_args(text: &str) -> String {
    let mut chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        if chars[i] == '(' && call_name_before(&chars, i).is_some() {
            let mut depth = 1;
            let mut j = i + 1;
            while j < chars.len() && depth > 0 {
                match chars[j] {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    _ => {}
                }
                j += 1;
            }
            let close = if depth == 0 { j - 1 } else { j };
            for slot in chars.iter_mut().take(close).skip(i + 1) {
                *slot = ' ';
            }
            i = j;
        } else {
            i += 1;
        }
    }
    chars.into_iter().collect()
}

/// Splits an expression on top-level `||` / `&&`, keeping the operators.
fn split_logical(expr: &str) -> (Vec<String>, Vec<SigToken>) {
    let chars: Vec<char> = expr.chars().collect();
    let mut atoms = Vec::new();
    let mut ops = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut i = 0;
    while i < chars.len() {
        match chars[i] {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            '|' | '&' if depth == 0 && i + 1 < chars.len() && chars[i + 1] == chars[i] => {
                atoms.push(chars[start..i].iter().collect());
                ops.push(if chars[i] == '|' {
                    SigToken::Or
                } else {
                    SigToken::And
                });
                i += 2;
                start = i;
                continue;
            }
            _ => {}
        }
        i += 1;
    }
    atoms.push(chars[start..].iter().collect());
    (atoms, ops)
}

/// Strips wrapping parentheses when they enclose the whole expression.
fn unwrap_parens(expr: &str) -> &str {
    let mut e = expr.trim();
    loop {
        if !e.starts_with('(') || !e.ends_with(')') {
            return e;
        }
        let chars: Vec<char> = e.chars().collect();
        let mut depth = 0i32;
        for (i, &c) in chars.iter().enumerate() {
            match c {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 && i != chars.len() - 1 {
                        return e; // the opening paren closes early
                    }
                }
                _ => {}
            }
        }
        e = e[1..e.len() - 1].trim();
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum OperandRank {
    GenericCall,
    ErrCall,
    SizeCall,
    NilWord,
    BolWord,
    TextLiteral,
    NumberLiteral,
}

fn classify_call(name: &str, lang: &LanguageSpec) -> (OperandRank, SigToken) {
    let unqualified = name;
    if lang.error_functions.iter().any(|f| f == unqualified) {
        (OperandRank::ErrCall, SigToken::Err)
    } else if lang.len_functions.iter().any(|f| f == unqualified) {
        (OperandRank::SizeCall, SigToken::Len)
    } else if lang.size_functions.iter().any(|f| f == unqualified) {
        (OperandRank::SizeCall, SigToken::Size)
    } else {
        (OperandRank::GenericCall, SigToken::Call(unqualified.to_string()))
    }
}

/// Single most specific abstraction among an atom's operands:
/// FunctionName() > ERR > LEN/SIZE > NIL > BOL > TXT > NUM > bare variable
/// (nothing). Atoms that abstract to a bare number are dropped.
fn abstract_atom(atom: &str, lang: &LanguageSpec) -> Option<SigToken> {
    let masked = mask_call_args(atom);
    let mut operands: Vec<(usize, OperandRank, SigToken)> = Vec::new();
    for (pos, name) in top_level_calls_any_depth(&masked) {
        let (rank, tok) = classify_call(&name, lang);
        operands.push((pos, rank, tok));
    }
    for (pos, word) in words(&masked) {
        // Skip call names: their '(' directly follows.
        let after = masked.chars().nth(pos + word.chars().count());
        if after == Some('(') {
            continue;
        }
        let lowered = word.to_lowercase();
        if NIL_WORDS.contains(&lowered.as_str()) {
            operands.push((pos, OperandRank::NilWord, SigToken::Nil));
        } else if BOL_WORDS.contains(&lowered.as_str()) {
            operands.push((pos, OperandRank::BolWord, SigToken::Bol));
        }
    }
    for (pos, c) in masked.char_indices() {
        if c == STRING_SENTINEL {
            operands.push((pos, OperandRank::TextLiteral, SigToken::Txt));
        }
    }
    for (pos, num) in number_tokens(&masked) {
        let _ = num;
        operands.push((pos, OperandRank::NumberLiteral, SigToken::Num));
    }
    let best_rank = operands.iter().map(|(_, r, _)| *r).min()?;
    if best_rank == OperandRank::NumberLiteral {
        log::debug!("dropping bare numeric atom: {atom:?}");
        return None;
    }
    operands
        .into_iter()
        .filter(|(_, r, _)| *r == best_rank)
        .max_by_key(|(pos, _, _)| *pos)
        .map(|(_, _, tok)| tok)
}

/// Calls at any depth; used after argument masking, where every remaining
/// name-adjacent parenthesis is a call.
fn top_level_calls_any_depth(text: &str) -> Vec<(usize, String)> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    for (i, &c) in chars.iter().enumerate() {
        if c == '(' {
            if let Some(name) = call_name_before(&chars, i) {
                out.push((i, name));
            }
        }
    }
    out
}

fn number_tokens(text: &str) -> Vec<(usize, String)> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_ascii_digit() && (i == 0 || !is_ident_char(chars[i - 1])) {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '.') {
                i += 1;
            }
            out.push((start, chars[start..i].iter().collect()));
        } else {
            i += 1;
        }
    }
    out
}

/// Declared/assigned variable of a no-call statement: the last top-level
/// identifier (reserved words skipped) with its attached bracket groups.
fn declared_var(text: &str) -> Option<u8> {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut last: Option<u8> = None;
    while i < chars.len() {
        if is_ident_start(chars[i]) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let mut groups: u8 = 0;
            while i < chars.len() && chars[i] == '[' {
                let mut depth = 1;
                i += 1;
                while i < chars.len() && depth > 0 {
                    match chars[i] {
                        '[' => depth += 1,
                        ']' => depth -= 1,
                        _ => {}
                    }
                    i += 1;
                }
                groups = groups.saturating_add(1);
            }
            let lowered = word.to_lowercase();
            if !RESERVED_WORDS.contains(&lowered.as_str())
                && !NIL_WORDS.contains(&lowered.as_str())
                && !BOL_WORDS.contains(&lowered.as_str())
                && !chars[start].is_ascii_digit()
            {
                last = Some(groups);
            }
        } else {
            i += 1;
        }
    }
    last
}

/// First top-level assignment operator position (`=`, `:=`, `+=`…, but not
/// comparisons).
fn assignment_split(text: &str) -> Option<usize> {
    let chars: Vec<char> = text.chars().collect();
    let mut depth = 0i32;
    for (i, &c) in chars.iter().enumerate() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            '=' if depth == 0 => {
                let prev = if i > 0 { chars[i - 1] } else { ' ' };
                let next = chars.get(i + 1).copied().unwrap_or(' ');
                if !"=!<>".contains(prev) && next != '=' && next != '>' {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

/// Generates the abstract signature of one cleaned code line.
///
/// Unclassifiable lines (lone braces, bare keywords) yield an empty
/// signature and are skipped by the fragment assembler.
pub fn line_signature(line: &str, lang: &LanguageSpec) -> LineSignature {
    let masked = mask_strings(line);
    let mut text = masked.trim();
    while let Some(stripped) = text.strip_suffix('{') {
        text = stripped.trim_end();
    }
    while let Some(stripped) = text.strip_prefix('}') {
        text = stripped.trim_start();
    }
    let text = text.trim_end_matches(';').trim();
    if text.is_empty() {
        return LineSignature::default();
    }

    let control = words(text)
        .into_iter()
        .find_map(|(pos, w)| {
            CONTROL_KEYWORDS
                .iter()
                .find(|(kw, _)| *kw == w)
                .map(|(kw, tok)| (pos, kw.len(), tok.clone()))
        });

    if let Some((pos, kw_len, kw_tok)) = control {
        let char_text: Vec<char> = text.chars().collect();
        let expr: String = char_text[pos + kw_len..].iter().collect();
        let expr = unwrap_parens(expr.trim());
        let mut tokens = vec![kw_tok.clone()];
        match kw_tok {
            SigToken::If | SigToken::For | SigToken::While => {
                let (atoms, ops) = split_logical(expr);
                let mut emitted_any = false;
                for (i, atom) in atoms.iter().enumerate() {
                    if let Some(tok) = abstract_atom(atom, lang) {
                        if emitted_any {
                            tokens.push(ops[i - 1].clone());
                        }
                        tokens.push(tok);
                        emitted_any = true;
                    }
                }
            }
            _ => {
                if let Some(tok) = abstract_atom(expr, lang) {
                    tokens.push(tok);
                }
            }
        }
        return LineSignature { tokens };
    }

    let calls = top_level_calls(text);
    if let Some((_, name)) = calls.last() {
        let (_, tok) = classify_call(name, lang);
        return LineSignature { tokens: vec![tok] };
    }

    let lhs: String = match assignment_split(text) {
        Some(pos) => text.chars().take(pos).collect(),
        None => text.to_string(),
    };
    match declared_var(&lhs) {
        Some(groups) => LineSignature {
            tokens: vec![SigToken::Var(groups)],
        },
        None => LineSignature::default(),
    }
}

/// Greedy similarity pairing of a fragment's changed lines.
///
/// Each deleted line, in order, takes the unmatched added line with the
/// highest character-level similarity, provided it reaches 0.5; ties prefer
/// the earliest added line. The result lists pairs first (in deleted-line
/// order), then unpaired deleted lines, then unpaired added lines, each
/// carrying the best similarity it saw.
pub fn pair_changed_lines(fragment: &CodeFragment) -> Vec<LinePair> {
    let deleted = &fragment.deleted_lines;
    let added = &fragment.added_lines;
    let mut used = vec![false; added.len()];
    let mut pairs = Vec::new();
    let mut unpaired_deleted = Vec::new();
    for (di, dline) in deleted.iter().enumerate() {
        let mut best: Option<(f64, usize)> = None;
        for (ai, aline) in added.iter().enumerate() {
            if used[ai] {
                continue;
            }
            let sim = char_similarity(dline, aline);
            if best.is_none_or(|(bs, _)| sim > bs) {
                best = Some((sim, ai));
            }
        }
        match best {
            Some((sim, ai)) if sim >= 0.5 => {
                used[ai] = true;
                pairs.push(LinePair {
                    deleted: Some(di),
                    added: Some(ai),
                    similarity: sim,
                });
            }
            Some((sim, _)) => unpaired_deleted.push(LinePair {
                deleted: Some(di),
                added: None,
                similarity: sim,
            }),
            None => unpaired_deleted.push(LinePair {
                deleted: Some(di),
                added: None,
                similarity: 0.0,
            }),
        }
    }
    pairs.extend(unpaired_deleted);
    for (ai, aline) in added.iter().enumerate() {
        if used[ai] {
            continue;
        }
        let best = deleted
            .iter()
            .map(|d| char_similarity(d, aline))
            .fold(0.0, f64::max);
        pairs.push(LinePair {
            deleted: None,
            added: Some(ai),
            similarity: best,
        });
    }
    pairs
}

/// Assembles a fragment signature from its line pairs.
///
/// Emission order: pairs by deleted-line position (a pair whose two line
/// signatures are equal collapses to one copy, otherwise the halves join
/// with `==>`), then unpaired deleted lines, then unpaired added lines.
/// Empty line signatures are skipped; a fragment where every line
/// abstracted to nothing comes back flagged `empty`.
pub fn fragment_signature(
    fragment: &CodeFragment,
    pairs: &[LinePair],
    lang: &LanguageSpec,
) -> FragmentSignature {
    let dsigs: Vec<LineSignature> = fragment
        .deleted_lines
        .iter()
        .map(|l| line_signature(l, lang))
        .collect();
    let asigs: Vec<LineSignature> = fragment
        .added_lines
        .iter()
        .map(|l| line_signature(l, lang))
        .collect();

    let mut both: Vec<(usize, usize)> = Vec::new();
    let mut lone_deleted: Vec<usize> = Vec::new();
    let mut lone_added: Vec<usize> = Vec::new();
    for pair in pairs {
        match (pair.deleted, pair.added) {
            (Some(d), Some(a)) => both.push((d, a)),
            (Some(d), None) => lone_deleted.push(d),
            (None, Some(a)) => lone_added.push(a),
            (None, None) => {}
        }
    }
    both.sort_unstable();
    lone_deleted.sort_unstable();
    lone_added.sort_unstable();

    let mut tokens = Vec::new();
    for (d, a) in both {
        let dsig = &dsigs[d];
        let asig = &asigs[a];
        match (dsig.is_empty(), asig.is_empty()) {
            (true, true) => {}
            (true, false) => tokens.extend(asig.tokens.iter().cloned()),
            (false, true) => tokens.extend(dsig.tokens.iter().cloned()),
            (false, false) => {
                if dsig == asig {
                    tokens.extend(dsig.tokens.iter().cloned());
                } else {
                    tokens.extend(dsig.tokens.iter().cloned());
                    tokens.push(SigToken::PairArrow);
                    tokens.extend(asig.tokens.iter().cloned());
                }
            }
        }
    }
    for d in lone_deleted {
        tokens.extend(dsigs[d].tokens.iter().cloned());
    }
    for a in lone_added {
        tokens.extend(asigs[a].tokens.iter().cloned());
    }
    FragmentSignature {
        empty: tokens.is_empty(),
        tokens,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c() -> LanguageSpec {
        LanguageSpec::c_family()
    }

    fn go() -> LanguageSpec {
        LanguageSpec::go()
    }

    fn sig(line: &str, lang: &LanguageSpec) -> String {
        line_signature(line, lang).to_string()
    }

    #[test]
    fn array_declaration_abstracts_to_var_with_brackets() {
        assert_eq!(sig("char ints[cnt][HASH_SIZE];", &c()), "VAR[][]");
        assert_eq!(sig("int x;", &c()), "VAR");
        assert_eq!(sig("x[0] = 5;", &c()), "VAR[]");
        assert_eq!(sig("invalid_walk = invalid_walk->pprev;", &c()), "VAR");
    }

    #[test]
    fn call_statements_keep_last_chain_call() {
        assert_eq!(sig("char *ints = calloc(cnt, HASH_SIZE);", &c()), "calloc()");
        assert_eq!(sig("memset(ints, 0 , sizeof(ints));", &c()), "memset()");
        assert_eq!(sig("assert(ints);", &c()), "assert()");
        assert_eq!(
            sig(
                "sender := pool.{OMIT}.CurrentState().GetAccount(tx.Sender())",
                &go()
            ),
            "GetAccount()"
        );
        assert_eq!(sig("senderAddr := tx.From()", &go()), "From()");
    }

    #[test]
    fn condition_atoms_take_most_specific_operand() {
        assert_eq!(
            sig("if senderAddr == nil || len(senderAddr) != 20 {", &go()),
            "if NIL || LEN"
        );
        assert_eq!(sig("if senderAddr == nil {", &go()), "if NIL");
        assert_eq!(sig("if (uniqueTx.size() != vtx.size())", &c()), "if SIZE");
        assert_eq!(sig("if (sz >= MAX_STANDARD_TX_SIZE)", &c()), "if");
        assert_eq!(sig("while (invalid_walk != failedit) {", &c()), "while");
    }

    #[test]
    fn return_statements_abstract_expression() {
        assert_eq!(sig("return fmt.Errorf(\"invalid sender\")", &go()), "return ERR");
        assert_eq!(sig("return false;", &c()), "return BOL");
        assert_eq!(
            sig(
                "return DoS(100, error(\"CheckBlock() : duplicate transaction\"));",
                &c()
            ),
            "return DoS()"
        );
        assert_eq!(sig("return;", &c()), "return");
        assert_eq!(sig("return 0;", &c()), "return");
    }

    #[test]
    fn size_and_error_functions_map_to_keywords() {
        assert_eq!(sig("sizeof(x);", &c()), "SIZE");
        assert_eq!(sig("n := len(buf)", &go()), "LEN");
        assert_eq!(sig("perror(\"oops\");", &c()), "ERR");
    }

    #[test]
    fn unclassifiable_lines_are_empty() {
        assert!(line_signature("}", &c()).is_empty());
        assert!(line_signature("break;", &c()).is_empty());
        assert!(line_signature("", &c()).is_empty());
    }

    #[test]
    fn go_if_with_init_keeps_call() {
        assert_eq!(
            sig("if gasCap := s.b.RPCGasCap(); gasCap != nil {", &go()),
            "if RPCGasCap()"
        );
    }

    #[test]
    fn strings_never_leak_tokens() {
        assert_eq!(
            sig("log.Warn(\"if nil || len(x) == 0\")", &go()),
            "Warn()"
        );
        assert_eq!(sig("s = \"true\";", &c()), "VAR");
        assert_eq!(sig("printf(\"a \\\" b\");", &c()), "printf()");
    }

    #[test]
    fn assorted_statement_shapes() {
        assert_eq!(sig("defer mu.Unlock()", &go()), "defer Unlock()");
        assert_eq!(sig("throw std::runtime_error(msg);", &c()), "throw runtime_error()");
        assert_eq!(sig("ns::detail::helper(x);", &c()), "helper()");
        assert_eq!(sig("ptr->~CWallet();", &c()), "CWallet()");
        assert_eq!(sig("for (auto& x : v) {", &c()), "for");
        assert_eq!(sig("} else if (len(buf) > 0) {", &go()), "if LEN");
        assert_eq!(sig("x = ok ? a : b;", &c()), "VAR");
        assert_eq!(sig("int a[2][3];", &c()), "VAR[][]");
        assert_eq!(sig("if (a && b.IsNull()) {", &c()), "if IsNull()");
        assert!(line_signature("(", &c()).is_empty());
        assert!(line_signature(");", &c()).is_empty());
        assert_eq!(sig("return boost::none;", &c()), "return NIL");
    }

    #[test]
    fn pairing_prefers_highest_similarity_above_threshold() {
        let fragment = CodeFragment {
            id: "f1".into(),
            commit_id: String::new(),
            file_path: "src/a.c".into(),
            deleted_lines: vec![
                "char ints[cnt][HASH_SIZE];".into(),
                "memset(ints, 0 , sizeof(ints));".into(),
            ],
            added_lines: vec![
                "char *ints = calloc(cnt, HASH_SIZE);".into(),
                "assert(ints);".into(),
            ],
            deleted_positions: vec![2, 3],
            added_positions: vec![4, 5],
        };
        let pairs = pair_changed_lines(&fragment);
        assert_eq!(pairs[0].deleted, Some(0));
        assert_eq!(pairs[0].added, Some(0));
        assert!(pairs[0].similarity >= 0.5);
        // memset and assert stay unpaired: similarity below 0.5.
        let memset = pairs.iter().find(|p| p.deleted == Some(1)).unwrap();
        assert_eq!(memset.added, None);
        assert!(memset.similarity < 0.5);
        let assert_line = pairs.iter().find(|p| p.added == Some(1)).unwrap();
        assert_eq!(assert_line.deleted, None);
    }

    #[test]
    fn equal_pair_signatures_collapse() {
        let fragment = CodeFragment {
            id: "f1".into(),
            commit_id: String::new(),
            file_path: "src/a.c".into(),
            deleted_lines: vec!["cn_fast_hash(hashes[i], 64, ints[j]);".into()],
            added_lines: vec!["cn_fast_hash(hashes[i], 64, ints + j * HASH_SIZE);".into()],
            deleted_positions: vec![8],
            added_positions: vec![9],
        };
        let pairs = pair_changed_lines(&fragment);
        let sig = fragment_signature(&fragment, &pairs, &c());
        assert_eq!(sig.to_string(), "cn_fast_hash()");
        assert!(!sig.empty);
    }

    #[test]
    fn all_empty_lines_flagged() {
        let fragment = CodeFragment {
            id: "f1".into(),
            commit_id: String::new(),
            file_path: "src/a.c".into(),
            deleted_lines: vec![],
            added_lines: vec!["break;".into()],
            deleted_positions: vec![],
            added_positions: vec![1],
        };
        let pairs = pair_changed_lines(&fragment);
        let sig = fragment_signature(&fragment, &pairs, &c());
        assert!(sig.empty);
        assert!(sig.tokens.is_empty());
    }
}
