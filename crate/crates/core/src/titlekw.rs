//! Issue/PR title cleaning and type-keyword extraction.
//!
//! A vulnerability type is usually the noun phrase sitting between a verb
//! ("fix") and a preposition ("in") in the cleaned title. Cleaning strips
//! module prefixes, bracketed tags, special tokens, and noun-like adjective
//! phrases; extraction picks the target verb by vocabulary frequency and the
//! first preposition after it.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

/// Configuration for title cleaning.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CleanConfig {
    /// Token patterns removed outright; a trailing `*` makes it a prefix
    /// pattern (e.g. "SEC-*"). Matched case-sensitively before lowercasing.
    pub special_token_patterns: Vec<String>,
    /// Noun-like adjective phrases removed from the token stream, e.g.
    /// "possibility of". Matched case-insensitively, repeated to fixpoint.
    pub phrases: Vec<String>,
    /// Token replacements applied last, e.g. tx/txs/txns -> transaction.
    pub synonyms: BTreeMap<String, String>,
}

impl Default for CleanConfig {
    fn default() -> Self {
        let mut synonyms = BTreeMap::new();
        for key in ["tx", "txs", "txns"] {
            synonyms.insert(key.to_string(), "transaction".to_string());
        }
        Self {
            special_token_patterns: vec!["SEC-*".into()],
            phrases: vec!["possibility of".into(), "use of".into()],
            synonyms,
        }
    }
}

/// Why a piece of the raw title was removed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CleanRule {
    ModulePrefix,
    BracketTag,
    SpecialToken,
    Phrase,
    ShortToken,
    Synonym,
}

/// Cleaned title: lowercase word tokens plus an audit list of removals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CleanedTitle {
    pub tokens: Vec<String>,
    pub removals: Vec<(CleanRule, String)>,
}

/// Lowercases and tokenizes arbitrary text with the word tokenizer; the
/// shared tokenization for keyword matching across the pipeline.
pub fn tokenize_text(text: &str) -> Vec<String> {
    word_tokens(&text.to_lowercase())
}

/// Tokenizes into maximal runs of lowercase letters and underscores.
/// Digits and punctuation act as separators and fall away.
fn word_tokens(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for ch in text.chars() {
        if ch.is_ascii_lowercase() || ch == '_' {
            cur.push(ch);
        } else if !cur.is_empty() {
            out.push(std::mem::take(&mut cur));
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

/// Cleans a raw issue/PR title into word tokens.
///
/// Order: module-prefix strip (first ":" within the first 3 whitespace
/// tokens), bracketed-tag removal, special-token removal, lowercasing and
/// tokenization, phrase removal (to fixpoint, so cleaning is idempotent),
/// one-character-token drop, synonym substitution.
pub fn clean_title(raw: &str, config: &CleanConfig) -> CleanedTitle {
    let mut removals = Vec::new();
    let mut text = raw.to_string();

    // Module prefix: strip through the first ':' when it appears within the
    // first three whitespace tokens; mid-sentence colons stay untouched.
    let colon_token = text
        .split_whitespace()
        .take(3)
        .position(|tok| tok.contains(':'));
    if colon_token.is_some() {
        if let Some(pos) = text.find(':') {
            removals.push((CleanRule::ModulePrefix, text[..=pos].trim().to_string()));
            text = text[pos + 1..].to_string();
        }
    }

    // Bracketed tags like "[net]" or "[RELEASE]".
    while let Some(open) = text.find('[') {
        let Some(close_rel) = text[open..].find(']') else {
            break;
        };
        let close = open + close_rel;
        removals.push((CleanRule::BracketTag, text[open..=close].to_string()));
        text.replace_range(open..=close, " ");
    }

    // Special tokens (e.g. "SEC-41" via the "SEC-*" pattern), matched on
    // whitespace tokens before lowercasing.
    let kept: Vec<&str> = text
        .split_whitespace()
        .filter(|tok| {
            let hit = config.special_token_patterns.iter().any(|pat| {
                if let Some(prefix) = pat.strip_suffix('*') {
                    !prefix.is_empty() && tok.starts_with(prefix)
                } else {
                    tok == pat
                }
            });
            if hit {
                removals.push((CleanRule::SpecialToken, tok.to_string()));
            }
            !hit
        })
        .collect();
    let text = kept.join(" ").to_lowercase();

    let mut tokens = word_tokens(&text);

    tokens.retain(|tok| {
        if tok.chars().count() <= 1 {
            removals.push((CleanRule::ShortToken, tok.clone()));
            false
        } else {
            true
        }
    });

    // Phrase removal on the token stream, repeated until nothing matches.
    // Running after the short-token drop keeps cleaning idempotent: dropping
    // a one-character token can make two phrase words adjacent.
    let phrase_tokens: Vec<Vec<String>> = config
        .phrases
        .iter()
        .map(|p| word_tokens(&p.to_lowercase()))
        .filter(|p| !p.is_empty())
        .collect();
    loop {
        let mut hit = None;
        'search: for i in 0..tokens.len() {
            for phrase in &phrase_tokens {
                if tokens[i..].starts_with(phrase) {
                    hit = Some((i, phrase.len(), phrase.join(" ")));
                    break 'search;
                }
            }
        }
        match hit {
            Some((i, len, joined)) => {
                removals.push((CleanRule::Phrase, joined));
                tokens.drain(i..i + len);
            }
            None => break,
        }
    }

    for tok in tokens.iter_mut() {
        if let Some(replacement) = config.synonyms.get(tok) {
            removals.push((CleanRule::Synonym, format!("{tok} -> {replacement}")));
            *tok = replacement.clone();
        }
    }

    CleanedTitle { tokens, removals }
}

/// Seed part-of-speech word lists. Order matters: it breaks ties and ranks
/// words unseen in the data.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosSeed {
    pub verbs: Vec<String>,
    pub prepositions: Vec<String>,
}

impl PosSeed {
    /// A word may not act as both verb and preposition.
    pub fn validate(&self) -> Result<(), String> {
        for word in &self.verbs {
            if self.prepositions.contains(word) {
                return Err(format!("{word:?} is listed as both verb and preposition"));
            }
        }
        Ok(())
    }
}

impl Default for PosSeed {
    fn default() -> Self {
        let verbs = [
            "add", "remove", "fix", "make", "fixed", "set", "avoid", "improve", "handling",
            "added",
            // Extension beyond the ten most frequent; "check" and "leak"
            // stay out because they mostly act as nouns in titles.
            "prevent", "read",
        ];
        let prepositions = [
            "in", "for", "on", "of", "with", "from", "by", "before", "if", "after",
        ];
        Self {
            verbs: verbs.iter().map(|s| s.to_string()).collect(),
            prepositions: prepositions.iter().map(|s| s.to_string()).collect(),
        }
    }
}

/// Frequency-ranked verb and preposition vocabulary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosVocabulary {
    /// (word, rank), rank 1 = most frequent; ranks strictly ordered.
    pub verbs: Vec<(String, usize)>,
    pub prepositions: Vec<(String, usize)>,
}

impl PosVocabulary {
    pub fn verb_rank(&self, word: &str) -> Option<usize> {
        self.verbs
            .iter()
            .find(|(w, _)| w == word)
            .map(|(_, r)| *r)
    }

    pub fn is_preposition(&self, word: &str) -> bool {
        self.prepositions.iter().any(|(w, _)| w == word)
    }
}

/// Counts each seed word's occurrences across the cleaned titles and ranks
/// by descending frequency; words unseen in the data keep their seed order
/// after all seen ones.
pub fn build_pos_vocabulary(titles: &[CleanedTitle], seed: &PosSeed) -> PosVocabulary {
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for title in titles {
        for tok in &title.tokens {
            *counts.entry(tok.as_str()).or_insert(0) += 1;
        }
    }
    let rank_list = |words: &[String]| -> Vec<(String, usize)> {
        let mut indexed: Vec<(usize, &String, usize)> = words
            .iter()
            .enumerate()
            .map(|(i, w)| (i, w, counts.get(w.as_str()).copied().unwrap_or(0)))
            .collect();
        indexed.sort_by(|a, b| b.2.cmp(&a.2).then(a.0.cmp(&b.0)));
        indexed
            .into_iter()
            .enumerate()
            .map(|(rank, (_, w, _))| (w.clone(), rank + 1))
            .collect()
    };
    PosVocabulary {
        verbs: rank_list(&seed.verbs),
        prepositions: rank_list(&seed.prepositions),
    }
}

/// Which extraction rule ended up applying to a title.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectionRule {
    VerbAndPrep,
    VerbOnly,
    PrepOnly,
    NoTarget,
}

/// Target positions inside a cleaned token list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Targets {
    pub verb: Option<usize>,
    pub prep: Option<usize>,
}

/// Locates the target verb and preposition.
///
/// The target verb is the highest-frequency vocabulary verb (ties go to the
/// earliest position). The target preposition is the first vocabulary
/// preposition after the target verb with at least one token in between;
/// with no verb present it is the first preposition overall.
pub fn select_targets(tokens: &[String], vocab: &PosVocabulary) -> Targets {
    let mut verb: Option<(usize, usize)> = None; // (rank, position)
    for (pos, tok) in tokens.iter().enumerate() {
        if let Some(rank) = vocab.verb_rank(tok) {
            if verb.is_none_or(|(best, _)| rank < best) {
                verb = Some((rank, pos));
            }
        }
    }
    let verb_pos = verb.map(|(_, pos)| pos);
    let min_prep_pos = verb_pos.map_or(0, |v| v + 2);
    let prep_pos = tokens
        .iter()
        .enumerate()
        .skip(min_prep_pos)
        .find(|(_, tok)| vocab.is_preposition(tok))
        .map(|(pos, _)| pos);
    Targets {
        verb: verb_pos,
        prep: prep_pos,
    }
}

/// Extracted vulnerability-type keywords for one title.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeKeywords {
    pub keywords: Vec<String>,
    pub target_verb: Option<String>,
    pub target_prep: Option<String>,
    pub rule_fired: SelectionRule,
}

/// Slices the type keywords out of the cleaned tokens: between both targets,
/// after a lone verb, before a lone preposition, or the whole title when no
/// target exists.
pub fn extract_type_keywords(tokens: &[String], targets: Targets) -> TypeKeywords {
    let (range, rule) = match (targets.verb, targets.prep) {
        (Some(v), Some(p)) => ((v + 1)..p, SelectionRule::VerbAndPrep),
        (Some(v), None) => ((v + 1)..tokens.len(), SelectionRule::VerbOnly),
        (None, Some(p)) => (0..p, SelectionRule::PrepOnly),
        (None, None) => (0..tokens.len(), SelectionRule::NoTarget),
    };
    TypeKeywords {
        keywords: tokens[range].to_vec(),
        target_verb: targets.verb.map(|v| tokens[v].clone()),
        target_prep: targets.prep.map(|p| tokens[p].clone()),
        rule_fired: rule,
    }
}

/// Convenience: clean, select, and extract in one call.
pub fn title_keywords(
    raw: &str,
    clean_config: &CleanConfig,
    vocab: &PosVocabulary,
) -> (CleanedTitle, TypeKeywords) {
    let cleaned = clean_title(raw, clean_config);
    let targets = select_targets(&cleaned.tokens, vocab);
    let keywords = extract_type_keywords(&cleaned.tokens, targets);
    (cleaned, keywords)
}
