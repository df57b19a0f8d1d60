//! Compound segmentation checked against the net and scored with corpus
//! evidence from words sharing a prefix or suffix.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{is_candidate, Document, Stoplist};
use crate::lexnet::{LexNet, LookupOptions, SemanticField};

/// Linking elements tried at each boundary, the empty link first.
pub const LINKING_ELEMENTS: [&str; 7] = ["", "s", "es", "n", "en", "e", "er"];

/// Words shorter than this contribute no affixes.
pub const MIN_AFFIX_WORD_LEN: usize = 8;
pub const MIN_AFFIX_LEN: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompoundError {
    #[error("line {line}: {reason}")]
    RuleSyntax { line: usize, reason: String },
    #[error("line {line}: undefined label <{label}>")]
    UndefinedLabel { line: usize, label: String },
    #[error("class `{0}` is neither a semantic field nor a synset of the net")]
    UnknownClass(String),
}

/// Prefixes and suffixes shared by corpus word types, with the types that
/// carry them. Keys are lowercase.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AffixTable {
    prefixes: BTreeMap<String, BTreeSet<String>>,
    suffixes: BTreeMap<String, BTreeSet<String>>,
}

impl AffixTable {
    pub fn prefix_count(&self, affix: &str) -> usize {
        self.prefixes.get(&affix.to_lowercase()).map_or(0, BTreeSet::len)
    }

    pub fn suffix_count(&self, affix: &str) -> usize {
        self.suffixes.get(&affix.to_lowercase()).map_or(0, BTreeSet::len)
    }

    pub fn prefix_family(&self, affix: &str) -> impl Iterator<Item = &str> {
        self.prefixes
            .get(&affix.to_lowercase())
            .into_iter()
            .flatten()
            .map(String::as_str)
    }

    pub fn suffix_family(&self, affix: &str) -> impl Iterator<Item = &str> {
        self.suffixes
            .get(&affix.to_lowercase())
            .into_iter()
            .flatten()
            .map(String::as_str)
    }

    pub fn is_empty(&self) -> bool {
        self.prefixes.is_empty() && self.suffixes.is_empty()
    }

    /// Number of distinct prefix and suffix keys.
    pub fn len(&self) -> (usize, usize) {
        (self.prefixes.len(), self.suffixes.len())
    }

    pub fn merge(&mut self, other: AffixTable) {
        for (k, v) in other.prefixes {
            self.prefixes.entry(k).or_default().extend(v);
        }
        for (k, v) in other.suffixes {
            self.suffixes.entry(k).or_default().extend(v);
        }
    }
}

/// Counts, for every type of at least 8 characters, each prefix and suffix
/// of length 4 to `len - 4`.
pub fn build_affix_table<'a>(types: impl IntoIterator<Item = &'a str>) -> AffixTable {
    let mut table = AffixTable::default();
    for t in types {
        let chars: Vec<char> = t.chars().collect();
        let n = chars.len();
        if n < MIN_AFFIX_WORD_LEN {
            continue;
        }
        let lower: Vec<char> = t.to_lowercase().chars().collect();
        if lower.len() != n {
            continue;
        }
        for k in MIN_AFFIX_LEN..=n - MIN_AFFIX_LEN {
            let prefix: String = lower[..k].iter().collect();
            let suffix: String = lower[n - k..].iter().collect();
            table.prefixes.entry(prefix).or_default().insert(t.to_string());
            table.suffixes.entry(suffix).or_default().insert(t.to_string());
        }
    }
    table
}

/// Affix table over the candidate types of every section of `docs`.
pub fn corpus_affix_table(docs: &[Document], stoplist: &Stoplist) -> AffixTable {
    let types: BTreeSet<&str> = docs
        .iter()
        .flat_map(|d| d.tokens())
        .map(|t| t.surface.as_str())
        .filter(|s| is_candidate(s, stoplist))
        .collect();
    build_affix_table(types)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CompoundPart {
    /// The part as written in the word.
    pub segment: String,
    /// The net literal it was validated against.
    pub lexeme: String,
    /// Linking element following the segment; empty for the last part.
    pub link: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompoundSplit {
    pub parts: Vec<CompoundPart>,
    pub score: f64,
}

impl CompoundSplit {
    /// Segments and links concatenated; equals the analysed word.
    pub fn reassemble(&self) -> String {
        self.parts.iter().map(|p| format!("{}{}", p.segment, p.link)).collect()
    }

    pub fn segments(&self) -> Vec<&str> {
        self.parts.iter().map(|p| p.segment.as_str()).collect()
    }
}

impl fmt::Display for CompoundSplit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.parts {
            write!(f, "[{}]{}", p.segment, p.link)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SplitConfig {
    pub min_part: usize,
    pub max_parts: usize,
    /// Added when an adjacent pair of parts satisfies a compatibility rule.
    pub bonus: f64,
    /// Subtracted for every part beyond the second.
    pub penalty: f64,
    /// Splits scoring below this are rejected.
    pub threshold: f64,
}

impl Default for SplitConfig {
    fn default() -> Self {
        SplitConfig {
            min_part: 4,
            max_parts: 3,
            bonus: 5.0,
            penalty: 2.0,
            threshold: 1.0,
        }
    }
}

fn part_options() -> LookupOptions {
    LookupOptions::new().morph(true)
}

/// The literal a segment validates against, if any.
pub fn validate_part(net: &LexNet, segment: &str) -> Option<String> {
    let found = net.lookup(segment, &part_options());
    found.senses().first().map(|c| c.literal.clone())
}

fn char_len(s: &str) -> usize {
    s.chars().count()
}

fn split_at_char(s: &str, k: usize) -> (&str, &str) {
    let byte = s.char_indices().nth(k).map_or(s.len(), |(b, _)| b);
    s.split_at(byte)
}

/// All segmentations into 2 to `max_parts` validated parts of at least
/// `min_part` characters each, optionally joined by linking elements.
pub fn split_candidates(net: &LexNet, word: &str, min_part: usize) -> Vec<CompoundSplit> {
    split_candidates_with(net, word, min_part, SplitConfig::default().max_parts)
}

pub fn split_candidates_with(net: &LexNet, word: &str, min_part: usize, max_parts: usize) -> Vec<CompoundSplit> {
    let min_part = min_part.max(1);
    if char_len(word) < 2 * min_part || max_parts < 2 {
        return Vec::new();
    }
    let mut memo: BTreeMap<String, Option<String>> = BTreeMap::new();
    let mut validate = |seg: &str| -> Option<String> {
        memo.entry(seg.to_string())
            .or_insert_with(|| validate_part(net, seg))
            .clone()
    };
    let mut out: Vec<Vec<CompoundPart>> = Vec::new();
    let mut stack: Vec<CompoundPart> = Vec::new();
    segment(word, min_part, max_parts, &mut validate, &mut stack, &mut out);
    let mut splits: Vec<CompoundSplit> = out
        .into_iter()
        .map(|parts| CompoundSplit { parts, score: 0.0 })
        .collect();
    splits.sort_by(|a, b| a.parts.cmp(&b.parts));
    splits.dedup_by(|a, b| a.parts == b.parts);
    splits
}

fn segment(
    rest: &str,
    min_part: usize,
    parts_left: usize,
    validate: &mut dyn FnMut(&str) -> Option<String>,
    stack: &mut Vec<CompoundPart>,
    out: &mut Vec<Vec<CompoundPart>>,
) {
    let n = char_len(rest);
    for p in min_part..=n.saturating_sub(min_part) {
        let (left, after) = split_at_char(rest, p);
        for link in LINKING_ELEMENTS {
            let Some(right) = after.strip_prefix(link) else {
                continue;
            };
            if char_len(right) < min_part {
                continue;
            }
            let Some(lexeme) = validate(left) else { break };
            stack.push(CompoundPart {
                segment: left.to_string(),
                lexeme,
                link: link.to_string(),
            });
            if let Some(lex) = validate(right) {
                let mut parts = stack.clone();
                parts.push(CompoundPart {
                    segment: right.to_string(),
                    lexeme: lex,
                    link: String::new(),
                });
                out.push(parts);
            }
            if parts_left > 2 {
                segment(right, min_part, parts_left - 1, validate, stack, out);
            }
            stack.pop();
        }
    }
}

/// A class in a compatibility rule: a semantic field (contains a dot) or a
/// synset id matched through hypernym reachability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassRef {
    Field(SemanticField),
    Synset(String),
}

impl ClassRef {
    fn parse(s: &str) -> Result<Self, String> {
        if s.contains('.') {
            if let Ok(f) = SemanticField::new(s) {
                return Ok(ClassRef::Field(f));
            }
        }
        if s.is_empty() || s.contains(char::is_whitespace) {
            return Err(format!("bad class `{s}`"));
        }
        Ok(ClassRef::Synset(s.to_string()))
    }

    pub fn matches(&self, net: &LexNet, synset: &str) -> bool {
        match self {
            ClassRef::Field(f) => net.synset(synset).is_some_and(|s| &s.field == f),
            ClassRef::Synset(id) => net.is_a(synset, id),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatRule {
    pub left: Vec<ClassRef>,
    pub right: Vec<ClassRef>,
}

/// Pairs of classes that may combine in a compound.
///
/// File format, one entry per line, `#` comments:
///
/// ```text
/// organ = organ
/// event = nomen.Geschehen, nomen.Handlung
/// <organ>	<event>
/// organ	nomen.Geschehen
/// ```
///
/// `name = class, ...` declares a label; a tab-separated pair is a rule
/// whose sides are classes or `<label>` references.
#[allow(clippy::tabs_in_doc_comments)]
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CompatRules {
    pub labels: BTreeMap<String, Vec<ClassRef>>,
    pub rules: Vec<CompatRule>,
}

impl CompatRules {
    pub fn parse(text: &str) -> Result<Self, CompoundError> {
        let mut out = CompatRules::default();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let syntax = |reason: String| CompoundError::RuleSyntax { line, reason };
            if let Some((l, r)) = raw.split_once('\t') {
                let left = out.side(l.trim(), line)?;
                let right = out.side(r.trim(), line)?;
                out.rules.push(CompatRule { left, right });
            } else if let Some((name, classes)) = trimmed.split_once('=') {
                let name = name.trim();
                if name.is_empty() {
                    return Err(syntax("empty label name".into()));
                }
                let classes = classes
                    .split(',')
                    .map(|c| ClassRef::parse(c.trim()).map_err(&syntax))
                    .collect::<Result<Vec<_>, _>>()?;
                out.labels.insert(name.to_string(), classes);
            } else {
                return Err(syntax("expected `left<TAB>right` or `label = classes`".into()));
            }
        }
        Ok(out)
    }

    fn side(&self, s: &str, line: usize) -> Result<Vec<ClassRef>, CompoundError> {
        if let Some(label) = s.strip_prefix('<').and_then(|s| s.strip_suffix('>')) {
            return self
                .labels
                .get(label)
                .cloned()
                .ok_or_else(|| CompoundError::UndefinedLabel {
                    line,
                    label: label.to_string(),
                });
        }
        ClassRef::parse(s)
            .map(|c| vec![c])
            .map_err(|reason| CompoundError::RuleSyntax { line, reason })
    }

    /// Every synset class named in a rule must exist in the net.
    pub fn check(&self, net: &LexNet) -> Result<(), CompoundError> {
        for rule in &self.rules {
            for c in rule.left.iter().chain(&rule.right) {
                if let ClassRef::Synset(id) = c {
                    if net.synset(id).is_none() {
                        return Err(CompoundError::UnknownClass(id.clone()));
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether some rule accepts the pair of segments.
    pub fn compatible(&self, net: &LexNet, left: &str, right: &str) -> bool {
        let l = net.lookup(left, &part_options());
        let r = net.lookup(right, &part_options());
        let side_ok = |classes: &[ClassRef], senses: &crate::lexnet::SenseCandidateSet| {
            senses
                .senses()
                .iter()
                .any(|s| classes.iter().any(|c| c.matches(net, &s.synset)))
        };
        self.rules
            .iter()
            .any(|rule| side_ok(&rule.left, &l) && side_ok(&rule.right, &r))
    }
}

/// Whether `remainder` is a lexeme, possibly after removing a linking
/// element at the end facing the shared affix.
fn remainder_validates(net: &LexNet, remainder: &str, link_at_end: bool, min_part: usize) -> bool {
    LINKING_ELEMENTS.iter().any(|link| {
        let core = if link_at_end {
            remainder.strip_suffix(link)
        } else {
            remainder.strip_prefix(link)
        };
        core.is_some_and(|c| char_len(c) >= min_part && validate_part(net, c).is_some())
    })
}

/// Other corpus types ending in `segment` whose remaining front part is a
/// lexeme.
pub fn suffix_evidence(net: &LexNet, affixes: &AffixTable, word: &str, segment: &str, min_part: usize) -> usize {
    let word_lower = word.to_lowercase();
    let seg_len = char_len(segment);
    affixes
        .suffix_family(segment)
        .filter(|t| t.to_lowercase() != word_lower)
        .filter(|t| {
            let (front, _) = split_at_char(t, char_len(t) - seg_len);
            remainder_validates(net, front, true, min_part)
        })
        .count()
}

/// Other corpus types starting with `segment` whose remaining back part is a
/// lexeme.
pub fn prefix_evidence(net: &LexNet, affixes: &AffixTable, word: &str, segment: &str, min_part: usize) -> usize {
    let word_lower = word.to_lowercase();
    let seg_len = char_len(segment);
    affixes
        .prefix_family(segment)
        .filter(|t| t.to_lowercase() != word_lower)
        .filter(|t| {
            let (_, back) = split_at_char(t, seg_len);
            remainder_validates(net, back, false, min_part)
        })
        .count()
}

pub fn score_split(
    net: &LexNet,
    word: &str,
    split: &CompoundSplit,
    affixes: &AffixTable,
    rules: &CompatRules,
    config: &SplitConfig,
) -> f64 {
    let (Some(first), Some(last)) = (split.parts.first(), split.parts.last()) else {
        return 0.0;
    };
    let evidence = prefix_evidence(net, affixes, word, &first.segment, config.min_part)
        + suffix_evidence(net, affixes, word, &last.segment, config.min_part);
    let compat = split
        .parts
        .windows(2)
        .any(|w| rules.compatible(net, &w[0].segment, &w[1].segment));
    let extra = split.parts.len().saturating_sub(2) as f64;
    evidence as f64 + if compat { config.bonus } else { 0.0 } - config.penalty * extra
}

/// Scores all candidates and orders them best first: score, then fewer
/// parts, then longer last part, then the bracketed rendering.
pub fn score_all(
    net: &LexNet,
    word: &str,
    cands: Vec<CompoundSplit>,
    affixes: &AffixTable,
    rules: &CompatRules,
    config: &SplitConfig,
) -> Vec<CompoundSplit> {
    let mut scored: Vec<CompoundSplit> = cands
        .into_iter()
        .map(|mut c| {
            c.score = score_split(net, word, &c, affixes, rules, config);
            c
        })
        .collect();
    scored.sort_by(|a, b| {
        b.score
            .total_cmp(&a.score)
            .then(a.parts.len().cmp(&b.parts.len()))
            .then_with(|| {
                let la = a.parts.last().map_or(0, |p| char_len(&p.segment));
                let lb = b.parts.last().map_or(0, |p| char_len(&p.segment));
                lb.cmp(&la)
            })
            .then_with(|| a.to_string().cmp(&b.to_string()))
    });
    scored
}

/// The best split scoring at least the threshold.
pub fn rank_splits(
    net: &LexNet,
    word: &str,
    cands: Vec<CompoundSplit>,
    affixes: &AffixTable,
    rules: &CompatRules,
    config: &SplitConfig,
) -> Option<CompoundSplit> {
    score_all(net, word, cands, affixes, rules, config)
        .into_iter()
        .next()
        .filter(|best| best.score >= config.threshold)
}

pub fn analyze_compound(
    net: &LexNet,
    word: &str,
    affixes: &AffixTable,
    rules: &CompatRules,
    config: &SplitConfig,
) -> Option<CompoundSplit> {
    let cands = split_candidates_with(net, word, config.min_part, config.max_parts);
    rank_splits(net, word, cands, affixes, rules, config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affix_table_counts_distinct_types() {
        let t = build_affix_table(["Nierentransplantation", "Lebertransplantation", "Lebertransplantation"]);
        assert_eq!(t.suffix_count("transplantation"), 2);
        assert_eq!(t.suffix_count("Transplantation"), 2);
        assert_eq!(t.prefix_count("leber"), 1);
        assert_eq!(t.prefix_count("Leb"), 0);
        assert!(build_affix_table([]).is_empty());
        assert!(build_affix_table(["Herz"]).is_empty());
    }

    #[test]
    fn affix_lengths_respect_bounds() {
        let t = build_affix_table(["abcdefgh"]);
        assert_eq!(t.len(), (1, 1));
        assert_eq!(t.prefix_count("abcd"), 1);
        assert_eq!(t.suffix_count("efgh"), 1);
    }

    #[test]
    fn rules_file() {
        let r = CompatRules::parse(
            "# rules\norgan = organ\nevent = nomen.Geschehen, unfall\n<organ>\t<event>\norgan\tnomen.Zeit\n",
        )
        .unwrap();
        assert_eq!(r.rules.len(), 2);
        assert_eq!(r.rules[0].right.len(), 2);
        assert!(matches!(r.rules[0].right[0], ClassRef::Field(_)));
        assert!(matches!(
            CompatRules::parse("<x>\t<y>\n"),
            Err(CompoundError::UndefinedLabel { line: 1, .. })
        ));
        assert!(CompatRules::parse("just words\n").is_err());
    }

    #[test]
    fn display_and_reassemble() {
        let s = CompoundSplit {
            parts: vec![
                CompoundPart {
                    segment: "Niere".into(),
                    lexeme: "Niere".into(),
                    link: "n".into(),
                },
                CompoundPart {
                    segment: "transplantation".into(),
                    lexeme: "Transplantation".into(),
                    link: String::new(),
                },
            ],
            score: 0.0,
        };
        assert_eq!(s.to_string(), "[Niere]n[transplantation]");
        assert_eq!(s.reassemble(), "Nierentransplantation");
    }
}
