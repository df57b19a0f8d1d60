//! Coverage, word-class and ambiguity statistics over word types, and the
//! classification of types the net does not cover.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use regex::Regex;
use serde::{Serialize, Serializer};

use crate::compound::{analyze_compound, AffixTable, CompatRules, SplitConfig};
use crate::corpus::{SectionKind, Stoplist};
use crate::lexnet::{ClassSet, LexNet, LookupOptions, SenseCandidateSet, WordClass};
use crate::normalize::{edit_distance, is_capitalized};

/// A non-negative quantity with two decimals, truncated rather than rounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fixed2(u64);

impl Fixed2 {
    pub fn from_hundredths(h: u64) -> Self {
        Fixed2(h)
    }

    /// `truncate(100 * part / whole)`; zero when `whole` is zero.
    pub fn percent(part: usize, whole: usize) -> Self {
        Self::ratio(100 * part as u64, whole as u64)
    }

    /// `truncate(num / den)`; zero when `den` is zero.
    pub fn ratio(num: u64, den: u64) -> Self {
        if den == 0 {
            Fixed2(0)
        } else {
            Fixed2((num as u128 * 100 / den as u128) as u64)
        }
    }

    pub fn hundredths(self) -> u64 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 100.0
    }
}

impl fmt::Display for Fixed2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{:02}", self.0 / 100, self.0 % 100)
    }
}

impl Serialize for Fixed2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.as_f64())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageRow {
    pub section: SectionKind,
    pub types: usize,
    pub matches: usize,
    pub pct: Fixed2,
}

impl CoverageRow {
    pub fn from_counts(section: SectionKind, types: usize, matches: usize) -> Self {
        CoverageRow {
            section,
            types,
            matches,
            pct: Fixed2::percent(matches, types),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ClassCounts {
    #[serde(rename = "N")]
    pub noun: usize,
    #[serde(rename = "V")]
    pub verb: usize,
    #[serde(rename = "ADJ")]
    pub adj: usize,
}

impl ClassCounts {
    pub fn sum(&self) -> usize {
        self.noun + self.verb + self.adj
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassBreakdownRow {
    pub section: SectionKind,
    pub classes: ClassCounts,
}

/// One combination of word classes with both percentage bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Combination {
    pub count: usize,
    pub pct_matches: Fixed2,
    pub pct_ambiguous: Fixed2,
}

impl Combination {
    pub fn new(count: usize, matches: usize, ambiguous: usize) -> Self {
        Combination {
            count,
            pct_matches: Fixed2::percent(count, matches),
            pct_ambiguous: Fixed2::percent(count, ambiguous),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PosAmbiguityRow {
    pub section: SectionKind,
    pub matches: usize,
    pub ambiguous: usize,
    pub pct: Fixed2,
    #[serde(rename = "N+V")]
    pub n_v: Combination,
    #[serde(rename = "N+ADJ")]
    pub n_adj: Combination,
    #[serde(rename = "V+ADJ")]
    pub v_adj: Combination,
    #[serde(rename = "N+V+ADJ")]
    pub n_v_adj: Combination,
}

impl PosAmbiguityRow {
    /// Builds the row from the four exact-combination counts.
    pub fn from_counts(
        section: SectionKind,
        matches: usize,
        n_v: usize,
        n_adj: usize,
        v_adj: usize,
        n_v_adj: usize,
    ) -> Self {
        let ambiguous = n_v + n_adj + v_adj + n_v_adj;
        PosAmbiguityRow {
            section,
            matches,
            ambiguous,
            pct: Fixed2::percent(ambiguous, matches),
            n_v: Combination::new(n_v, matches, ambiguous),
            n_adj: Combination::new(n_adj, matches, ambiguous),
            v_adj: Combination::new(v_adj, matches, ambiguous),
            n_v_adj: Combination::new(n_v_adj, matches, ambiguous),
        }
    }

    pub fn combination_sum(&self) -> usize {
        self.n_v.count + self.n_adj.count + self.v_adj.count + self.n_v_adj.count
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SenseAmbiguityRow {
    pub section: SectionKind,
    /// Matched types with more than one sense in some class.
    pub count: usize,
    pub pct: Fixed2,
    /// Mean senses per matched (type, class) pair, by class.
    pub averages: BTreeMap<WordClass, Fixed2>,
    pub overall: Fixed2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CombinedAmbiguityRow {
    pub section: SectionKind,
    pub count: usize,
    pub pct: Fixed2,
}

const AMBIGUITY_CLASSES: [WordClass; 3] = [WordClass::Noun, WordClass::Verb, WordClass::Adj];

fn content_classes(c: &SenseCandidateSet) -> ClassSet {
    c.classes().intersect(AMBIGUITY_CLASSES.into_iter().collect())
}

/// The lookup results for every type of one section.
#[derive(Debug, Clone)]
pub struct SectionAnalysis {
    pub section: SectionKind,
    pub types: Vec<String>,
    pub results: Vec<SenseCandidateSet>,
}

impl SectionAnalysis {
    pub fn new<'a>(
        net: &LexNet,
        section: SectionKind,
        types: impl IntoIterator<Item = &'a str>,
        opts: &LookupOptions,
    ) -> Self {
        let types: Vec<String> = types.into_iter().map(str::to_string).collect();
        let results = types.iter().map(|t| net.lookup(t, opts)).collect();
        SectionAnalysis {
            section,
            types,
            results,
        }
    }

    fn matched(&self) -> impl Iterator<Item = &SenseCandidateSet> {
        self.results.iter().filter(|r| !r.is_empty())
    }

    pub fn uncovered(&self) -> impl Iterator<Item = &str> {
        self.types
            .iter()
            .zip(&self.results)
            .filter(|(_, r)| r.is_empty())
            .map(|(t, _)| t.as_str())
    }

    pub fn coverage(&self) -> CoverageRow {
        CoverageRow::from_counts(self.section, self.types.len(), self.matched().count())
    }

    /// Every class with a sense is counted, so the sum may exceed the matches.
    pub fn class_breakdown(&self) -> ClassBreakdownRow {
        let mut counts = ClassCounts::default();
        for r in self.matched() {
            let classes = r.classes();
            counts.noun += classes.contains(WordClass::Noun) as usize;
            counts.verb += classes.contains(WordClass::Verb) as usize;
            counts.adj += classes.contains(WordClass::Adj) as usize;
        }
        ClassBreakdownRow {
            section: self.section,
            classes: counts,
        }
    }

    pub fn pos_ambiguity(&self) -> PosAmbiguityRow {
        let (mut nv, mut na, mut va, mut nva) = (0, 0, 0, 0);
        for r in self.matched() {
            let c = content_classes(r);
            let n = c.contains(WordClass::Noun);
            let v = c.contains(WordClass::Verb);
            let a = c.contains(WordClass::Adj);
            match (n, v, a) {
                (true, true, true) => nva += 1,
                (true, true, false) => nv += 1,
                (true, false, true) => na += 1,
                (false, true, true) => va += 1,
                _ => {}
            }
        }
        PosAmbiguityRow::from_counts(self.section, self.matched().count(), nv, na, va, nva)
    }

    pub fn sense_ambiguity(&self) -> SenseAmbiguityRow {
        let mut count = 0;
        let mut per_class: BTreeMap<WordClass, (u64, u64)> = BTreeMap::new();
        for r in self.matched() {
            let mut ambiguous = false;
            for class in r.classes().iter() {
                let n = r.class(class).len() as u64;
                ambiguous |= n > 1;
                let e = per_class.entry(class).or_default();
                e.0 += n;
                e.1 += 1;
            }
            count += ambiguous as usize;
        }
        let (senses, pairs) = per_class.values().fold((0, 0), |(s, p), (s2, p2)| (s + s2, p + p2));
        SenseAmbiguityRow {
            section: self.section,
            count,
            pct: Fixed2::percent(count, self.matched().count()),
            averages: per_class
                .into_iter()
                .map(|(c, (s, p))| (c, Fixed2::ratio(s, p)))
                .collect(),
            overall: Fixed2::ratio(senses, pairs),
        }
    }

    /// Types with senses in two or more classes and several senses in one.
    pub fn combined_ambiguity(&self) -> CombinedAmbiguityRow {
        let count = self
            .matched()
            .filter(|r| {
                let classes = content_classes(r);
                classes.len() >= 2 && classes.iter().any(|c| r.class(c).len() > 1)
            })
            .count();
        CombinedAmbiguityRow {
            section: self.section,
            count,
            pct: Fixed2::percent(count, self.matched().count()),
        }
    }
}

pub fn coverage_row<'a>(
    net: &LexNet,
    types: impl IntoIterator<Item = &'a str>,
    section: SectionKind,
    opts: &LookupOptions,
) -> CoverageRow {
    SectionAnalysis::new(net, section, types, opts).coverage()
}

pub fn class_breakdown<'a>(
    net: &LexNet,
    types: impl IntoIterator<Item = &'a str>,
    section: SectionKind,
    opts: &LookupOptions,
) -> ClassBreakdownRow {
    SectionAnalysis::new(net, section, types, opts).class_breakdown()
}

pub fn pos_ambiguity_stats<'a>(
    net: &LexNet,
    types: impl IntoIterator<Item = &'a str>,
    section: SectionKind,
    opts: &LookupOptions,
) -> PosAmbiguityRow {
    SectionAnalysis::new(net, section, types, opts).pos_ambiguity()
}

pub fn sense_ambiguity_stats<'a>(
    net: &LexNet,
    types: impl IntoIterator<Item = &'a str>,
    section: SectionKind,
    opts: &LookupOptions,
) -> SenseAmbiguityRow {
    SectionAnalysis::new(net, section, types, opts).sense_ambiguity()
}

pub fn combined_ambiguity<'a>(
    net: &LexNet,
    types: impl IntoIterator<Item = &'a str>,
    section: SectionKind,
    opts: &LookupOptions,
) -> CombinedAmbiguityRow {
    SectionAnalysis::new(net, section, types, opts).combined_ambiguity()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum UncoveredClass {
    Measure,
    NamedEntity,
    Truncation,
    Compound,
    Inflected,
    Misspelling,
    Other,
}

impl UncoveredClass {
    pub const ALL: [UncoveredClass; 7] = [
        UncoveredClass::Measure,
        UncoveredClass::NamedEntity,
        UncoveredClass::Truncation,
        UncoveredClass::Compound,
        UncoveredClass::Inflected,
        UncoveredClass::Misspelling,
        UncoveredClass::Other,
    ];
}

impl fmt::Display for UncoveredClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Minimum literal length for a misspelling match.
pub const MISSPELLING_MIN_LEN: usize = 6;
pub const MISSPELLING_MAX_DISTANCE: usize = 2;

/// Everything the uncovered-type classifier consults besides the net.
#[derive(Debug, Clone, Default)]
pub struct UncoveredContext {
    pub gazetteer: Stoplist,
    pub affixes: AffixTable,
    pub rules: CompatRules,
    pub split: SplitConfig,
    pub lookup: LookupOptions,
}

fn measure_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^(?:\d+(?:[.,]\d+)?(?:cm|mm|ml|g|kg|l)?|\d+-\d+)$").unwrap())
}

fn proper_pattern_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(r"^(?:\p{Lu}+\d+\p{L}*|\p{Lu}\p{Ll}+\p{Lu}\p{L}*|\p{Lu}\p{Ll}+(?:-\p{Lu}\p{Ll}+)+)$").unwrap()
    })
}

/// Assigns the first matching class in a fixed order: measure, truncation,
/// named entity, inflected form, compound, misspelling, other.
pub fn classify_uncovered(net: &LexNet, ctx: &UncoveredContext, surface: &str) -> UncoveredClass {
    if measure_re().is_match(surface) {
        return UncoveredClass::Measure;
    }
    if surface.starts_with('-') {
        return UncoveredClass::Truncation;
    }
    if (is_capitalized(surface) && ctx.gazetteer.contains(surface)) || proper_pattern_re().is_match(surface) {
        return UncoveredClass::NamedEntity;
    }
    if !net.lookup(surface, &ctx.lookup.morph(true)).is_empty() {
        return UncoveredClass::Inflected;
    }
    if analyze_compound(net, surface, &ctx.affixes, &ctx.rules, &ctx.split).is_some() {
        return UncoveredClass::Compound;
    }
    let n = surface.chars().count();
    let close = net.literal_surfaces().any(|lit| {
        let len = lit.chars().count();
        len >= MISSPELLING_MIN_LEN
            && len.abs_diff(n) <= MISSPELLING_MAX_DISTANCE
            && edit_distance(surface, lit) <= MISSPELLING_MAX_DISTANCE
    });
    if close {
        return UncoveredClass::Misspelling;
    }
    UncoveredClass::Other
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UncoveredSummary {
    pub counts: BTreeMap<UncoveredClass, usize>,
    pub examples: BTreeMap<UncoveredClass, Vec<String>>,
}

pub fn summarize_uncovered<'a>(
    net: &LexNet,
    ctx: &UncoveredContext,
    surfaces: impl IntoIterator<Item = &'a str>,
    max_examples: usize,
) -> UncoveredSummary {
    let mut counts = BTreeMap::new();
    let mut examples: BTreeMap<UncoveredClass, Vec<String>> = BTreeMap::new();
    let mut seen = HashSet::new();
    for s in surfaces {
        if !seen.insert(s) {
            continue;
        }
        let class = classify_uncovered(net, ctx, s);
        *counts.entry(class).or_insert(0) += 1;
        let ex = examples.entry(class).or_default();
        if ex.len() < max_examples {
            ex.push(s.to_string());
        }
    }
    UncoveredSummary { counts, examples }
}

/// One section of a coverage report; optional parts are filled on request.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SectionReport {
    pub section: SectionKind,
    pub types: usize,
    pub matches: usize,
    pub pct: Fixed2,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<ClassCounts>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pos_ambiguity: Option<PosAmbiguityRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub senses: Option<SenseAmbiguityRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub combined: Option<CombinedAmbiguityRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uncovered: Option<BTreeMap<UncoveredClass, usize>>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReportParts {
    pub by_class: bool,
    pub ambiguity: bool,
    pub uncovered: bool,
}

impl SectionReport {
    pub fn build(analysis: &SectionAnalysis, parts: ReportParts, net: &LexNet, ctx: Option<&UncoveredContext>) -> Self {
        let row = analysis.coverage();
        SectionReport {
            section: row.section,
            types: row.types,
            matches: row.matches,
            pct: row.pct,
            classes: parts.by_class.then(|| analysis.class_breakdown().classes),
            pos_ambiguity: parts.ambiguity.then(|| analysis.pos_ambiguity()),
            senses: parts.ambiguity.then(|| analysis.sense_ambiguity()),
            combined: parts.ambiguity.then(|| analysis.combined_ambiguity()),
            uncovered: match (parts.uncovered, ctx) {
                (true, Some(ctx)) => Some(summarize_uncovered(net, ctx, analysis.uncovered(), 0).counts),
                _ => None,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    pub sections: Vec<SectionReport>,
}

/// Aligns rows into columns: the first left-justified, the rest right.
pub fn render_table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(i, s)| {
                if i == 0 {
                    format!("{s:<w$}", w = widths[i])
                } else {
                    format!("{s:>w$}", w = widths[i])
                }
            })
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

impl CoverageReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Aligned plain-text tables derived from the same data as the JSON.
    pub fn to_table(&self) -> String {
        let mut rows = vec![vec!["section".into(), "types".into(), "match".into(), "pct".into()]];
        for s in &self.sections {
            rows.push(vec![
                s.section.to_string(),
                s.types.to_string(),
                s.matches.to_string(),
                s.pct.to_string(),
            ]);
        }
        let mut out = render_table(&rows);

        if self.sections.iter().any(|s| s.classes.is_some()) {
            let mut rows = vec![vec!["section".into(), "N".into(), "V".into(), "ADJ".into()]];
            for s in &self.sections {
                if let Some(c) = &s.classes {
                    rows.push(vec![
                        s.section.to_string(),
                        c.noun.to_string(),
                        c.verb.to_string(),
                        c.adj.to_string(),
                    ]);
                }
            }
            out.push('\n');
            out.push_str(&render_table(&rows));
        }

        if self.sections.iter().any(|s| s.pos_ambiguity.is_some()) {
            let mut rows = vec![vec![
                "section".into(),
                "classes".into(),
                "N+V".into(),
                "N+ADJ".into(),
                "V+ADJ".into(),
                "N+V+ADJ".into(),
            ]];
            let combo = |c: &Combination| format!("{} ({}; {})", c.count, c.pct_matches, c.pct_ambiguous);
            for s in &self.sections {
                if let Some(p) = &s.pos_ambiguity {
                    rows.push(vec![
                        s.section.to_string(),
                        format!("{} ({})", p.ambiguous, p.pct),
                        combo(&p.n_v),
                        combo(&p.n_adj),
                        combo(&p.v_adj),
                        combo(&p.n_v_adj),
                    ]);
                }
            }
            out.push('\n');
            out.push_str(&render_table(&rows));

            let mut rows = vec![vec![
                "section".into(),
                "senses>1".into(),
                "pct".into(),
                "avg".into(),
                "combined".into(),
            ]];
            for s in &self.sections {
                if let (Some(se), Some(co)) = (&s.senses, &s.combined) {
                    rows.push(vec![
                        s.section.to_string(),
                        se.count.to_string(),
                        se.pct.to_string(),
                        se.overall.to_string(),
                        format!("{} ({})", co.count, co.pct),
                    ]);
                }
            }
            out.push('\n');
            out.push_str(&render_table(&rows));
        }

        if self.sections.iter().any(|s| s.uncovered.is_some()) {
            let mut header = vec!["section".to_string()];
            header.extend(UncoveredClass::ALL.iter().map(|c| c.to_string()));
            let mut rows = vec![header];
            for s in &self.sections {
                if let Some(u) = &s.uncovered {
                    let mut row = vec![s.section.to_string()];
                    row.extend(
                        UncoveredClass::ALL
                            .iter()
                            .map(|c| u.get(c).copied().unwrap_or(0).to_string()),
                    );
                    rows.push(row);
                }
            }
            out.push('\n');
            out.push_str(&render_table(&rows));
        }
        out
    }
}
