//! Guessing the kind of an unmarked text section from the semantic fields
//! and word classes of its matched tokens.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{SectionKind, Token};
use crate::disambig::{pos_filter, BACKGROUND_FIELDS, DISCUSSION_FIELDS, FINDINGS_FIELDS};
use crate::lexnet::{LexNet, LookupOptions, SemanticField, WordClass};

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("field {field} is both indicative and contra-indicative for {kind}")]
    Overlap { kind: SectionKind, field: SemanticField },
    #[error("spec has no entry for {0}")]
    MissingKind(SectionKind),
    #[error("range {lo}..{hi} for {what} of {kind} is not within 0..1")]
    BadRange {
        kind: SectionKind,
        what: &'static str,
        lo: f64,
        hi: f64,
    },
    #[error("invalid spec: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot read spec: {0}")]
    Io(#[from] std::io::Error),
}

/// Allowed shares of matched word-class readings, each in `0..=1`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RatioRanges {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noun: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub adj: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verb: Option<[f64; 2]>,
    /// Require at least as many adjective as verb readings.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub adj_ge_verb: bool,
}

impl RatioRanges {
    pub fn fits(&self, shares: &ClassShares) -> bool {
        let within = |r: &Option<[f64; 2]>, v: f64| r.is_none_or(|[lo, hi]| lo <= v && v <= hi);
        within(&self.noun, shares.noun)
            && within(&self.adj, shares.adj)
            && within(&self.verb, shares.verb)
            && (!self.adj_ge_verb || shares.adj >= shares.verb)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct KindSpec {
    pub indicative: Vec<SemanticField>,
    pub contra: Vec<SemanticField>,
    pub ratios: RatioRanges,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SectionProfileSpec {
    pub kinds: BTreeMap<SectionKind, KindSpec>,
}

impl SectionProfileSpec {
    pub fn validate(&self) -> Result<(), SpecError> {
        for kind in [SectionKind::Findings, SectionKind::Background, SectionKind::Discussion] {
            if !self.kinds.contains_key(&kind) {
                return Err(SpecError::MissingKind(kind));
            }
        }
        for (kind, spec) in &self.kinds {
            let indicative: BTreeSet<_> = spec.indicative.iter().collect();
            if let Some(f) = spec.contra.iter().find(|f| indicative.contains(f)) {
                return Err(SpecError::Overlap {
                    kind: *kind,
                    field: f.clone(),
                });
            }
            for (what, range) in [
                ("noun", spec.ratios.noun),
                ("adj", spec.ratios.adj),
                ("verb", spec.ratios.verb),
            ] {
                if let Some([lo, hi]) = range {
                    if !(0.0 <= lo && lo <= hi && hi <= 1.0) {
                        return Err(SpecError::BadRange {
                            kind: *kind,
                            what,
                            lo,
                            hi,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, SpecError> {
        let spec: SectionProfileSpec = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self, SpecError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// The most frequent fields per section as indicative sets; Background
    /// is contra-indicated by `nomen.Körper`, and Findings needs at least as
    /// many adjective as verb readings.
    pub fn default_spec() -> Self {
        let fields = |names: &[&str]| names.iter().map(|n| SemanticField::new(n).unwrap()).collect();
        SectionProfileSpec {
            kinds: BTreeMap::from([
                (
                    SectionKind::Findings,
                    KindSpec {
                        indicative: fields(FINDINGS_FIELDS),
                        contra: Vec::new(),
                        ratios: RatioRanges {
                            adj_ge_verb: true,
                            ..RatioRanges::default()
                        },
                    },
                ),
                (
                    SectionKind::Background,
                    KindSpec {
                        indicative: fields(BACKGROUND_FIELDS),
                        contra: fields(&["nomen.Körper"]),
                        ratios: RatioRanges::default(),
                    },
                ),
                (
                    SectionKind::Discussion,
                    KindSpec {
                        indicative: fields(DISCUSSION_FIELDS),
                        contra: Vec::new(),
                        ratios: RatioRanges::default(),
                    },
                ),
            ]),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct ClassShares {
    pub noun: f64,
    pub adj: f64,
    pub verb: f64,
}

/// Observed field and word-class counts over the matched tokens of a text.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SectionEvidence {
    pub matched_tokens: usize,
    pub fields: BTreeMap<SemanticField, f64>,
    pub classes: BTreeMap<WordClass, f64>,
}

impl SectionEvidence {
    pub fn collect(net: &LexNet, tokens: &[Token], opts: &LookupOptions) -> Self {
        let mut ev = SectionEvidence::default();
        for t in tokens {
            let found = net.lookup(t.lemma(), &opts.sentence_initial(t.sentence_initial));
            let kept = pos_filter(&found, t.pos.as_deref(), t.sentence_initial, SectionKind::Other);
            if kept.is_empty() {
                continue;
            }
            ev.matched_tokens += 1;
            for c in kept.classes().iter() {
                *ev.classes.entry(c).or_default() += 1.0;
            }
            for s in kept.senses() {
                if let Some(syn) = net.synset(&s.synset) {
                    *ev.fields.entry(syn.field.clone()).or_default() += 1.0;
                }
            }
        }
        ev
    }

    pub fn scaled(&self, factor: f64) -> Self {
        SectionEvidence {
            matched_tokens: self.matched_tokens,
            fields: self.fields.iter().map(|(k, v)| (k.clone(), v * factor)).collect(),
            classes: self.classes.iter().map(|(k, v)| (*k, v * factor)).collect(),
        }
    }

    pub fn proportion(&self, field: &SemanticField) -> f64 {
        let total: f64 = self.fields.values().sum();
        if total > 0.0 {
            self.fields.get(field).copied().unwrap_or(0.0) / total
        } else {
            0.0
        }
    }

    pub fn shares(&self) -> ClassShares {
        let get = |c| self.classes.get(&c).copied().unwrap_or(0.0);
        let (n, a, v) = (get(WordClass::Noun), get(WordClass::Adj), get(WordClass::Verb));
        let total = n + a + v;
        if total > 0.0 {
            ClassShares {
                noun: n / total,
                adj: a / total,
                verb: v / total,
            }
        } else {
            ClassShares::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    /// `None` means the text could not be attributed.
    pub kind: Option<SectionKind>,
    pub scores: BTreeMap<SectionKind, f64>,
    pub matched_tokens: usize,
}

impl Classification {
    pub fn label(&self) -> String {
        self.kind.map_or_else(|| "Unknown".to_string(), |k| k.to_string())
    }
}

/// Scores each kind as indicative minus contra-indicative field share, plus
/// one when the word-class shares fit its ranges. A unique positive maximum
/// decides; anything else is unknown.
pub fn classify_evidence(ev: &SectionEvidence, spec: &SectionProfileSpec) -> Classification {
    let mut scores = BTreeMap::new();
    if ev.matched_tokens > 0 {
        let shares = ev.shares();
        for (kind, ks) in &spec.kinds {
            let plus: f64 = ks.indicative.iter().map(|f| ev.proportion(f)).sum();
            let minus: f64 = ks.contra.iter().map(|f| ev.proportion(f)).sum();
            let ratio = if ks.ratios.fits(&shares) { 1.0 } else { 0.0 };
            scores.insert(*kind, plus - minus + ratio);
        }
    }
    let best = scores.values().copied().fold(f64::NEG_INFINITY, f64::max);
    let leaders: Vec<SectionKind> = scores
        .iter()
        .filter(|(_, s)| (**s - best).abs() <= 1e-9)
        .map(|(k, _)| *k)
        .collect();
    let kind = (best > 0.0 && leaders.len() == 1).then(|| leaders[0]);
    Classification {
        kind,
        scores,
        matched_tokens: ev.matched_tokens,
    }
}

pub fn classify_section(
    net: &LexNet,
    tokens: &[Token],
    spec: &SectionProfileSpec,
    opts: &LookupOptions,
) -> Classification {
    classify_evidence(&SectionEvidence::collect(net, tokens, opts), spec)
}
