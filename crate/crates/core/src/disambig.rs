//! Word-class filtering and section-dependent sense preferences.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{section_types, Document, SectionKind, Stoplist};
use crate::lexnet::{ClassSet, LexNet, LookupOptions, SemanticField, SenseCandidate, SenseCandidateSet, WordClass};
use crate::normalize::is_capitalized;

#[derive(Debug, Error)]
pub enum DisambigError {
    #[error("corpus has no sections to learn from")]
    EmptyCorpus,
    #[error("invalid profile: {0}")]
    Profile(#[from] serde_json::Error),
    #[error("cannot read profile: {0}")]
    Io(#[from] std::io::Error),
}

/// Narrows candidates by tag, capitalization and section.
///
/// A content tag (`N`, `V`, `ADJ`, `ADV`) keeps only that class. Without
/// one, a capitalized word that does not start a sentence keeps only its
/// noun senses if it has any, and a lowercase word loses its noun senses if
/// it has others. In Findings an adjective reading beats a verb reading.
pub fn pos_filter(
    cands: &SenseCandidateSet,
    pos_tag: Option<&str>,
    sentence_initial: bool,
    section: SectionKind,
) -> SenseCandidateSet {
    let present = cands.classes();
    let mut keep = present;
    if let Some(class) = pos_tag.and_then(WordClass::from_tag) {
        keep = present.intersect(ClassSet::only(class));
    } else if !sentence_initial {
        let has_noun = present.contains(WordClass::Noun);
        if is_capitalized(&cands.surface) {
            if has_noun {
                keep = ClassSet::only(WordClass::Noun);
            }
        } else if has_noun && present.len() > 1 {
            keep = present.without(WordClass::Noun);
        }
    }
    if section == SectionKind::Findings && keep.contains(WordClass::Adj) && keep.contains(WordClass::Verb) {
        keep = keep.without(WordClass::Verb);
    }
    cands.restrict(keep)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Learned,
    #[default]
    Configured,
}

/// Per-section weights of semantic fields. Only the order of weights within
/// a section matters.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct FieldProfile {
    #[serde(default)]
    pub provenance: Provenance,
    pub sections: BTreeMap<SectionKind, BTreeMap<SemanticField, f64>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ProfileFile {
    Full(FieldProfile),
    Bare(BTreeMap<SectionKind, BTreeMap<SemanticField, f64>>),
}

impl FieldProfile {
    /// Reads either the full form written by [`FieldProfile::to_json`] or a
    /// bare `{section: {field: weight}}` map, which is taken as configured.
    pub fn from_json(text: &str) -> Result<Self, DisambigError> {
        let profile = match serde_json::from_str::<ProfileFile>(text)? {
            ProfileFile::Full(p) => p,
            ProfileFile::Bare(sections) => FieldProfile {
                provenance: Provenance::Configured,
                sections,
            },
        };
        for weights in profile.sections.values() {
            if let Some((f, w)) = weights.iter().find(|(_, w)| !(w.is_finite() && **w >= 0.0)) {
                return Err(DisambigError::Profile(serde::de::Error::custom(format!(
                    "weight {w} of {f} is not a non-negative number"
                ))));
            }
        }
        Ok(profile)
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self, DisambigError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("profile serializes")
    }

    pub fn weight(&self, section: SectionKind, field: &SemanticField) -> f64 {
        self.sections
            .get(&section)
            .and_then(|m| m.get(field))
            .copied()
            .unwrap_or(0.0)
    }

    /// The same profile with every weight multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> FieldProfile {
        FieldProfile {
            provenance: self.provenance,
            sections: self
                .sections
                .iter()
                .map(|(k, m)| (*k, m.iter().map(|(f, w)| (f.clone(), w * factor)).collect()))
                .collect(),
        }
    }

    /// The most frequent fields of each section, all at weight 1.
    pub fn default_profile() -> FieldProfile {
        let fields = |names: &[&str]| {
            names
                .iter()
                .map(|n| (SemanticField::new(n).expect("valid field"), 1.0))
                .collect::<BTreeMap<_, _>>()
        };
        FieldProfile {
            provenance: Provenance::Configured,
            sections: BTreeMap::from([
                (SectionKind::Findings, fields(FINDINGS_FIELDS)),
                (SectionKind::Background, fields(BACKGROUND_FIELDS)),
                (SectionKind::Discussion, fields(DISCUSSION_FIELDS)),
            ]),
        }
    }
}

pub const FINDINGS_FIELDS: &[&str] = &[
    "nomen.Körper",
    "verb.Lokation",
    "verb.Veränderung",
    "adj.Körper",
    "adj.Perzeption",
];
pub const BACKGROUND_FIELDS: &[&str] = &["nomen.Geschehen", "adj.Zeit", "adj.Lokation"];
pub const DISCUSSION_FIELDS: &[&str] = &[
    "nomen.Geschehen",
    "nomen.Körper",
    "verb.Lokation",
    "verb.Veränderung",
    "adj.Relation",
];

/// Counts, per section, the (matched type, sense) pairs of each field.
pub fn learn_profile(
    net: &LexNet,
    docs: &[Document],
    stoplist: &Stoplist,
    opts: &LookupOptions,
) -> Result<FieldProfile, DisambigError> {
    if docs.iter().all(|d| d.sections.is_empty()) {
        return Err(DisambigError::EmptyCorpus);
    }
    let mut sections = BTreeMap::new();
    for (kind, types) in section_types(docs, stoplist) {
        let mut weights: BTreeMap<SemanticField, f64> = BTreeMap::new();
        for t in &types {
            for sense in net.lookup(t, opts).senses() {
                if let Some(s) = net.synset(&sense.synset) {
                    *weights.entry(s.field.clone()).or_default() += 1.0;
                }
            }
        }
        sections.insert(kind, weights);
    }
    Ok(FieldProfile {
        provenance: Provenance::Learned,
        sections,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedSense {
    pub candidate: SenseCandidate,
    pub field: SemanticField,
    pub weight: f64,
}

/// All senses, highest section weight first, ties broken by synset id.
pub fn resolve_sense(
    net: &LexNet,
    cands: &SenseCandidateSet,
    profile: &FieldProfile,
    section: SectionKind,
) -> Vec<RankedSense> {
    let mut ranked: Vec<RankedSense> = cands
        .senses()
        .into_iter()
        .filter_map(|c| {
            let field = net.synset(&c.synset)?.field.clone();
            Some(RankedSense {
                weight: profile.weight(section, &field),
                candidate: c.clone(),
                field,
            })
        })
        .collect();
    ranked.sort_by(|a, b| {
        b.weight
            .total_cmp(&a.weight)
            .then_with(|| a.candidate.synset.cmp(&b.candidate.synset))
    });
    ranked
}
