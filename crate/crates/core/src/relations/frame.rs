//! Verb frame codes and their per-slot enrichments.
//!
//! A frame code is a dot-separated list of two-character slot codes, e.g.
//! `NN.AN.BL`. A lowercase second character marks the slot as optional
//! (`NN.Pp`). Known slots:
//!
//! | code     | realization                         |
//! |----------|-------------------------------------|
//! | `NN`     | nominative NP                       |
//! | `AN`     | accusative NP                       |
//! | `DN`     | dative NP                           |
//! | `GN`     | genitive NP                         |
//! | `PP`     | prepositional complement            |
//! | `BL`     | locative adverbial, realized as PP  |
//!
//! Any other well-formed code is kept as [`SlotKind::Other`] and cannot be
//! filled by a complement.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::RelationKind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrameError {
    #[error("malformed frame code `{0}`")]
    FrameCode(String),
    #[error("frame `{frame}` has no slot `{slot}`")]
    UnknownSlot { frame: String, slot: String },
    #[error("malformed enrichment: {0}")]
    Enrichment(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SlotKind {
    Nominative,
    Accusative,
    Dative,
    Genitive,
    Prepositional,
    Locative,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameSlot {
    pub code: String,
    pub kind: SlotKind,
    pub optional: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    Nom,
    Acc,
    Dat,
    Gen,
    #[default]
    Unknown,
}

impl Case {
    fn parse(s: &str) -> Option<Option<Case>> {
        Some(match s {
            "nom" => Some(Case::Nom),
            "acc" => Some(Case::Acc),
            "dat" => Some(Case::Dat),
            "gen" => Some(Case::Gen),
            "any" | "unknown" | "" => None,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Number {
    Sg,
    Pl,
}

/// Additional constraints on the filler of one slot.
///
/// Serialized in lexicon files as `key=val[,key=val...]` with keys
/// `semantic_role` (synset id the filler must reach via hypernyms),
/// `preposition` (alternatives separated by `|`), `case` (`nom`, `acc`,
/// `dat`, `gen`, `any`), `number` (`sg`, `pl`), `when_absent` (slot code:
/// the number constraint applies only while that slot is unfilled) and
/// `relation` (relation kind produced for the filler).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Enrichment {
    pub semantic_role: Option<String>,
    pub prepositions: Vec<String>,
    pub case: Option<Case>,
    pub number: Option<Number>,
    pub when_absent: Option<String>,
    pub relation: Option<RelationKind>,
}

impl Enrichment {
    pub fn parse(spec: &str) -> Result<Self, FrameError> {
        let mut e = Enrichment::default();
        for pair in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, val) = pair
                .split_once('=')
                .ok_or_else(|| FrameError::Enrichment(format!("expected key=value, got `{pair}`")))?;
            let val = val.trim();
            match key.trim() {
                "semantic_role" | "role" => e.semantic_role = Some(val.to_string()),
                "preposition" | "prep" => {
                    e.prepositions = val
                        .split('|')
                        .filter(|p| !p.is_empty())
                        .map(str::to_lowercase)
                        .collect()
                }
                "case" => {
                    e.case = Case::parse(val).ok_or_else(|| FrameError::Enrichment(format!("unknown case `{val}`")))?
                }
                "number" => {
                    e.number = Some(match val {
                        "sg" => Number::Sg,
                        "pl" => Number::Pl,
                        _ => return Err(FrameError::Enrichment(format!("unknown number `{val}`"))),
                    })
                }
                "when_absent" => e.when_absent = Some(val.to_string()),
                "relation" => {
                    e.relation = Some(
                        val.parse()
                            .map_err(|_| FrameError::Enrichment(format!("unknown relation `{val}`")))?,
                    )
                }
                other => return Err(FrameError::Enrichment(format!("unknown key `{other}`"))),
            }
        }
        Ok(e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerbFrame {
    pub code: String,
    pub slots: Vec<FrameSlot>,
    /// Keyed by slot code.
    pub enrichments: BTreeMap<String, Enrichment>,
}

impl VerbFrame {
    pub fn parse(code: &str) -> Result<Self, FrameError> {
        Ok(VerbFrame {
            code: code.to_string(),
            slots: parse_frame_code(code)?,
            enrichments: BTreeMap::new(),
        })
    }

    pub fn slot(&self, code: &str) -> Option<&FrameSlot> {
        self.slots.iter().find(|s| s.code == code)
    }

    pub fn enrich(&mut self, slot: &str, enrichment: Enrichment) -> Result<(), FrameError> {
        let unknown = |s: &str| FrameError::UnknownSlot {
            frame: self.code.clone(),
            slot: s.to_string(),
        };
        if self.slot(slot).is_none() {
            return Err(unknown(slot));
        }
        if let Some(other) = &enrichment.when_absent {
            if self.slot(other).is_none() {
                return Err(unknown(other));
            }
        }
        self.enrichments.insert(slot.to_string(), enrichment);
        Ok(())
    }

    pub fn with_enrichment(mut self, slot: &str, enrichment: Enrichment) -> Result<Self, FrameError> {
        self.enrich(slot, enrichment)?;
        Ok(self)
    }

    /// The bare frame as listed in the net, enrichments dropped.
    pub fn without_enrichment(&self) -> Self {
        VerbFrame {
            code: self.code.clone(),
            slots: self.slots.clone(),
            enrichments: BTreeMap::new(),
        }
    }

    pub fn enrichment(&self, slot: &str) -> Option<&Enrichment> {
        self.enrichments.get(slot)
    }
}

impl fmt::Display for VerbFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code)
    }
}

pub fn parse_frame_code(code: &str) -> Result<Vec<FrameSlot>, FrameError> {
    let err = || FrameError::FrameCode(code.to_string());
    if code.is_empty() {
        return Err(err());
    }
    code.split('.')
        .map(|group| {
            let mut chars = group.chars();
            let (Some(first), Some(second), None) = (chars.next(), chars.next(), chars.next()) else {
                return Err(err());
            };
            if !first.is_ascii_uppercase() || !second.is_ascii_alphabetic() {
                return Err(err());
            }
            let kind = match (first, second.to_ascii_uppercase()) {
                ('N', 'N') => SlotKind::Nominative,
                ('A', 'N') => SlotKind::Accusative,
                ('D', 'N') => SlotKind::Dative,
                ('G', 'N') => SlotKind::Genitive,
                ('P', 'P') => SlotKind::Prepositional,
                ('B', 'L') => SlotKind::Locative,
                _ => SlotKind::Other,
            };
            Ok(FrameSlot {
                code: group.to_string(),
                kind,
                optional: second.is_ascii_lowercase(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_frame_codes() {
        let slots = parse_frame_code("NN.AN.BL").unwrap();
        assert_eq!(
            slots.iter().map(|s| (s.code.as_str(), s.optional)).collect::<Vec<_>>(),
            vec![("NN", false), ("AN", false), ("BL", false)]
        );
        assert_eq!(slots[2].kind, SlotKind::Locative);

        let slots = parse_frame_code("NN.Pp").unwrap();
        assert!(!slots[0].optional);
        assert!(slots[1].optional);
        assert_eq!(slots[1].kind, SlotKind::Prepositional);

        assert_eq!(parse_frame_code("NN.BM").unwrap()[1].kind, SlotKind::Other);
    }

    #[test]
    fn rejects_malformed_codes() {
        for bad in ["N", "", "NN.", "NN.ANX", "nn", "N1", "NN..AN"] {
            assert_eq!(parse_frame_code(bad), Err(FrameError::FrameCode(bad.into())), "{bad}");
        }
    }

    #[test]
    fn parses_enrichment() {
        let e = Enrichment::parse("semantic_role=koerperteil,preposition=am|an,case=dat").unwrap();
        assert_eq!(e.semantic_role.as_deref(), Some("koerperteil"));
        assert_eq!(e.prepositions, vec!["am", "an"]);
        assert_eq!(e.case, Some(Case::Dat));

        let e = Enrichment::parse("number=pl,when_absent=Pp").unwrap();
        assert_eq!(e.number, Some(Number::Pl));
        assert_eq!(e.when_absent.as_deref(), Some("Pp"));

        assert_eq!(Enrichment::parse("case=any").unwrap().case, None);
        assert!(Enrichment::parse("colour=red").is_err());
        assert!(Enrichment::parse("case").is_err());
    }

    #[test]
    fn enrichment_must_name_existing_slots() {
        let frame = VerbFrame::parse("NN.Pp").unwrap();
        assert!(frame.clone().with_enrichment("BL", Enrichment::default()).is_err());
        let e = Enrichment::parse("number=pl,when_absent=AN").unwrap();
        assert!(frame.clone().with_enrichment("NN", e).is_err());
    }
}
