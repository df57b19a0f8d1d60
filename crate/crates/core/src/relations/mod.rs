//! Relations between tokens: noun-phrase structure (prop, gen-attribute and
//! its part-of refinement) and verb-frame assignment for clauses.

mod clause;
mod frame;
mod np;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use clause::{
    analyze_clause, assignment_relations, check_number_constraint, clause_verb_lemma, enumerate_assignments,
    frames_for_verb, learn_frame_enrichment, match_frame, Assignment, Clause, ClauseError, Complement,
    EnrichmentReport, FillerCount, Form, MatchResult, NumberViolation, Voice,
};
pub use frame::{parse_frame_code, Case, Enrichment, FrameError, FrameSlot, Number, SlotKind, VerbFrame};
pub use np::{annotate_phrase, parse_np, refine_all, refine_gen_attribute, NPGrammarError, DEFAULT_REFINE_DEPTH};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationKind {
    Prop,
    GenAttribute,
    PartOf,
    Part,
    Patient,
    Location,
}

impl RelationKind {
    pub fn name(self) -> &'static str {
        match self {
            RelationKind::Prop => "prop",
            RelationKind::GenAttribute => "gen-attribute",
            RelationKind::PartOf => "part-of",
            RelationKind::Part => "part",
            RelationKind::Patient => "patient",
            RelationKind::Location => "location",
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [
            RelationKind::Prop,
            RelationKind::GenAttribute,
            RelationKind::PartOf,
            RelationKind::Part,
            RelationKind::Patient,
            RelationKind::Location,
        ]
        .into_iter()
        .find(|k| k.name() == s)
        .ok_or_else(|| format!("unknown relation kind `{s}`"))
    }
}

/// A labelled edge between two lemmas, e.g. `prop(dunkelrot, Unterblutung)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RelationEdgeNP {
    pub kind: RelationKind,
    pub head: String,
    pub dependent: String,
}

impl RelationEdgeNP {
    pub fn new(kind: RelationKind, head: impl Into<String>, dependent: impl Into<String>) -> Self {
        RelationEdgeNP {
            kind,
            head: head.into(),
            dependent: dependent.into(),
        }
    }
}

impl fmt::Display for RelationEdgeNP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}, {})", self.kind, self.head, self.dependent)
    }
}
