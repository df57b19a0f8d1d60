use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::frame::{Case, Enrichment, Number, SlotKind, VerbFrame};
use super::{RelationEdgeNP, RelationKind};
use crate::lexnet::{LexNet, LookupOptions, WordClass};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClauseError {
    #[error("verb `{0}` has no verb sense in the net")]
    UnknownVerb(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Voice {
    #[default]
    Active,
    Passive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Form {
    NP,
    PP,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Complement {
    pub form: Form,
    #[serde(default)]
    pub case: Case,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prep: Option<String>,
    pub head: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub number: Option<Number>,
    /// Surface text of the whole complement, for display.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
}

impl Complement {
    pub fn np(case: Case, head: &str, number: Option<Number>) -> Self {
        Complement {
            form: Form::NP,
            case,
            prep: None,
            head: head.to_string(),
            number,
            text: None,
        }
    }

    pub fn pp(prep: &str, case: Case, head: &str) -> Self {
        Complement {
            form: Form::PP,
            case,
            prep: Some(prep.to_string()),
            head: head.to_string(),
            number: None,
            text: None,
        }
    }

    pub fn with_text(mut self, text: &str) -> Self {
        self.text = Some(text.to_string());
        self
    }

    pub fn display(&self) -> String {
        match (&self.text, &self.prep) {
            (Some(t), _) => t.clone(),
            (None, Some(p)) => format!("{p} {}", self.head),
            (None, None) => self.head.clone(),
        }
    }

    fn prep_is(&self, candidates: &[&str]) -> bool {
        self.prep
            .as_deref()
            .is_some_and(|p| candidates.iter().any(|c| c.eq_ignore_ascii_case(p)))
    }
}

/// One clause around a single verb, as delivered by an upstream parser.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub verb: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stem: Option<String>,
    #[serde(default)]
    pub voice: Voice,
    #[serde(default)]
    pub complements: Vec<Complement>,
}

/// Slot code to complement index, plus the complements left unassigned.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Assignment {
    pub frame: String,
    pub slots: BTreeMap<String, usize>,
    pub leftover: Vec<usize>,
}

impl Assignment {
    pub fn filler<'c>(&self, clause: &'c Clause, slot: &str) -> Option<&'c Complement> {
        self.slots.get(slot).map(|&i| &clause.complements[i])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum MatchResult {
    Match { assignment: Assignment },
    Ambiguous { alternatives: Vec<Assignment> },
    NoMatch,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("slot {slot} of frame {frame} must be {required:?} while {absent} is unfilled")]
pub struct NumberViolation {
    pub frame: String,
    pub slot: String,
    pub required: Number,
    pub absent: String,
}

fn case_fits(actual: Case, wanted: Case) -> bool {
    actual == Case::Unknown || actual == wanted
}

/// Whether `comp` can realize `slot` at all, before enrichments.
fn form_fits(kind: SlotKind, comp: &Complement, voice: Voice) -> bool {
    let np_case = |case| comp.form == Form::NP && case_fits(comp.case, case);
    match (voice, kind) {
        // passive: the surface subject is the logical object, the agent
        // becomes an optional von-phrase
        (Voice::Passive, SlotKind::Accusative) => np_case(Case::Nom),
        (Voice::Passive, SlotKind::Nominative) => comp.form == Form::PP && comp.prep_is(&["von"]),
        (_, SlotKind::Nominative) => np_case(Case::Nom),
        (_, SlotKind::Accusative) => np_case(Case::Acc),
        (_, SlotKind::Dative) => np_case(Case::Dat),
        (_, SlotKind::Genitive) => np_case(Case::Gen),
        (_, SlotKind::Prepositional | SlotKind::Locative) => comp.form == Form::PP,
        (_, SlotKind::Other) => false,
    }
}

fn enrichment_fits(net: &LexNet, e: &Enrichment, comp: &Complement) -> bool {
    if !e.prepositions.is_empty() {
        let preps: Vec<&str> = e.prepositions.iter().map(String::as_str).collect();
        if !comp.prep_is(&preps) {
            return false;
        }
    }
    if let Some(case) = e.case {
        if !case_fits(comp.case, case) {
            return false;
        }
    }
    if let Some(role) = &e.semantic_role {
        let senses = net.lookup(&comp.head, &LookupOptions::new().class(WordClass::Noun).morph(true));
        if !senses.senses().iter().any(|s| net.is_a(&s.synset, role)) {
            return false;
        }
    }
    true
}

fn slot_accepts(net: &LexNet, clause: &Clause, frame: &VerbFrame, slot: usize, comp: usize) -> bool {
    let s = &frame.slots[slot];
    let c = &clause.complements[comp];
    form_fits(s.kind, c, clause.voice) && frame.enrichment(&s.code).is_none_or(|e| enrichment_fits(net, e, c))
}

/// A required slot; in the passive the agent slot is always optional.
fn slot_required(frame: &VerbFrame, slot: usize, voice: Voice) -> bool {
    let s = &frame.slots[slot];
    !(s.optional || voice == Voice::Passive && s.kind == SlotKind::Nominative)
}

/// Every injective complement-to-slot assignment that fills all required
/// slots and honours form, case, preposition and semantic-role constraints.
/// Number constraints are not applied here.
pub fn enumerate_assignments(net: &LexNet, clause: &Clause, frame: &VerbFrame) -> Vec<Assignment> {
    let n = clause.complements.len();
    let mut out = Vec::new();
    let mut chosen: Vec<Option<usize>> = vec![None; frame.slots.len()];
    let mut used = vec![false; n];

    fn go(
        net: &LexNet,
        clause: &Clause,
        frame: &VerbFrame,
        slot: usize,
        chosen: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        out: &mut Vec<Assignment>,
    ) {
        if slot == frame.slots.len() {
            out.push(Assignment {
                frame: frame.code.clone(),
                slots: chosen
                    .iter()
                    .enumerate()
                    .filter_map(|(s, c)| c.map(|c| (frame.slots[s].code.clone(), c)))
                    .collect(),
                leftover: (0..used.len()).filter(|&i| !used[i]).collect(),
            });
            return;
        }
        for c in 0..used.len() {
            if !used[c] && slot_accepts(net, clause, frame, slot, c) {
                used[c] = true;
                chosen[slot] = Some(c);
                go(net, clause, frame, slot + 1, chosen, used, out);
                chosen[slot] = None;
                used[c] = false;
            }
        }
        if !slot_required(frame, slot, clause.voice) {
            go(net, clause, frame, slot + 1, chosen, used, out);
        }
    }

    go(net, clause, frame, 0, &mut chosen, &mut used, &mut out);
    out.sort();
    out
}

/// Checks conditional number constraints of a matched frame.
pub fn check_number_constraint(
    clause: &Clause,
    frame: &VerbFrame,
    assignment: &Assignment,
) -> Result<(), NumberViolation> {
    for (slot, e) in &frame.enrichments {
        let Some(required) = e.number else { continue };
        let active = e
            .when_absent
            .as_ref()
            .is_none_or(|other| !assignment.slots.contains_key(other));
        if !active {
            continue;
        }
        let actual = assignment.filler(clause, slot).and_then(|c| c.number);
        if actual != Some(required) {
            return Err(NumberViolation {
                frame: frame.code.clone(),
                slot: slot.clone(),
                required,
                absent: e.when_absent.clone().unwrap_or_default(),
            });
        }
    }
    Ok(())
}

/// Matches a clause against candidate frames.
///
/// Assignments that break a number constraint are discarded. Among the
/// rest, only those leaving the fewest complements unassigned are kept,
/// across all frames. One survivor is a match, several are ambiguous.
pub fn match_frame(net: &LexNet, clause: &Clause, frames: &[VerbFrame]) -> MatchResult {
    let mut survivors: Vec<Assignment> = frames
        .iter()
        .flat_map(|f| {
            enumerate_assignments(net, clause, f)
                .into_iter()
                .filter(move |a| check_number_constraint(clause, f, a).is_ok())
        })
        .collect();
    let Some(best) = survivors.iter().map(|a| a.leftover.len()).min() else {
        return MatchResult::NoMatch;
    };
    survivors.retain(|a| a.leftover.len() == best);
    survivors.dedup();
    if survivors.len() == 1 {
        MatchResult::Match {
            assignment: survivors.pop().unwrap(),
        }
    } else {
        MatchResult::Ambiguous {
            alternatives: survivors,
        }
    }
}

/// The verb's lemma: the given stem, else the first verb literal reached
/// through lookup, else the surface.
pub fn clause_verb_lemma(net: &LexNet, clause: &Clause) -> String {
    if let Some(stem) = &clause.stem {
        return stem.clone();
    }
    let found = net.lookup(&clause.verb, &LookupOptions::new().class(WordClass::Verb).morph(true));
    found
        .class(WordClass::Verb)
        .first()
        .map(|c| c.literal.clone())
        .unwrap_or_else(|| clause.verb.clone())
}

/// All frames, with enrichments, of every verb sense of `verb`.
pub fn frames_for_verb(net: &LexNet, verb: &str) -> Result<Vec<VerbFrame>, ClauseError> {
    let found = net.lookup(verb, &LookupOptions::new().class(WordClass::Verb).morph(true));
    if found.is_empty() {
        return Err(ClauseError::UnknownVerb(verb.to_string()));
    }
    let mut frames: Vec<VerbFrame> = Vec::new();
    for cand in found.class(WordClass::Verb) {
        if let Some(s) = net.synset(&cand.synset) {
            for f in &s.frames {
                if !frames.contains(f) {
                    frames.push(f.clone());
                }
            }
        }
    }
    Ok(frames)
}

pub fn analyze_clause(net: &LexNet, clause: &Clause) -> Result<MatchResult, ClauseError> {
    let lemma = clause_verb_lemma(net, clause);
    let frames = frames_for_verb(net, &lemma)?;
    Ok(match_frame(net, clause, &frames))
}

/// Relation edges implied by an assignment: each filled slot whose
/// enrichment names a relation links the verb lemma to the filler's head.
pub fn assignment_relations(
    clause: &Clause,
    verb_lemma: &str,
    frame: &VerbFrame,
    assignment: &Assignment,
) -> Vec<RelationEdgeNP> {
    frame
        .enrichments
        .iter()
        .filter_map(|(slot, e)| {
            let kind: RelationKind = e.relation?;
            let filler = assignment.filler(clause, slot)?;
            Some(RelationEdgeNP::new(kind, verb_lemma, filler.head.clone()))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FillerCount {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preposition: Option<String>,
    pub head: String,
    /// First-level hypernym of the head's first noun sense.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnrichmentReport {
    pub verb: String,
    pub frame: String,
    pub slots: BTreeMap<String, Vec<FillerCount>>,
}

/// Preposition, head and class of an observed filler.
type FillerKey = (Option<String>, String, Option<String>);

/// Tallies the fillers observed for each slot of `frame` over clauses of
/// `verb` that match it. Each clause counts a filler once per slot even when
/// several alternatives put it there.
pub fn learn_frame_enrichment(net: &LexNet, clauses: &[Clause], verb: &str, frame: &VerbFrame) -> EnrichmentReport {
    let mut tally: BTreeMap<String, BTreeMap<FillerKey, usize>> = BTreeMap::new();
    let frames = std::slice::from_ref(frame);
    for clause in clauses {
        if clause_verb_lemma(net, clause) != verb {
            continue;
        }
        let alternatives = match match_frame(net, clause, frames) {
            MatchResult::Match { assignment } => vec![assignment],
            MatchResult::Ambiguous { alternatives } => alternatives,
            MatchResult::NoMatch => continue,
        };
        let mut seen = BTreeSet::new();
        for a in &alternatives {
            for (slot, &i) in &a.slots {
                let c = &clause.complements[i];
                let senses = net.lookup(&c.head, &LookupOptions::new().class(WordClass::Noun).morph(true));
                let first = senses.class(WordClass::Noun).first();
                let head = first.map_or_else(|| c.head.clone(), |s| s.stem.clone());
                let class = first.and_then(|s| {
                    net.hypernyms(&s.synset, 1)
                        .ok()
                        .and_then(|levels| levels.first().and_then(|l| l.first().map(|id| id.to_string())))
                });
                let key = (c.prep.as_ref().map(|p| p.to_lowercase()), head, class);
                if seen.insert((slot.clone(), key.clone())) {
                    *tally.entry(slot.clone()).or_default().entry(key).or_default() += 1;
                }
            }
        }
    }
    let slots = tally
        .into_iter()
        .map(|(slot, fillers)| {
            let mut list: Vec<FillerCount> = fillers
                .into_iter()
                .map(|((preposition, head, class), count)| FillerCount {
                    preposition,
                    head,
                    class,
                    count,
                })
                .collect();
            list.sort_by_key(|f| std::cmp::Reverse(f.count));
            (slot, list)
        })
        .collect();
    EnrichmentReport {
        verb: verb.to_string(),
        frame: frame.code.clone(),
        slots,
    }
}
