//! The lexical-semantic net: synsets, literals, typed relations, semantic
//! fields and verb frames, loaded from the offline LSN-TSV format.
//!
//! A [`LexNet`] is immutable once loaded. Every relation edge resolves, the
//! hypernym graph is acyclic, and hypernym/hyponym and meronym/holonym edges
//! exist in both directions.

mod load;
mod lookup;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::normalize::expand_umlauts;
use crate::relations::VerbFrame;

pub use load::LoadError;
pub use lookup::{LookupOptions, SenseCandidate, SenseCandidateSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WordClass {
    #[serde(rename = "N")]
    Noun,
    #[serde(rename = "V")]
    Verb,
    #[serde(rename = "ADJ")]
    Adj,
    /// Loadable, but no pipeline stage treats adverbs specially.
    #[serde(rename = "ADV")]
    Adv,
}

impl WordClass {
    pub const ALL: [WordClass; 4] = [WordClass::Noun, WordClass::Verb, WordClass::Adj, WordClass::Adv];

    pub fn tag(self) -> &'static str {
        match self {
            WordClass::Noun => "N",
            WordClass::Verb => "V",
            WordClass::Adj => "ADJ",
            WordClass::Adv => "ADV",
        }
    }

    /// Maps a POS tag to a word class, if it names one.
    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "N" => Some(WordClass::Noun),
            "V" => Some(WordClass::Verb),
            "ADJ" => Some(WordClass::Adj),
            "ADV" => Some(WordClass::Adv),
            _ => None,
        }
    }

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

impl fmt::Display for WordClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for WordClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        WordClass::from_tag(s).ok_or_else(|| format!("unknown word class `{s}`"))
    }
}

/// A small set of word classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ClassSet(u8);

impl ClassSet {
    pub const EMPTY: ClassSet = ClassSet(0);
    pub const ALL: ClassSet = ClassSet(0b1111);

    pub fn only(class: WordClass) -> Self {
        ClassSet(class.bit())
    }

    pub fn contains(self, class: WordClass) -> bool {
        self.0 & class.bit() != 0
    }

    pub fn insert(&mut self, class: WordClass) {
        self.0 |= class.bit();
    }

    pub fn remove(&mut self, class: WordClass) {
        self.0 &= !class.bit();
    }

    pub fn intersect(self, other: ClassSet) -> ClassSet {
        ClassSet(self.0 & other.0)
    }

    pub fn without(self, class: WordClass) -> ClassSet {
        ClassSet(self.0 & !class.bit())
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = WordClass> {
        WordClass::ALL.into_iter().filter(move |c| self.contains(*c))
    }
}

impl FromIterator<WordClass> for ClassSet {
    fn from_iter<I: IntoIterator<Item = WordClass>>(iter: I) -> Self {
        let mut set = ClassSet::EMPTY;
        for c in iter {
            set.insert(c);
        }
        set
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid semantic field `{0}`")]
pub struct FieldError(pub String);

/// A coarse topical class such as `nomen.Koerper` or `verb.Lokation`.
///
/// Names are stored in transliterated form (`ä` as `ae`, `ß` as `ss`), so
/// `nomen.Körper` and `nomen.Koerper` are the same field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SemanticField(String);

impl SemanticField {
    pub fn new(name: &str) -> Result<Self, FieldError> {
        let name = name.trim();
        let (prefix, label) = name.split_once('.').ok_or_else(|| FieldError(name.into()))?;
        if label.is_empty() || !matches!(prefix, "nomen" | "verb" | "adj" | "adv") {
            return Err(FieldError(name.into()));
        }
        Ok(SemanticField(expand_umlauts(name)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The word class implied by the `nomen.`/`verb.`/`adj.` prefix.
    pub fn word_class(&self) -> WordClass {
        match self.0.split_once('.').map(|(p, _)| p) {
            Some("nomen") => WordClass::Noun,
            Some("verb") => WordClass::Verb,
            Some("adj") => WordClass::Adj,
            _ => WordClass::Adv,
        }
    }
}

impl TryFrom<String> for SemanticField {
    type Error = FieldError;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        SemanticField::new(&value)
    }
}

impl From<SemanticField> for String {
    fn from(f: SemanticField) -> Self {
        f.0
    }
}

impl fmt::Display for SemanticField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A lexical unit of a synset.
///
/// The marker (`*o`, `?`, ...) is reproduced verbatim in tagger output but is
/// never part of the lookup key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Literal {
    pub surface: String,
    pub marker: Option<String>,
}

impl Literal {
    /// Surface with its marker attached: markers starting with `*` are
    /// appended, all others prepended.
    pub fn rendered(&self) -> String {
        match &self.marker {
            Some(m) if m.starts_with('*') => format!("{}{}", self.surface, m),
            Some(m) => format!("{}{}", m, self.surface),
            None => self.surface.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Synset {
    pub id: String,
    pub word_class: WordClass,
    pub field: SemanticField,
    pub literals: Vec<Literal>,
    pub frames: Vec<VerbFrame>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationType {
    Hypernym,
    Hyponym,
    Meronym,
    Holonym,
}

impl RelationType {
    pub const ALL: [RelationType; 4] = [
        RelationType::Hypernym,
        RelationType::Hyponym,
        RelationType::Meronym,
        RelationType::Holonym,
    ];

    pub fn inverse(self) -> Self {
        match self {
            RelationType::Hypernym => RelationType::Hyponym,
            RelationType::Hyponym => RelationType::Hypernym,
            RelationType::Meronym => RelationType::Holonym,
            RelationType::Holonym => RelationType::Meronym,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RelationType::Hypernym => "hypernym",
            RelationType::Hyponym => "hyponym",
            RelationType::Meronym => "meronym",
            RelationType::Holonym => "holonym",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QueryError {
    #[error("Synset {0} not found")]
    UnknownSynset(String),
    #[error("depth must be at least 1")]
    InvalidDepth,
}

#[derive(Debug)]
pub struct LexNet {
    /// Sorted by id; positions double as internal indices.
    synsets: Vec<Synset>,
    by_id: HashMap<String, usize>,
    /// Adjacency per relation type, inner lists sorted and deduplicated.
    edges: [Vec<Vec<usize>>; 4],
    /// Literal surface (markers stripped) to synset indices, sorted.
    literals: HashMap<String, Vec<usize>>,
    /// Orthographic variant surface to canonical surface.
    variants: HashMap<String, String>,
}

impl LexNet {
    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self, LoadError> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, LoadError> {
        load::parse(text)
    }

    pub fn len(&self) -> usize {
        self.synsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.synsets.is_empty()
    }

    pub fn synset(&self, id: &str) -> Option<&Synset> {
        self.by_id.get(id).map(|&i| &self.synsets[i])
    }

    /// All synsets in id order.
    pub fn synsets(&self) -> impl Iterator<Item = &Synset> {
        self.synsets.iter()
    }

    pub fn literal_count(&self) -> usize {
        self.synsets.iter().map(|s| s.literals.len()).sum()
    }

    pub fn variant_count(&self) -> usize {
        self.variants.len()
    }

    pub fn frame_count(&self) -> usize {
        self.synsets.iter().map(|s| s.frames.len()).sum()
    }

    pub fn edge_count(&self, rel: RelationType) -> usize {
        self.edges[rel as usize].iter().map(Vec::len).sum()
    }

    /// Distinct literal surfaces used as index keys.
    pub fn literal_surfaces(&self) -> impl Iterator<Item = &str> {
        self.literals.keys().map(String::as_str)
    }

    pub fn variants(&self) -> impl Iterator<Item = (&str, &str)> {
        self.variants.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    /// Direct neighbours of `id` along `rel`, in id order.
    pub fn related(&self, id: &str, rel: RelationType) -> Result<Vec<&Synset>, QueryError> {
        let i = self.index_of(id)?;
        Ok(self.edges[rel as usize][i].iter().map(|&j| &self.synsets[j]).collect())
    }

    /// Levels of the hypernym hierarchy above `id`.
    ///
    /// Level k holds every synset at the end of some k-edge hypernym path.
    /// Trailing empty levels are omitted.
    pub fn hypernyms(&self, id: &str, depth: usize) -> Result<Vec<Vec<&str>>, QueryError> {
        if depth == 0 {
            return Err(QueryError::InvalidDepth);
        }
        let start = self.index_of(id)?;
        let hyper = &self.edges[RelationType::Hypernym as usize];
        let mut levels = Vec::new();
        let mut frontier = vec![start];
        for _ in 0..depth {
            let mut next: Vec<usize> = frontier.iter().flat_map(|&i| hyper[i].iter().copied()).collect();
            next.sort_unstable();
            next.dedup();
            if next.is_empty() {
                break;
            }
            levels.push(next.iter().map(|&j| self.synsets[j].id.as_str()).collect());
            frontier = next;
        }
        Ok(levels)
    }

    /// Whether a chain of at most `max_depth` holonym edges leads from
    /// `part` to `whole`.
    pub fn holonym_path_exists(&self, part: &str, whole: &str, max_depth: usize) -> Result<bool, QueryError> {
        if max_depth == 0 {
            return Err(QueryError::InvalidDepth);
        }
        let from = self.index_of(part)?;
        let to = self.index_of(whole)?;
        let holo = &self.edges[RelationType::Holonym as usize];
        let mut seen = vec![false; self.synsets.len()];
        let mut queue = VecDeque::from([(from, 0usize)]);
        seen[from] = true;
        while let Some((i, d)) = queue.pop_front() {
            if d == max_depth {
                continue;
            }
            for &j in &holo[i] {
                if j == to {
                    return Ok(true);
                }
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back((j, d + 1));
                }
            }
        }
        Ok(false)
    }

    /// Whether `class` is `id` itself or one of its transitive hypernyms.
    pub fn is_a(&self, id: &str, class: &str) -> bool {
        let (Some(&from), Some(&to)) = (self.by_id.get(id), self.by_id.get(class)) else {
            return false;
        };
        if from == to {
            return true;
        }
        let hyper = &self.edges[RelationType::Hypernym as usize];
        let mut seen = vec![false; self.synsets.len()];
        let mut stack = vec![from];
        while let Some(i) = stack.pop() {
            for &j in &hyper[i] {
                if j == to {
                    return true;
                }
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        false
    }

    fn index_of(&self, id: &str) -> Result<usize, QueryError> {
        self.by_id
            .get(id)
            .copied()
            .ok_or_else(|| QueryError::UnknownSynset(id.to_string()))
    }
}
