use std::collections::BTreeMap;

use serde::Serialize;

use super::{ClassSet, LexNet, WordClass};
use crate::normalize::{capitalize, decapitalize, deexpand_umlauts, strip_inflection};

/// How a surface form is matched against the literal index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LookupOptions {
    /// Restrict results to these classes.
    pub classes: Option<ClassSet>,
    /// Fall back to inflection-stripped stems when the surface has no entry.
    pub morph: bool,
    /// Try `ae`/`oe`/`ue` sites as umlauts.
    pub umlauts: bool,
    /// Also try the lowercased surface.
    pub sentence_initial: bool,
}

impl Default for LookupOptions {
    fn default() -> Self {
        LookupOptions {
            classes: None,
            morph: false,
            umlauts: true,
            sentence_initial: false,
        }
    }
}

impl LookupOptions {
    pub fn new() -> Self {
        Self::default()
    }

    /// Exact literals and declared variants only.
    pub fn plain() -> Self {
        LookupOptions {
            umlauts: false,
            ..Self::default()
        }
    }

    pub fn classes(mut self, classes: ClassSet) -> Self {
        self.classes = Some(classes);
        self
    }

    pub fn class(self, class: WordClass) -> Self {
        self.classes(ClassSet::only(class))
    }

    pub fn morph(mut self, on: bool) -> Self {
        self.morph = on;
        self
    }

    pub fn umlauts(mut self, on: bool) -> Self {
        self.umlauts = on;
        self
    }

    pub fn sentence_initial(mut self, on: bool) -> Self {
        self.sentence_initial = on;
        self
    }
}

/// One matched sense.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SenseCandidate {
    pub synset: String,
    pub class: WordClass,
    /// The form that matched, in the query's spelling (after stem stripping).
    pub stem: String,
    /// The literal or variant key it matched in the net.
    pub literal: String,
}

/// The senses found for one surface form, grouped by word class.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SenseCandidateSet {
    pub surface: String,
    by_class: BTreeMap<WordClass, Vec<SenseCandidate>>,
}

impl SenseCandidateSet {
    pub fn new(surface: impl Into<String>) -> Self {
        SenseCandidateSet {
            surface: surface.into(),
            by_class: BTreeMap::new(),
        }
    }

    /// Adds a candidate unless its synset is already present in that class.
    pub fn insert(&mut self, cand: SenseCandidate) -> bool {
        let list = self.by_class.entry(cand.class).or_default();
        match list.binary_search_by(|c| c.synset.cmp(&cand.synset)) {
            Ok(_) => false,
            Err(pos) => {
                list.insert(pos, cand);
                true
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.by_class.values().all(Vec::is_empty)
    }

    pub fn len(&self) -> usize {
        self.by_class.values().map(Vec::len).sum()
    }

    pub fn classes(&self) -> ClassSet {
        self.by_class
            .iter()
            .filter(|(_, v)| !v.is_empty())
            .map(|(c, _)| *c)
            .collect()
    }

    pub fn class(&self, class: WordClass) -> &[SenseCandidate] {
        self.by_class.get(&class).map(Vec::as_slice).unwrap_or(&[])
    }

    /// All senses ordered by synset id.
    pub fn senses(&self) -> Vec<&SenseCandidate> {
        let mut all: Vec<_> = self.by_class.values().flatten().collect();
        all.sort_by(|a, b| a.synset.cmp(&b.synset));
        all
    }

    pub fn restrict(&self, keep: ClassSet) -> SenseCandidateSet {
        SenseCandidateSet {
            surface: self.surface.clone(),
            by_class: self
                .by_class
                .iter()
                .filter(|(c, v)| keep.contains(**c) && !v.is_empty())
                .map(|(c, v)| (*c, v.clone()))
                .collect(),
        }
    }

    pub fn contains_synset(&self, id: &str) -> bool {
        self.by_class.values().flatten().any(|c| c.synset == id)
    }
}

impl LexNet {
    /// Finds the senses of `surface`.
    ///
    /// Tried in order, stopping at the first stage with results: the surface
    /// itself (exact literal, declared variant, and each umlaut spelling),
    /// then every inflection-stripped stem through the same steps. Stems are
    /// looked up capitalized as nouns and lowercased as verbs, adjectives and
    /// adverbs.
    pub fn lookup(&self, surface: &str, opts: &LookupOptions) -> SenseCandidateSet {
        let mut out = SenseCandidateSet::new(surface);
        if surface.is_empty() {
            return out;
        }
        let allowed = opts.classes.unwrap_or(ClassSet::ALL);
        self.direct(surface, surface, allowed, opts.umlauts, &mut out);
        if opts.sentence_initial {
            let lower = decapitalize(surface);
            if lower != surface {
                self.direct(&lower, &lower, allowed, opts.umlauts, &mut out);
            }
        }
        if out.is_empty() && opts.morph && surface.chars().count() >= 2 {
            let nouns = allowed.intersect(ClassSet::only(WordClass::Noun));
            let others = allowed.without(WordClass::Noun);
            for cand in strip_inflection(surface) {
                if !nouns.is_empty() {
                    let cap = capitalize(&cand.stem);
                    self.direct(&cap, &cap, nouns, opts.umlauts, &mut out);
                }
                if !others.is_empty() {
                    let low = decapitalize(&cand.stem);
                    self.direct(&low, &low, others, opts.umlauts, &mut out);
                }
            }
        }
        out
    }

    fn direct(&self, key: &str, stem: &str, allowed: ClassSet, umlauts: bool, out: &mut SenseCandidateSet) {
        let spellings = if umlauts {
            deexpand_umlauts(key).into_iter().collect()
        } else {
            vec![key.to_string()]
        };
        for spelling in &spellings {
            self.exact(spelling, stem, allowed, out);
            if let Some(canonical) = self.variants.get(spelling.as_str()) {
                self.exact(canonical, stem, allowed, out);
            }
        }
    }

    fn exact(&self, key: &str, stem: &str, allowed: ClassSet, out: &mut SenseCandidateSet) {
        let Some(hits) = self.literals.get(key) else {
            return;
        };
        for &i in hits {
            let s = &self.synsets[i];
            if allowed.contains(s.word_class) {
                out.insert(SenseCandidate {
                    synset: s.id.clone(),
                    class: s.word_class,
                    stem: stem.to_string(),
                    literal: key.to_string(),
                });
            }
        }
    }
}
