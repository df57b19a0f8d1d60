use thiserror::Error;

use super::{RelationEdgeNP, RelationKind};
use crate::corpus::{tokenize, Token};
use crate::lexnet::{LexNet, LookupOptions, WordClass};
use crate::normalize::{is_capitalized, strip_inflection};

pub const DEFAULT_REFINE_DEPTH: usize = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("phrase does not match [ADJ]* N (der|des [ADJ]* N)* at token {position}")]
pub struct NPGrammarError {
    pub position: usize,
}

fn is_genitive_det(t: &Token) -> bool {
    let det_tag = t
        .pos
        .as_deref()
        .is_none_or(|p| p.starts_with("DET") || p.starts_with("ART"));
    det_tag && matches!(t.surface.to_lowercase().as_str(), "der" | "des")
}

fn has_tag(t: &Token, tag: &str) -> bool {
    t.pos.as_deref() == Some(tag)
}

/// Extracts `prop` edges (adjective, its noun) and `gen-attribute` edges
/// (noun, following genitive noun) from a tagged noun phrase.
pub fn parse_np(tokens: &[Token]) -> Result<Vec<RelationEdgeNP>, NPGrammarError> {
    let mut edges = Vec::new();
    let mut i = 0;
    let mut previous_noun: Option<String> = None;
    loop {
        let adjectives_start = i;
        while i < tokens.len() && has_tag(&tokens[i], "ADJ") {
            i += 1;
        }
        let Some(noun) = tokens.get(i).filter(|t| has_tag(t, "N")) else {
            return Err(NPGrammarError { position: i });
        };
        for adj in &tokens[adjectives_start..i] {
            edges.push(RelationEdgeNP::new(RelationKind::Prop, adj.lemma(), noun.lemma()));
        }
        if let Some(prev) = previous_noun.take() {
            edges.push(RelationEdgeNP::new(RelationKind::GenAttribute, prev, noun.lemma()));
        }
        previous_noun = Some(noun.lemma().to_string());
        i += 1;
        if i == tokens.len() {
            return Ok(edges);
        }
        if !is_genitive_det(&tokens[i]) {
            return Err(NPGrammarError { position: i });
        }
        i += 1;
    }
}

/// Turns a `gen-attribute` edge into `part-of` when some noun sense of the
/// head is a part of some noun sense of the dependent within `max_depth`
/// holonym steps. Other edges and unresolvable nouns pass through unchanged.
pub fn refine_gen_attribute(net: &LexNet, edge: &RelationEdgeNP, max_depth: usize) -> RelationEdgeNP {
    if edge.kind != RelationKind::GenAttribute || max_depth == 0 {
        return edge.clone();
    }
    let opts = LookupOptions::new().class(WordClass::Noun).morph(true);
    let parts = net.lookup(&edge.head, &opts);
    let wholes = net.lookup(&edge.dependent, &opts);
    let refined = parts.senses().iter().any(|p| {
        wholes.senses().iter().any(|w| {
            net.holonym_path_exists(&p.synset, &w.synset, max_depth)
                .unwrap_or(false)
        })
    });
    if refined {
        RelationEdgeNP::new(RelationKind::PartOf, edge.head.clone(), edge.dependent.clone())
    } else {
        edge.clone()
    }
}

pub fn refine_all(net: &LexNet, edges: &[RelationEdgeNP], max_depth: usize) -> Vec<RelationEdgeNP> {
    edges.iter().map(|e| refine_gen_attribute(net, e, max_depth)).collect()
}

/// Tags a plain-text noun phrase for [`parse_np`]: `der`/`des` become
/// determiners, capitalized words nouns, the rest adjectives. Stems come
/// from the net where possible.
pub fn annotate_phrase(net: &LexNet, phrase: &str) -> Vec<Token> {
    tokenize(phrase)
        .into_iter()
        .map(|mut t| {
            let lower = t.surface.to_lowercase();
            if lower == "der" || lower == "des" {
                t.pos = Some("DETD".into());
            } else if is_capitalized(&t.surface) {
                let found = net.lookup(&t.surface, &LookupOptions::new().class(WordClass::Noun).morph(true));
                t.stem = found.class(WordClass::Noun).first().map(|c| c.stem.clone());
                t.pos = Some("N".into());
            } else {
                let found = net.lookup(&t.surface, &LookupOptions::new().class(WordClass::Adj).morph(true));
                t.stem = found.class(WordClass::Adj).first().map(|c| c.stem.clone()).or_else(|| {
                    strip_inflection(&t.surface)
                        .into_iter()
                        .find(|c| c.word_class_hint == Some(WordClass::Adj))
                        .map(|c| c.stem)
                });
                t.pos = Some("ADJ".into());
            }
            t
        })
        .collect()
}
