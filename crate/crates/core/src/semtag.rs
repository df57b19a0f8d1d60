//! Inline concept annotation of POS-tagged token streams.
//!
//! Content tokens with senses in the net become
//! `<CONCEPT TYPE="...">surface</CONCEPT>`, where `TYPE` lists, per sense,
//! the literals of its hypernyms. Every other token is kept as its original
//! element inside `<XXX>...</XXX>`. Elements are separated by one space.

use thiserror::Error;

use crate::corpus::{parse_tagged, SectionKind, Token};
use crate::disambig::{resolve_sense, FieldProfile};
use crate::lexnet::{LexNet, LookupOptions, SenseCandidateSet, WordClass};
use crate::xml;

pub const DEFAULT_DEPTH: usize = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("malformed annotation at byte {offset}: {reason}")]
pub struct MalformedAnnotation {
    pub offset: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Copy)]
pub struct TagOptions<'a> {
    pub profile: Option<&'a FieldProfile>,
    pub section: SectionKind,
    /// Hypernym levels listed per sense.
    pub depth: usize,
}

impl Default for TagOptions<'_> {
    fn default() -> Self {
        TagOptions {
            profile: None,
            section: SectionKind::Other,
            depth: DEFAULT_DEPTH,
        }
    }
}

/// Joins literals within a sense with `, ` and senses with `; `.
pub fn format_type_attr<S: AsRef<str>>(senses: &[Vec<S>]) -> String {
    senses
        .iter()
        .map(|lits| lits.iter().map(AsRef::as_ref).collect::<Vec<_>>().join(", "))
        .collect::<Vec<_>>()
        .join("; ")
}

/// Senses of a content token: its stem looked up as is, or its surface
/// through inflection stripping when no stem is given.
pub fn token_senses(net: &LexNet, token: &Token) -> Option<SenseCandidateSet> {
    let class = WordClass::from_tag(token.pos.as_deref()?)?;
    let opts = LookupOptions::new().class(class);
    let found = match &token.stem {
        Some(stem) => net.lookup(stem, &opts),
        None => net.lookup(&token.surface, &opts.morph(true)),
    };
    (!found.is_empty()).then_some(found)
}

/// Rendered literals of the hypernyms of `synset` up to `depth` levels, or
/// of the synset itself when it has none.
fn sense_literals(net: &LexNet, synset: &str, depth: usize) -> Vec<String> {
    let levels = net.hypernyms(synset, depth.max(1)).unwrap_or_default();
    let ids: Vec<&str> = if levels.is_empty() {
        vec![synset]
    } else {
        levels.into_iter().flatten().collect()
    };
    ids.iter()
        .filter_map(|id| net.synset(id))
        .flat_map(|s| s.literals.iter().map(|l| l.rendered()))
        .collect()
}

pub fn type_attr(net: &LexNet, senses: &SenseCandidateSet, opts: &TagOptions<'_>) -> String {
    let ordered: Vec<String> = match opts.profile {
        Some(p) => resolve_sense(net, senses, p, opts.section)
            .into_iter()
            .map(|r| r.candidate.synset)
            .collect(),
        None => senses.senses().into_iter().map(|c| c.synset.clone()).collect(),
    };
    let lists: Vec<Vec<String>> = ordered.iter().map(|id| sense_literals(net, id, opts.depth)).collect();
    format_type_attr(&lists)
}

pub fn tag_tokens(net: &LexNet, tokens: &[Token], opts: &TagOptions<'_>) -> String {
    tokens
        .iter()
        .map(|t| match token_senses(net, t) {
            Some(senses) => format!(
                "<CONCEPT TYPE=\"{}\">{}</CONCEPT>",
                xml::escape_attr(&type_attr(net, &senses, opts)),
                xml::escape_text(&t.surface)
            ),
            None => format!("<XXX>{}</XXX>", t.to_element()),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses a tagged stream and annotates it.
pub fn tag_semantic(
    net: &LexNet,
    tagged: &str,
    opts: &TagOptions<'_>,
) -> Result<String, crate::corpus::TaggedFormatError> {
    Ok(tag_tokens(net, &parse_tagged(tagged)?, opts))
}

/// Recovers the surface sequence from annotated output.
pub fn detag(annotated: &str) -> Result<Vec<String>, MalformedAnnotation> {
    let err = |offset: usize, reason: &str| MalformedAnnotation {
        offset,
        reason: reason.to_string(),
    };
    let mut out = Vec::new();
    let mut i = 0;
    let skip_ws = |s: &str, i: usize| i + (s.len() - i - s[i..].trim_start().len());
    loop {
        i = skip_ws(annotated, i);
        let rest = &annotated[i..];
        if rest.is_empty() {
            return Ok(out);
        }
        if let Some(after) = rest.strip_prefix("<CONCEPT TYPE=\"") {
            let q = after.find('"').ok_or_else(|| err(i, "unterminated TYPE"))?;
            let after = after[q + 1..]
                .strip_prefix('>')
                .ok_or_else(|| err(i, "expected `>` after TYPE"))?;
            let end = after.find("</CONCEPT>").ok_or_else(|| err(i, "unclosed CONCEPT"))?;
            let text = &after[..end];
            if text.contains('<') {
                return Err(err(i, "markup inside CONCEPT"));
            }
            out.push(xml::unescape(text));
            i = annotated.len() - after.len() + end + "</CONCEPT>".len();
        } else if let Some(after) = rest.strip_prefix("<XXX>") {
            let end = after.find("</XXX>").ok_or_else(|| err(i, "unclosed XXX"))?;
            let inner = parse_tagged(&after[..end]).map_err(|e| err(i + 5 + e.offset, &e.reason))?;
            if inner.len() != 1 {
                return Err(err(i, "XXX must wrap exactly one element"));
            }
            out.push(inner.into_iter().next().unwrap().surface);
            i = annotated.len() - after.len() + end + "</XXX>".len();
        } else {
            return Err(err(i, "expected CONCEPT or XXX element"));
        }
    }
}
