//! Sectioned documents, tokenization, POS-tagged input and the candidate
//! filter applied before coverage measurement.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use indexmap::IndexSet;
use regex::Regex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::xml;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SectionKind {
    Findings,
    Background,
    Discussion,
    Other,
}

impl SectionKind {
    pub const ALL: [SectionKind; 4] = [
        SectionKind::Findings,
        SectionKind::Background,
        SectionKind::Discussion,
        SectionKind::Other,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SectionKind::Findings => "Findings",
            SectionKind::Background => "Background",
            SectionKind::Discussion => "Discussion",
            SectionKind::Other => "Other",
        }
    }
}

impl fmt::Display for SectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SectionKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SectionKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown section `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    /// Byte offset into the text the token was read from.
    pub offset: usize,
    pub pos: Option<String>,
    pub stem: Option<String>,
    pub sentence_initial: bool,
}

impl Token {
    pub fn new(surface: impl Into<String>) -> Self {
        Token {
            surface: surface.into(),
            offset: 0,
            pos: None,
            stem: None,
            sentence_initial: false,
        }
    }

    pub fn tagged(surface: impl Into<String>, pos: &str, stem: Option<&str>) -> Self {
        Token {
            pos: Some(pos.to_string()),
            stem: stem.map(str::to_string),
            ..Token::new(surface)
        }
    }

    /// The stem when known, the surface otherwise.
    pub fn lemma(&self) -> &str {
        self.stem.as_deref().unwrap_or(&self.surface)
    }

    /// The token as a flat element, `<TAG [STEM="..."]>surface</TAG>`.
    pub fn to_element(&self) -> String {
        let tag = self.pos.as_deref().unwrap_or("XX");
        match &self.stem {
            Some(stem) => format!(
                "<{tag} STEM=\"{}\">{}</{tag}>",
                xml::escape_attr(stem),
                xml::escape_text(&self.surface)
            ),
            None => format!("<{tag}>{}</{tag}>", xml::escape_text(&self.surface)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub kind: SectionKind,
    pub tokens: Vec<Token>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub sections: Vec<Section>,
}

impl Document {
    /// Splits raw text at `== FINDINGS ==`, `== BACKGROUND ==` and
    /// `== DISCUSSION ==` marker lines. Text before the first marker becomes
    /// an `Other` section when it holds anything besides whitespace.
    pub fn parse_raw(id: impl Into<String>, text: &str) -> Document {
        let mut spans: Vec<(SectionKind, usize, usize)> = Vec::new();
        let mut current = (SectionKind::Other, 0usize);
        let mut pos = 0;
        for line in text.split_inclusive('\n') {
            if let Some(kind) = section_marker(line) {
                spans.push((current.0, current.1, pos));
                current = (kind, pos + line.len());
            }
            pos += line.len();
        }
        spans.push((current.0, current.1, text.len()));

        let has_markers = spans.len() > 1;
        let sections = spans
            .into_iter()
            .enumerate()
            .filter(|(i, (_, start, end))| !(has_markers && *i == 0 && text[*start..*end].trim().is_empty()))
            .map(|(_, (kind, start, end))| {
                let mut tokens = tokenize(&text[start..end]);
                for t in &mut tokens {
                    t.offset += start;
                }
                Section { kind, tokens }
            })
            .collect();
        Document {
            id: id.into(),
            sections,
        }
    }

    pub fn sections_of(&self, kind: SectionKind) -> impl Iterator<Item = &Section> {
        self.sections.iter().filter(move |s| s.kind == kind)
    }

    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.sections.iter().flat_map(|s| s.tokens.iter())
    }
}

pub fn parse_raw(text: &str) -> Document {
    Document::parse_raw("", text)
}

fn section_marker(line: &str) -> Option<SectionKind> {
    static RE: OnceLock<Regex> = OnceLock::new();
    let re = RE.get_or_init(|| Regex::new(r"(?i)^==\s*(findings|background|discussion)\s*==$").unwrap());
    let caps = re.captures(line.trim())?;
    caps[1].parse().ok()
}

fn is_roman_or_digits(s: &str) -> bool {
    !s.is_empty() && (s.chars().all(|c| "IVXLCDM".contains(c)) || s.chars().all(|c| c.is_ascii_digit()))
}

/// Splits text into word tokens.
///
/// Tokens are maximal runs of letters, digits and hyphens. A period stays in
/// the token when a letter or digit follows it, or when it closes an
/// enumeration (`II.`, `3.`) or an abbreviation (`z.B.`, `G.`). Other
/// punctuation is dropped. The first token and any token after `.`, `!` or
/// `?` plus whitespace and a capital letter are sentence-initial.
pub fn tokenize(text: &str) -> Vec<Token> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let at = |i: usize| chars.get(i).map(|&(_, c)| c);
    let byte = |i: usize| chars.get(i).map(|&(b, _)| b).unwrap_or(text.len());
    let mut tokens = Vec::new();
    let mut sentence_initial = true;
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i].1;
        let starts = c.is_alphanumeric() || (c == '-' && at(i + 1).is_some_and(char::is_alphanumeric));
        if !starts {
            if matches!(c, '.' | '!' | '?') {
                let mut j = i + 1;
                let mut saw_space = false;
                while at(j).is_some_and(char::is_whitespace) {
                    saw_space = true;
                    j += 1;
                }
                if saw_space && at(j).is_some_and(char::is_uppercase) {
                    sentence_initial = true;
                }
            }
            i += 1;
            continue;
        }

        let start = i;
        let mut j = i;
        while let Some(ch) = at(j) {
            if ch.is_alphanumeric() || ch == '-' {
                j += 1;
            } else if ch == '.' {
                if at(j + 1).is_some_and(char::is_alphanumeric) {
                    j += 1;
                    continue;
                }
                let so_far = &text[byte(start)..byte(j)];
                let abbreviation =
                    so_far.contains('.') || so_far.chars().count() == 1 && so_far.chars().all(char::is_alphabetic);
                if is_roman_or_digits(so_far) || abbreviation {
                    j += 1;
                }
                break;
            } else {
                break;
            }
        }
        tokens.push(Token {
            surface: text[byte(start)..byte(j)].to_string(),
            offset: byte(start),
            pos: None,
            stem: None,
            sentence_initial,
        });
        sentence_initial = false;
        i = j;
    }
    tokens
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("malformed tagged input at byte {offset}: {reason}")]
pub struct TaggedFormatError {
    pub offset: usize,
    pub reason: String,
}

/// Reads a flat stream of `<TAG [STEM="..."]>text</TAG>` elements.
pub fn parse_tagged(text: &str) -> Result<Vec<Token>, TaggedFormatError> {
    let err = |offset: usize, reason: &str| TaggedFormatError {
        offset,
        reason: reason.to_string(),
    };
    let bytes = text.as_bytes();
    let skip_ws = |mut i: usize| {
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        i
    };
    let mut tokens: Vec<Token> = Vec::new();
    let mut i = skip_ws(0);
    while i < bytes.len() {
        if bytes[i] != b'<' {
            return Err(err(i, "text outside of an element"));
        }
        if bytes.get(i + 1) == Some(&b'/') {
            return Err(err(i, "closing tag without opening tag"));
        }
        let name_start = i + 1;
        let mut j = name_start;
        while j < bytes.len() && !bytes[j].is_ascii_whitespace() && !b"<>/=\"".contains(&bytes[j]) {
            j += 1;
        }
        if j == name_start {
            return Err(err(i, "missing tag name"));
        }
        let name = &text[name_start..j];

        let mut stem = None;
        loop {
            j = skip_ws(j);
            match bytes.get(j) {
                None => return Err(err(j, "unterminated start tag")),
                Some(b'>') => {
                    j += 1;
                    break;
                }
                Some(_) => {
                    let attr_start = j;
                    while j < bytes.len() && bytes[j].is_ascii_alphanumeric() {
                        j += 1;
                    }
                    let attr = &text[attr_start..j];
                    if attr != "STEM" {
                        return Err(err(attr_start, "unsupported attribute"));
                    }
                    if stem.is_some() {
                        return Err(err(attr_start, "duplicate STEM attribute"));
                    }
                    if bytes.get(j) != Some(&b'=') || bytes.get(j + 1) != Some(&b'"') {
                        return Err(err(j, "expected =\"...\""));
                    }
                    let val_start = j + 2;
                    let close = text[val_start..]
                        .find('"')
                        .ok_or_else(|| err(val_start, "unterminated attribute value"))?;
                    let value = &text[val_start..val_start + close];
                    if value.contains('<') {
                        return Err(err(val_start, "'<' in attribute value"));
                    }
                    stem = Some(xml::unescape(value));
                    j = val_start + close + 1;
                }
            }
        }

        let text_start = j;
        let lt = text[text_start..]
            .find('<')
            .map(|p| text_start + p)
            .ok_or_else(|| err(i, "unclosed element"))?;
        let closing = format!("</{name}>");
        if !text[lt..].starts_with("</") {
            return Err(err(lt, "nested element"));
        }
        if !text[lt..].starts_with(&closing) {
            return Err(err(lt, "mismatched closing tag"));
        }
        let surface = xml::unescape(&text[text_start..lt]);
        if surface.is_empty() {
            return Err(err(text_start, "empty element"));
        }
        let sentence_initial = tokens.last().is_none_or(|t| t.surface.ends_with(['.', '!', '?']));
        tokens.push(Token {
            surface,
            offset: text_start,
            pos: Some(name.to_string()),
            stem,
            sentence_initial,
        });
        i = skip_ws(lt + closing.len());
    }
    Ok(tokens)
}

/// Closed-class words excluded from coverage measurement. Matching ignores case.
#[derive(Debug, Clone, Default)]
pub struct Stoplist {
    words: HashSet<String>,
}

impl Stoplist {
    pub fn from_text(text: &str) -> Self {
        Stoplist {
            words: text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(str::to_lowercase)
                .collect(),
        }
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> std::io::Result<Self> {
        Ok(Self::from_text(&std::fs::read_to_string(path)?))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(&word.to_lowercase())
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

impl<S: AsRef<str>> FromIterator<S> for Stoplist {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        Stoplist {
            words: iter.into_iter().map(|w| w.as_ref().to_lowercase()).collect(),
        }
    }
}

/// Enumeration tokens such as `II.` or `3.`.
pub fn is_implicit_markup(surface: &str) -> bool {
    surface.strip_suffix('.').is_some_and(is_roman_or_digits)
}

pub fn is_candidate(surface: &str, stoplist: &Stoplist) -> bool {
    surface.chars().count() > 3 && !is_implicit_markup(surface) && !stoplist.contains(surface)
}

/// Keeps potential noun, verb and adjective tokens: drops stoplist words,
/// implicit markup and anything of three characters or fewer.
pub fn candidate_filter(tokens: &[Token], stoplist: &Stoplist) -> Vec<Token> {
    tokens
        .iter()
        .filter(|t| is_candidate(&t.surface, stoplist))
        .cloned()
        .collect()
}

/// Distinct surfaces in first-occurrence order. Case-sensitive.
pub fn word_types<'a>(tokens: impl IntoIterator<Item = &'a Token>) -> IndexSet<String> {
    tokens.into_iter().map(|t| t.surface.clone()).collect()
}

/// Candidate word types per section kind, pooled over all documents.
pub fn section_types(docs: &[Document], stoplist: &Stoplist) -> BTreeMap<SectionKind, IndexSet<String>> {
    let mut out: BTreeMap<SectionKind, IndexSet<String>> = BTreeMap::new();
    for doc in docs {
        for section in &doc.sections {
            let types = out.entry(section.kind).or_default();
            for t in &section.tokens {
                if is_candidate(&t.surface, stoplist) && !types.contains(&t.surface) {
                    types.insert(t.surface.clone());
                }
            }
        }
    }
    out
}
