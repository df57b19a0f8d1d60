//! Orthographic and light morphological normalization.
//!
//! Corpus text frequently spells umlauts in their expanded form (`ae`, `oe`,
//! `ue`) while the net stores them as `ä`, `ö`, `ü`. Inflected forms are
//! reduced through a small, fixed suffix-rule table. Both produce hypotheses
//! only; a candidate is accepted once it is found in the lexicon.

use crate::lexnet::WordClass;

/// Upper bound on the number of replaceable sites considered per word.
/// Sites beyond this are left as written.
pub const MAX_UMLAUT_SITES: usize = 12;

/// A hypothesized stem for an inflected surface form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StemCandidate {
    pub stem: String,
    /// Stable identifier of the rule that produced the stem.
    pub rule: &'static str,
    pub word_class_hint: Option<WordClass>,
}

/// One entry of the suffix-rule table.
#[derive(Debug, Clone, Copy)]
pub struct SuffixRule {
    pub id: &'static str,
    pub suffix: &'static str,
    /// Appended after the suffix is removed ("en" rebuilds verb infinitives).
    pub replacement: &'static str,
    pub class: WordClass,
}

const fn rule(id: &'static str, suffix: &'static str, replacement: &'static str, class: WordClass) -> SuffixRule {
    SuffixRule {
        id,
        suffix,
        replacement,
        class,
    }
}

/// The inflection table, longest suffix first. Ties keep noun, verb,
/// adjective order. Every rule needs at least two characters of stem left.
pub const SUFFIX_RULES: &[SuffixRule] = &[
    rule("verb:-test", "test", "en", WordClass::Verb),
    rule("noun:-ens", "ens", "", WordClass::Noun),
    rule("noun:-ern", "ern", "", WordClass::Noun),
    rule("verb:-tet", "tet", "en", WordClass::Verb),
    rule("verb:-ten", "ten", "en", WordClass::Verb),
    rule("noun:-es", "es", "", WordClass::Noun),
    rule("noun:-en", "en", "", WordClass::Noun),
    rule("noun:-em", "em", "", WordClass::Noun),
    rule("noun:-er", "er", "", WordClass::Noun),
    rule("verb:-te", "te", "en", WordClass::Verb),
    rule("verb:-st", "st", "en", WordClass::Verb),
    rule("verb:-en", "en", "en", WordClass::Verb),
    rule("adj:-em", "em", "", WordClass::Adj),
    rule("adj:-en", "en", "", WordClass::Adj),
    rule("adj:-er", "er", "", WordClass::Adj),
    rule("adj:-es", "es", "", WordClass::Adj),
    rule("noun:-s", "s", "", WordClass::Noun),
    rule("noun:-n", "n", "", WordClass::Noun),
    rule("noun:-e", "e", "", WordClass::Noun),
    rule("verb:-t", "t", "en", WordClass::Verb),
    rule("verb:-e", "e", "en", WordClass::Verb),
    rule("adj:-e", "e", "", WordClass::Adj),
];

const MIN_STEM_CHARS: usize = 2;

/// All spellings obtained by turning `ae`/`oe`/`ue` sites back into umlauts.
///
/// The input itself is always part of the result. A `ue` directly after
/// `q`, `a`, `e` or `o` is not a site (Quelle, Bauer, Feuer).
pub fn deexpand_umlauts(surface: &str) -> std::collections::BTreeSet<String> {
    let chars: Vec<char> = surface.chars().collect();
    let sites = umlaut_sites(&chars);
    let mut out = std::collections::BTreeSet::new();
    for mask in 0u32..(1u32 << sites.len()) {
        let mut s = String::with_capacity(surface.len());
        let mut i = 0;
        let mut site = 0;
        while i < chars.len() {
            if site < sites.len() && sites[site] == i {
                if mask & (1 << site) != 0 {
                    s.push(umlaut_of(chars[i]));
                    i += 2;
                } else {
                    s.push(chars[i]);
                    i += 1;
                }
                site += 1;
            } else {
                s.push(chars[i]);
                i += 1;
            }
        }
        out.insert(s);
    }
    out
}

fn umlaut_sites(chars: &[char]) -> Vec<usize> {
    let mut sites = Vec::new();
    for i in 0..chars.len().saturating_sub(1) {
        if chars[i + 1] != 'e' || !matches!(chars[i], 'a' | 'o' | 'u' | 'A' | 'O' | 'U') {
            continue;
        }
        if matches!(chars[i], 'u' | 'U') && i > 0 {
            let prev = chars[i - 1].to_ascii_lowercase();
            if matches!(prev, 'q' | 'a' | 'e' | 'o') {
                continue;
            }
        }
        sites.push(i);
        if sites.len() == MAX_UMLAUT_SITES {
            break;
        }
    }
    sites
}

fn umlaut_of(c: char) -> char {
    match c {
        'a' => 'ä',
        'o' => 'ö',
        'u' => 'ü',
        'A' => 'Ä',
        'O' => 'Ö',
        'U' => 'Ü',
        _ => c,
    }
}

/// Replaces umlauts by their two-letter expansion and `ß` by `ss`.
pub fn expand_umlauts(surface: &str) -> String {
    let mut s = String::with_capacity(surface.len() + 4);
    for c in surface.chars() {
        match c {
            'ä' => s.push_str("ae"),
            'ö' => s.push_str("oe"),
            'ü' => s.push_str("ue"),
            'Ä' => s.push_str("Ae"),
            'Ö' => s.push_str("Oe"),
            'Ü' => s.push_str("Ue"),
            'ß' => s.push_str("ss"),
            _ => s.push(c),
        }
    }
    s
}

/// Stem hypotheses for `surface`, identity first, then participle circumfixes,
/// then the suffix table in order. Duplicate stems keep their first rule.
/// The empty string has no candidates.
pub fn strip_inflection(surface: &str) -> Vec<StemCandidate> {
    if surface.is_empty() {
        return Vec::new();
    }
    let mut out = vec![StemCandidate {
        stem: surface.to_string(),
        rule: "identity",
        word_class_hint: None,
    }];
    let mut push = |stem: String, rule: &'static str, class: WordClass| {
        if !out.iter().any(|c| c.stem == stem) {
            out.push(StemCandidate {
                stem,
                rule,
                word_class_hint: Some(class),
            });
        }
    };

    if let Some(rest) = surface.strip_prefix("ge") {
        if let Some(mid) = rest.strip_suffix("en") {
            if mid.chars().count() >= MIN_STEM_CHARS {
                push(format!("{mid}en"), "verb:ge-en", WordClass::Verb);
            }
        }
        if let Some(mid) = rest.strip_suffix('t') {
            if mid.chars().count() >= MIN_STEM_CHARS {
                push(format!("{mid}en"), "verb:ge-t", WordClass::Verb);
            }
        }
    }

    for r in SUFFIX_RULES {
        if let Some(stem) = surface.strip_suffix(r.suffix) {
            if stem.chars().count() >= MIN_STEM_CHARS {
                push(format!("{stem}{}", r.replacement), r.id, r.class);
            }
        }
    }
    out
}

/// Levenshtein distance over Unicode scalar values.
pub fn edit_distance(a: &str, b: &str) -> usize {
    strsim::levenshtein(a, b)
}

pub(crate) fn capitalize(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

pub(crate) fn decapitalize(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(first) => first.to_lowercase().chain(chars).collect(),
        None => String::new(),
    }
}

pub(crate) fn is_capitalized(s: &str) -> bool {
    s.chars().next().is_some_and(char::is_uppercase)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(items: &[&str]) -> std::collections::BTreeSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn deexpand_examples() {
        assert_eq!(deexpand_umlauts("Gebaeude"), set(&["Gebaeude", "Gebäude"]));
        assert_eq!(deexpand_umlauts("Feuer"), set(&["Feuer"]));
        assert_eq!(
            deexpand_umlauts("Oberschenkelbrueche"),
            set(&["Oberschenkelbrueche", "Oberschenkelbrüche"])
        );
        assert_eq!(deexpand_umlauts("Quelle"), set(&["Quelle"]));
        assert_eq!(deexpand_umlauts("Bauer"), set(&["Bauer"]));
        assert_eq!(deexpand_umlauts("Aerzte"), set(&["Aerzte", "Ärzte"]));
        assert_eq!(deexpand_umlauts(""), set(&[""]));
    }

    #[test]
    fn deexpand_enumerates_every_combination() {
        let out = deexpand_umlauts("Haeuser");
        // "ae" is a site, "ue" after 'a' is not
        assert_eq!(out, set(&["Haeuser", "Häuser"]));
        let out = deexpand_umlauts("Muehlhaeuser");
        assert_eq!(out.len(), 4);
        assert!(out.contains("Mühlhäuser"));
    }

    #[test]
    fn site_cap_bounds_output() {
        let word = "ae".repeat(20);
        assert_eq!(deexpand_umlauts(&word).len(), 1 << MAX_UMLAUT_SITES);
    }

    #[test]
    fn strip_examples() {
        let stems = |s: &str| -> Vec<String> { strip_inflection(s).into_iter().map(|c| c.stem).collect() };
        let armes = strip_inflection("Armes");
        assert!(armes.iter().any(|c| c.stem == "Arm" && c.rule == "noun:-es"));
        let herzens = strip_inflection("Herzens");
        assert!(herzens.iter().any(|c| c.stem == "Herz" && c.rule == "noun:-ens"));
        assert_eq!(strip_inflection("Haus")[0].stem, "Haus");
        assert_eq!(strip_inflection("Haus")[0].rule, "identity");
        assert!(stems("besitzt").contains(&"besitzen".to_string()));
        assert!(stems("gemacht").contains(&"machen".to_string()));
        assert!(stems("gegeben").contains(&"geben".to_string()));
        assert!(stems("operierte").contains(&"operieren".to_string()));
        assert!(stems("unauffaelliger").contains(&"unauffaellig".to_string()));
    }

    #[test]
    fn strip_keeps_two_char_stems() {
        // "es" would leave nothing
        assert_eq!(strip_inflection("es").len(), 1);
        assert!(strip_inflection("Ares").iter().any(|c| c.stem == "Ar"));
    }

    #[test]
    fn edit_distance_examples() {
        assert_eq!(edit_distance("Herzmnuskulatur", "Herzmuskulatur"), 1);
        assert_eq!(edit_distance("Herz", "Herz"), 0);
        assert_eq!(edit_distance("", "abc"), 3);
        assert_eq!(edit_distance("Gebäude", "Gebaude"), 1);
    }

    proptest! {
        #[test]
        fn deexpand_contains_input_and_reexpands(s in "[a-zA-Z]{0,14}") {
            let out = deexpand_umlauts(&s);
            prop_assert!(out.contains(&s));
            for o in &out {
                prop_assert_eq!(&expand_umlauts(o), &s);
            }
        }

        #[test]
        fn strip_is_deterministic_and_duplicate_free(s in "[a-zA-Zäöü]{2,16}") {
            let a = strip_inflection(&s);
            prop_assert_eq!(&a, &strip_inflection(&s));
            let mut stems: Vec<_> = a.iter().map(|c| c.stem.clone()).collect();
            prop_assert!(stems.iter().all(|st| !st.is_empty()));
            stems.sort();
            stems.dedup();
            prop_assert_eq!(stems.len(), a.len());
        }
    }
}
