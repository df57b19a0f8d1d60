mod common;

use std::collections::{BTreeMap, BTreeSet};

use semlex::compound::{corpus_affix_table, CompatRules};
use semlex::corpus::{section_types, SectionKind, Stoplist};
use semlex::coverage::{
    classify_uncovered, summarize_uncovered, Combination, CoverageRow, Fixed2, SectionAnalysis, UncoveredClass,
    UncoveredContext,
};
use semlex::normalize::strip_inflection;
use semlex::{LexNet, LookupOptions, WordClass};

/// True when `lit` equals `query` after writing some of its umlauts out.
fn umlaut_equal(lit: &str, query: &str) -> bool {
    let l: Vec<char> = lit.chars().collect();
    let q: Vec<char> = query.chars().collect();
    let (mut i, mut j) = (0, 0);
    while i < l.len() {
        let wide = match l[i] {
            'ä' => Some(['a', 'e']),
            'ö' => Some(['o', 'e']),
            'ü' => Some(['u', 'e']),
            'Ä' => Some(['A', 'e']),
            'Ö' => Some(['O', 'e']),
            'Ü' => Some(['U', 'e']),
            _ => None,
        };
        if j < q.len() && q[j] == l[i] {
            i += 1;
            j += 1;
        } else if let Some(w) = wide.filter(|w| q.get(j..j + 2) == Some(&w[..])) {
            let _ = w;
            i += 1;
            j += 2;
        } else {
            return false;
        }
    }
    j == q.len()
}

/// Synsets reachable from `query` by a linear scan over literals and variants.
fn scan(net: &LexNet, query: &str, classes: &[WordClass], umlauts: bool) -> BTreeSet<String> {
    let same = |lit: &str| lit == query || (umlauts && umlaut_equal(lit, query));
    let mut targets: BTreeSet<String> = net.literal_surfaces().filter(|l| same(l)).map(String::from).collect();
    for (variant, canonical) in net.variants() {
        if same(variant) {
            targets.insert(canonical.to_string());
        }
    }
    net.synsets()
        .filter(|s| classes.contains(&s.word_class))
        .filter(|s| s.literals.iter().any(|l| targets.contains(&l.surface)))
        .map(|s| s.id.clone())
        .collect()
}

fn oracle_matches(net: &LexNet, t: &str, morph: bool, umlauts: bool) -> bool {
    let all = [WordClass::Noun, WordClass::Verb, WordClass::Adj, WordClass::Adv];
    if !scan(net, t, &all, umlauts).is_empty() {
        return true;
    }
    morph
        && strip_inflection(t).iter().any(|c| {
            let mut chars = c.stem.chars();
            let first = chars.next().unwrap();
            let rest: String = chars.collect();
            let cap = format!("{}{rest}", first.to_uppercase());
            let low = format!("{}{rest}", first.to_lowercase());
            !scan(net, &cap, &[WordClass::Noun], umlauts).is_empty()
                || !scan(net, &low, &[WordClass::Verb, WordClass::Adj, WordClass::Adv], umlauts).is_empty()
        })
}

#[test]
fn coverage_agrees_with_linear_scan() {
    let net = common::net();
    let types = section_types(&common::corpus(), &common::stoplist());
    for kind in [SectionKind::Findings, SectionKind::Background, SectionKind::Discussion] {
        assert!(types.contains_key(&kind));
    }
    for morph in [false, true] {
        for umlauts in [false, true] {
            let opts = LookupOptions::new().morph(morph).umlauts(umlauts);
            for (kind, ts) in &types {
                let a = SectionAnalysis::new(&net, *kind, ts.iter().map(String::as_str), &opts);
                let got: BTreeSet<&str> = a
                    .types
                    .iter()
                    .zip(&a.results)
                    .filter(|(_, r)| !r.is_empty())
                    .map(|(t, _)| t.as_str())
                    .collect();
                let want: BTreeSet<&str> = ts
                    .iter()
                    .filter(|t| oracle_matches(&net, t, morph, umlauts))
                    .map(String::as_str)
                    .collect();
                assert_eq!(got, want, "{kind} morph={morph} umlauts={umlauts}");
                let row = a.coverage();
                assert_eq!(row.matches, want.len());
                assert_eq!(row.types, ts.len());
            }
        }
    }
}

#[test]
fn normalization_only_adds_matches() {
    let net = common::net();
    let types = section_types(&common::corpus(), &common::stoplist());
    for (kind, ts) in types.iter().filter(|(k, _)| **k != SectionKind::Other) {
        let count = |opts: LookupOptions| {
            SectionAnalysis::new(&net, *kind, ts.iter().map(String::as_str), &opts)
                .coverage()
                .matches
        };
        let plain = count(LookupOptions::plain());
        let uml = count(LookupOptions::new());
        let full = count(LookupOptions::new().morph(true));
        assert!(plain <= uml && uml <= full, "{kind}");
        assert!(plain < full, "{kind}");
    }
}

#[test]
fn percentage_truncation() {
    for (types, matches, shown) in [(17520, 2591, "14.78"), (8124, 2274, "27.99"), (8562, 1862, "21.74")] {
        assert_eq!(
            CoverageRow::from_counts(SectionKind::Findings, types, matches)
                .pct
                .to_string(),
            shown
        );
    }
    assert_eq!(Fixed2::percent(139, 2591).to_string(), "5.36");
    let c = Combination::new(72, 2591, 139);
    assert_eq!(
        (c.pct_matches.to_string(), c.pct_ambiguous.to_string()),
        ("2.77".into(), "51.79".into())
    );
    assert_eq!(Fixed2::percent(0, 0).to_string(), "0.00");
    assert_eq!(Fixed2::percent(1, 3).to_string(), "33.33");
    assert_eq!(Fixed2::percent(2, 3).to_string(), "66.66");
    assert_eq!(serde_json::to_string(&Fixed2::percent(2, 3)).unwrap(), "66.66");
}

#[test]
fn ambiguity_on_hand_picked_types() {
    let net = common::net();
    let opts = LookupOptions::new().morph(true).sentence_initial(true);
    let words = ["Herz", "Arm", "Herzens", "Niere", "blass", "Kopf"];
    let a = SectionAnalysis::new(&net, SectionKind::Findings, words, &opts);
    assert_eq!(a.coverage().matches, 6);
    let classes = a.class_breakdown().classes;
    assert_eq!((classes.noun, classes.verb, classes.adj), (5, 1, 2));
    let pos = a.pos_ambiguity();
    // Arm (N+ADJ) and Herzens (N+V)
    assert_eq!(pos.ambiguous, 2);
    assert_eq!(pos.n_v.count, 1);
    assert_eq!(pos.n_adj.count, 1);
    assert_eq!(pos.combination_sum(), pos.ambiguous);
    let senses = a.sense_ambiguity();
    // Herz, Herzens and Niere have several noun senses
    assert_eq!(senses.count, 3);
    // nouns: 4 + 1 + 4 + 2 + 1 senses over 5 types
    assert_eq!(senses.averages[&WordClass::Noun].to_string(), "2.40");
    // Herzens has N+V with four noun senses
    assert_eq!(a.combined_ambiguity().count, 1);
}

fn context() -> UncoveredContext {
    let docs = common::corpus();
    let stop = common::stoplist();
    UncoveredContext {
        gazetteer: Stoplist::load(common::fixture("gazetteer.txt")).unwrap(),
        affixes: corpus_affix_table(&docs, &stop),
        rules: CompatRules::parse(&std::fs::read_to_string(common::fixture("compat.rules")).unwrap()).unwrap(),
        ..UncoveredContext::default()
    }
}

#[test]
fn uncovered_types_are_classified() {
    let net = common::net();
    let ctx = context();
    let cases = [
        ("350g", UncoveredClass::Measure),
        ("4-9", UncoveredClass::Measure),
        ("-aussenseite", UncoveredClass::Truncation),
        ("B269", UncoveredClass::NamedEntity),
        ("Magdeburg", UncoveredClass::NamedEntity),
        ("Herzens", UncoveredClass::Inflected),
        ("Nierentransplantation", UncoveredClass::Compound),
        ("Herzmnuskulatur", UncoveredClass::Misspelling),
        ("kraeftig", UncoveredClass::Other),
    ];
    for (w, class) in cases {
        assert_eq!(classify_uncovered(&net, &ctx, w), class, "{w}");
    }
    let words: Vec<&str> = cases.iter().map(|(w, _)| *w).chain(["350g"]).collect();
    let summary = summarize_uncovered(&net, &ctx, words, 1);
    assert_eq!(summary.counts[&UncoveredClass::Measure], 2);
    assert_eq!(summary.examples[&UncoveredClass::Measure], vec!["350g"]);
    assert_eq!(summary.counts.values().sum::<usize>(), cases.len());
}

#[test]
fn uncovered_listing_is_complement_of_matches() {
    let net = common::net();
    let types = section_types(&common::corpus(), &common::stoplist());
    let mut seen = BTreeMap::new();
    for (kind, ts) in &types {
        let a = SectionAnalysis::new(&net, *kind, ts.iter().map(String::as_str), &LookupOptions::new());
        let uncovered: Vec<&str> = a.uncovered().collect();
        assert_eq!(uncovered.len() + a.coverage().matches, ts.len());
        seen.insert(*kind, uncovered.len());
    }
    assert!(seen.values().all(|n| *n > 0));
}
