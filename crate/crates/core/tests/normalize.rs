use proptest::prelude::*;
use semlex::normalize::{deexpand_umlauts, edit_distance, strip_inflection};

/// Textbook full-matrix Levenshtein over chars.
fn oracle_distance(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut m = vec![vec![0usize; b.len() + 1]; a.len() + 1];
    for (i, row) in m.iter_mut().enumerate() {
        row[0] = i;
    }
    for (j, cell) in m[0].iter_mut().enumerate() {
        *cell = j;
    }
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            let sub = m[i - 1][j - 1] + usize::from(a[i - 1] != b[j - 1]);
            m[i][j] = sub.min(m[i - 1][j] + 1).min(m[i][j - 1] + 1);
        }
    }
    m[a.len()][b.len()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn edit_distance_is_a_metric(a in "[a-dä]{0,8}", b in "[a-dä]{0,8}", c in "[a-dä]{0,8}") {
        let ab = edit_distance(&a, &b);
        prop_assert_eq!(ab, oracle_distance(&a, &b));
        prop_assert_eq!(ab == 0, a == b);
        prop_assert_eq!(ab, edit_distance(&b, &a));
        prop_assert!(edit_distance(&a, &c) <= ab + edit_distance(&b, &c));
    }
}

#[test]
fn umlaut_candidates() {
    assert!(deexpand_umlauts("Gebaeude").contains("Gebäude"));
    assert!(deexpand_umlauts("Oertlich").contains("Örtlich"));
    assert_eq!(deexpand_umlauts("Quelle").len(), 1);
}

#[test]
fn inflection_candidates() {
    let stems: Vec<String> = strip_inflection("Herzens").into_iter().map(|c| c.stem).collect();
    assert!(stems.contains(&"Herz".to_string()));
    assert!(stems.contains(&"Herzen".to_string()));
    let stems: Vec<String> = strip_inflection("kollidierten").into_iter().map(|c| c.stem).collect();
    assert!(stems.contains(&"kollidieren".to_string()));
    assert!(strip_inflection("").is_empty());
}
