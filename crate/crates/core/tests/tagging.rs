mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semlex::corpus::parse_tagged;
use semlex::semtag::{detag, tag_semantic, TagOptions};

fn listing(name: &str) -> (String, String) {
    let read = |ext: &str| {
        std::fs::read_to_string(common::fixture(&format!("{name}.{ext}")))
            .unwrap()
            .trim_end()
            .to_string()
    };
    (read("tagged"), read("expected"))
}

#[test]
fn leber_niere_listing() {
    let net = common::net();
    let (input, expected) = listing("leber_niere");
    assert_eq!(tag_semantic(&net, &input, &TagOptions::default()).unwrap(), expected);
}

#[test]
fn gewicht_herz_listing() {
    let net = common::net();
    let (input, expected) = listing("gewicht_herz");
    assert_eq!(tag_semantic(&net, &input, &TagOptions::default()).unwrap(), expected);
}

#[test]
fn uncovered_content_word_is_wrapped() {
    let net = common::net();
    let out = tag_semantic(
        &net,
        r#"<N STEM="Zylinder">Zylinder</N> <ADJ>blass</ADJ>"#,
        &TagOptions::default(),
    )
    .unwrap();
    assert_eq!(
        out,
        r#"<XXX><N STEM="Zylinder">Zylinder</N></XXX> <CONCEPT TYPE="blass">blass</CONCEPT>"#
    );
}

#[test]
fn deeper_levels_append_ancestors() {
    let net = common::net();
    let opts = TagOptions {
        depth: 2,
        ..TagOptions::default()
    };
    let out = tag_semantic(&net, r#"<N>Niere</N>"#, &opts).unwrap();
    assert_eq!(out, r#"<CONCEPT TYPE="Innerei; Harnorgan, Organ">Niere</CONCEPT>"#);
}

#[test]
fn malformed_input_is_rejected() {
    let net = common::net();
    assert!(tag_semantic(&net, "<N>Herz", &TagOptions::default()).is_err());
}

const WORDS: &[(&str, &str)] = &[
    ("N", "Herz"),
    ("N", "Leber"),
    ("N", "Gewicht"),
    ("N", "Zylinder"),
    ("ADJ", "blass"),
    ("ADJ", "unbekannt"),
    ("V", "liegt"),
    ("DETD", "die"),
    ("S-KONJ", "und"),
    ("N", "A&B"),
    ("N", "x<y"),
];

#[test]
fn detag_roundtrip_on_random_streams() {
    let net = common::net();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let n = rng.gen_range(0..12);
        let mut elems = Vec::new();
        let mut surfaces = Vec::new();
        for _ in 0..n {
            let (tag, w) = WORDS[rng.gen_range(0..WORDS.len())];
            let esc = w.replace('&', "&amp;").replace('<', "&lt;");
            elems.push(format!("<{tag}>{esc}</{tag}>"));
            surfaces.push(w.to_string());
        }
        let input = elems.join(" ");
        assert_eq!(
            parse_tagged(&input)
                .unwrap()
                .iter()
                .map(|t| t.surface.clone())
                .collect::<Vec<_>>(),
            surfaces
        );
        let out = tag_semantic(&net, &input, &TagOptions::default()).unwrap();
        assert_eq!(detag(&out).unwrap(), surfaces, "{out}");
    }
}
