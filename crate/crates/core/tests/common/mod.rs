#![allow(dead_code)]

use std::path::PathBuf;

use semlex::corpus::{Document, Stoplist};
use semlex::LexNet;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub fn net() -> LexNet {
    LexNet::load(fixture("lexicon.tsv")).expect("fixture lexicon loads")
}

pub fn stoplist() -> Stoplist {
    Stoplist::load(fixture("stoplist.txt")).unwrap()
}

pub fn corpus() -> Vec<Document> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(fixture("corpus"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "txt"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let id = p.file_stem().unwrap().to_string_lossy().to_string();
            Document::parse_raw(id, &std::fs::read_to_string(p).unwrap())
        })
        .collect()
}
