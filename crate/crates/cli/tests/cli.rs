use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;

use jsonschema::JSONSchema;
use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> String {
    root().join("fixtures").join(name).to_string_lossy().into_owned()
}

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn semlex(args: &[&str]) -> Out {
    let out = Command::new(env!("CARGO_BIN_EXE_semlex")).args(args).output().unwrap();
    Out {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn with_config(args: &[&str]) -> Out {
    let cfg = fixture("semlex.toml");
    let mut all = vec!["--config", cfg.as_str()];
    all.extend_from_slice(args);
    semlex(&all)
}

fn json(out: &Out) -> Value {
    assert_eq!(out.code, 0, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn assert_schema(name: &str, value: &Value) {
    let path = root().join("schemas").join(format!("{name}.schema.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let compiled = JSONSchema::compile(&schema).unwrap();
    let msgs: Vec<String> = match compiled.validate(value) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    assert!(msgs.is_empty(), "{name} schema violations: {msgs:?}");
}

#[test]
fn check_reports_counts() {
    let v = json(&semlex(&["check", &fixture("lexicon.tsv")]));
    assert_schema("check", &v);
    assert_eq!(v["edges"]["meronym"], 8);
    assert_eq!(v["edges"]["hypernym"], v["edges"]["hyponym"]);
}

#[test]
fn check_rejects_broken_lexicons() {
    let cyc = semlex(&["check", &fixture("cyclic.tsv")]);
    assert_eq!(cyc.code, 1);
    assert!(
        cyc.stderr.contains("Cycle detected") && cyc.stderr.contains("A -> B"),
        "{}",
        cyc.stderr
    );
    let dangling = semlex(&["check", &fixture("dangling.tsv")]);
    assert_eq!(dangling.code, 1);
    assert!(dangling.stderr.contains("organ"), "{}", dangling.stderr);
    let missing = semlex(&["check", "/nonexistent/lexicon.tsv"]);
    assert_eq!(missing.code, 2);
}

#[test]
fn coverage_matches_golden() {
    let out = with_config(&["coverage", &fixture("corpus"), "--by-class", "--ambiguity"]);
    let v = json(&out);
    assert_schema("coverage", &v);
    let golden: Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("golden/coverage.json")).unwrap()).unwrap();
    assert_eq!(v, golden);
}

/// Exact literal or variant membership, the plain-lookup matching rule.
fn oracle_matches(words: &[String]) -> usize {
    let text = std::fs::read_to_string(fixture("lexicon.tsv")).unwrap();
    let mut known = BTreeSet::new();
    for line in text.lines() {
        let f: Vec<&str> = line.split('\t').collect();
        match f.as_slice() {
            ["L", _, lit, ..] => {
                known.insert(lit.to_string());
            }
            ["V", surface, _] => {
                known.insert(surface.to_string());
            }
            _ => {}
        }
    }
    words.iter().filter(|w| known.contains(*w)).count()
}

#[test]
fn golden_matches_come_from_plain_membership() {
    let golden: Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("golden/coverage.json")).unwrap()).unwrap();
    // collect candidate types per section straight from the corpus files
    let stop: BTreeSet<String> = std::fs::read_to_string(fixture("stoplist.txt"))
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| l.trim().to_lowercase())
        .collect();
    let mut per_section: std::collections::BTreeMap<String, Vec<String>> = Default::default();
    let mut names: Vec<_> = std::fs::read_dir(fixture("corpus"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    names.sort();
    for p in names {
        let mut current = "Other".to_string();
        for line in std::fs::read_to_string(p).unwrap().lines() {
            let t = line.trim();
            if t.starts_with("==") && t.ends_with("==") {
                let name = t.trim_matches('=').trim().to_lowercase();
                current = format!("{}{}", name[..1].to_uppercase(), &name[1..]);
                continue;
            }
            let types = per_section.entry(current.clone()).or_default();
            for w in t.split(|c: char| c.is_whitespace() || ",;:()".contains(c)) {
                let w = w.trim_end_matches(['.', '!', '?']);
                if w.chars().count() > 3 && !stop.contains(&w.to_lowercase()) && !types.contains(&w.to_string()) {
                    types.push(w.to_string());
                }
            }
        }
    }
    for s in golden["sections"].as_array().unwrap() {
        let name = s["section"].as_str().unwrap();
        let types = &per_section[name];
        assert_eq!(s["matches"].as_u64().unwrap() as usize, oracle_matches(types), "{name}");
    }
}

#[test]
fn empty_corpus_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = with_config(&["coverage", dir.path().to_str().unwrap()]);
    assert_eq!(out.code, 2);
}

#[test]
fn coverage_toggles_and_tables() {
    let corpus = fixture("corpus");
    let plain = json(&with_config(&["coverage", &corpus]));
    let full = json(&with_config(&["coverage", &corpus, "--morph", "--umlauts"]));
    for (a, b) in plain["sections"]
        .as_array()
        .unwrap()
        .iter()
        .zip(full["sections"].as_array().unwrap())
    {
        assert!(a["matches"].as_u64() <= b["matches"].as_u64());
        assert!(a.get("classes").is_none());
    }
    let table = with_config(&["coverage", &corpus, "--format", "table", "--uncovered"]);
    assert_eq!(table.code, 0);
    assert!(table.stdout.starts_with("section"));
    assert!(table.stdout.contains("Misspelling"));
    let amb = json(&with_config(&["ambiguity", &corpus]));
    assert_schema("coverage", &amb);
    assert!(amb["sections"][0].get("senses").is_some());
}

#[test]
fn tag_reproduces_listings() {
    for name in ["leber_niere", "gewicht_herz"] {
        let out = with_config(&["tag", &fixture(&format!("{name}.tagged"))]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let expected = std::fs::read_to_string(fixture(&format!("{name}.expected"))).unwrap();
        assert_eq!(out.stdout.trim_end(), expected.trim_end());
    }
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.tagged");
    std::fs::write(&bad, "<N>Herz</ADJ>").unwrap();
    assert_eq!(with_config(&["tag", bad.to_str().unwrap()]).code, 2);
}

#[test]
fn np_refines_genitive() {
    let v = json(&with_config(&["np", "unauffaelliger Vorhof des Herzens"]));
    assert_schema("np", &v);
    assert_eq!(v["edges"][1]["kind"], "part-of");
    assert_eq!(v["edges"][1]["head"], "Vorhof");
    assert_eq!(v["edges"][1]["dependent"], "Herz");
    assert_eq!(with_config(&["np", "blass und"]).code, 2);
}

#[test]
fn frames_output() {
    let v = json(&with_config(&["frames", &fixture("clauses.jsonl")]));
    assert_schema("frames", &v);
    let results: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["result"].as_str().unwrap())
        .collect();
    assert_eq!(results, vec!["match", "match", "match", "match", "no-match", "match"]);
    let bare = json(&with_config(&["frames", &fixture("clauses.jsonl"), "--no-enrichment"]));
    assert_schema("frames", &bare);
    assert_eq!(bare[1]["result"], "ambiguous");
    assert_eq!(bare[1]["alternatives"].as_array().unwrap().len(), 2);
    let learned = json(&with_config(&[
        "frames",
        &fixture("clauses.jsonl"),
        "--learn",
        "operieren",
        "--frame",
        "NN.AN.BL",
    ]));
    assert_schema("enrichment", &learned);
    assert_eq!(learned["slots"]["BL"][0]["head"], "KKH");
}

#[test]
fn split_output() {
    let v = json(&with_config(&[
        "split",
        &fixture("corpus"),
        "Lebertransport",
        "Transport",
        "--all",
    ]));
    assert_schema("split", &v);
    assert_eq!(v[0]["split"]["display"], "[Leber][transport]");
    assert_eq!(v[1]["split"], Value::Null);
}

#[test]
fn classify_sections_of_fixture_files() {
    let v = json(&with_config(&["classify-section", &fixture("corpus/protokoll1.txt")]));
    assert_schema("classify", &v);
    let marked: Vec<(&str, &str)> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["marked"].as_str().unwrap(), c["predicted"].as_str().unwrap()))
        .collect();
    assert!(marked.contains(&("Findings", "Findings")));
    assert!(marked.contains(&("Background", "Background")));
    assert!(marked.contains(&("Discussion", "Discussion")));
}

#[test]
fn profile_learns_and_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("profile.json");
    let out = with_config(&["profile", &fixture("corpus"), "-o", out_path.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_schema("profile", &v);
    assert_eq!(v["provenance"], "learned");
    // the written profile is accepted back for tagging
    let tagged = with_config(&[
        "tag",
        &fixture("leber_niere.tagged"),
        "--profile",
        out_path.to_str().unwrap(),
        "--section",
        "Findings",
    ]);
    assert_eq!(tagged.code, 0, "{}", tagged.stderr);
    assert!(
        tagged.stdout.contains("TYPE=\"Verdauungsorgan; Innerei\""),
        "{}",
        tagged.stdout
    );
}

#[test]
fn flags_override_config_and_validate() {
    let out = with_config(&["--lexicon", &fixture("cyclic.tsv"), "check"]);
    assert_eq!(out.code, 1);
    assert_eq!(with_config(&["--depth", "0", "check"]).code, 1);
    assert_eq!(with_config(&["--stoplist", "/nope.txt", "check"]).code, 2);
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "lexikon = 'x'\n").unwrap();
    assert_eq!(semlex(&["--config", cfg.to_str().unwrap(), "check"]).code, 1);
}

#[test]
fn config_paths_are_relative_to_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let lex = dir.path().join("sub");
    std::fs::create_dir(&lex).unwrap();
    std::fs::copy(fixture("lexicon.tsv"), lex.join("net.tsv")).unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "lexicon = \"sub/net.tsv\"\nformat = \"table\"\n").unwrap();
    let out = semlex(&["--config", cfg.to_str().unwrap(), "check"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("synsets"));
    assert!(!out.stdout.trim_start().starts_with('{'));
}

#[test]
fn output_is_deterministic_across_job_counts() {
    let corpus = fixture("corpus");
    let args = |jobs: &'static str| {
        with_config(&[
            "--jobs",
            jobs,
            "coverage",
            &corpus,
            "--by-class",
            "--ambiguity",
            "--uncovered",
        ])
        .stdout
    };
    let one = args("1");
    assert!(!one.is_empty());
    assert_eq!(one, args("4"));
    assert_eq!(one, args("1"));
}

#[test]
fn unknown_files_are_input_errors() {
    assert_eq!(with_config(&["frames", "/nope.jsonl"]).code, 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("c.jsonl");
    std::fs::write(&bad, "{\"verb\": 3}\n").unwrap();
    assert_eq!(with_config(&["frames", bad.to_str().unwrap()]).code, 2);
    assert!(Path::new(&fixture("semlex.toml")).is_file());
}
