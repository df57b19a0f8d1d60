use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use semlex::compound::{
    corpus_affix_table, score_all, split_candidates_with, AffixTable, CompatRules, CompoundSplit, SplitConfig,
};
use semlex::corpus::{section_types, Document, SectionKind, Stoplist};
use semlex::coverage::{render_table, CoverageReport, ReportParts, SectionAnalysis, SectionReport, UncoveredContext};
use semlex::disambig::{learn_profile, FieldProfile};
use semlex::lexnet::{RelationType, WordClass};
use semlex::relations::{
    annotate_phrase, assignment_relations, clause_verb_lemma, frames_for_verb, learn_frame_enrichment, match_frame,
    parse_np, refine_all, Clause, EnrichmentReport, MatchResult, RelationEdgeNP, VerbFrame,
};
use semlex::sections::{classify_section, Classification, SectionProfileSpec};
use semlex::semtag::{tag_semantic, TagOptions};
use semlex::LexNet;

use crate::config::{Format, RunConfig};
use crate::error::CliError;

pub fn load_net(cfg: &RunConfig) -> Result<LexNet, CliError> {
    let path = cfg.lexicon()?;
    LexNet::load(path).map_err(|source| CliError::Lexicon {
        path: path.to_path_buf(),
        source,
    })
}

fn load_stoplist(path: Option<&Path>) -> Result<Stoplist, CliError> {
    match path {
        Some(p) => Stoplist::load(p).map_err(|e| CliError::read(p, e)),
        None => Ok(Stoplist::default()),
    }
}

fn load_rules(cfg: &RunConfig, net: &LexNet) -> Result<CompatRules, CliError> {
    let Some(p) = &cfg.rules else {
        return Ok(CompatRules::default());
    };
    let text = std::fs::read_to_string(p).map_err(|e| CliError::read(p, e))?;
    let rules = CompatRules::parse(&text)?;
    rules.check(net)?;
    Ok(rules)
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::read(path, e))
}

/// Reads every `.txt` file of `dir`, in file-name order.
pub fn load_corpus(dir: &Path) -> Result<Vec<Document>, CliError> {
    let entries = std::fs::read_dir(dir).map_err(|e| CliError::read(dir, e))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(Result::ok)
        .map(|e| e.path())
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "txt"))
        .collect();
    if paths.is_empty() {
        return Err(CliError::Input(format!("{} contains no .txt documents", dir.display())));
    }
    paths.sort();
    paths
        .par_iter()
        .map(|p| {
            let id = p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            Ok(Document::parse_raw(id, &read(p)?))
        })
        .collect()
}

fn emit<T: Serialize>(cfg: &RunConfig, value: &T, table: impl FnOnce(&T) -> String) -> String {
    match cfg.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("output serializes");
            s.push('\n');
            s
        }
        Format::Table => table(value),
    }
}

#[derive(Debug, Serialize)]
pub struct CheckSummary {
    pub synsets: usize,
    pub literals: usize,
    pub variants: usize,
    pub frames: usize,
    pub classes: BTreeMap<WordClass, usize>,
    pub edges: BTreeMap<&'static str, usize>,
}

pub fn check(cfg: &RunConfig) -> Result<String, CliError> {
    let net = load_net(cfg)?;
    let mut classes = BTreeMap::new();
    for s in net.synsets() {
        *classes.entry(s.word_class).or_insert(0) += 1;
    }
    let summary = CheckSummary {
        synsets: net.len(),
        literals: net.literal_count(),
        variants: net.variant_count(),
        frames: net.frame_count(),
        classes,
        edges: RelationType::ALL
            .iter()
            .map(|r| (r.name(), net.edge_count(*r)))
            .collect(),
    };
    Ok(emit(cfg, &summary, |s| {
        let mut rows = vec![
            vec!["synsets".to_string(), s.synsets.to_string()],
            vec!["literals".to_string(), s.literals.to_string()],
            vec!["variants".to_string(), s.variants.to_string()],
            vec!["frames".to_string(), s.frames.to_string()],
        ];
        rows.extend(s.classes.iter().map(|(c, n)| vec![format!("class {c}"), n.to_string()]));
        rows.extend(s.edges.iter().map(|(r, n)| vec![format!("{r} edges"), n.to_string()]));
        render_table(&rows)
    }))
}

pub struct CoverageArgs<'a> {
    pub corpus: &'a Path,
    pub parts: ReportParts,
}

pub fn coverage(cfg: &RunConfig, args: CoverageArgs<'_>) -> Result<String, CliError> {
    let net = load_net(cfg)?;
    let stoplist = load_stoplist(cfg.stoplist.as_deref())?;
    let docs = load_corpus(args.corpus)?;
    let opts = cfg.lookup(false, false);
    let ctx = if args.parts.uncovered {
        Some(UncoveredContext {
            gazetteer: load_stoplist(cfg.gazetteer.as_deref())?,
            affixes: corpus_affix_table(&docs, &stoplist),
            rules: load_rules(cfg, &net)?,
            split: SplitConfig::default(),
            lookup: opts,
        })
    } else {
        None
    };
    let types: Vec<(SectionKind, Vec<String>)> = section_types(&docs, &stoplist)
        .into_iter()
        .filter(|(k, _)| *k != SectionKind::Other)
        .map(|(k, ts)| (k, ts.into_iter().collect()))
        .collect();
    let sections: Vec<SectionReport> = types
        .par_iter()
        .map(|(kind, ts)| {
            let analysis = SectionAnalysis::new(&net, *kind, ts.iter().map(String::as_str), &opts);
            SectionReport::build(&analysis, args.parts, &net, ctx.as_ref())
        })
        .collect();
    let report = CoverageReport { sections };
    Ok(match cfg.format {
        Format::Json => format!("{}\n", report.to_json()),
        Format::Table => report.to_table(),
    })
}

pub struct TagArgs<'a> {
    pub input: &'a Path,
    pub section: SectionKind,
}

pub fn tag(cfg: &RunConfig, args: TagArgs<'_>) -> Result<String, CliError> {
    let net = load_net(cfg)?;
    let profile = match &cfg.profile {
        Some(p) => Some(FieldProfile::load(p)?),
        None => None,
    };
    let opts = TagOptions {
        profile: profile.as_ref(),
        section: args.section,
        depth: cfg.depth,
    };
    let mut out = tag_semantic(&net, read(args.input)?.trim_end(), &opts)?;
    out.push('\n');
    Ok(out)
}

#[derive(Debug, Serialize)]
pub struct NpOutput {
    pub phrase: String,
    pub edges: Vec<RelationEdgeNP>,
}

pub fn np(cfg: &RunConfig, phrase: &str, max_depth: usize) -> Result<String, CliError> {
    let net = load_net(cfg)?;
    let tokens = annotate_phrase(&net, phrase);
    let edges = parse_np(&tokens).map_err(|e| CliError::Input(format!("`{phrase}`: {e}")))?;
    let out = NpOutput {
        phrase: phrase.to_string(),
        edges: refine_all(&net, &edges, max_depth),
    };
    Ok(emit(cfg, &out, |o| o.edges.iter().map(|e| format!("{e}\n")).collect()))
}

pub fn read_clauses(path: &Path) -> Result<Vec<(usize, Clause)>, CliError> {
    read(path)?
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l)
                .map(|c| (i + 1, c))
                .map_err(|e| CliError::Input(format!("{}:{}: {e}", path.display(), i + 1)))
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct FrameOutput {
    pub line: usize,
    pub verb: String,
    #[serde(flatten)]
    pub result: Option<MatchResult>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<RelationEdgeNP>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn describe(result: &MatchResult, clause: &Clause) -> String {
    let show = |a: &semlex::relations::Assignment| {
        let slots: Vec<String> = a
            .slots
            .iter()
            .map(|(s, &i)| format!("{s}={}", clause.complements[i].display()))
            .collect();
        format!("{} [{}]", a.frame, slots.join(", "))
    };
    match result {
        MatchResult::Match { assignment } => format!("match {}", show(assignment)),
        MatchResult::Ambiguous { alternatives } => {
            let alts: Vec<String> = alternatives.iter().map(show).collect();
            format!("ambiguous {}", alts.join(" | "))
        }
        MatchResult::NoMatch => "no match".to_string(),
    }
}

pub fn frames(cfg: &RunConfig, input: &Path, enrichment: bool) -> Result<String, CliError> {
    let net = load_net(cfg)?;
    let clauses = read_clauses(input)?;
    let outputs: Vec<(FrameOutput, String)> = clauses
        .iter()
        .map(|(line, clause)| {
            let verb = clause_verb_lemma(&net, clause);
            let found = frames_for_verb(&net, &verb).map(|fs| {
                let fs: Vec<VerbFrame> = if enrichment {
                    fs
                } else {
                    fs.iter().map(VerbFrame::without_enrichment).collect()
                };
                let result = match_frame(&net, clause, &fs);
                let relations = match &result {
                    MatchResult::Match { assignment } => fs
                        .iter()
                        .find(|f| f.code == assignment.frame)
                        .map(|f| assignment_relations(clause, &verb, f, assignment))
                        .unwrap_or_default(),
                    _ => Vec::new(),
                };
                (result, relations)
            });
            match found {
                Ok((result, relations)) => {
                    let text = format!("{line}: {verb}: {}\n", describe(&result, clause));
                    (
                        FrameOutput {
                            line: *line,
                            verb,
                            result: Some(result),
                            relations,
                            error: None,
                        },
                        text,
                    )
                }
                Err(e) => (
                    FrameOutput {
                        line: *line,
                        verb: verb.clone(),
                        result: None,
                        relations: Vec::new(),
                        error: Some(e.to_string()),
                    },
                    format!("{line}: {verb}: {e}\n"),
                ),
            }
        })
        .collect();
    let (values, lines): (Vec<FrameOutput>, Vec<String>) = outputs.into_iter().unzip();
    Ok(emit(cfg, &values, |_| lines.concat()))
}

pub fn learn_frames(cfg: &RunConfig, input: &Path, verb: &str, frame: &str) -> Result<String, CliError> {
    let net = load_net(cfg)?;
    let clauses: Vec<Clause> = read_clauses(input)?.into_iter().map(|(_, c)| c).collect();
    let frame = VerbFrame::parse(frame).map_err(|e| CliError::Input(e.to_string()))?;
    let report = learn_frame_enrichment(&net, &clauses, verb, &frame);
    Ok(emit(cfg, &report, |r: &EnrichmentReport| {
        let mut rows = vec![vec![
            "slot".to_string(),
            "prep".to_string(),
            "head".to_string(),
            "class".to_string(),
            "count".to_string(),
        ]];
        for (slot, fillers) in &r.slots {
            for f in fillers {
                rows.push(vec![
                    slot.clone(),
                    f.preposition.clone().unwrap_or_default(),
                    f.head.clone(),
                    f.class.clone().unwrap_or_default(),
                    f.count.to_string(),
                ]);
            }
        }
        render_table(&rows)
    }))
}

#[derive(Debug, Serialize)]
pub struct SplitOutput {
    pub word: String,
    pub split: Option<SplitView>,
    pub candidates: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scored: Option<Vec<SplitView>>,
}

#[derive(Debug, Serialize)]
pub struct SplitView {
    pub display: String,
    #[serde(flatten)]
    pub split: CompoundSplit,
}

impl From<CompoundSplit> for SplitView {
    fn from(split: CompoundSplit) -> Self {
        SplitView {
            display: split.to_string(),
            split,
        }
    }
}

pub struct SplitArgs<'a> {
    pub corpus: &'a Path,
    pub words: &'a [String],
    pub config: SplitConfig,
    pub all: bool,
}

pub fn split(cfg: &RunConfig, args: SplitArgs<'_>) -> Result<String, CliError> {
    let net = load_net(cfg)?;
    let stoplist = load_stoplist(cfg.stoplist.as_deref())?;
    let docs = load_corpus(args.corpus)?;
    let affixes: AffixTable = corpus_affix_table(&docs, &stoplist);
    let rules = load_rules(cfg, &net)?;
    let c = &args.config;
    let outputs: Vec<SplitOutput> = args
        .words
        .par_iter()
        .map(|w| {
            let cands = split_candidates_with(&net, w, c.min_part, c.max_parts);
            let candidates = cands.len();
            let scored = score_all(&net, w, cands, &affixes, &rules, c);
            let best = scored.first().filter(|b| b.score >= c.threshold).cloned();
            SplitOutput {
                word: w.clone(),
                split: best.map(SplitView::from),
                candidates,
                scored: args.all.then(|| scored.into_iter().map(SplitView::from).collect()),
            }
        })
        .collect();
    Ok(emit(cfg, &outputs, |os| {
        let mut out = String::new();
        for o in os {
            match &o.split {
                Some(s) => out.push_str(&format!("{}\t{}\t{}\n", o.word, s.display, s.split.score)),
                None => out.push_str(&format!("{}\t-\n", o.word)),
            }
            for s in o.scored.iter().flatten() {
                out.push_str(&format!("  {}\t{}\n", s.display, s.split.score));
            }
        }
        out
    }))
}

#[derive(Debug, Serialize)]
pub struct ClassifyOutput {
    pub file: String,
    /// Kind given by a section marker in the file, if any.
    pub marked: SectionKind,
    pub predicted: String,
    #[serde(flatten)]
    pub classification: Classification,
}

pub fn classify(cfg: &RunConfig, files: &[PathBuf]) -> Result<String, CliError> {
    let net = load_net(cfg)?;
    let spec = match &cfg.spec {
        Some(p) => SectionProfileSpec::load(p)?,
        None => SectionProfileSpec::default_spec(),
    };
    let opts = cfg.lookup(true, true);
    let texts: Vec<(String, String)> = files
        .iter()
        .map(|f| Ok((f.display().to_string(), read(f)?)))
        .collect::<Result<_, CliError>>()?;
    let outputs: Vec<ClassifyOutput> = texts
        .par_iter()
        .flat_map_iter(|(name, text)| {
            let doc = Document::parse_raw(name.clone(), text);
            doc.sections
                .into_iter()
                .map(|s| {
                    let c = classify_section(&net, &s.tokens, &spec, &opts);
                    ClassifyOutput {
                        file: name.clone(),
                        marked: s.kind,
                        predicted: c.label(),
                        classification: c,
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(emit(cfg, &outputs, |os| {
        let mut rows = vec![vec![
            "file".to_string(),
            "marked".to_string(),
            "predicted".to_string(),
            "tokens".to_string(),
        ]];
        for o in os {
            rows.push(vec![
                o.file.clone(),
                o.marked.to_string(),
                o.predicted.clone(),
                o.classification.matched_tokens.to_string(),
            ]);
        }
        render_table(&rows)
    }))
}

pub fn profile(cfg: &RunConfig, corpus: &Path) -> Result<String, CliError> {
    let net = load_net(cfg)?;
    let stoplist = load_stoplist(cfg.stoplist.as_deref())?;
    let docs = load_corpus(corpus)?;
    let p = learn_profile(&net, &docs, &stoplist, &cfg.lookup(false, true))?;
    Ok(match cfg.format {
        Format::Json => format!("{}\n", p.to_json()),
        Format::Table => {
            let mut rows = vec![vec!["section".to_string(), "field".to_string(), "weight".to_string()]];
            for (kind, weights) in &p.sections {
                let mut sorted: Vec<_> = weights.iter().collect();
                sorted.sort_by(|a, b| b.1.total_cmp(a.1).then_with(|| a.0.cmp(b.0)));
                for (f, w) in sorted {
                    rows.push(vec![kind.to_string(), f.to_string(), w.to_string()]);
                }
            }
            render_table(&rows)
        }
    })
}
