//! LSN-TSV reader.
//!
//! UTF-8, one record per line, tab-separated, `#` starts a comment line:
//!
//! ```text
//! S  id  pos  semantic-field
//! L  id  literal  [marker]
//! R  hyper|mero  src-id  dst-id
//! V  surface  canonical-surface
//! F  id  frame-code
//! X  id  frame-code  slot  key=val[,key=val...]
//! ```
//!
//! `R hyper a b` makes `b` a hypernym of `a`; `R mero a b` makes `b` a part
//! of `a`. Inverse edges are added by the loader.

use std::collections::HashMap;

use thiserror::Error;

use super::{LexNet, Literal, RelationType, SemanticField, Synset, WordClass};
use crate::relations::{Enrichment, VerbFrame};

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read lexicon: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("line {line}: Synset {id} not found")]
    DanglingReference { id: String, line: usize },
    #[error("Error Cycle detected: {}", .path.join(" -> "))]
    CycleDetected { path: Vec<String> },
    #[error("line {line}: duplicate synset id `{id}`")]
    DuplicateSynsetId { id: String, line: usize },
    #[error("synset `{id}` has no literals")]
    EmptySynset { id: String },
}

fn parse_err(line: usize, reason: impl Into<String>) -> LoadError {
    LoadError::Parse {
        line,
        reason: reason.into(),
    }
}

struct Rec<'a> {
    line: usize,
    fields: Vec<&'a str>,
}

pub(super) fn parse(text: &str) -> Result<LexNet, LoadError> {
    let mut synset_recs = Vec::new();
    let mut literal_recs = Vec::new();
    let mut relation_recs = Vec::new();
    let mut variant_recs = Vec::new();
    let mut frame_recs = Vec::new();
    let mut enrich_recs = Vec::new();

    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        if raw.trim().is_empty() || raw.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = raw.split('\t').collect();
        let (arity, bucket) = match fields[0] {
            "S" => ((4, 4), &mut synset_recs),
            "L" => ((3, 4), &mut literal_recs),
            "R" => ((4, 4), &mut relation_recs),
            "V" => ((3, 3), &mut variant_recs),
            "F" => ((3, 3), &mut frame_recs),
            "X" => ((5, 5), &mut enrich_recs),
            other => return Err(parse_err(line, format!("unknown record type `{other}`"))),
        };
        if fields.len() < arity.0 || fields.len() > arity.1 {
            return Err(parse_err(
                line,
                format!(
                    "`{}` record expects {} fields, found {}",
                    fields[0],
                    arity.0,
                    fields.len()
                ),
            ));
        }
        if fields[1..].iter().take(arity.0 - 1).any(|f| f.trim().is_empty()) {
            return Err(parse_err(line, "empty field"));
        }
        bucket.push(Rec { line, fields });
    }

    let mut synsets = Vec::with_capacity(synset_recs.len());
    let mut lines: HashMap<&str, usize> = HashMap::new();
    for rec in &synset_recs {
        let id = rec.fields[1].trim();
        if lines.insert(id, rec.line).is_some() {
            return Err(LoadError::DuplicateSynsetId {
                id: id.to_string(),
                line: rec.line,
            });
        }
        let word_class: WordClass = rec.fields[2]
            .trim()
            .parse()
            .map_err(|e: String| parse_err(rec.line, e))?;
        let field = SemanticField::new(rec.fields[3]).map_err(|e| parse_err(rec.line, e.to_string()))?;
        if field.word_class() != word_class {
            return Err(parse_err(
                rec.line,
                format!("semantic field `{field}` does not belong to word class {word_class}"),
            ));
        }
        synsets.push(Synset {
            id: id.to_string(),
            word_class,
            field,
            literals: Vec::new(),
            frames: Vec::new(),
        });
    }
    synsets.sort_by(|a, b| a.id.cmp(&b.id));
    let by_id: HashMap<String, usize> = synsets.iter().enumerate().map(|(i, s)| (s.id.clone(), i)).collect();
    let resolve = |id: &str, line: usize| {
        by_id
            .get(id.trim())
            .copied()
            .ok_or_else(|| LoadError::DanglingReference {
                id: id.trim().to_string(),
                line,
            })
    };

    for rec in &literal_recs {
        let i = resolve(rec.fields[1], rec.line)?;
        let marker = rec.fields.get(3).map(|m| m.trim()).filter(|m| !m.is_empty());
        synsets[i].literals.push(Literal {
            surface: rec.fields[2].trim().to_string(),
            marker: marker.map(str::to_string),
        });
    }
    if let Some(s) = synsets.iter().find(|s| s.literals.is_empty()) {
        return Err(LoadError::EmptySynset { id: s.id.clone() });
    }

    for rec in &frame_recs {
        let i = resolve(rec.fields[1], rec.line)?;
        if synsets[i].word_class != WordClass::Verb {
            return Err(parse_err(
                rec.line,
                format!("frame on non-verb synset `{}`", synsets[i].id),
            ));
        }
        let frame = VerbFrame::parse(rec.fields[2].trim()).map_err(|e| parse_err(rec.line, e.to_string()))?;
        if synsets[i].frames.iter().any(|f| f.code == frame.code) {
            return Err(parse_err(rec.line, format!("duplicate frame `{}`", frame.code)));
        }
        synsets[i].frames.push(frame);
    }

    for rec in &enrich_recs {
        let i = resolve(rec.fields[1], rec.line)?;
        let code = rec.fields[2].trim();
        let enrichment = Enrichment::parse(rec.fields[4]).map_err(|e| parse_err(rec.line, e.to_string()))?;
        if let Some(role) = &enrichment.semantic_role {
            resolve(role, rec.line)?;
        }
        let frame = synsets[i]
            .frames
            .iter_mut()
            .find(|f| f.code == code)
            .ok_or_else(|| parse_err(rec.line, format!("no frame `{code}` declared for this synset")))?;
        frame
            .enrich(rec.fields[3].trim(), enrichment)
            .map_err(|e| parse_err(rec.line, e.to_string()))?;
    }

    let n = synsets.len();
    let mut edges: [Vec<Vec<usize>>; 4] = std::array::from_fn(|_| vec![Vec::new(); n]);
    for rec in &relation_recs {
        let rel = match rec.fields[1].trim() {
            "hyper" => RelationType::Hypernym,
            "mero" => RelationType::Meronym,
            other => return Err(parse_err(rec.line, format!("unknown relation type `{other}`"))),
        };
        let src = resolve(rec.fields[2], rec.line)?;
        let dst = resolve(rec.fields[3], rec.line)?;
        if synsets[src].word_class != synsets[dst].word_class {
            return Err(parse_err(rec.line, "relation crosses word classes"));
        }
        edges[rel as usize][src].push(dst);
        edges[rel.inverse() as usize][dst].push(src);
    }
    for adj in edges.iter_mut().flat_map(|per_rel| per_rel.iter_mut()) {
        adj.sort_unstable();
        adj.dedup();
    }

    if let Some(cycle) = find_cycle(&edges[RelationType::Hypernym as usize]) {
        return Err(LoadError::CycleDetected {
            path: cycle.into_iter().map(|i| synsets[i].id.clone()).collect(),
        });
    }

    let mut literals: HashMap<String, Vec<usize>> = HashMap::new();
    for (i, s) in synsets.iter().enumerate() {
        for lit in &s.literals {
            let entry = literals.entry(lit.surface.clone()).or_default();
            if entry.last() != Some(&i) {
                entry.push(i);
            }
        }
    }

    let mut variants = HashMap::new();
    for rec in &variant_recs {
        let surface = rec.fields[1].trim();
        let canonical = rec.fields[2].trim();
        if !literals.contains_key(canonical) {
            return Err(LoadError::DanglingReference {
                id: canonical.to_string(),
                line: rec.line,
            });
        }
        if surface != canonical {
            variants.insert(surface.to_string(), canonical.to_string());
        }
    }

    Ok(LexNet {
        synsets,
        by_id,
        edges,
        literals,
        variants,
    })
}

/// Iterative DFS; returns the node sequence of the first back edge's cycle.
fn find_cycle(adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        White,
        Grey,
        Black,
    }
    let mut mark = vec![Mark::White; adj.len()];
    for root in 0..adj.len() {
        if mark[root] != Mark::White {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        mark[root] = Mark::Grey;
        while let Some(&mut (node, ref mut next)) = stack.last_mut() {
            if let Some(&child) = adj[node].get(*next) {
                *next += 1;
                match mark[child] {
                    Mark::White => {
                        mark[child] = Mark::Grey;
                        stack.push((child, 0));
                    }
                    Mark::Grey => {
                        let start = stack.iter().position(|&(n, _)| n == child).unwrap();
                        return Some(stack[start..].iter().map(|&(n, _)| n).collect());
                    }
                    Mark::Black => {}
                }
            } else {
                mark[node] = Mark::Black;
                stack.pop();
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    const HERZ: &str = "S\therz\tN\tnomen.Koerper\nL\therz\tHerz\n\
                        S\tvorhof\tN\tnomen.Koerper\nL\tvorhof\tVorhof\n\
                        R\tmero\therz\tvorhof\n";

    #[test]
    fn loads_and_materializes_inverse() {
        let net = LexNet::parse(HERZ).unwrap();
        assert_eq!(net.len(), 2);
        assert_eq!(net.edge_count(RelationType::Meronym), 1);
        assert_eq!(net.edge_count(RelationType::Holonym), 1);
        let total: usize = RelationType::ALL.iter().map(|r| net.edge_count(*r)).sum();
        assert_eq!(total, 2);
        assert_eq!(net.related("vorhof", RelationType::Holonym).unwrap()[0].id, "herz");
    }

    #[test]
    fn two_cycle_is_reported() {
        let text = "S\tA\tN\tnomen.X\nL\tA\ta\nS\tB\tN\tnomen.X\nL\tB\tb\n\
                    R\thyper\tA\tB\nR\thyper\tB\tA\n";
        match LexNet::parse(text) {
            Err(LoadError::CycleDetected { path }) => assert_eq!(path, vec!["A", "B"]),
            other => panic!("expected cycle, got {other:?}"),
        }
    }

    #[test]
    fn self_loop_is_a_cycle() {
        let text = "S\tA\tN\tnomen.X\nL\tA\ta\nR\thyper\tA\tA\n";
        assert!(matches!(
            LexNet::parse(text),
            Err(LoadError::CycleDetected { path }) if path == vec!["A"]
        ));
    }

    #[test]
    fn dangling_and_duplicate_ids() {
        let dangling = format!("{HERZ}R\thyper\therz\torgan\n");
        match LexNet::parse(&dangling) {
            Err(LoadError::DanglingReference { id, line }) => {
                assert_eq!(id, "organ");
                assert_eq!(line, 6);
            }
            other => panic!("{other:?}"),
        }
        let dup = format!("{HERZ}S\therz\tN\tnomen.Koerper\n");
        assert!(matches!(LexNet::parse(&dup), Err(LoadError::DuplicateSynsetId { id, .. }) if id == "herz"));
        assert!(matches!(
            LexNet::parse("L\tnowhere\tx\n"),
            Err(LoadError::DanglingReference { .. })
        ));
    }

    #[test]
    fn malformed_records() {
        let cases = [
            "S\ta\tN\n",
            "Q\ta\n",
            "S\ta\tN\tverb.Lokation\nL\ta\tx\n",
            "S\ta\tZ\tnomen.X\nL\ta\tx\n",
            "S\ta\tN\tKoerper\nL\ta\tx\n",
            "S\ta\tN\tnomen.X\nL\ta\tx\nR\tanto\ta\ta\n",
            "S\ta\tN\tnomen.X\nL\ta\tx\nF\ta\tNN\n",
            "S\ta\tV\tverb.X\nL\ta\tx\nF\ta\tN\n",
            "S\ta\tV\tverb.X\nL\ta\tx\nF\ta\tNN\nX\ta\tNN.AN\tNN\tcase=dat\n",
            "S\ta\tN\tnomen.X\nL\ta\tx\nS\tb\tV\tverb.X\nL\tb\ty\nR\thyper\ta\tb\n",
        ];
        for text in cases {
            assert!(matches!(LexNet::parse(text), Err(LoadError::Parse { .. })), "{text:?}");
        }
        assert!(matches!(
            LexNet::parse("S\ta\tN\tnomen.X\n"),
            Err(LoadError::EmptySynset { id }) if id == "a"
        ));
    }

    #[test]
    fn comments_markers_and_variants() {
        let text = "# comment\n\
                    S\tm\tN\tnomen.Artefakt\nL\tm\tMessgeraet\nL\tm\tMessgeraet\t*o\n\
                    S\tv\tADJ\tadj.Form\nL\tv\tviereckig\nV\t4-eckig\tviereckig\n";
        let net = LexNet::parse(text).unwrap();
        let m = net.synset("m").unwrap();
        assert_eq!(m.literals[1].marker.as_deref(), Some("*o"));
        assert_eq!(net.literal_count(), 3);
        assert_eq!(net.variant_count(), 1);
        assert!(matches!(
            LexNet::parse("V\tx\ty\n"),
            Err(LoadError::DanglingReference { id, .. }) if id == "y"
        ));
    }

    #[test]
    fn frames_and_enrichments() {
        let text = "S\top\tV\tverb.Veraenderung\nL\top\toperieren\n\
                    S\tkt\tN\tnomen.Koerper\nL\tkt\tKörperteil\n\
                    F\top\tNN.AN\nF\top\tNN.AN.BL\n\
                    X\top\tNN.AN.BL\tBL\tsemantic_role=kt,preposition=am,case=dat\n";
        let net = LexNet::parse(text).unwrap();
        let op = net.synset("op").unwrap();
        assert_eq!(op.frames.len(), 2);
        let bl = op.frames[1].enrichment("BL").unwrap();
        assert_eq!(bl.semantic_role.as_deref(), Some("kt"));

        let bad_role = text.replace("semantic_role=kt", "semantic_role=nope");
        assert!(matches!(LexNet::parse(&bad_role), Err(LoadError::DanglingReference { id, .. }) if id == "nope"));
    }

    #[test]
    fn find_cycle_on_dag_is_none() {
        let adj = vec![vec![1, 2], vec![2], vec![]];
        assert_eq!(find_cycle(&adj), None);
        let adj = vec![vec![1], vec![2], vec![1]];
        assert_eq!(find_cycle(&adj), Some(vec![1, 2]));
    }
}
