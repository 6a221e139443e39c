//! Text formats for models, weights and solutions.
//!
//! Model: `c` comment lines, a header `p ca <n>`, then `a <id> <s> <t>` for
//! ids `1..=n` with positions in `0..2n`. Weights: `vw <id> <w>` or
//! `ew <id1> <id2> <w>` where `w` is `p/q`, an integer, or `inf`; missing
//! entries weigh 1. Solutions: `s OPTIMAL <p>/<q>` or `s INFEASIBLE`, then
//! `v <id>` or `e <id1> <id2>` lines, then `c trace: ...`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::CircularArcModel;
use crate::verify::{Members, Solution};
use crate::weight::{ExtendedWeight, WeightKind, WeightMap};

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn is_comment(toks: &[(usize, &str)]) -> bool {
    toks.is_empty() || toks[0].1 == "c"
}

fn number(line: usize, (col, tok): (usize, &str), what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(line, col, format!("expected {what}, found `{tok}`")))
}

fn expect_len(line: usize, toks: &[(usize, &str)], len: usize, form: &str) -> Result<()> {
    if toks.len() != len {
        let col = toks.get(len).map_or(toks.last().map_or(1, |t| t.0), |t| t.0);
        return Err(Error::parse(line, col, format!("expected `{form}`")));
    }
    Ok(())
}

pub fn parse_model(text: &str) -> Result<CircularArcModel> {
    let mut n: Option<usize> = None;
    let mut pairs: Vec<Option<(usize, usize)>> = Vec::new();
    let mut used: Vec<bool> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let toks = tokens(raw);
        if is_comment(&toks) {
            continue;
        }
        match toks[0].1 {
            "p" => {
                if n.is_some() {
                    return Err(Error::parse(line, 1, "duplicate header"));
                }
                expect_len(line, &toks, 3, "p ca <n>")?;
                if toks[1].1 != "ca" {
                    return Err(Error::parse(line, toks[1].0, "expected format `ca`"));
                }
                let count = number(line, toks[2], "arc count")?;
                n = Some(count);
                pairs = vec![None; count];
                used = vec![false; 2 * count];
            }
            "a" => {
                let Some(count) = n else {
                    return Err(Error::parse(line, 1, "arc before header `p ca <n>`"));
                };
                expect_len(line, &toks, 4, "a <id> <s> <t>")?;
                let id = number(line, toks[1], "arc id")?;
                if id == 0 || id > count {
                    return Err(Error::parse(line, toks[1].0, format!("arc id {id} outside 1..{count}")));
                }
                if pairs[id - 1].is_some() {
                    return Err(Error::parse(line, toks[1].0, format!("arc {id} defined twice")));
                }
                let mut ends = [0usize; 2];
                for (k, tok) in [toks[2], toks[3]].into_iter().enumerate() {
                    let pos = number(line, tok, "grid position")?;
                    if pos >= 2 * count {
                        return Err(Error::parse(line, tok.0, format!("position {pos} outside 0..{}", 2 * count)));
                    }
                    if used[pos] {
                        return Err(Error::parse(line, tok.0, format!("position {pos} used twice")));
                    }
                    used[pos] = true;
                    ends[k] = pos;
                }
                pairs[id - 1] = Some((ends[0], ends[1]));
            }
            other => {
                return Err(Error::parse(line, toks[0].0, format!("unknown line type `{other}`")));
            }
        }
    }
    let Some(count) = n else {
        return Err(Error::parse(last_line.max(1), 1, "missing header `p ca <n>`"));
    };
    if let Some(missing) = pairs.iter().position(Option::is_none) {
        return Err(Error::parse(last_line.max(1), 1, format!("arc {} of {count} missing", missing + 1)));
    }
    if count == 0 {
        return Ok(CircularArcModel::empty());
    }
    let pairs: Vec<(usize, usize)> = pairs.into_iter().map(Option::unwrap).collect();
    CircularArcModel::from_grid(&pairs)
}

pub fn write_model(model: &CircularArcModel) -> String {
    let mut out = format!("p ca {}\n", model.n());
    for a in model.arcs() {
        writeln!(out, "a {} {} {}", a.id + 1, a.start, a.end).unwrap();
    }
    out
}

/// Parses weights for a graph. The kind comes from the entries, or from
/// `default_kind` when there are none.
pub fn parse_weights(text: &str, g: &Graph, default_kind: WeightKind) -> Result<WeightMap> {
    let mut kind: Option<WeightKind> = None;
    let mut map = WeightMap::unit(default_kind);
    let n = g.vertex_count();
    let vertex = |line: usize, tok: (usize, &str)| -> Result<usize> {
        let id = number(line, tok, "vertex id")?;
        if id == 0 || id > n {
            return Err(Error::parse(line, tok.0, format!("vertex id {id} outside 1..{n}")));
        }
        Ok(id - 1)
    };
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks = tokens(raw);
        if is_comment(&toks) {
            continue;
        }
        let this = match toks[0].1 {
            "vw" => WeightKind::Vertex,
            "ew" => WeightKind::Edge,
            other => return Err(Error::parse(line, toks[0].0, format!("unknown line type `{other}`"))),
        };
        match kind {
            None => {
                kind = Some(this);
                map = WeightMap::unit(this);
            }
            Some(k) if k != this => {
                return Err(Error::parse(line, 1, "vertex and edge weights mixed"));
            }
            _ => {}
        }
        let value_tok = match this {
            WeightKind::Vertex => {
                expect_len(line, &toks, 3, "vw <id> <p>/<q>")?;
                toks[2]
            }
            WeightKind::Edge => {
                expect_len(line, &toks, 4, "ew <id1> <id2> <p>/<q>")?;
                toks[3]
            }
        };
        let value: ExtendedWeight = value_tok
            .1
            .parse()
            .map_err(|e: String| Error::parse(line, value_tok.0, e))?;
        match this {
            WeightKind::Vertex => {
                let v = vertex(line, toks[1])?;
                map.set_vertex(v, value);
            }
            WeightKind::Edge => {
                let u = vertex(line, toks[1])?;
                let v = vertex(line, toks[2])?;
                if !g.has_edge(u, v) {
                    return Err(Error::parse(line, toks[1].0, format!("no edge between {} and {}", u + 1, v + 1)));
                }
                map.set_edge(u, v, value);
            }
        }
    }
    Ok(map)
}

/// Writes the explicit (non-unit) entries.
pub fn write_weights(w: &WeightMap) -> String {
    let mut out = String::new();
    match w.kind() {
        WeightKind::Vertex => {
            for (v, x) in w.vertex_entries() {
                writeln!(out, "vw {} {x}", v + 1).unwrap();
            }
        }
        WeightKind::Edge => {
            for ((u, v), x) in w.edge_entries() {
                writeln!(out, "ew {} {} {x}", u + 1, v + 1).unwrap();
            }
        }
    }
    out
}

pub fn write_solution(sol: &Solution) -> String {
    let mut out = String::new();
    if sol.feasible {
        writeln!(out, "s OPTIMAL {}", sol.value).unwrap();
        match &sol.members {
            Members::Vertices(vs) => {
                for v in vs {
                    writeln!(out, "v {}", v + 1).unwrap();
                }
            }
            Members::Edges(es) => {
                for (u, v) in es {
                    writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
                }
            }
        }
    } else {
        out.push_str("s INFEASIBLE\n");
    }
    if !sol.trace.is_empty() {
        writeln!(out, "c trace: {}", sol.trace.join(" ")).unwrap();
    }
    out
}

fn ids(v: &[usize]) -> String {
    v.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(" ")
}

/// Structural summary of a model, one fact per line: size, edge count,
/// coverage extremes, universal arcs, small circle covers, the cover-based
/// Helly flag and, for coverage between 1 and 2, the cycle and its pendants.
pub fn describe(m: &CircularArcModel) -> Result<String> {
    let mut out = String::new();
    writeln!(out, "n {}", m.n()).unwrap();
    writeln!(out, "m {}", m.edge_count()).unwrap();
    if m.n() == 0 {
        return Ok(out);
    }
    let ext = m.coverage_extremes()?;
    writeln!(out, "coverage min {} segment {}", ext.min, ext.min_segment).unwrap();
    writeln!(out, "coverage max {} segment {}", ext.max, ext.max_segment).unwrap();
    match m.find_universal_arc() {
        Some(u) => writeln!(out, "universal {} of {}", u + 1, m.universal_arcs().len()).unwrap(),
        None => writeln!(out, "universal none").unwrap(),
    }
    match m.find_small_cover(2) {
        Some(c) => writeln!(out, "cover2 {}", ids(&c)).unwrap(),
        None => writeln!(out, "cover2 none").unwrap(),
    }
    match m.find_small_cover(3) {
        Some(c) if c.len() == 3 => writeln!(out, "cover3 {}", ids(&c)).unwrap(),
        Some(_) => writeln!(out, "cover3 implied").unwrap(),
        None => writeln!(out, "cover3 none").unwrap(),
    }
    let hca = m.is_hca_by_cover();
    writeln!(out, "hca {}", if hca { "yes" } else { "no" }).unwrap();
    if hca && ext.min == 1 && ext.max == 2 {
        let cs = m.extract_cycle_structure()?;
        writeln!(out, "cycle {}", ids(&cs.cycle)).unwrap();
        for (leaf, parent) in &cs.pendants {
            writeln!(out, "pendant {} {}", leaf + 1, parent + 1).unwrap();
        }
    }
    Ok(out)
}

/// Reads the members of a solution file; an infeasible solution has none.
/// Returns `None` for the member list when the file says `s INFEASIBLE`.
pub fn parse_solution(text: &str, kind: WeightKind) -> Result<Option<Members>> {
    let mut status: Option<bool> = None;
    let mut vs = Vec::new();
    let mut es = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks = tokens(raw);
        if is_comment(&toks) {
            continue;
        }
        match toks[0].1 {
            "s" => {
                if status.is_some() {
                    return Err(Error::parse(line, 1, "duplicate status line"));
                }
                match toks.get(1).map(|t| t.1) {
                    Some("OPTIMAL") => {
                        expect_len(line, &toks, 3, "s OPTIMAL <p>/<q>")?;
                        toks[2]
                            .1
                            .parse::<ExtendedWeight>()
                            .map_err(|e| Error::parse(line, toks[2].0, e))?;
                        status = Some(true);
                    }
                    Some("INFEASIBLE") => {
                        expect_len(line, &toks, 2, "s INFEASIBLE")?;
                        status = Some(false);
                    }
                    _ => return Err(Error::parse(line, toks.get(1).map_or(2, |t| t.0), "expected OPTIMAL or INFEASIBLE")),
                }
            }
            "v" if kind == WeightKind::Vertex => {
                expect_len(line, &toks, 2, "v <id>")?;
                let id = number(line, toks[1], "vertex id")?;
                if id == 0 {
                    return Err(Error::parse(line, toks[1].0, "ids start at 1"));
                }
                vs.push(id - 1);
            }
            "e" if kind == WeightKind::Edge => {
                expect_len(line, &toks, 3, "e <id1> <id2>")?;
                let u = number(line, toks[1], "vertex id")?;
                let v = number(line, toks[2], "vertex id")?;
                if u == 0 || v == 0 {
                    return Err(Error::parse(line, toks[1].0, "ids start at 1"));
                }
                es.push((u - 1, v - 1));
            }
            other => {
                return Err(Error::parse(line, toks[0].0, format!("unexpected line type `{other}`")));
            }
        }
    }
    match status {
        None => Err(Error::parse(1, 1, "missing status line `s ...`")),
        Some(false) => Ok(None),
        Some(true) => Ok(Some(match kind {
            WeightKind::Vertex => Members::vertices(vs),
            WeightKind::Edge => Members::edges(es),
        })),
    }
}
