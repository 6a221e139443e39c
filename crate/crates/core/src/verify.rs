//! Problem definitions, solutions, and definition-level checking.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::weight::{ExtendedWeight, WeightKind, WeightMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Problem {
    /// Efficient vertex domination (perfect code).
    Mwevd,
    /// Efficient edge domination (dominating induced matching).
    Mweed,
    /// Perfect vertex domination.
    Mwpvd,
    /// Perfect edge domination.
    Mwped,
}

impl Problem {
    pub const ALL: [Problem; 4] = [Problem::Mwevd, Problem::Mweed, Problem::Mwpvd, Problem::Mwped];

    pub fn kind(self) -> WeightKind {
        match self {
            Problem::Mwevd | Problem::Mwpvd => WeightKind::Vertex,
            Problem::Mweed | Problem::Mwped => WeightKind::Edge,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Problem::Mwevd => "mwevd",
            Problem::Mweed => "mweed",
            Problem::Mwpvd => "mwpvd",
            Problem::Mwped => "mwped",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Problem {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Problem::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown problem `{s}`"))
    }
}

/// Chosen vertices, or chosen edges as `(min, max)` vertex pairs. Always sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Members {
    Vertices(Vec<usize>),
    Edges(Vec<(usize, usize)>),
}

impl Members {
    pub fn vertices(mut v: Vec<usize>) -> Self {
        v.sort_unstable();
        v.dedup();
        Members::Vertices(v)
    }

    pub fn edges(e: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut e: Vec<_> = e.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        e.sort_unstable();
        e.dedup();
        Members::Edges(e)
    }

    pub fn empty(kind: WeightKind) -> Self {
        match kind {
            WeightKind::Vertex => Members::Vertices(Vec::new()),
            WeightKind::Edge => Members::Edges(Vec::new()),
        }
    }

    pub fn kind(&self) -> WeightKind {
        match self {
            Members::Vertices(_) => WeightKind::Vertex,
            Members::Edges(_) => WeightKind::Edge,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Members::Vertices(v) => v.len(),
            Members::Edges(e) => e.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub feasible: bool,
    pub members: Members,
    pub value: ExtendedWeight,
    /// Case labels of the dispatch path, outermost first.
    pub trace: Vec<String>,
}

impl Solution {
    pub fn infeasible(kind: WeightKind) -> Self {
        Solution {
            feasible: false,
            members: Members::empty(kind),
            value: ExtendedWeight::Infinite,
            trace: Vec::new(),
        }
    }

    pub fn found(members: Members, value: ExtendedWeight) -> Self {
        if value.is_infinite() {
            return Solution::infeasible(members.kind());
        }
        Solution {
            feasible: true,
            members,
            value,
            trace: Vec::new(),
        }
    }

    pub fn traced(mut self, label: &str) -> Self {
        self.trace.insert(0, label.to_string());
        self
    }

    /// Keeps the cheaper of two solutions; ties keep `self`.
    pub fn min(self, other: Solution) -> Solution {
        if other.value < self.value {
            other
        } else {
            self
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub feasible: bool,
    pub value: ExtendedWeight,
    pub violation: Option<String>,
}

fn vertex_label(v: usize) -> String {
    format!("v{}", v + 1)
}

fn edge_label((u, v): (usize, usize)) -> String {
    format!("e({},{})", u + 1, v + 1)
}

/// Checks `candidate` against the definition of `problem` on `g` and sums its
/// weight. Vertices inside the candidate are exempt from the exactly-one rule.
pub fn verify(problem: Problem, g: &Graph, w: &WeightMap, candidate: &Members) -> Result<Verdict> {
    if candidate.kind() != problem.kind() {
        return Err(Error::KindMismatch(format!(
            "{problem} expects {:?} members",
            problem.kind()
        )));
    }
    let n = g.vertex_count();
    let violation = match candidate {
        Members::Vertices(set) => {
            if let Some(&bad) = set.iter().find(|&&v| v >= n) {
                return Err(Error::UnknownId(vertex_label(bad)));
            }
            let mut inside = vec![false; n];
            for &v in set {
                inside[v] = true;
            }
            check_vertices(problem, g, &inside)
        }
        Members::Edges(set) => {
            if let Some(&bad) = set.iter().find(|&&(u, v)| !g.has_edge(u, v)) {
                return Err(Error::UnknownId(edge_label(bad)));
            }
            let mut inside = vec![false; g.edge_count()];
            for &(u, v) in set {
                inside[g.edge_id(u, v).unwrap()] = true;
            }
            check_edges(problem, g, &inside)
        }
    };
    let value = match candidate {
        Members::Vertices(set) => set.iter().map(|&v| w.vertex(v)).sum(),
        Members::Edges(set) => set.iter().map(|&(u, v)| w.edge(u, v)).sum(),
    };
    Ok(Verdict {
        feasible: violation.is_none(),
        value,
        violation,
    })
}

fn check_vertices(problem: Problem, g: &Graph, inside: &[bool]) -> Option<String> {
    for v in 0..g.vertex_count() {
        let hits = g.neighbors(v).iter().filter(|&&u| inside[u]).count();
        if inside[v] {
            if problem == Problem::Mwevd && hits > 0 {
                return Some(format!("{} has a chosen neighbor", vertex_label(v)));
            }
        } else if hits == 0 {
            return Some(format!("{} is not dominated", vertex_label(v)));
        } else if hits > 1 {
            return Some(format!("{} dominated {hits} times", vertex_label(v)));
        }
    }
    None
}

fn check_edges(problem: Problem, g: &Graph, inside: &[bool]) -> Option<String> {
    // number of chosen edges at each vertex
    let mut load = vec![0usize; g.vertex_count()];
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        if inside[id] {
            load[u] += 1;
            load[v] += 1;
        }
    }
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        if inside[id] {
            if problem == Problem::Mweed && (load[u] > 1 || load[v] > 1) {
                return Some(format!("{} meets another chosen edge", edge_label((u, v))));
            }
            continue;
        }
        let hits = load[u] + load[v];
        if hits == 0 {
            return Some(format!("{} is not dominated", edge_label((u, v))));
        } else if hits > 1 {
            return Some(format!("{} dominated {hits} times", edge_label((u, v))));
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Black,
    Gray,
    White,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeColoring {
    pub color: Vec<Color>,
}

/// `D` = endpoints of the chosen edges; black = `N[v]` inside `D`, gray = rest
/// of `D`, white = outside `D`.
pub fn coloring_of(g: &Graph, dominating_edges: &[(usize, usize)]) -> ThreeColoring {
    let n = g.vertex_count();
    let mut in_d = vec![false; n];
    for &(u, v) in dominating_edges {
        in_d[u] = true;
        in_d[v] = true;
    }
    let color = (0..n)
        .map(|v| {
            if !in_d[v] {
                Color::White
            } else if g.neighbors(v).iter().all(|&u| in_d[u]) {
                Color::Black
            } else {
                Color::Gray
            }
        })
        .collect();
    ThreeColoring { color }
}

/// Every gray vertex has exactly one non-white neighbor, and every white
/// vertex has only gray neighbors. Isolated white vertices pass.
pub fn check_p1_p2(g: &Graph, c: &ThreeColoring) -> std::result::Result<(), String> {
    for v in 0..g.vertex_count() {
        match c.color[v] {
            Color::Gray => {
                let k = g
                    .neighbors(v)
                    .iter()
                    .filter(|&&u| c.color[u] != Color::White)
                    .count();
                if k != 1 {
                    return Err(format!(
                        "gray {} has {k} non-white neighbors",
                        vertex_label(v)
                    ));
                }
            }
            Color::White => {
                if let Some(&u) = g.neighbors(v).iter().find(|&&u| c.color[u] != Color::Gray) {
                    return Err(format!(
                        "white {} has non-gray neighbor {}",
                        vertex_label(v),
                        vertex_label(u)
                    ));
                }
            }
            Color::Black => {}
        }
    }
    Ok(())
}
