//! Minimum-weight perfect edge domination.
//!
//! A perfect edge dominating set is always induced by a vertex labeling:
//! `D` are the endpoints of chosen edges and the set is `E(G[D])`. Every
//! sub-case below produces such a labeling on the original arcs, which is
//! then re-checked on the original graph.

use crate::error::{Error, Result};
use crate::exact::{interval_labels, solve_cycle_dp, CycleStructure};
use crate::graph::Graph;
use crate::labeling::Rule;
use crate::model::CircularArcModel;
use crate::surgery::{cut_at, insert_arcs, Placement, RawPoint, RoleTag, SurgeryMap};
use crate::verify::{Members, Problem, Solution};
use crate::weight::{ExtendedWeight, WeightKind, WeightMap};

use super::{better, checked_candidate, induced_edges, solve_mweed};

/// Minimum-weight perfect edge dominating set. `E` itself always qualifies,
/// so the answer is feasible unless every candidate has an infinite edge.
///
/// Trace labels: `ped-empty`, `ped-two-cover` (two arcs cover the circle),
/// `ped-three-cover`, `ped-interval`, `ped-clique-split` (a point on four or
/// more arcs), `ped-triangle` (coverage three), `ped-cycle` (coverage at most
/// two), followed by `ped-all-edges` or `ped-dim` when that baseline
/// candidate won.
pub fn solve_mwped(model: &CircularArcModel, w: &WeightMap) -> Result<Solution> {
    let n = model.n();
    if n == 0 {
        return Ok(Solution::found(Members::Edges(Vec::new()), ExtendedWeight::zero()).traced("ped-empty"));
    }
    let g = Graph::from_model(model);
    let all = checked_candidate(Problem::Mwped, &g, w, Members::edges(g.edges().iter().copied()))?;
    let dim = solve_mweed(model, w)?;
    let dim = if dim.feasible {
        checked_candidate(Problem::Mwped, &g, w, dim.members)?
    } else {
        None
    };

    let (label, found) = structural_candidates(model, &g, w)?;
    let mut best = Solution::infeasible(WeightKind::Edge);
    for labels in found {
        if let Some(s) = checked_candidate(Problem::Mwped, &g, w, induced_edges(&g, &labels))? {
            best = better(best, s);
        }
    }
    let mut trace = vec![label.to_string()];
    for (cand, name) in [(all, "ped-all-edges"), (dim, "ped-dim")] {
        let Some(cand) = cand else { continue };
        if !best.feasible || cand.value < best.value {
            best = cand;
            trace.truncate(1);
            trace.push(name.to_string());
        }
    }
    best.trace = trace;
    Ok(best)
}

/// Case analysis on the model; returns the case label and the labelings it
/// proposes on the original arcs.
fn structural_candidates(model: &CircularArcModel, g: &Graph, w: &WeightMap) -> Result<(&'static str, Vec<Vec<bool>>)> {
    let n = model.n();
    match model.find_small_cover(3) {
        Some(cover) if cover.len() == 2 => {
            let (v, u) = (cover[0], cover[1]);
            let mut out = Vec::new();
            // one of the pair is black, the other gray; every arc meets one
            // of them, so this fixes all labels
            for (black, gray) in [(v, u), (u, v)] {
                let mut labels = vec![true; n];
                for &x in g.neighbors(gray) {
                    if x != black {
                        labels[x] = false;
                    }
                }
                out.push(labels);
            }
            return Ok(("ped-two-cover", out));
        }
        Some(_) => return Ok(("ped-three-cover", Vec::new())),
        None => {}
    }
    let ext = model.coverage_extremes()?;
    if ext.min == 0 {
        let labels = interval_labels(Rule::Ped, model, w, &vec![None; n])?;
        return Ok(("ped-interval", labels.into_iter().collect()));
    }
    if ext.max >= 4 {
        return Ok(("ped-clique-split", clique_split(model, w, ext.max_segment)?.into_iter().collect()));
    }
    if ext.max == 3 {
        return Ok(("ped-triangle", triangle(model, w, ext.max_segment)?));
    }
    let cs = CycleStructure::from_arc_cycle(&model.extract_cycle_structure()?);
    let sol = solve_cycle_dp(Problem::Mwped, &cs, w)?;
    let mut out = Vec::new();
    if let (true, Members::Edges(edges)) = (sol.feasible, &sol.members) {
        let mut labels = vec![false; n];
        for &(a, b) in edges {
            labels[a] = true;
            labels[b] = true;
        }
        out.push(labels);
    }
    Ok(("ped-cycle", out))
}

/// Edge weights of `derived` taken from the original edge between the
/// preimages; edges at added arcs get `extra`.
fn pull_weights(derived: &CircularArcModel, map: &SurgeryMap, w: &WeightMap, extra: ExtendedWeight) -> WeightMap {
    let mut out = WeightMap::unit(WeightKind::Edge);
    for &(x, y) in Graph::from_model(derived).edges() {
        let value = match (map.origin(x), map.origin(y)) {
            (Some(a), Some(b)) if a != b => w.edge(a, b),
            _ => extra.clone(),
        };
        out.set_edge(x, y, value);
    }
    out
}

/// Reads original labels off derived ones. Split arcs take the label of
/// their left part; added arcs are dropped.
fn pull_labels(map: &SurgeryMap, derived: &[bool], n: usize) -> Vec<bool> {
    let mut labels = vec![false; n];
    for (v, label) in labels.iter_mut().enumerate() {
        let d = map.part(v, RoleTag::LeftPart).unwrap_or(map.forward[v][0]);
        *label = derived[d];
    }
    labels
}

/// A point on `q >= 4` arcs: in every solution the clique and its whole
/// neighborhood are labelled 1, so cutting there loses nothing. The clique
/// edges are duplicated by the cut; the right copies cost 0.
fn clique_split(model: &CircularArcModel, w: &WeightMap, seg: usize) -> Result<Option<Vec<bool>>> {
    let (cut, map) = cut_at(model, seg)?;
    let mut ws = pull_weights(&cut, &map, w, ExtendedWeight::zero());
    for &(x, y) in Graph::from_model(&cut).edges() {
        if map.role_tags[x] == RoleTag::RightPart && map.role_tags[y] == RoleTag::RightPart {
            ws.set_edge(x, y, ExtendedWeight::zero());
        }
    }
    let over = model.arcs_at_segment(seg);
    let mut forced = vec![None; cut.n()];
    for &v in &over {
        for d in &map.forward[v] {
            forced[*d] = Some(true);
        }
    }
    let labels = interval_labels(Rule::Ped, &cut, &ws, &forced)?;
    Ok(labels.map(|l| pull_labels(&map, &l, model.n())))
}

/// A point on exactly three arcs. Either all three are labelled 1, which a
/// tiny fourth arc at the point turns into the clique case, or exactly one
/// of them is 0 and the other two form an isolated chosen edge.
fn triangle(model: &CircularArcModel, w: &WeightMap, seg: usize) -> Result<Vec<Vec<bool>>> {
    let n = model.n();
    let mut out = Vec::new();

    let tiny = Placement {
        start: RawPoint::in_segment(seg, -2),
        end: RawPoint::in_segment(seg, 2),
        tag: RoleTag::Extra,
    };
    let (k4, map) = insert_arcs(model, &[tiny])?;
    let ext = k4.coverage_extremes()?;
    if ext.max != 4 {
        return Err(Error::Internal(format!("inserted arc reached coverage {}", ext.max)));
    }
    let wk = pull_weights(&k4, &map, w, ExtendedWeight::zero());
    if let Some(labels) = clique_split(&k4, &wk, ext.max_segment)? {
        out.push(pull_labels(&map, &labels, n));
    }

    let over = model.arcs_at_segment(seg);
    let (cut, map) = cut_at(model, seg)?;
    let base = pull_weights(&cut, &map, w, ExtendedWeight::zero());
    for &white in &over {
        let mut ws = base.clone();
        let pair: Vec<usize> = over.iter().copied().filter(|&v| v != white).collect();
        if let (Some(a), Some(b)) = (map.part(pair[0], RoleTag::RightPart), map.part(pair[1], RoleTag::RightPart)) {
            ws.set_edge(a, b, ExtendedWeight::zero());
        }
        let mut forced = vec![None; cut.n()];
        for &v in &over {
            for &d in &map.forward[v] {
                forced[d] = Some(v != white);
            }
        }
        if let Some(labels) = interval_labels(Rule::Ped, &cut, &ws, &forced)? {
            out.push(pull_labels(&map, &labels, n));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::normalize_model;

    fn m(pairs: &[(usize, usize)]) -> CircularArcModel {
        CircularArcModel::from_grid(pairs).unwrap()
    }

    fn cycle(n: usize) -> CircularArcModel {
        let pairs: Vec<_> = (0..n).map(|i| (2 * i, (2 * i + 3) % (2 * n))).collect();
        m(&pairs)
    }

    #[test]
    fn c4_and_k3() {
        let unit = WeightMap::unit(WeightKind::Edge);
        let s = solve_mwped(&cycle(4), &unit).unwrap();
        assert_eq!(s.value, ExtendedWeight::int(2));
        let k3 = solve_mwped(&m(&[(4, 1), (0, 3), (2, 5)]), &unit).unwrap();
        assert_eq!(k3.value, ExtendedWeight::one());
    }

    #[test]
    fn empty_and_single() {
        let unit = WeightMap::unit(WeightKind::Edge);
        let s = solve_mwped(&CircularArcModel::empty(), &unit).unwrap();
        assert!(s.feasible);
        assert_eq!(s.trace, vec!["ped-empty"]);
        let s = solve_mwped(&m(&[(0, 1)]), &unit).unwrap();
        assert_eq!((s.feasible, s.value), (true, ExtendedWeight::zero()));
    }

    #[test]
    fn long_cycle_uses_cycle_case() {
        let s = solve_mwped(&cycle(7), &WeightMap::unit(WeightKind::Edge)).unwrap();
        assert_eq!(s.trace[0], "ped-cycle");
        assert!(s.feasible);
    }

    #[test]
    fn clique_case_matches_all_edges_on_a_clique_ring() {
        // four arcs through one point, each continuing around to a ring of
        // short arcs, so no two or three arcs cover the circle
        let model = normalize_model(&[(0, 40), (2, 42), (4, 44), (6, 46), (38, 60), (58, 80), (78, 100), (98, 1)]).unwrap();
        assert!(model.is_hca_by_cover());
        let s = solve_mwped(&model, &WeightMap::unit(WeightKind::Edge)).unwrap();
        assert!(s.feasible);
    }
}
