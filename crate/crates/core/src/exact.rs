//! Exact subroutines on interval models, cycles with pendants, and graphs
//! with a small dominating set.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::labeling::{solve_labeling, Event, Rule};
use crate::model::{CircularArcModel, Side};
use crate::verify::{Members, Problem, Solution};
use crate::weight::{ExtendedWeight, WeightKind, WeightMap};

/// Introduce/forget events of a sweep that starts in an empty segment.
pub(crate) fn interval_events(model: &CircularArcModel) -> Result<Vec<Event>> {
    if model.n() == 0 {
        return Ok(Vec::new());
    }
    let ext = model.coverage_extremes()?;
    if ext.min > 0 {
        return Err(Error::PreconditionViolated(
            "model is not an interval model (every segment is covered)".into(),
        ));
    }
    let g = model.grid_size();
    let mut active: Vec<usize> = Vec::new();
    let mut events = Vec::with_capacity(2 * model.n());
    for step in 1..=g {
        let pos = (ext.min_segment + step) % g;
        let (id, side) = model.owner(pos);
        match side {
            Side::Start => {
                events.push(Event::Introduce {
                    vertex: id,
                    neighbors: active.clone(),
                });
                active.push(id);
            }
            Side::End => {
                active.retain(|&a| a != id);
                events.push(Event::Forget(id));
            }
        }
    }
    Ok(events)
}

/// Events for an arbitrary circular-arc model: the arcs over a least-covered
/// segment stay in the bag for the whole sweep, every other arc lives from
/// its start to its end. Bags hold at most twice the maximum coverage.
pub(crate) fn circular_events(model: &CircularArcModel) -> Result<Vec<Event>> {
    if model.n() == 0 {
        return Ok(Vec::new());
    }
    let ext = model.coverage_extremes()?;
    let g = model.grid_size();
    let z = ext.min_segment;
    let kept = model.arcs_at_segment(z);
    let mut bag: Vec<usize> = Vec::new();
    let mut events = Vec::with_capacity(2 * model.n());
    for &c in &kept {
        events.push(Event::Introduce {
            vertex: c,
            neighbors: bag.clone(),
        });
        bag.push(c);
    }
    for step in 1..=g {
        let pos = (z + step) % g;
        let (id, side) = model.owner(pos);
        if kept.contains(&id) {
            continue;
        }
        match side {
            Side::Start => {
                let neighbors = bag.iter().copied().filter(|&u| model.intersects(u, id)).collect();
                events.push(Event::Introduce { vertex: id, neighbors });
                bag.push(id);
            }
            Side::End => {
                bag.retain(|&a| a != id);
                events.push(Event::Forget(id));
            }
        }
    }
    events.extend(kept.into_iter().map(Event::Forget));
    Ok(events)
}

/// Minimum-weight dominating set of the intersection graph. Weights may be
/// negative; `+inf` arcs are never chosen. The dynamic program is exponential
/// in the maximum coverage only.
pub fn solve_mwds_ca(model: &CircularArcModel, w: &WeightMap) -> Result<Solution> {
    let events = circular_events(model)?;
    let g = Graph::from_model(model);
    let found = solve_labeling(Rule::Ds, model.n(), &events, w, &vec![None; model.n()]);
    Ok(labels_to_solution(Rule::Ds, &g, found))
}

fn labels_to_solution(rule: Rule, g: &Graph, found: Option<(num::BigRational, Vec<bool>)>) -> Solution {
    let kind = match rule {
        Rule::Pvd | Rule::Evd | Rule::Ds => WeightKind::Vertex,
        Rule::Dim | Rule::Ped => WeightKind::Edge,
    };
    let Some((cost, labels)) = found else {
        return Solution::infeasible(kind);
    };
    let members = match kind {
        WeightKind::Vertex => Members::vertices((0..labels.len()).filter(|&v| labels[v]).collect()),
        WeightKind::Edge => Members::edges(
            g.edges()
                .iter()
                .copied()
                .filter(|&(u, v)| labels[u] && labels[v]),
        ),
    };
    Solution::found(members, ExtendedWeight::Finite(cost))
}

/// Cheapest labeling of an interval model, without translating it to members.
pub(crate) fn interval_labels(
    rule: Rule,
    model: &CircularArcModel,
    w: &WeightMap,
    forced: &[Option<bool>],
) -> Result<Option<Vec<bool>>> {
    let events = interval_events(model)?;
    Ok(solve_labeling(rule, model.n(), &events, w, forced).map(|(_, labels)| labels))
}

fn solve_interval(rule: Rule, model: &CircularArcModel, w: &WeightMap, forced: &[Option<bool>]) -> Result<Solution> {
    let events = interval_events(model)?;
    let g = Graph::from_model(model);
    let found = solve_labeling(rule, model.n(), &events, w, forced);
    Ok(labels_to_solution(rule, &g, found))
}

/// Minimum-weight perfect vertex dominating set of an interval model.
/// Negative and infinite weights are allowed.
pub fn solve_mwpvd_interval(model: &CircularArcModel, w: &WeightMap) -> Result<Solution> {
    solve_interval(Rule::Pvd, model, w, &vec![None; model.n()])
}

/// Minimum-weight perfect edge dominating set of an interval model.
pub fn solve_mwped_interval(model: &CircularArcModel, w: &WeightMap) -> Result<Solution> {
    solve_interval(Rule::Ped, model, w, &vec![None; model.n()])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    Free,
    White,
    BlackAny,
    BlackMatchedTo(usize),
}

/// Per-vertex color constraints for dominating induced matchings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Precoloring {
    pub constraints: Vec<Constraint>,
}

impl Precoloring {
    pub fn free(n: usize) -> Self {
        Precoloring {
            constraints: vec![Constraint::Free; n],
        }
    }

    /// Forced labels (`true` = black), or an error when constraints clash or
    /// name a non-edge.
    fn forced(&self, g: &Graph) -> Result<Vec<Option<bool>>> {
        let n = g.vertex_count();
        if self.constraints.len() != n {
            return Err(Error::PreconditionViolated(format!(
                "precoloring has {} entries for {n} vertices",
                self.constraints.len()
            )));
        }
        let mut forced = vec![None; n];
        for (v, c) in self.constraints.iter().enumerate() {
            match *c {
                Constraint::Free => {}
                Constraint::White => forced[v] = Some(false),
                Constraint::BlackAny => forced[v] = Some(true),
                Constraint::BlackMatchedTo(u) => {
                    if !g.has_edge(u, v) {
                        return Err(Error::PreconditionViolated(format!(
                            "v{} matched to non-neighbor v{}",
                            v + 1,
                            u + 1
                        )));
                    }
                    match self.constraints[u] {
                        Constraint::Free | Constraint::BlackAny => {}
                        Constraint::BlackMatchedTo(x) if x == v => {}
                        _ => {
                            return Err(Error::PreconditionViolated(format!(
                                "v{} matched to v{} which disagrees",
                                v + 1,
                                u + 1
                            )))
                        }
                    }
                    forced[v] = Some(true);
                    forced[u] = Some(true);
                }
            }
        }
        Ok(forced)
    }
}

/// Minimum-weight dominating induced matching of an interval model that
/// respects `pre`. Two adjacent black vertices are always matched to each
/// other, so a matched pair only needs both ends forced black.
pub fn solve_dim_interval(model: &CircularArcModel, w: &WeightMap, pre: &Precoloring) -> Result<Solution> {
    let g = Graph::from_model(model);
    let forced = pre.forced(&g)?;
    solve_interval(Rule::Dim, model, w, &forced)
}

/// Minimum-weight dominating induced matching of `g` given a dominating set
/// of at most three vertices. Each dominating vertex is either white or
/// matched to one of its neighbors; because every other vertex sees a
/// dominating vertex, the choice fixes the whole coloring.
pub fn solve_dim_fixed_domset(g: &Graph, w: &WeightMap, dom: &[usize]) -> Result<Solution> {
    let n = g.vertex_count();
    if dom.len() > 3 {
        return Err(Error::PreconditionViolated(format!(
            "dominating set of size {} exceeds 3",
            dom.len()
        )));
    }
    let mut seen = vec![false; n];
    for &d in dom {
        if d >= n {
            return Err(Error::UnknownId(format!("v{}", d + 1)));
        }
        seen[d] = true;
        for &u in g.neighbors(d) {
            seen[u] = true;
        }
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Err(Error::PreconditionViolated(format!(
            "v{} is not dominated by the given set",
            v + 1
        )));
    }

    // choice per dominating vertex: None = white, Some(u) = matched to u
    let options: Vec<Vec<Option<usize>>> = dom
        .iter()
        .map(|&d| {
            std::iter::once(None)
                .chain(g.neighbors(d).iter().map(|&u| Some(u)))
                .collect()
        })
        .collect();
    let mut best = Solution::infeasible(WeightKind::Edge);
    let mut pick = vec![0usize; dom.len()];
    loop {
        if let Some(sol) = coloring_from_choices(g, w, dom, &options, &pick) {
            if sol.value < best.value {
                best = sol;
            }
        }
        // odometer over the choices
        let mut i = 0;
        while i < pick.len() {
            pick[i] += 1;
            if pick[i] < options[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
        if i == pick.len() {
            break;
        }
    }
    Ok(best)
}

fn coloring_from_choices(
    g: &Graph,
    w: &WeightMap,
    dom: &[usize],
    options: &[Vec<Option<usize>>],
    pick: &[usize],
) -> Option<Solution> {
    let n = g.vertex_count();
    let mut label: Vec<Option<bool>> = vec![None; n];
    let set = |v: usize, b: bool, label: &mut Vec<Option<bool>>| -> bool {
        match label[v] {
            Some(x) => x == b,
            None => {
                label[v] = Some(b);
                true
            }
        }
    };
    for (i, &d) in dom.iter().enumerate() {
        match options[i][pick[i]] {
            None => {
                if !set(d, false, &mut label) {
                    return None;
                }
                for &u in g.neighbors(d) {
                    if !set(u, true, &mut label) {
                        return None;
                    }
                }
            }
            Some(m) => {
                for (a, b) in [(d, m), (m, d)] {
                    if !set(a, true, &mut label) {
                        return None;
                    }
                    for &u in g.neighbors(a) {
                        if u != b && !set(u, false, &mut label) {
                            return None;
                        }
                    }
                }
            }
        }
    }
    let black: Vec<bool> = label.iter().map(|l| l.unwrap_or(false)).collect();
    for v in 0..n {
        let ones = g.neighbors(v).iter().filter(|&&u| black[u]).count();
        let ok = if black[v] {
            ones == 1
        } else {
            ones == g.degree(v)
        };
        if !ok {
            return None;
        }
    }
    let edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| black[u] && black[v])
        .collect();
    let value: ExtendedWeight = edges.iter().map(|&(u, v)| w.edge(u, v)).sum();
    Some(Solution::found(Members::edges(edges), value))
}

/// A cycle `v_1 .. v_k` (k >= 3) with pendant leaves hanging off cycle
/// vertices. Ids refer to the caller's graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleStructure {
    pub cycle: Vec<usize>,
    /// Cycle vertex -> its leaves, ascending.
    pub pendants: BTreeMap<usize, Vec<usize>>,
}

impl CycleStructure {
    pub fn from_arc_cycle(c: &crate::model::ArcCycle) -> Self {
        let mut pendants: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (&leaf, &parent) in &c.pendants {
            pendants.entry(parent).or_default().push(leaf);
        }
        CycleStructure {
            cycle: c.cycle.clone(),
            pendants,
        }
    }

    fn leaves(&self, v: usize) -> &[usize] {
        self.pendants.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn vertex_count(&self) -> usize {
        self.cycle.len() + self.pendants.values().map(Vec::len).sum::<usize>()
    }

    pub fn graph(&self) -> Graph {
        let k = self.cycle.len();
        let n = self
            .cycle
            .iter()
            .chain(self.pendants.values().flatten())
            .max()
            .map_or(0, |m| m + 1);
        let ring = (0..k).map(|i| (self.cycle[i], self.cycle[(i + 1) % k]));
        let legs = self
            .pendants
            .iter()
            .flat_map(|(&p, ls)| ls.iter().map(move |&l| (p, l)));
        Graph::new(n, ring.chain(legs))
    }

    /// A path decomposition that keeps `v_1` in every bag.
    fn events(&self) -> Vec<Event> {
        let k = self.cycle.len();
        let mut ev = Vec::new();
        let legs = |v: usize, ev: &mut Vec<Event>| {
            for &l in self.leaves(v) {
                ev.push(Event::Introduce {
                    vertex: l,
                    neighbors: vec![v],
                });
                ev.push(Event::Forget(l));
            }
        };
        let first = self.cycle[0];
        ev.push(Event::Introduce {
            vertex: first,
            neighbors: vec![],
        });
        legs(first, &mut ev);
        for i in 1..k {
            let v = self.cycle[i];
            let mut nb = vec![self.cycle[i - 1]];
            if i == k - 1 {
                nb.push(first);
            }
            ev.push(Event::Introduce {
                vertex: v,
                neighbors: nb,
            });
            legs(v, &mut ev);
            if i > 1 {
                ev.push(Event::Forget(self.cycle[i - 1]));
            }
        }
        ev.push(Event::Forget(self.cycle[k - 1]));
        ev.push(Event::Forget(first));
        ev
    }
}

/// Exact optimum of `problem` on a cycle with pendants (`Mweed` solves for a
/// dominating induced matching).
pub fn solve_cycle_dp(problem: Problem, cs: &CycleStructure, w: &WeightMap) -> Result<Solution> {
    if cs.cycle.len() < 3 {
        return Err(Error::PreconditionViolated(format!(
            "cycle of length {} is too short",
            cs.cycle.len()
        )));
    }
    if let Some(p) = cs.pendants.keys().find(|p| !cs.cycle.contains(p)) {
        return Err(Error::PreconditionViolated(format!(
            "pendant parent v{} is not on the cycle",
            p + 1
        )));
    }
    let rule = match problem {
        Problem::Mwevd => Rule::Evd,
        Problem::Mweed => Rule::Dim,
        Problem::Mwpvd => Rule::Pvd,
        Problem::Mwped => Rule::Ped,
    };
    let g = cs.graph();
    let n = g.vertex_count();
    let found = solve_labeling(rule, n, &cs.events(), w, &vec![None; n]);
    Ok(labels_to_solution(rule, &g, found))
}
