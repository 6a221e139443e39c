//! Minimum-weight efficient vertex domination on circular-arc models.
//!
//! The chosen arcs of an efficient dominating set are pairwise disjoint, so
//! they appear in circular order `d_1, .., d_k`. Between consecutive arcs `d`
//! and `e` lies the closed gap `[t_d, s_e]`; the choice is valid iff no arc
//! lies inside a gap (it would be undominated) and no arc contains a gap (it
//! would meet two chosen arcs). Both conditions confine `s_e` to an open
//! window that only depends on `t_d`, which turns the problem into a
//! shortest closed walk once around the circle.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use num::{BigRational, Signed, Zero};

use crate::error::Result;
use crate::exact::solve_mwds_ca;
use crate::model::{CircularArcModel, Side};
use crate::verify::{Members, Solution};
use crate::weight::{ExtendedWeight, WeightKind, WeightMap};

const NONE: usize = usize::MAX;

/// Arcs lifted three times around an unrolled line of length `3g`.
struct Unrolled {
    g: usize,
    len: Vec<usize>,
    /// Arc starting at each position of the unrolled line.
    start_at: Vec<usize>,
    /// Largest end among lifts starting before `p`.
    max_end_before: Vec<usize>,
    /// Smallest end among lifts starting at or after `p`.
    min_end_from: Vec<usize>,
}

impl Unrolled {
    fn new(model: &CircularArcModel) -> Self {
        let g = model.grid_size();
        let len: Vec<usize> = model.arcs().iter().map(|a| model.span(a.id)).collect();
        let mut start_at = vec![NONE; 3 * g + 1];
        for p in 0..3 * g {
            let (id, side) = model.owner(p % g);
            if side == Side::Start {
                start_at[p] = id;
            }
        }
        let mut max_end_before = vec![0usize; 3 * g + 2];
        for p in 0..=3 * g {
            let here = if start_at[p] != NONE { p + len[start_at[p]] } else { 0 };
            max_end_before[p + 1] = max_end_before[p].max(here);
        }
        let mut min_end_from = vec![usize::MAX; 3 * g + 2];
        for p in (0..=3 * g).rev() {
            let here = if start_at[p] != NONE { p + len[start_at[p]] } else { usize::MAX };
            min_end_from[p] = min_end_from[p + 1].min(here);
        }
        Unrolled {
            g,
            len,
            start_at,
            max_end_before,
            min_end_from,
        }
    }

    /// Open window of starts that may follow the chosen lift starting at `p`.
    fn window(&self, p: usize) -> (usize, usize) {
        let end = p + self.len[self.start_at[p]];
        let lo = end.max(self.max_end_before[end.min(3 * self.g)]);
        let hi = self.min_end_from[(end + 1).min(3 * self.g + 1)];
        (lo, hi)
    }
}

/// Cheapest closed walk from the lift of `first` in the middle copy back to
/// its lift one turn later. Returns the cost and the chosen arcs.
fn walk_from(
    un: &Unrolled,
    weights: &[Option<BigRational>],
    first: usize,
    model: &CircularArcModel,
) -> Option<(BigRational, Vec<usize>)> {
    let g = un.g;
    let origin = model.arc(first).start + g;
    let target = origin + g;
    let first_weight = weights[first].clone()?;

    // pending windows keyed by their lower bound; active ones by value
    let mut pending: BinaryHeap<Reverse<(usize, usize, BigRational, usize)>> = BinaryHeap::new();
    let mut active: BinaryHeap<Reverse<(BigRational, usize, usize)>> = BinaryHeap::new();
    let mut parent: HashMap<usize, usize> = HashMap::new();

    let push = |p: usize, value: BigRational, pending: &mut BinaryHeap<_>| {
        let (lo, hi) = un.window(p);
        if lo + 1 < hi && lo < target {
            pending.push(Reverse((lo, hi, value, p)));
        }
    };
    push(origin, first_weight, &mut pending);

    let mut cur = origin;
    loop {
        let next = if active.is_empty() {
            match pending.peek() {
                Some(Reverse((lo, ..))) => (lo + 1).max(cur + 1),
                None => return None,
            }
        } else {
            cur + 1
        };
        if next > target {
            return None;
        }
        cur = next;
        while let Some(Reverse((lo, ..))) = pending.peek() {
            if *lo >= cur {
                break;
            }
            let Reverse((_, hi, value, src)) = pending.pop().unwrap();
            active.push(Reverse((value, src, hi)));
        }
        while let Some(Reverse((_, _, hi))) = active.peek() {
            if *hi > cur {
                break;
            }
            active.pop();
        }
        let Some(Reverse((best, src, _))) = active.peek() else {
            continue;
        };
        let arc = un.start_at[cur];
        if arc == NONE {
            continue;
        }
        if cur == target {
            let mut chosen = Vec::new();
            let mut at = *src;
            while at != origin {
                chosen.push(un.start_at[at]);
                at = parent[&at];
            }
            chosen.push(first);
            chosen.sort_unstable();
            return Some((best.clone(), chosen));
        }
        let Some(wa) = &weights[arc] else {
            continue;
        };
        let value = best + wa;
        parent.insert(cur, *src);
        push(cur, value, &mut pending);
    }
}

/// Minimum-weight efficient dominating set, or infeasible. Weights may be
/// negative; `+inf` arcs are never chosen.
pub fn solve_mwevd(model: &CircularArcModel, w: &WeightMap) -> Result<Solution> {
    if model.n() == 0 {
        return Ok(Solution::found(Members::Vertices(Vec::new()), ExtendedWeight::zero()).traced("evd-direct"));
    }
    let un = Unrolled::new(model);
    let g = un.g;
    let weights: Vec<Option<BigRational>> = (0..model.n()).map(|v| w.vertex(v).finite().cloned()).collect();

    // The segment after z is inside a chosen arc or inside a gap; in the
    // latter case the next chosen arc starts before every arc starting after
    // z has ended.
    let z = model.coverage_extremes()?.min_segment;
    let mut guesses = model.arcs_at_segment(z);
    let limit = un.min_end_from[z + g + 1];
    for p in z + g + 1..limit.min(3 * g) {
        if un.start_at[p] != NONE {
            guesses.push(un.start_at[p]);
        }
    }
    guesses.sort_unstable();
    guesses.dedup();

    // a lone universal arc is its own successor; the gap rules above assume
    // two distinct chosen arcs and would reject it
    let mut best: Option<(BigRational, Vec<usize>)> = None;
    for u in model.universal_arcs() {
        if let Some(x) = &weights[u] {
            if best.as_ref().map_or(true, |(c, s)| x < c || (x == c && vec![u] < *s)) {
                best = Some((x.clone(), vec![u]));
            }
        }
    }
    for d in guesses {
        if let Some((cost, set)) = walk_from(&un, &weights, d, model) {
            let better = match &best {
                None => true,
                Some((c, s)) => cost < *c || (cost == *c && set < *s),
            };
            if better {
                best = Some((cost, set));
            }
        }
    }
    Ok(match best {
        Some((cost, set)) => Solution::found(Members::Vertices(set), ExtendedWeight::Finite(cost)),
        None => Solution::infeasible(WeightKind::Vertex),
    }
    .traced("evd-direct"))
}

/// Efficient domination through a weighted dominating set: with
/// `w'(v) = (M + c)|N[v]| + w(v)` every optimal dominating set has
/// `sum |N[v]| = n` exactly when an efficient one exists.
pub fn solve_mwevd_via_mwds(model: &CircularArcModel, w: &WeightMap) -> Result<Solution> {
    let n = model.n();
    if n == 0 {
        return Ok(Solution::found(Members::Vertices(Vec::new()), ExtendedWeight::zero()).traced("evd-dominating-set"));
    }
    let degrees = model.degrees();
    let finite: Vec<BigRational> = (0..n).filter_map(|v| w.vertex(v).finite().cloned()).collect();
    let big = |x: usize| BigRational::from_integer(x.into());
    let max_abs = finite.iter().map(|x| x.abs()).max().unwrap_or_else(BigRational::zero);
    let c = finite
        .iter()
        .min()
        .filter(|m| m.is_negative())
        .map(|m| -m)
        .unwrap_or_else(BigRational::zero);
    let m_big = big(1) + big(n) * (&max_abs + &c);
    let per_unit = &m_big + &c;
    let mut shifted = WeightMap::unit(WeightKind::Vertex);
    for v in 0..n {
        let closed = big(degrees[v] + 1);
        shifted.set_vertex(v, w.vertex(v) + ExtendedWeight::Finite(&per_unit * closed));
    }
    let ds = solve_mwds_ca(model, &shifted)?;
    let Members::Vertices(set) = &ds.members else {
        unreachable!("dominating sets are vertex sets")
    };
    let covered: usize = set.iter().map(|&v| degrees[v] + 1).sum();
    if !ds.feasible || covered != n {
        return Ok(Solution::infeasible(WeightKind::Vertex).traced("evd-dominating-set"));
    }
    let value: ExtendedWeight = set.iter().map(|&v| w.vertex(v)).sum();
    Ok(Solution::found(ds.members.clone(), value).traced("evd-dominating-set"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(usize, usize)]) -> CircularArcModel {
        CircularArcModel::from_grid(pairs).unwrap()
    }

    fn cycle(n: usize) -> CircularArcModel {
        let pairs: Vec<_> = (0..n).map(|i| (2 * i, (2 * i + 3) % (2 * n))).collect();
        m(&pairs)
    }

    #[test]
    fn cycles() {
        let unit = WeightMap::unit(WeightKind::Vertex);
        let s = solve_mwevd(&cycle(6), &unit).unwrap();
        assert_eq!(s.value, ExtendedWeight::int(2));
        assert_eq!(s.members, Members::Vertices(vec![0, 3]));
        assert!(!solve_mwevd(&cycle(4), &unit).unwrap().feasible);
        for k in 3..=15 {
            let s = solve_mwevd(&cycle(k), &unit).unwrap();
            assert_eq!(s.feasible, k % 3 == 0, "C{k}");
            let r = solve_mwevd_via_mwds(&cycle(k), &unit).unwrap();
            assert_eq!(r.value, s.value, "C{k}");
        }
    }

    #[test]
    fn single_arc_and_star() {
        let w = WeightMap::from_vertex_weights([ExtendedWeight::int(7)]);
        let s = solve_mwevd(&m(&[(0, 1)]), &w).unwrap();
        assert_eq!((s.members, s.value), (Members::Vertices(vec![0]), ExtendedWeight::int(7)));
        let star = m(&[(0, 7), (1, 2), (3, 4), (5, 6)]);
        let w = WeightMap::from_vertex_weights([9, 1, 1, 1].map(ExtendedWeight::int));
        let s = solve_mwevd(&star, &w).unwrap();
        assert_eq!(s.value, ExtendedWeight::int(9));
    }

    #[test]
    fn negative_weights_through_both_routes() {
        let w = WeightMap::from_vertex_weights([-3, 2, 5, -1, 4, 0].map(ExtendedWeight::int));
        let a = solve_mwevd(&cycle(6), &w).unwrap();
        let b = solve_mwevd_via_mwds(&cycle(6), &w).unwrap();
        assert_eq!(a.value, ExtendedWeight::int(-4));
        assert_eq!(a.value, b.value);
    }
}
