//! Minimum-weight efficient edge domination (dominating induced matchings).

use crate::error::{Error, Result};
use crate::exact::{solve_cycle_dp, solve_dim_fixed_domset, solve_dim_interval, CycleStructure, Precoloring};
use crate::graph::Graph;
use crate::model::CircularArcModel;
use crate::surgery::{cut_at, RoleTag, SurgeryMap};
use crate::verify::{Members, Problem, Solution};
use crate::weight::{ExtendedWeight, WeightKind, WeightMap};

/// Weightings of the graph cut through a point on exactly three arcs.
/// `omegas[i]` makes every triangle edge at `left[i]` or `right[i]` cost
/// `big_m`; all other edges keep the weight of the edge they come from.
#[derive(Debug, Clone)]
pub struct TriangleWeightings {
    pub omegas: [WeightMap; 3],
    pub big_m: ExtendedWeight,
    /// Optima above this value use a `big_m` edge.
    pub threshold: ExtendedWeight,
    /// Arcs through the cut point, ascending.
    pub originals: [usize; 3],
    /// Left and right parts of `originals` in the cut model.
    pub left: [usize; 3],
    pub right: [usize; 3],
    pub cut: CircularArcModel,
    pub map: SurgeryMap,
}

fn others(i: usize) -> (usize, usize) {
    match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// Cuts `model` at `seg` (which must lie on exactly three arcs) and builds
/// the three weightings.
pub fn triangle_weightings(model: &CircularArcModel, w: &WeightMap, seg: usize) -> Result<TriangleWeightings> {
    let over = model.arcs_at_segment(seg);
    let originals: [usize; 3] = over.as_slice().try_into().map_err(|_| {
        Error::PreconditionViolated(format!("segment {seg} lies on {} arcs, not 3", over.len()))
    })?;
    let g = Graph::from_model(model);
    let total_abs: ExtendedWeight = g
        .edges()
        .iter()
        .map(|&(u, v)| match w.edge(u, v) {
            ExtendedWeight::Finite(x) => ExtendedWeight::Finite(num::Signed::abs(&x)),
            ExtendedWeight::Infinite => ExtendedWeight::zero(),
        })
        .sum();
    let threshold = &total_abs + &total_abs;
    // with negative edges a single big edge can be offset by up to the same
    // amount again, so the margin doubles
    let big_m = if w.has_negative() {
        &threshold + &threshold + ExtendedWeight::one()
    } else {
        &threshold + &ExtendedWeight::one()
    };

    let (cut, map) = cut_at(model, seg)?;
    let part = |v: usize, tag| {
        map.part(v, tag)
            .ok_or_else(|| Error::Internal(format!("arc {} was not split", v + 1)))
    };
    let mut left = [0; 3];
    let mut right = [0; 3];
    for k in 0..3 {
        left[k] = part(originals[k], RoleTag::LeftPart)?;
        right[k] = part(originals[k], RoleTag::RightPart)?;
    }
    let gp = Graph::from_model(&cut);
    let mut base = WeightMap::unit(WeightKind::Edge);
    for &(x, y) in gp.edges() {
        let (Some(a), Some(b)) = (map.origin(x), map.origin(y)) else {
            return Err(Error::Internal("cut produced an arc without origin".into()));
        };
        base.set_edge(x, y, w.edge(a, b));
    }
    let omegas = [0, 1, 2].map(|i| {
        let mut om = base.clone();
        let (j, k) = others(i);
        for side in [&left, &right] {
            om.set_edge(side[i], side[j], big_m.clone());
            om.set_edge(side[i], side[k], big_m.clone());
        }
        om
    });
    Ok(TriangleWeightings {
        omegas,
        big_m,
        threshold,
        originals,
        left,
        right,
        cut,
        map,
    })
}

/// Best of the three cut-graph optima, translated back: the duplicated pair
/// of triangle edges becomes the single original edge and its weight is
/// counted once.
pub fn combine_dim_triangle(dims: &[Solution; 3], tw: &TriangleWeightings) -> Result<Solution> {
    let mut best: Option<(ExtendedWeight, usize)> = None;
    for (i, sol) in dims.iter().enumerate() {
        if !sol.feasible || sol.value > tw.threshold {
            continue;
        }
        let (j, k) = others(i);
        let Some(value) = sol.value.checked_sub(&tw.omegas[i].edge(tw.left[j], tw.left[k])) else {
            continue;
        };
        if best.as_ref().map_or(true, |(b, _)| value < *b) {
            best = Some((value, i));
        }
    }
    let Some((value, i)) = best else {
        return Ok(Solution::infeasible(WeightKind::Edge));
    };
    let (j, k) = others(i);
    let Members::Edges(edges) = &dims[i].members else {
        return Err(Error::InconsistentMapping("expected an edge set".into()));
    };
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    for pair in [key(tw.left[j], tw.left[k]), key(tw.right[j], tw.right[k])] {
        if !edges.contains(&pair) {
            return Err(Error::InconsistentMapping(format!(
                "cut solution lacks triangle edge ({},{})",
                pair.0 + 1,
                pair.1 + 1
            )));
        }
    }
    let mut mapped = Vec::with_capacity(edges.len());
    for &(x, y) in edges {
        match (tw.map.origin(x), tw.map.origin(y)) {
            (Some(a), Some(b)) => mapped.push((a, b)),
            _ => return Err(Error::InconsistentMapping("edge at an added arc".into())),
        }
    }
    Ok(Solution::found(Members::edges(mapped), value))
}

/// Minimum-weight dominating induced matching of the intersection graph.
pub fn solve_mweed(model: &CircularArcModel, w: &WeightMap) -> Result<Solution> {
    let n = model.n();
    if n == 0 {
        return Ok(Solution::found(Members::Edges(Vec::new()), ExtendedWeight::zero()).traced("eed-empty"));
    }
    // circular-arc graphs with a dominating induced matching are K4-free and
    // K4-free circular-arc graphs have at most 2n edges
    if model.edge_count() > 2 * n as u64 {
        return Ok(Solution::infeasible(WeightKind::Edge).traced("eed-edge-bound"));
    }
    let g = Graph::from_model(model);
    if let Some(cover) = model.find_small_cover(3) {
        return Ok(solve_dim_fixed_domset(&g, w, &cover)?.traced("eed-small-cover"));
    }
    let ext = model.coverage_extremes()?;
    if ext.max >= 4 {
        return Ok(Solution::infeasible(WeightKind::Edge).traced("eed-high-coverage"));
    }
    if ext.min == 0 {
        return Ok(solve_dim_interval(model, w, &Precoloring::free(n))?.traced("eed-interval"));
    }
    if ext.max <= 2 {
        let mut cs = CycleStructure::from_arc_cycle(&model.extract_cycle_structure()?);
        // a vertex with leaves is black; only its cheapest leaf edge can matter
        for (&parent, leaves) in cs.pendants.iter_mut() {
            let keep = leaves
                .iter()
                .copied()
                .min_by(|&a, &b| w.edge(parent, a).cmp(&w.edge(parent, b)).then(a.cmp(&b)))
                .expect("pendant lists are non-empty");
            *leaves = vec![keep];
        }
        return Ok(solve_cycle_dp(Problem::Mweed, &cs, w)?.traced("eed-cycle"));
    }
    let tw = triangle_weightings(model, w, ext.max_segment)?;
    let pre = Precoloring::free(tw.cut.n());
    let dims = [
        solve_dim_interval(&tw.cut, &tw.omegas[0], &pre)?,
        solve_dim_interval(&tw.cut, &tw.omegas[1], &pre)?,
        solve_dim_interval(&tw.cut, &tw.omegas[2], &pre)?,
    ];
    Ok(combine_dim_triangle(&dims, &tw)?.traced("eed-triangle-cut"))
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
    fn examples() {
        let unit = WeightMap::unit(WeightKind::Edge);
        let s = solve_mweed(&cycle(6), &unit).unwrap();
        assert_eq!(s.value, ExtendedWeight::int(2));
        assert_eq!(s.trace, vec!["eed-cycle"]);
        let k3 = solve_mweed(&m(&[(4, 1), (0, 3), (2, 5)]), &unit).unwrap();
        assert_eq!(k3.value, ExtendedWeight::one());
        assert_eq!(k3.trace, vec!["eed-small-cover"]);
        let oct = m(&[(0, 5), (6, 11), (2, 7), (8, 1), (4, 9), (10, 3)]);
        assert!(!solve_mweed(&oct, &unit).unwrap().feasible);
    }

    #[test]
    fn dense_model_stops_at_edge_bound() {
        // six arcs through one point: K6 has 15 > 2 * 6 edges
        let k6 = m(&[(0, 6), (1, 7), (2, 8), (3, 9), (4, 10), (5, 11)]);
        let s = solve_mweed(&k6, &WeightMap::unit(WeightKind::Edge)).unwrap();
        assert!(!s.feasible);
        assert_eq!(s.trace, vec!["eed-edge-bound"]);
    }

    #[test]
    fn combine_formula() {
        // three arcs through one point plus a pendant and a closing arc
        let model = crate::model::normalize_model(&[(0, 30), (10, 40), (20, 50), (35, 37), (45, 5)]).unwrap();
        let ext = model.coverage_extremes().unwrap();
        assert_eq!(ext.max, 3);
        let w = WeightMap::unit(WeightKind::Edge);
        let tw = triangle_weightings(&model, &w, ext.max_segment).unwrap();
        let gp = Graph::from_model(&tw.cut);
        // neither common nor adjacent vertices between the two triangles
        for &a in &tw.left {
            for &b in &tw.right {
                assert_ne!(a, b);
                assert!(!gp.has_edge(a, b));
            }
        }
        let infeasible = Solution::infeasible(WeightKind::Edge);
        let dims = [infeasible.clone(), infeasible.clone(), infeasible];
        assert!(!combine_dim_triangle(&dims, &tw).unwrap().feasible);
        let pair = Solution::found(
            Members::edges([(tw.left[1], tw.left[2]), (tw.right[1], tw.right[2])]),
            ExtendedWeight::int(2),
        );
        let other = Solution::found(Members::edges([]), tw.big_m.clone());
        let combined = combine_dim_triangle(&[pair, other.clone(), other], &tw).unwrap();
        assert_eq!(combined.value, ExtendedWeight::one());
        assert_eq!(combined.members, Members::edges([(tw.originals[1], tw.originals[2])]));
        let lacking = Solution::found(Members::edges([]), ExtendedWeight::int(1));
        let infeasible = Solution::infeasible(WeightKind::Edge);
        assert!(matches!(
            combine_dim_triangle(&[lacking, infeasible.clone(), infeasible], &tw),
            Err(Error::InconsistentMapping(_))
        ));
    }
}
