//! Minimum-weight perfect vertex domination.

use crate::error::{Error, Result};
use crate::evd::solve_mwevd;
use crate::exact::solve_mwpvd_interval;
use crate::graph::Graph;
use crate::model::CircularArcModel;
use crate::surgery::{Placement, RawPoint, RoleTag, SurgeryBuilder, SurgeryMap};
use crate::verify::{Members, Problem, Solution};
use crate::weight::{ExtendedWeight, WeightKind, WeightMap};

use super::{better, checked_candidate};

/// One of the three interval models built around a point on a single arc.
#[derive(Debug, Clone)]
pub struct PvdModel {
    /// 1: the arc is chosen; 2: its dominator meets the right part;
    /// 3: its dominator meets the left part.
    pub index: usize,
    pub model: CircularArcModel,
    pub weights: WeightMap,
    pub map: SurgeryMap,
}

/// Splits the only arc `v` over `seg` into `v-` and `v+` and hangs leaves off
/// the halves. Model 1 carries both leaves at `+inf` with each half at half
/// the weight of `v`; model 2 adds only the left leaf at weight 0 and makes
/// the halves `+inf`; model 3 mirrors model 2.
pub fn build_pvd_models(model: &CircularArcModel, seg: usize, w: &WeightMap) -> Result<[PvdModel; 3]> {
    let over = model.arcs_at_segment(seg);
    let [v] = over.as_slice() else {
        return Err(Error::PreconditionViolated(format!(
            "segment {seg} lies on {} arcs, not 1",
            over.len()
        )));
    };
    if model.find_universal_arc().is_some() {
        return Err(Error::PreconditionViolated("model has a universal arc".into()));
    }
    let v = *v;
    let leaf_minus = Placement {
        start: RawPoint::in_segment(seg, -3),
        end: RawPoint::in_segment(seg, -1),
        tag: RoleTag::LeafMinus,
    };
    let leaf_plus = Placement {
        start: RawPoint::in_segment(seg, 1),
        end: RawPoint::in_segment(seg, 3),
        tag: RoleTag::LeafPlus,
    };
    let build = |index: usize, leaves: &[Placement]| -> Result<PvdModel> {
        let mut b = SurgeryBuilder::new(model);
        for a in model.arcs() {
            if a.id == v {
                b.split_custom(v, seg, -2, 2);
            } else {
                b.copy(a.id);
            }
        }
        for &leaf in leaves {
            b.place(leaf)?;
        }
        let (derived, map) = b.finish()?;
        let mut weights = WeightMap::unit(WeightKind::Vertex);
        for d in 0..map.derived_count() {
            let x = match (map.role_tags[d], index) {
                (RoleTag::Copy, _) => w.vertex(map.origin(d).unwrap()),
                (RoleTag::LeftPart | RoleTag::RightPart, 1) => w.vertex(v).half(),
                (RoleTag::LeftPart | RoleTag::RightPart, _) => ExtendedWeight::Infinite,
                (_, 1) => ExtendedWeight::Infinite,
                _ => ExtendedWeight::zero(),
            };
            weights.set_vertex(d, x);
        }
        Ok(PvdModel {
            index,
            model: derived,
            weights,
            map,
        })
    };
    Ok([
        build(1, &[leaf_minus, leaf_plus])?,
        build(2, &[leaf_minus])?,
        build(3, &[leaf_plus])?,
    ])
}

/// Translates a solution on one of the split models back to the original
/// arcs: the two halves become `v` again and the leaves are dropped.
pub fn map_back_pvd(sol: &Solution, pm: &PvdModel, original: &WeightMap) -> Result<Solution> {
    if !sol.feasible {
        return Ok(Solution::infeasible(WeightKind::Vertex));
    }
    let Members::Vertices(set) = &sol.members else {
        return Err(Error::MappingViolated("expected a vertex set".into()));
    };
    let mut out = Vec::new();
    for &d in set {
        if pm.weights.vertex(d).is_infinite() {
            return Err(Error::MappingViolated(format!(
                "model {} solution uses the forbidden arc {}",
                pm.index,
                d + 1
            )));
        }
        match pm.map.origin(d) {
            Some(o) => out.push(o),
            None => {}
        }
    }
    let members = Members::vertices(out);
    let Members::Vertices(vs) = &members else { unreachable!() };
    let value: ExtendedWeight = vs.iter().map(|&v| original.vertex(v)).sum();
    if value != sol.value {
        return Err(Error::MappingViolated(format!(
            "model {} value {} maps to {}",
            pm.index, sol.value, value
        )));
    }
    Ok(Solution::found(members, value))
}

/// Minimum-weight perfect vertex dominating set. Weights may be negative.
pub fn solve_mwpvd(model: &CircularArcModel, w: &WeightMap) -> Result<Solution> {
    let n = model.n();
    if n == 0 {
        return Ok(Solution::found(Members::Vertices(Vec::new()), ExtendedWeight::zero()).traced("pvd-empty"));
    }
    let g = Graph::from_model(model);
    let all = Members::vertices((0..n).collect());
    let universal = model.universal_arcs();
    if universal.len() >= 2 {
        let mut best = Solution::infeasible(WeightKind::Vertex);
        if let Some(s) = checked_candidate(Problem::Mwpvd, &g, w, all)? {
            best = better(best, s);
        }
        for &u in &universal {
            if let Some(s) = checked_candidate(Problem::Mwpvd, &g, w, Members::vertices(vec![u]))? {
                best = better(best, s);
            }
        }
        return Ok(best.traced("pvd-two-universal"));
    }
    if let [u] = universal.as_slice() {
        // every perfect dominating set contains u; the rest is a union of
        // whole components of G - u
        let rest: Vec<usize> = (0..n).filter(|&v| v != *u).collect();
        let mut chosen = vec![*u];
        for comp in g.induced(&rest).connected_components() {
            let members: Vec<usize> = comp.iter().map(|&i| rest[i]).collect();
            let total: ExtendedWeight = members.iter().map(|&v| w.vertex(v)).sum();
            if total.is_negative() {
                chosen.extend(members);
            }
        }
        let sol = checked_candidate(Problem::Mwpvd, &g, w, Members::vertices(chosen))?
            .unwrap_or_else(|| Solution::infeasible(WeightKind::Vertex));
        return Ok(sol.traced("pvd-universal"));
    }

    let ext = model.coverage_extremes()?;
    let (label, mut best) = if ext.min == 0 {
        ("pvd-interval", solve_mwpvd_interval(model, w)?)
    } else if ext.min >= 2 {
        let all = checked_candidate(Problem::Mwpvd, &g, w, all)?;
        ("pvd-all", all.unwrap_or_else(|| Solution::infeasible(WeightKind::Vertex)))
    } else {
        let mut best = Solution::infeasible(WeightKind::Vertex);
        for pm in build_pvd_models(model, ext.min_segment, w)? {
            let sol = solve_mwpvd_interval(&pm.model, &pm.weights)?;
            let mapped = map_back_pvd(&sol, &pm, w)?;
            best = better(best, confirm(&g, w, mapped)?);
        }
        ("pvd-split", best)
    };
    let evd = solve_mwevd(model, w)?;
    let evd = confirm(&g, w, Solution { trace: Vec::new(), ..evd })?;
    let mut trace = vec![label.to_string()];
    if evd.feasible && (!best.feasible || evd.value < best.value) {
        best = evd;
        trace.push("pvd-efficient".to_string());
    }
    best.trace = trace;
    Ok(best)
}

/// Re-checks a mapped candidate on the original graph.
fn confirm(g: &Graph, w: &WeightMap, sol: Solution) -> Result<Solution> {
    if !sol.feasible {
        return Ok(sol);
    }
    match checked_candidate(Problem::Mwpvd, g, w, sol.members.clone())? {
        Some(s) if s.value == sol.value => Ok(s),
        _ => Err(Error::Internal(format!(
            "mapped candidate {:?} is not a perfect dominating set of value {}",
            sol.members, sol.value
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(usize, usize)]) -> CircularArcModel {
        CircularArcModel::from_grid(pairs).unwrap()
    }

    fn c4() -> CircularArcModel {
        m(&[(0, 3), (2, 5), (4, 7), (6, 1)])
    }

    #[test]
    fn star_with_negative_leaf() {
        let star = m(&[(0, 7), (1, 2), (3, 4), (5, 6)]);
        let w = WeightMap::from_vertex_weights([5, 1, 1, -2].map(ExtendedWeight::int));
        let s = solve_mwpvd(&star, &w).unwrap();
        assert_eq!(s.members, Members::Vertices(vec![0, 3]));
        assert_eq!(s.value, ExtendedWeight::int(3));
        assert_eq!(s.trace, vec!["pvd-universal"]);
    }

    #[test]
    fn c4_and_k3() {
        let unit = WeightMap::unit(WeightKind::Vertex);
        assert_eq!(solve_mwpvd(&c4(), &unit).unwrap().value, ExtendedWeight::int(2));
        let k3 = solve_mwpvd(&m(&[(4, 1), (0, 3), (2, 5)]), &unit).unwrap();
        assert_eq!(k3.value, ExtendedWeight::one());
        assert_eq!(k3.trace, vec!["pvd-two-universal"]);
    }

    #[test]
    fn split_models() {
        let w = WeightMap::from_vertex_weights([3, 1, 1, 1].map(ExtendedWeight::int));
        let models = build_pvd_models(&c4(), 1, &w).unwrap();
        assert_eq!(models.each_ref().map(|pm| pm.model.n()), [7, 6, 6]);
        for pm in &models {
            assert_eq!(pm.model.coverage_extremes().unwrap().min, 0);
        }
        let halves = &models[0];
        let minus = halves.map.part(0, RoleTag::LeftPart).unwrap();
        assert_eq!(halves.weights.vertex(minus), ExtendedWeight::ratio(3, 2));

        let sol = Solution::found(
            Members::vertices(vec![minus, halves.map.part(0, RoleTag::RightPart).unwrap(), halves.map.forward[2][0]]),
            ExtendedWeight::int(4),
        );
        let back = map_back_pvd(&sol, halves, &w).unwrap();
        assert_eq!(back.members, Members::Vertices(vec![0, 2]));
        let leaf = models[1].map.added[0];
        let sol = Solution::found(Members::vertices(vec![leaf, models[1].map.forward[1][0]]), ExtendedWeight::one());
        assert_eq!(map_back_pvd(&sol, &models[1], &w).unwrap().members, Members::Vertices(vec![1]));
        let bad = Solution::found(Members::vertices(vec![minus]), ExtendedWeight::int(1));
        assert!(matches!(map_back_pvd(&bad, &models[1], &w), Err(Error::MappingViolated(_))));
    }

    #[test]
    fn universal_required() {
        let star = m(&[(0, 7), (1, 2), (3, 4), (5, 6)]);
        assert!(matches!(
            build_pvd_models(&star, 1, &WeightMap::unit(WeightKind::Vertex)),
            Err(Error::PreconditionViolated(_))
        ));
    }
}
