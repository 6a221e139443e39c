//! The four top-level solvers and the public entry point.
//!
//! Each solver records the cases it went through in [`Solution::trace`]:
//!
//! | label | meaning |
//! |-------|---------|
//! | `evd-direct` | efficient domination by the gap-window walk |
//! | `evd-dominating-set` | efficient domination through a shifted-weight dominating set (cross-check only) |
//! | `eed-empty` | no arcs |
//! | `eed-edge-bound` | more than `2n` edges, so no dominating induced matching |
//! | `eed-small-cover` | two or three arcs cover the circle; branch on them |
//! | `eed-high-coverage` | some point lies on four arcs, so a `K4` exists |
//! | `eed-interval` | some segment is empty; interval dynamic program |
//! | `eed-cycle` | coverage at most two; cycle with pendants |
//! | `eed-triangle-cut` | coverage three; cut through a triangle, three weightings |
//! | `pvd-empty` | no arcs |
//! | `pvd-two-universal` | at least two universal arcs |
//! | `pvd-universal` | exactly one universal arc |
//! | `pvd-interval` | some segment is empty |
//! | `pvd-all` | every segment lies on two arcs or more |
//! | `pvd-split` | some segment lies on exactly one arc; three split models |
//! | `pvd-efficient` | the best candidate was an efficient dominating set |
//! | `ped-empty` | no arcs |
//! | `ped-two-cover` | two arcs cover the circle; one black, one gray |
//! | `ped-three-cover` | three arcs cover the circle; baseline candidates only |
//! | `ped-interval` | some segment is empty |
//! | `ped-clique-split` | a point on four arcs or more; cut there |
//! | `ped-triangle` | coverage three; all three chosen, or one left white |
//! | `ped-cycle` | coverage at most two; cycle with pendants |
//! | `ped-all-edges` | appended when `E` itself won |
//! | `ped-dim` | appended when the MWEED answer won |

mod eed;
mod ped;
mod pvd;

pub use eed::{combine_dim_triangle, solve_mweed, triangle_weightings, TriangleWeightings};
pub use ped::solve_mwped;
pub use pvd::{build_pvd_models, map_back_pvd, solve_mwpvd, PvdModel};

use crate::error::{Error, Result};
use crate::evd::solve_mwevd;
use crate::graph::Graph;
use crate::model::CircularArcModel;
use crate::verify::{verify, Members, Problem, Solution};
use crate::weight::WeightMap;

/// Solves `problem` exactly. Efficient variants reject negative weights.
pub fn solve(problem: Problem, model: &CircularArcModel, w: &WeightMap) -> Result<Solution> {
    if w.kind() != problem.kind() {
        return Err(Error::KindMismatch(problem.to_string()));
    }
    if matches!(problem, Problem::Mwevd | Problem::Mweed) && w.has_negative() {
        return Err(Error::WeightSignViolation(problem.to_string()));
    }
    match problem {
        Problem::Mwevd => solve_mwevd(model, w),
        Problem::Mweed => solve_mweed(model, w),
        Problem::Mwpvd => solve_mwpvd(model, w),
        Problem::Mwped => solve_mwped(model, w),
    }
}

/// [`solve`] followed by an independent check of the answer against the
/// problem definition.
pub fn solve_checked(problem: Problem, model: &CircularArcModel, w: &WeightMap) -> Result<Solution> {
    let sol = solve(problem, model, w)?;
    if sol.feasible {
        let g = Graph::from_model(model);
        let v = verify(problem, &g, w, &sol.members)?;
        if !v.feasible {
            return Err(Error::Internal(format!(
                "solver answer fails verification: {}",
                v.violation.unwrap_or_default()
            )));
        }
        if v.value != sol.value {
            return Err(Error::Internal(format!(
                "solver reported {} but its members weigh {}",
                sol.value, v.value
            )));
        }
    }
    Ok(sol)
}

/// `members` as a solution on `g` if it is feasible with finite weight.
pub(crate) fn checked_candidate(problem: Problem, g: &Graph, w: &WeightMap, members: Members) -> Result<Option<Solution>> {
    let v = verify(problem, g, w, &members)?;
    Ok((v.feasible && v.value.is_finite()).then(|| Solution::found(members, v.value)))
}

/// Edge set `E(G[D])` for the 1-labelled vertices `D`.
pub(crate) fn induced_edges(g: &Graph, labels: &[bool]) -> Members {
    Members::edges(g.edges().iter().copied().filter(|&(u, v)| labels[u] && labels[v]))
}

/// Keeps the cheaper solution; on equal values the shorter, then the
/// lexicographically smaller member list wins.
pub(crate) fn better(best: Solution, cand: Solution) -> Solution {
    if !cand.feasible {
        return best;
    }
    if !best.feasible {
        return cand;
    }
    let key = |s: &Solution| match &s.members {
        Members::Vertices(v) => (v.len(), v.iter().map(|&x| (x, 0)).collect::<Vec<_>>()),
        Members::Edges(e) => (e.len(), e.clone()),
    };
    match cand.value.cmp(&best.value) {
        std::cmp::Ordering::Less => cand,
        std::cmp::Ordering::Greater => best,
        std::cmp::Ordering::Equal => {
            if key(&cand) < key(&best) {
                cand
            } else {
                best
            }
        }
    }
}
