//! Exact minimum-weight efficient and perfect domination on circular-arc
//! graphs, vertex and edge versions.

pub mod error;
pub mod evd;
pub mod graph;
pub mod io;
mod labeling;
pub mod exact;
pub mod model;
pub mod solvers;
pub mod surgery;
pub mod testkit;
mod util;
pub mod verify;
pub mod weight;

pub use error::{Error, Result};
pub use graph::{intersection_graph, k4_free_edge_bound, line_graph, Graph};
pub use model::{normalize_model, Arc, ArcCycle, CircularArcModel, CoverageExtremes, GridPoint, Segment, SegmentKind, Side};
pub use surgery::{cut_at, insert_arcs, Placement, RawPoint, RoleTag, SurgeryMap};
pub use weight::{ExtendedWeight, WeightKind, WeightMap};
pub use verify::{check_p1_p2, coloring_of, verify, Color, Members, Problem, Solution, ThreeColoring, Verdict};
pub use exact::{solve_cycle_dp, solve_mwds_ca, solve_dim_fixed_domset, solve_dim_interval, solve_mwped_interval, solve_mwpvd_interval, Constraint, CycleStructure, Precoloring};
pub use evd::{solve_mwevd, solve_mwevd_via_mwds};
pub use solvers::{solve, solve_checked, solve_mweed, solve_mwped, solve_mwpvd};
