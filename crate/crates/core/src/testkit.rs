//! Brute-force oracles, seeded instance generators and differential runs.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::{write_model, write_weights};
use crate::model::{normalize_model, CircularArcModel};
use crate::verify::{verify, Members, Problem, Solution};
use crate::weight::{ExtendedWeight, WeightKind, WeightMap};

/// Largest instance the oracle enumerates.
pub const ORACLE_LIMIT: usize = 20;

/// Exhaustive optimum. Vertex problems enumerate vertex subsets; edge problems
/// enumerate edge subsets, or when there are more than [`ORACLE_LIMIT`]
/// edges, the edge sets `E(G[D])` induced by vertex subsets `D` (every
/// perfect edge dominating set has this form). Ties prefer fewer members,
/// then the lexicographically least member list.
pub fn oracle_solve(problem: Problem, g: &Graph, w: &WeightMap) -> Result<Solution> {
    let n = g.vertex_count();
    let m = g.edge_count();
    let candidates: Box<dyn Iterator<Item = Members>> = match problem.kind() {
        WeightKind::Vertex => {
            if n > ORACLE_LIMIT {
                return Err(Error::TooLarge(format!("{n} vertices")));
            }
            Box::new(vertex_candidates(problem, g))
        }
        WeightKind::Edge if m <= ORACLE_LIMIT => Box::new(edge_candidates(problem, g)),
        WeightKind::Edge => {
            if n > ORACLE_LIMIT {
                return Err(Error::TooLarge(format!("{n} vertices and {m} edges")));
            }
            Box::new(induced_edge_candidates(g))
        }
    };
    let mut best: Option<(ExtendedWeight, Members)> = None;
    for cand in candidates {
        let verdict = verify(problem, g, w, &cand)?;
        if !verdict.feasible || verdict.value.is_infinite() {
            continue;
        }
        let better = match &best {
            None => true,
            Some((value, members)) => match verdict.value.cmp(value) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Greater => false,
                std::cmp::Ordering::Equal => tie_key(&cand) < tie_key(members),
            },
        };
        if better {
            best = Some((verdict.value, cand));
        }
    }
    Ok(match best {
        Some((value, members)) => Solution::found(members, value),
        None => Solution::infeasible(problem.kind()),
    })
}

fn tie_key(m: &Members) -> (usize, Vec<(usize, usize)>) {
    match m {
        Members::Vertices(v) => (v.len(), v.iter().map(|&x| (x, 0)).collect()),
        Members::Edges(e) => (e.len(), e.clone()),
    }
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask >> i & 1 == 1)
}

/// Vertex subsets passing a cheap bitmask pre-filter; `verify` decides.
fn vertex_candidates(problem: Problem, g: &Graph) -> impl Iterator<Item = Members> + '_ {
    let n = g.vertex_count();
    let nbr: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |acc, &u| acc | 1 << u))
        .collect();
    (0u32..1 << n).filter_map(move |d| {
        let ok = (0..n).all(|v| {
            let hits = (nbr[v] & d).count_ones();
            if d >> v & 1 == 1 {
                problem != Problem::Mwevd || hits == 0
            } else {
                hits == 1
            }
        });
        ok.then(|| Members::vertices(bits(d).collect()))
    })
}

fn edge_candidates(problem: Problem, g: &Graph) -> impl Iterator<Item = Members> + '_ {
    let m = g.edge_count();
    let adj: Vec<u32> = (0..m)
        .map(|e| {
            let (a, b) = g.edge(e);
            (0..m)
                .filter(|&f| f != e && {
                    let (c, d) = g.edge(f);
                    a == c || a == d || b == c || b == d
                })
                .fold(0u32, |acc, f| acc | 1 << f)
        })
        .collect();
    (0u32..1 << m).filter_map(move |s| {
        let ok = (0..m).all(|e| {
            let hits = (adj[e] & s).count_ones();
            if s >> e & 1 == 1 {
                problem != Problem::Mweed || hits == 0
            } else {
                hits == 1
            }
        });
        ok.then(|| Members::edges(bits(s).map(|e| g.edge(e))))
    })
}

fn induced_edge_candidates(g: &Graph) -> impl Iterator<Item = Members> + '_ {
    let n = g.vertex_count();
    (0u32..1 << n).map(move |d| {
        Members::edges(
            g.edges()
                .iter()
                .copied()
                .filter(|&(u, v)| d >> u & 1 == 1 && d >> v & 1 == 1),
        )
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Random,
    Cycle,
    Interval,
    Star,
    Octahedron,
    Cover2,
    Cover3,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Random,
        Family::Cycle,
        Family::Interval,
        Family::Star,
        Family::Octahedron,
        Family::Cover2,
        Family::Cover3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Random => "random",
            Family::Cycle => "cycle",
            Family::Interval => "interval",
            Family::Star => "star",
            Family::Octahedron => "octahedron",
            Family::Cover2 => "cover2",
            Family::Cover3 => "cover3",
        }
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown family `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightDist {
    Unit,
    /// `p/q` with `q` in `1..=4` and `0 <= p/q <= max`.
    Nonneg,
    /// `p/q` with `q` in `1..=4` and `-max <= p/q <= max`.
    Signed,
}

impl FromStr for WeightDist {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "unit" => Ok(WeightDist::Unit),
            "nonneg" | "random_nonneg" => Ok(WeightDist::Nonneg),
            "signed" | "random_signed" => Ok(WeightDist::Signed),
            _ => Err(format!("unknown weight distribution `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeightSpec {
    pub kind: WeightKind,
    pub dist: WeightDist,
    pub max: i64,
}

impl WeightSpec {
    pub fn unit(kind: WeightKind) -> Self {
        WeightSpec {
            kind,
            dist: WeightDist::Unit,
            max: 1,
        }
    }

    pub fn new(kind: WeightKind, dist: WeightDist) -> Self {
        WeightSpec { kind, dist, max: 10 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GenSpec {
    pub seed: u64,
    pub n: usize,
    pub family: Family,
    pub weights: WeightSpec,
}

/// Arc placements for the named family. Randomness comes only from `rng`.
fn family_model(family: Family, n: usize, rng: &mut ChaCha8Rng) -> Result<CircularArcModel> {
    let bad = |msg: &str| Err(Error::InvalidSpec(format!("{}: {msg}", family.name())));
    let random_pairs = |slots: &mut Vec<usize>, rng: &mut ChaCha8Rng| -> Vec<(usize, usize)> {
        slots.shuffle(rng);
        slots.chunks(2).map(|c| (c[0], c[1])).collect()
    };
    let pairs: Vec<(usize, usize)> = match family {
        Family::Random => {
            if n == 0 {
                return bad("needs n >= 1");
            }
            random_pairs(&mut (0..2 * n).collect(), rng)
        }
        Family::Interval => {
            if n == 0 {
                return bad("needs n >= 1");
            }
            random_pairs(&mut (0..2 * n).collect(), rng)
                .into_iter()
                .map(|(a, b)| (a.min(b), a.max(b)))
                .collect()
        }
        Family::Cycle => {
            if n < 3 {
                return bad("needs n >= 3");
            }
            (0..n).map(|i| (2 * i, (2 * i + 3) % (2 * n))).collect()
        }
        Family::Star => {
            if n == 0 {
                return bad("needs n >= 1");
            }
            std::iter::once((0, 2 * n - 1))
                .chain((1..n).map(|i| (2 * i - 1, 2 * i)))
                .collect()
        }
        Family::Octahedron => {
            if n != 6 {
                return bad("has exactly 6 arcs");
            }
            vec![(0, 5), (6, 11), (2, 7), (8, 1), (4, 9), (10, 3)]
        }
        Family::Cover2 | Family::Cover3 => {
            let k = if family == Family::Cover2 { 2 } else { 3 };
            if n < k {
                return bad(&format!("needs n >= {k}"));
            }
            let mut slots: Vec<usize> = (0..2 * n).collect();
            slots.shuffle(rng);
            let mut cover: Vec<usize> = slots[..2 * k].to_vec();
            cover.sort_unstable();
            let mut rest = slots[2 * k..].to_vec();
            let mut pairs = if k == 2 {
                // (p0,p3) and (p2,p1): the second wraps around into the first
                vec![(cover[0], cover[3]), (cover[2], cover[1])]
            } else {
                vec![(cover[0], cover[3]), (cover[2], cover[5]), (cover[4], cover[1])]
            };
            pairs.extend(random_pairs(&mut rest, rng));
            pairs
        }
    };
    CircularArcModel::from_grid(&pairs)
}

fn draw_weight(dist: WeightDist, max: i64, rng: &mut ChaCha8Rng) -> ExtendedWeight {
    match dist {
        WeightDist::Unit => ExtendedWeight::one(),
        WeightDist::Nonneg => {
            let q = rng.gen_range(1..=4);
            ExtendedWeight::ratio(rng.gen_range(0..=max * q), q)
        }
        WeightDist::Signed => {
            let q = rng.gen_range(1..=4);
            ExtendedWeight::ratio(rng.gen_range(-max * q..=max * q), q)
        }
    }
}

/// Deterministic instance for `spec`, using ChaCha8 seeded from `spec.seed`.
pub fn generate(spec: &GenSpec) -> Result<(CircularArcModel, WeightMap)> {
    if spec.weights.max < 1 {
        return Err(Error::InvalidSpec("weight range must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let model = family_model(spec.family, spec.n, &mut rng)?;
    let mut w = WeightMap::unit(spec.weights.kind);
    match spec.weights.kind {
        WeightKind::Vertex => {
            for v in 0..model.n() {
                w.set_vertex(v, draw_weight(spec.weights.dist, spec.weights.max, &mut rng));
            }
        }
        WeightKind::Edge => {
            if spec.weights.dist != WeightDist::Unit {
                for &(u, v) in Graph::from_model(&model).edges() {
                    w.set_edge(u, v, draw_weight(spec.weights.dist, spec.weights.max, &mut rng));
                }
            }
        }
    }
    Ok((model, w))
}

/// Applies a relabeling `perm[old] = new` to a model by permuting arc ids.
pub fn relabel(model: &CircularArcModel, perm: &[usize]) -> CircularArcModel {
    let mut pairs = vec![(0, 0); model.n()];
    for a in model.arcs() {
        pairs[perm[a.id]] = (a.start, a.end);
    }
    CircularArcModel::from_grid(&pairs).expect("permuted model stays valid")
}

/// Shifts all endpoints by `by` grid slots; the intersection graph is unchanged.
pub fn rotate(model: &CircularArcModel, by: usize) -> CircularArcModel {
    let g = model.grid_size() as i64;
    let raw: Vec<(i64, i64)> = model
        .arcs()
        .iter()
        .map(|a| ((a.start as i64 + by as i64) % g, (a.end as i64 + by as i64) % g))
        .collect();
    normalize_model(&raw).expect("rotation keeps endpoints distinct")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub seed: u64,
    pub n: usize,
    pub solver: ExtendedWeight,
    pub oracle: ExtendedWeight,
    pub detail: Option<String>,
    pub model: String,
    pub weights: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffReport {
    pub problem: Problem,
    pub trials: usize,
    pub mismatches: Vec<Mismatch>,
    pub elapsed: Duration,
}

impl DiffReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn value_or_inf(v: &ExtendedWeight) -> String {
    match v {
        ExtendedWeight::Infinite => "INF".to_string(),
        v => v.to_string(),
    }
}

/// One `MISMATCH` line per failing trial followed by its instance. Timing is
/// left out so that the text only depends on the inputs.
impl fmt::Display for DiffReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for mm in &self.mismatches {
            writeln!(
                f,
                "MISMATCH seed={} n={} solver={} oracle={}",
                mm.seed,
                mm.n,
                value_or_inf(&mm.solver),
                value_or_inf(&mm.oracle)
            )?;
            if let Some(d) = &mm.detail {
                writeln!(f, "c {d}")?;
            }
            f.write_str(&mm.model)?;
            f.write_str(&mm.weights)?;
        }
        Ok(())
    }
}

/// Runs `trials` random instances through the solver and the oracle. Trial
/// seeds and sizes are drawn from ChaCha8 seeded with `seed`.
pub fn differential_run(
    problem: Problem,
    trials: usize,
    n_range: RangeInclusive<usize>,
    dist: WeightDist,
    seed: u64,
) -> Result<DiffReport> {
    differential_run_with(problem, trials, n_range, dist, seed, Family::Random)
}

pub fn differential_run_with(
    problem: Problem,
    trials: usize,
    n_range: RangeInclusive<usize>,
    dist: WeightDist,
    seed: u64,
    family: Family,
) -> Result<DiffReport> {
    if *n_range.end() > ORACLE_LIMIT {
        return Err(Error::TooLarge(format!("n up to {}", n_range.end())));
    }
    let started = Instant::now();
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = Vec::new();
    for _ in 0..trials {
        let trial_seed: u64 = master.gen();
        let n = master.gen_range(n_range.clone());
        let spec = GenSpec {
            seed: trial_seed,
            n,
            family,
            weights: WeightSpec::new(problem.kind(), dist),
        };
        let (model, w) = generate(&spec)?;
        let g = Graph::from_model(&model);
        let oracle = oracle_solve(problem, &g, &w)?;
        let (solver, detail) = match crate::solvers::solve(problem, &model, &w) {
            Ok(sol) => {
                let mut detail = None;
                if sol.feasible {
                    let v = verify(problem, &g, &w, &sol.members)?;
                    if !v.feasible {
                        detail = v.violation;
                    } else if v.value != sol.value {
                        detail = Some(format!("reported {} but members weigh {}", sol.value, v.value));
                    }
                }
                (sol, detail)
            }
            Err(e) => (Solution::infeasible(problem.kind()), Some(e.to_string())),
        };
        if detail.is_some() || solver.feasible != oracle.feasible || solver.value != oracle.value {
            mismatches.push(Mismatch {
                seed: trial_seed,
                n,
                solver: solver.value,
                oracle: oracle.value,
                detail,
                model: write_model(&model),
                weights: write_weights(&w),
            });
        }
    }
    Ok(DiffReport {
        problem,
        trials,
        mismatches,
        elapsed: started.elapsed(),
    })
}
