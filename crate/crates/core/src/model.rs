//! Circular-arc models on a discrete circle.
//!
//! A model with `n` arcs lives on a grid of `2n` positions, one per arc
//! endpoint. Arcs are open: `(start, end)` is the set of points met when
//! walking clockwise (increasing positions, modulo `2n`) from `start` to
//! `end`, excluding both endpoints. Segment `i` is the open stretch between
//! positions `i` and `i + 1`; every point inside a segment sees the same arcs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::util::{Fenwick, SparseMax};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridPoint(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arc {
    pub id: usize,
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Start,
    End,
}

/// Endpoint types bounding a segment, left then right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SegmentKind {
    SS,
    ST,
    TS,
    TT,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    pub index: usize,
    pub left: GridPoint,
    pub right: GridPoint,
    pub kind: SegmentKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverageExtremes {
    pub min: usize,
    pub max: usize,
    pub min_segment: usize,
    pub max_segment: usize,
}

/// The induced cycle of a model with coverage between 1 and 2 together with
/// the pendant arcs hanging off it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcCycle {
    /// Cycle arcs in clockwise order of their starts.
    pub cycle: Vec<usize>,
    /// Pendant arc -> the cycle arc containing it.
    pub pendants: BTreeMap<usize, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CircularArcModel {
    arcs: Vec<Arc>,
    owners: Vec<(usize, Side)>,
}

impl CircularArcModel {
    /// Builds a model from arcs already placed on the `0..2n` grid.
    pub fn from_grid(pairs: &[(usize, usize)]) -> Result<Self> {
        let grid = 2 * pairs.len();
        let mut owners = vec![None; grid];
        for (id, &(s, t)) in pairs.iter().enumerate() {
            for (pos, side) in [(s, Side::Start), (t, Side::End)] {
                if pos >= grid {
                    return Err(Error::InvalidModel(format!(
                        "arc {} endpoint {pos} outside grid 0..{grid}",
                        id + 1
                    )));
                }
                if owners[pos].is_some() {
                    return Err(Error::InvalidModel(format!(
                        "position {pos} used twice (arc {})",
                        id + 1
                    )));
                }
                owners[pos] = Some((id, side));
            }
        }
        let arcs = pairs
            .iter()
            .enumerate()
            .map(|(id, &(start, end))| Arc { id, start, end })
            .collect();
        Ok(CircularArcModel {
            arcs,
            owners: owners.into_iter().map(Option::unwrap).collect(),
        })
    }

    pub fn empty() -> Self {
        CircularArcModel {
            arcs: Vec::new(),
            owners: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.arcs.len()
    }

    pub fn grid_size(&self) -> usize {
        self.owners.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, id: usize) -> Arc {
        self.arcs[id]
    }

    pub fn owner(&self, pos: usize) -> (usize, Side) {
        self.owners[pos]
    }

    pub fn to_pairs(&self) -> Vec<(usize, usize)> {
        self.arcs.iter().map(|a| (a.start, a.end)).collect()
    }

    fn rel(&self, from: usize, x: usize) -> usize {
        let g = self.grid_size();
        (x + g - from) % g
    }

    /// Number of grid steps from start to end.
    pub fn span(&self, id: usize) -> usize {
        let a = self.arcs[id];
        self.rel(a.start, a.end)
    }

    /// Whether grid position `x` lies strictly inside arc `id`.
    pub fn contains_point(&self, id: usize, x: usize) -> bool {
        let a = self.arcs[id];
        let r = self.rel(a.start, x);
        r > 0 && r < self.span(id)
    }

    /// Whether segment `seg` (between `seg` and `seg + 1`) lies inside arc `id`.
    pub fn contains_segment(&self, id: usize, seg: usize) -> bool {
        let a = self.arcs[id];
        self.rel(a.start, seg) < self.span(id)
    }

    pub fn intersects(&self, a: usize, b: usize) -> bool {
        a != b
            && (self.contains_point(a, self.arcs[b].start)
                || self.contains_point(b, self.arcs[a].start))
    }

    /// Whether arc `inner` is a subset of arc `outer`.
    pub fn arc_contains(&self, outer: usize, inner: usize) -> bool {
        let o = self.arcs[outer];
        let i = self.arcs[inner];
        let rs = self.rel(o.start, i.start);
        let rt = self.rel(o.start, i.end);
        outer != inner && rs > 0 && rs < rt && rt < self.span(outer)
    }

    pub fn neighbors(&self, id: usize) -> Vec<usize> {
        (0..self.n()).filter(|&b| self.intersects(id, b)).collect()
    }

    pub fn segments(&self) -> Vec<Segment> {
        let g = self.grid_size();
        let side = |pos: usize| self.owners[pos].1;
        (0..g)
            .map(|i| {
                let (l, r) = (i, (i + 1) % g);
                let kind = match (side(l), side(r)) {
                    (Side::Start, Side::Start) => SegmentKind::SS,
                    (Side::Start, Side::End) => SegmentKind::ST,
                    (Side::End, Side::Start) => SegmentKind::TS,
                    (Side::End, Side::End) => SegmentKind::TT,
                };
                Segment {
                    index: i,
                    left: GridPoint(l),
                    right: GridPoint(r),
                    kind,
                }
            })
            .collect()
    }

    /// `|A(p)|` for a point inside every segment, by a single sweep.
    pub fn coverage(&self) -> Vec<usize> {
        let g = self.grid_size();
        if g == 0 {
            return Vec::new();
        }
        let mut cov = vec![0usize; g];
        let mut current = (0..self.n())
            .filter(|&a| self.contains_segment(a, 0))
            .count();
        cov[0] = current;
        for (i, slot) in cov.iter_mut().enumerate().skip(1) {
            match self.owners[i].1 {
                Side::Start => current += 1,
                Side::End => current -= 1,
            }
            *slot = current;
        }
        cov
    }

    pub fn arcs_at_segment(&self, seg: usize) -> Vec<usize> {
        (0..self.n())
            .filter(|&a| self.contains_segment(a, seg))
            .collect()
    }

    /// Arcs containing a grid position; the arc owning the position is never
    /// included.
    pub fn arcs_at_point(&self, p: GridPoint) -> Vec<usize> {
        (0..self.n())
            .filter(|&a| self.contains_point(a, p.0))
            .collect()
    }

    pub fn coverage_extremes(&self) -> Result<CoverageExtremes> {
        if self.n() == 0 {
            return Err(Error::EmptyModel);
        }
        let cov = self.coverage();
        let mut ext = CoverageExtremes {
            min: cov[0],
            max: cov[0],
            min_segment: 0,
            max_segment: 0,
        };
        for (i, &c) in cov.iter().enumerate() {
            if c < ext.min {
                ext.min = c;
                ext.min_segment = i;
            }
            if c > ext.max {
                ext.max = c;
                ext.max_segment = i;
            }
        }
        Ok(ext)
    }

    /// Degree of every arc in the intersection graph, in `O(n log n)`: an arc
    /// misses exactly the arcs nested in the closed complement of itself.
    pub fn degrees(&self) -> Vec<usize> {
        let n = self.n();
        let g = self.grid_size();
        if n == 0 {
            return Vec::new();
        }
        // unrolled copies of every arc on a line of length 4n
        let mut copies: Vec<(usize, usize)> = Vec::with_capacity(2 * n);
        for a in &self.arcs {
            let end = if a.end > a.start { a.end } else { a.end + g };
            copies.push((a.start, end));
            copies.push((a.start + g, end + g));
        }
        copies.sort_by_key(|&(_, y)| y);
        let mut queries: Vec<(usize, usize, usize)> = self
            .arcs
            .iter()
            .map(|a| {
                let gap = self.rel(a.end, a.start);
                (a.end + gap, a.end, a.id)
            })
            .collect();
        queries.sort_unstable();
        let mut bit = Fenwick::new(3 * g + 1);
        let mut added = 0u64;
        let mut next = 0;
        let mut deg = vec![0usize; n];
        for (hi, lo, id) in queries {
            while next < copies.len() && copies[next].1 < hi {
                bit.add(copies[next].0, 1);
                added += 1;
                next += 1;
            }
            let nested = added - bit.prefix(lo + 1);
            deg[id] = n - 1 - nested as usize;
        }
        deg
    }

    /// Number of edges of the intersection graph without building it.
    pub fn edge_count(&self) -> u64 {
        self.degrees().iter().map(|&d| d as u64).sum::<u64>() / 2
    }

    pub fn universal_arcs(&self) -> Vec<usize> {
        let n = self.n();
        self.degrees()
            .iter()
            .enumerate()
            .filter(|(_, &d)| d + 1 == n)
            .map(|(i, _)| i)
            .collect()
    }

    /// Lowest-id arc meeting every other arc.
    pub fn find_universal_arc(&self) -> Option<usize> {
        self.universal_arcs().first().copied()
    }

    /// Helper for cover searches: each start position on a line of length 6n
    /// carries the unrolled end of its arc.
    fn reach_table(&self) -> SparseMax {
        let g = self.grid_size();
        let mut values = vec![(i64::MIN, usize::MAX); 3 * g];
        for copy in 0..3 {
            for a in &self.arcs {
                let x = a.start + copy * g;
                values[x] = ((x + self.span(a.id)) as i64, a.id);
            }
        }
        SparseMax::new(values)
    }

    /// Arcs starting strictly inside `(lo, hi)` on the unrolled line whose
    /// unrolled end exceeds `beyond`, lowest id first.
    fn partners(&self, lo: usize, hi: usize, beyond: usize) -> Vec<usize> {
        let g = self.grid_size();
        let mut out: Vec<usize> = (lo + 1..hi)
            .filter_map(|x| {
                let (id, side) = self.owners[x % g];
                (side == Side::Start && x + self.span(id) > beyond).then_some(id)
            })
            .collect();
        out.sort_unstable();
        out
    }

    fn find_two_cover(&self, table: &SparseMax) -> Option<Vec<usize>> {
        let g = self.grid_size();
        for a in &self.arcs {
            let (lo, hi) = (a.start, a.start + self.span(a.id));
            if let Some((reach, _)) = table.query(lo + 1, hi) {
                if reach > (a.start + g) as i64 {
                    let j = self.partners(lo, hi, a.start + g)[0];
                    let mut pair = vec![a.id, j];
                    pair.sort_unstable();
                    return Some(pair);
                }
            }
        }
        None
    }

    fn find_three_cover(&self, table: &SparseMax) -> Option<Vec<usize>> {
        let g = self.grid_size();
        for a in &self.arcs {
            let (lo, hi) = (a.start, a.start + self.span(a.id));
            let Some((reach_j, j)) = table.query(lo + 1, hi) else {
                continue;
            };
            if reach_j <= hi as i64 {
                continue;
            }
            let start_j = reach_j as usize - self.span(j);
            let Some((reach_k, k)) = table.query(start_j + 1, reach_j as usize) else {
                continue;
            };
            if reach_k > (a.start + g) as i64 {
                let mut triple = vec![a.id, j, k];
                triple.sort_unstable();
                triple.dedup();
                return Some(triple);
            }
        }
        None
    }

    /// A set of at most `k` arcs (`k` is 2 or 3) whose union is the whole
    /// circle. Pairs are preferred to triples. The witness is anchored at the
    /// lowest arc id taking part in any cover of that size.
    pub fn find_small_cover(&self, k: usize) -> Option<Vec<usize>> {
        if self.n() < 2 || !(2..=3).contains(&k) {
            return None;
        }
        let table = self.reach_table();
        if let Some(pair) = self.find_two_cover(&table) {
            return Some(pair);
        }
        if k == 3 {
            return self.find_three_cover(&table);
        }
        None
    }

    /// True iff no two and no three arcs cover the circle.
    pub fn is_hca_by_cover(&self) -> bool {
        self.find_small_cover(3).is_none()
    }

    /// Splits the arcs of a model with coverage in `1..=2` and no small
    /// circle cover into its induced cycle and pendant leaves.
    pub fn extract_cycle_structure(&self) -> Result<ArcCycle> {
        let ext = self.coverage_extremes()?;
        if ext.max != 2 || ext.min != 1 {
            return Err(Error::PreconditionViolated(format!(
                "cycle extraction needs coverage between 1 and 2, got {}..{}",
                ext.min, ext.max
            )));
        }
        if let Some(cover) = self.find_small_cover(3) {
            return Err(Error::PreconditionViolated(format!(
                "{} arcs cover the circle",
                cover.len()
            )));
        }
        // arcs over each segment, at most two
        let g = self.grid_size();
        let mut over: Vec<Vec<usize>> = Vec::with_capacity(g);
        let mut active = self.arcs_at_segment(0);
        over.push(active.clone());
        for s in 1..g {
            let (id, side) = self.owner(s);
            match side {
                Side::Start => active.push(id),
                Side::End => active.retain(|&x| x != id),
            }
            over.push(active.clone());
        }
        let around = |a: &Arc| &over[(a.start + g - 1) % g];
        let mut pendants = BTreeMap::new();
        let mut cycle = Vec::new();
        for a in &self.arcs {
            let container = around(a).iter().copied().find(|&b| self.arc_contains(b, a.id));
            match container {
                Some(b) => {
                    pendants.insert(a.id, b);
                }
                None => cycle.push(a.id),
            }
        }
        cycle.sort_by_key(|&id| self.arcs[id].start);
        let first = (0..cycle.len()).min_by_key(|&i| cycle[i]).unwrap_or(0);
        cycle.rotate_left(first);
        let k = cycle.len();
        if k < 4 {
            return Err(Error::PreconditionViolated(format!(
                "cycle of length {k} is too short"
            )));
        }
        // without a two-cover every edge shows up as exactly one start
        // inside another arc
        let on_cycle: BTreeSet<usize> = cycle.iter().copied().collect();
        let edges = cycle
            .iter()
            .map(|&a| around(&self.arcs[a]).iter().filter(|b| on_cycle.contains(b)).count())
            .sum::<usize>();
        let closed = (0..k).all(|i| self.intersects(cycle[i], cycle[(i + 1) % k]));
        if edges != k || !closed {
            return Err(Error::PreconditionViolated(
                "maximal arcs do not form an induced cycle".into(),
            ));
        }
        Ok(ArcCycle { cycle, pendants })
    }
}

impl fmt::Display for CircularArcModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .arcs
            .iter()
            .map(|a| format!("A{}=({},{})", a.id + 1, a.start, a.end))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Maps arcs with arbitrary integer endpoints onto the `0..2n` grid,
/// preserving the circular order of endpoints. Coincident positions are
/// separated with ends before starts (so touching open arcs stay disjoint),
/// then by lower arc id.
pub fn normalize_model(raw: &[(i64, i64)]) -> Result<CircularArcModel> {
    if raw.is_empty() {
        return Err(Error::EmptyModel);
    }
    let mut events: Vec<(i64, u8, usize)> = Vec::with_capacity(2 * raw.len());
    for (id, &(s, t)) in raw.iter().enumerate() {
        if s == t {
            return Err(Error::DegenerateArc(id + 1));
        }
        events.push((s, 1, id));
        events.push((t, 0, id));
    }
    events.sort_unstable();
    let mut pairs = vec![(0usize, 0usize); raw.len()];
    for (pos, &(_, side, id)) in events.iter().enumerate() {
        if side == 1 {
            pairs[id].0 = pos;
        } else {
            pairs[id].1 = pos;
        }
    }
    CircularArcModel::from_grid(&pairs)
}
