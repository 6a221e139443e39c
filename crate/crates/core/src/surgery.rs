//! Model surgery: cutting the circle, splitting arcs and inserting new arcs.
//!
//! Every operation returns a fresh model on a re-normalized grid together
//! with a [`SurgeryMap`] relating original and derived arcs. New endpoints
//! are spliced into the grid by scaling all positions by a common factor and
//! offsetting from an existing grid position. The scale grows with the
//! model so that any number of arcs can be split at one point.

use crate::error::{Error, Result};
use crate::model::{normalize_model, CircularArcModel};

/// Offsets of placed endpoints must stay strictly inside `(-MIN_SCALE, MIN_SCALE)`
/// and away from zero.
pub const MIN_SCALE: i64 = 16;

fn scale_for(n: usize) -> i64 {
    MIN_SCALE.max(4 * (n as i64 + 4))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RoleTag {
    LeftPart,
    RightPart,
    LeafMinus,
    LeafPlus,
    Copy,
    Extra,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurgeryMap {
    /// Original arc -> derived arcs.
    pub forward: Vec<Vec<usize>>,
    /// Derived arcs without a preimage.
    pub added: Vec<usize>,
    pub role_tags: Vec<RoleTag>,
    origin: Vec<Option<usize>>,
}

impl SurgeryMap {
    pub fn identity(n: usize) -> Self {
        SurgeryMap {
            forward: (0..n).map(|i| vec![i]).collect(),
            added: Vec::new(),
            role_tags: vec![RoleTag::Copy; n],
            origin: (0..n).map(Some).collect(),
        }
    }

    /// Original arc behind a derived arc, if any.
    pub fn origin(&self, derived: usize) -> Option<usize> {
        self.origin[derived]
    }

    pub fn derived_count(&self) -> usize {
        self.origin.len()
    }

    pub fn part(&self, original: usize, tag: RoleTag) -> Option<usize> {
        self.forward[original]
            .iter()
            .copied()
            .find(|&d| self.role_tags[d] == tag)
    }

    /// Derived arcs carrying `tag` that were added rather than mapped.
    pub fn added_with(&self, tag: RoleTag) -> Vec<usize> {
        self.added
            .iter()
            .copied()
            .filter(|&d| self.role_tags[d] == tag)
            .collect()
    }

    /// `self` followed by `next`. Tags of the result come from `next`, except
    /// that copies inherit the tag they had after `self`.
    pub fn then(&self, next: &SurgeryMap) -> SurgeryMap {
        let count = next.derived_count();
        let mut origin = vec![None; count];
        let mut role_tags = next.role_tags.clone();
        for (d, slot) in origin.iter_mut().enumerate() {
            if let Some(mid) = next.origin(d) {
                *slot = self.origin(mid);
                if next.role_tags[d] == RoleTag::Copy {
                    role_tags[d] = self.role_tags[mid];
                }
            }
        }
        let mut forward = vec![Vec::new(); self.forward.len()];
        let mut added = Vec::new();
        for (d, o) in origin.iter().enumerate() {
            match o {
                Some(o) => forward[*o].push(d),
                None => added.push(d),
            }
        }
        SurgeryMap {
            forward,
            added,
            role_tags,
            origin,
        }
    }
}

/// A point strictly between grid slots: `offset` scaled units after grid
/// position `anchor` (before it when negative), or after the midpoint of
/// segment `anchor` when `mid` is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RawPoint {
    pub anchor: usize,
    pub offset: i64,
    pub mid: bool,
}

impl RawPoint {
    pub fn new(anchor: usize, offset: i64) -> Self {
        RawPoint {
            anchor,
            offset,
            mid: false,
        }
    }

    /// Midpoint of segment `seg` shifted by `offset`.
    pub fn in_segment(seg: usize, offset: i64) -> Self {
        RawPoint {
            anchor: seg,
            offset,
            mid: true,
        }
    }

    fn raw(self, scale: i64) -> i64 {
        let base = self.anchor as i64 * scale + self.offset;
        if self.mid {
            base + scale / 2
        } else {
            base
        }
    }
}

/// A new arc to splice into a model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Placement {
    pub start: RawPoint,
    pub end: RawPoint,
    pub tag: RoleTag,
}

/// Accumulates arcs on the scaled grid and normalizes them in one go.
pub(crate) struct SurgeryBuilder<'a> {
    model: &'a CircularArcModel,
    scale: i64,
    splits: i64,
    raw: Vec<(i64, i64)>,
    origin: Vec<Option<usize>>,
    tags: Vec<RoleTag>,
}

impl<'a> SurgeryBuilder<'a> {
    pub fn new(model: &'a CircularArcModel) -> Self {
        SurgeryBuilder {
            model,
            scale: scale_for(model.n()),
            splits: 0,
            raw: Vec::new(),
            origin: Vec::new(),
            tags: Vec::new(),
        }
    }

    pub fn copy(&mut self, id: usize) {
        let a = self.model.arc(id);
        self.push(
            (a.start as i64 * self.scale, a.end as i64 * self.scale),
            Some(id),
            RoleTag::Copy,
        );
    }

    /// Replaces arc `id` by its parts on both sides of the midpoint of `seg`.
    /// Successive splits nest around the midpoint.
    pub fn split(&mut self, id: usize, seg: usize) {
        let a = self.model.arc(id);
        let p = RawPoint::in_segment(seg, 0).raw(self.scale);
        let k = self.splits;
        self.splits += 1;
        let s = self.scale;
        self.push((a.start as i64 * s, p - 1 - k), Some(id), RoleTag::LeftPart);
        self.push((p + 1 + k, a.end as i64 * s), Some(id), RoleTag::RightPart);
    }

    /// Splits arc `id` with the left part ending `left` units and the right
    /// part starting `right` units after the midpoint of `seg`.
    pub fn split_custom(&mut self, id: usize, seg: usize, left: i64, right: i64) {
        let a = self.model.arc(id);
        let p = RawPoint::in_segment(seg, 0).raw(self.scale);
        let s = self.scale;
        self.push((a.start as i64 * s, p + left), Some(id), RoleTag::LeftPart);
        self.push((p + right, a.end as i64 * s), Some(id), RoleTag::RightPart);
    }

    pub fn place(&mut self, placement: Placement) -> Result<()> {
        for pt in [placement.start, placement.end] {
            let bad_offset = if pt.mid {
                pt.offset.abs() >= MIN_SCALE / 2
            } else {
                pt.offset <= -MIN_SCALE || pt.offset >= MIN_SCALE || pt.offset == 0
            };
            if bad_offset {
                return Err(Error::PlacementConflict(format!(
                    "offset {} from grid position {} is not strictly between grid slots",
                    pt.offset, pt.anchor
                )));
            }
            if pt.anchor >= self.model.grid_size().max(1) {
                return Err(Error::PlacementConflict(format!(
                    "anchor {} outside grid",
                    pt.anchor
                )));
            }
        }
        self.push(
            (
                placement.start.raw(self.scale),
                placement.end.raw(self.scale),
            ),
            None,
            placement.tag,
        );
        Ok(())
    }

    fn push(&mut self, arc: (i64, i64), origin: Option<usize>, tag: RoleTag) {
        self.raw.push(arc);
        self.origin.push(origin);
        self.tags.push(tag);
    }

    pub fn finish(self) -> Result<(CircularArcModel, SurgeryMap)> {
        let mut seen = std::collections::HashSet::new();
        for &(s, t) in &self.raw {
            for x in [s, t] {
                let x = x.rem_euclid(self.scale * self.model.grid_size().max(1) as i64);
                if !seen.insert(x) {
                    return Err(Error::PlacementConflict(format!(
                        "two endpoints share scaled position {x}"
                    )));
                }
            }
        }
        let wrapped: Vec<(i64, i64)> = self
            .raw
            .iter()
            .map(|&(s, t)| {
                let m = self.scale * self.model.grid_size().max(1) as i64;
                (s.rem_euclid(m), t.rem_euclid(m))
            })
            .collect();
        let derived = if wrapped.is_empty() {
            CircularArcModel::empty()
        } else {
            normalize_model(&wrapped)?
        };
        let mut forward = vec![Vec::new(); self.model.n()];
        let mut added = Vec::new();
        for (d, o) in self.origin.iter().enumerate() {
            match o {
                Some(o) => forward[*o].push(d),
                None => added.push(d),
            }
        }
        Ok((
            derived,
            SurgeryMap {
                forward,
                added,
                role_tags: self.tags,
                origin: self.origin,
            },
        ))
    }
}

/// Removes the midpoint of segment `seg` from the circle: every arc over it
/// becomes a left and a right part. The result has an empty segment, so it
/// is an interval model.
pub fn cut_at(model: &CircularArcModel, seg: usize) -> Result<(CircularArcModel, SurgeryMap)> {
    if seg >= model.grid_size() {
        return Err(Error::PreconditionViolated(format!(
            "segment {seg} outside grid"
        )));
    }
    let mut b = SurgeryBuilder::new(model);
    for a in model.arcs() {
        if model.contains_segment(a.id, seg) {
            b.split(a.id, seg);
        } else {
            b.copy(a.id);
        }
    }
    b.finish()
}

/// Copies every arc and appends the placed arcs, in order, after them.
pub fn insert_arcs(
    model: &CircularArcModel,
    specs: &[Placement],
) -> Result<(CircularArcModel, SurgeryMap)> {
    let mut b = SurgeryBuilder::new(model);
    for a in model.arcs() {
        b.copy(a.id);
    }
    for &p in specs {
        b.place(p)?;
    }
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn m(pairs: &[(usize, usize)]) -> CircularArcModel {
        CircularArcModel::from_grid(pairs).unwrap()
    }

    fn c4() -> CircularArcModel {
        m(&[(0, 3), (2, 5), (4, 7), (6, 1)])
    }

    fn c6() -> CircularArcModel {
        let pairs: Vec<_> = (0..6).map(|i| (2 * i, (2 * i + 3) % 12)).collect();
        m(&pairs)
    }

    fn is_path(g: &Graph) -> bool {
        let n = g.vertex_count();
        let degs: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
        g.edge_count() == n - 1
            && degs.iter().filter(|&&d| d == 1).count() == 2
            && degs.iter().all(|&d| d <= 2)
            && g.connected_components().len() == 1
    }

    #[test]
    fn cut_c4_gives_p5() {
        let (cut, map) = cut_at(&c4(), 1).unwrap();
        assert_eq!(cut.n(), 5);
        assert_eq!(cut.coverage_extremes().unwrap().min, 0);
        assert!(is_path(&Graph::from_model(&cut)));
        assert_eq!(map.forward[0].len(), 2);
        assert_eq!(map.role_tags[map.forward[0][0]], RoleTag::LeftPart);
        assert_eq!(map.role_tags[map.forward[0][1]], RoleTag::RightPart);
    }

    #[test]
    fn cut_k3_splits_two_arcs() {
        let k3 = m(&[(4, 1), (0, 3), (2, 5)]);
        let (cut, map) = cut_at(&k3, 0).unwrap();
        assert_eq!(cut.n(), 5);
        assert_eq!(cut.coverage_extremes().unwrap().min, 0);
        assert_eq!(map.forward[2].len(), 1);
        let g = Graph::from_model(&cut);
        let a3 = map.forward[2][0];
        // the copy of A3 meets the right part of A1's... rather both sides
        // of the cut keep the adjacencies forced by the endpoints
        assert!(g.has_edge(a3, map.part(1, RoleTag::RightPart).unwrap()));
        assert!(g.has_edge(a3, map.part(0, RoleTag::LeftPart).unwrap()));
        assert!(is_path(&g));
    }

    #[test]
    fn cut_over_empty_segment_is_copy() {
        let model = m(&[(0, 1), (2, 3)]);
        let (cut, map) = cut_at(&model, 1).unwrap();
        assert_eq!(cut, model);
        assert!(map.role_tags.iter().all(|&t| t == RoleTag::Copy));
    }

    #[test]
    fn inserted_leaf_hangs_off_one_arc() {
        // inside A1 = (0,3) of C6 between positions 1 and 2: crosses no endpoint
        let spec = Placement {
            start: RawPoint::new(1, 3),
            end: RawPoint::new(1, 5),
            tag: RoleTag::Extra,
        };
        let (model, map) = insert_arcs(&c6(), &[spec]).unwrap();
        let g = Graph::from_model(&model);
        let leaf = map.added[0];
        assert_eq!(g.neighbors(leaf), &[map.forward[0][0]]);
        let cyc = model.extract_cycle_structure().unwrap();
        assert_eq!(cyc.cycle.len(), 6);
        assert_eq!(cyc.pendants.get(&leaf), Some(&map.forward[0][0]));
    }

    #[test]
    fn inserted_arc_over_triple_point() {
        // K3 model: segment 0 is covered by A1 and A2 only; place an arc
        // around the start of A3 (position 2) to meet A2 and A3 only
        let k3 = m(&[(4, 1), (0, 3), (2, 5)]);
        let spec = Placement {
            start: RawPoint::new(2, -2),
            end: RawPoint::new(2, 2),
            tag: RoleTag::Extra,
        };
        let (model, map) = insert_arcs(&k3, &[spec]).unwrap();
        let g = Graph::from_model(&model);
        assert_eq!(g.neighbors(map.added[0]), &[1, 2]);
    }

    #[test]
    fn identical_arcs_are_twins() {
        // C6 with a leaf inside A2 = (2,5) between t1 = 3 and s3 = 4
        let leaf = Placement {
            start: RawPoint::new(3, 4),
            end: RawPoint::new(3, 6),
            tag: RoleTag::Extra,
        };
        let (model, _) = insert_arcs(&c6(), &[leaf]).unwrap();
        let t1 = model.arc(0).end;
        let s3 = model.arc(2).start;
        let twins = [
            Placement {
                start: RawPoint::new(t1, 1),
                end: RawPoint::new(s3, -1),
                tag: RoleTag::Extra,
            },
            Placement {
                start: RawPoint::new(t1, 2),
                end: RawPoint::new(s3, -2),
                tag: RoleTag::Extra,
            },
        ];
        let (model2, map) = insert_arcs(&model, &twins).unwrap();
        let g = Graph::from_model(&model2);
        let (x, y) = (map.added[0], map.added[1]);
        assert!(g.has_edge(x, y));
        let mut nx: Vec<usize> = g.neighbors(x).iter().copied().filter(|&v| v != y).collect();
        let mut ny: Vec<usize> = g.neighbors(y).iter().copied().filter(|&v| v != x).collect();
        nx.sort();
        ny.sort();
        assert_eq!(nx, ny);
        assert_eq!(nx, vec![1, 6]);
    }

    #[test]
    fn zero_offset_is_rejected() {
        let spec = Placement {
            start: RawPoint::new(1, 0),
            end: RawPoint::new(1, 4),
            tag: RoleTag::Extra,
        };
        assert!(matches!(
            insert_arcs(&c6(), &[spec]),
            Err(Error::PlacementConflict(_))
        ));
    }

    #[test]
    fn composed_maps_track_origins() {
        let (cut, first) = cut_at(&c4(), 1).unwrap();
        let spec = Placement {
            start: RawPoint::new(0, 1),
            end: RawPoint::new(0, 2),
            tag: RoleTag::Extra,
        };
        let (_, second) = insert_arcs(&cut, &[spec]).unwrap();
        let both = first.then(&second);
        assert_eq!(both.forward[0].len(), 2);
        assert_eq!(both.added.len(), 1);
        assert_eq!(both.role_tags[both.forward[0][0]], RoleTag::LeftPart);
    }
}
