//! Dynamic programming over binary vertex labelings with local rules.
//!
//! All four problems (and the dominating-induced-matching subproblem) can be
//! phrased as a labeling `x: V -> {0,1}` where each vertex only constrains
//! the number of its neighbors carrying each label:
//!
//! | rule | label 1 | label 0 |
//! |------|---------|---------|
//! | `Pvd` | free | exactly one 1-neighbor |
//! | `Evd` | no 1-neighbor | exactly one 1-neighbor |
//! | `Dim` | exactly one 1-neighbor | no 0-neighbor |
//! | `Ped` | exactly one 1-neighbor if it has a 0-neighbor | no 0-neighbor |
//! | `Ds` | free | at least one 1-neighbor |
//!
//! Vertex rules pay the weight of every 1-vertex; edge rules pay the weight
//! of every edge with both ends labelled 1. The engine consumes a sequence
//! of introduce/forget events (a path decomposition) and keeps, per bag,
//! the cheapest partial labeling for each vector of capped counters.

use std::collections::BTreeMap;

use num::{BigRational, Zero};

use crate::weight::{ExtendedWeight, WeightMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Rule {
    Pvd,
    Evd,
    Dim,
    Ped,
    Ds,
}

impl Rule {
    fn pays_vertices(self) -> bool {
        matches!(self, Rule::Pvd | Rule::Evd | Rule::Ds)
    }

    /// No completion can repair this status.
    fn dead(self, label: u8, ones: u8, zeros: u8) -> bool {
        match (self, label) {
            (Rule::Pvd, 1) => false,
            (Rule::Pvd, _) => ones >= 2,
            (Rule::Evd, 1) => ones >= 1,
            (Rule::Evd, _) => ones >= 2,
            (Rule::Dim, 1) => ones >= 2,
            (Rule::Dim, _) => zeros >= 1,
            (Rule::Ped, 1) => zeros >= 1 && ones >= 2,
            (Rule::Ped, _) => zeros >= 1,
            (Rule::Ds, _) => false,
        }
    }

    /// Status is acceptable once all neighbors are labelled.
    fn done(self, label: u8, ones: u8, zeros: u8) -> bool {
        match (self, label) {
            (Rule::Pvd, 1) => true,
            (Rule::Pvd, _) => ones == 1,
            (Rule::Evd, 1) => ones == 0,
            (Rule::Evd, _) => ones == 1,
            (Rule::Dim, 1) => ones == 1,
            (Rule::Dim, _) => zeros == 0,
            (Rule::Ped, 1) => zeros == 0 || ones == 1,
            (Rule::Ped, _) => zeros == 0,
            (Rule::Ds, 1) => true,
            (Rule::Ds, _) => ones >= 1,
        }
    }

    /// Drops counters the rule never looks at, so equivalent states merge.
    fn encode(self, label: u8, ones: u8, zeros: u8) -> u8 {
        let (ones, zeros) = match (self, label) {
            (Rule::Pvd, 1) | (Rule::Ds, 1) => (0, 0),
            (Rule::Ds, _) => (ones.min(1), 0),
            (Rule::Pvd, _) | (Rule::Evd, _) | (Rule::Dim, 1) => (ones, 0),
            (Rule::Dim, _) => (0, zeros),
            (Rule::Ped, 1) => (ones, zeros),
            (Rule::Ped, _) => (0, zeros),
        };
        (label << 3) | (ones.min(2) << 1) | zeros.min(1)
    }
}

fn decode(status: u8) -> (u8, u8, u8) {
    (status >> 3, (status >> 1) & 3, status & 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Event {
    /// `neighbors` are the neighbors of `vertex` that are currently in the bag;
    /// every edge must be announced exactly once this way.
    Introduce { vertex: usize, neighbors: Vec<usize> },
    Forget(usize),
}

/// Per-vertex forced labels; `None` leaves the vertex free.
pub(crate) type Forced = [Option<bool>];

const ROOT: u32 = u32::MAX;

/// Cheapest labeling accepted by `rule`, or `None` when no labeling has
/// finite cost. Vertices never introduced keep label 0.
pub(crate) fn solve_labeling(
    rule: Rule,
    n: usize,
    events: &[Event],
    weights: &WeightMap,
    forced: &Forced,
) -> Option<(BigRational, Vec<bool>)> {
    let mut bag: Vec<usize> = Vec::new();
    // (parent, vertex, label)
    let mut arena: Vec<(u32, u32, bool)> = Vec::new();
    let mut states: BTreeMap<Vec<u8>, (BigRational, u32)> = BTreeMap::new();
    states.insert(Vec::new(), (BigRational::zero(), ROOT));

    for event in events {
        let mut next: BTreeMap<Vec<u8>, (BigRational, u32)> = BTreeMap::new();
        match event {
            Event::Introduce { vertex, neighbors } => {
                let v = *vertex;
                let slots: Vec<usize> = neighbors
                    .iter()
                    .map(|u| {
                        bag.iter()
                            .position(|b| b == u)
                            .expect("introduced neighbor must be in the bag")
                    })
                    .collect();
                let labels: &[bool] = match forced.get(v).copied().flatten() {
                    Some(true) => &[true],
                    Some(false) => &[false],
                    None => &[false, true],
                };
                for (key, (cost, node)) in &states {
                    'label: for &label in labels {
                        let bit = label as u8;
                        let mut added = if label && rule.pays_vertices() {
                            weights.vertex(v)
                        } else {
                            ExtendedWeight::zero()
                        };
                        let mut new_key = key.clone();
                        let (mut ones, mut zeros) = (0u8, 0u8);
                        for &slot in &slots {
                            let (l, o, z) = decode(key[slot]);
                            if l == 1 {
                                ones = (ones + 1).min(2);
                                if label && !rule.pays_vertices() {
                                    added = added + weights.edge(v, bag[slot]);
                                }
                            } else {
                                zeros = 1;
                            }
                            let (o, z) = if label { ((o + 1).min(2), z) } else { (o, 1) };
                            if rule.dead(l, o, z) {
                                continue 'label;
                            }
                            new_key[slot] = rule.encode(l, o, z);
                        }
                        if rule.dead(bit, ones, zeros) {
                            continue;
                        }
                        let ExtendedWeight::Finite(added) = added else {
                            continue;
                        };
                        new_key.push(rule.encode(bit, ones, zeros));
                        let total = cost + added;
                        let better = match next.get(&new_key) {
                            Some((c, _)) => total < *c,
                            None => true,
                        };
                        if better {
                            arena.push((*node, v as u32, label));
                            next.insert(new_key, (total, (arena.len() - 1) as u32));
                        }
                    }
                }
                bag.push(v);
            }
            Event::Forget(v) => {
                let slot = bag
                    .iter()
                    .position(|b| b == v)
                    .expect("forgotten vertex must be in the bag");
                for (key, (cost, node)) in states {
                    let (l, o, z) = decode(key[slot]);
                    if !rule.done(l, o, z) {
                        continue;
                    }
                    let mut new_key = key;
                    new_key.remove(slot);
                    let better = match next.get(&new_key) {
                        Some((c, _)) => cost < *c,
                        None => true,
                    };
                    if better {
                        next.insert(new_key, (cost, node));
                    }
                }
                bag.remove(slot);
            }
        }
        states = next;
        if states.is_empty() {
            return None;
        }
    }

    // leftover bag vertices are checked as if forgotten
    let (cost, node) = states
        .into_iter()
        .filter(|(key, _)| key.iter().all(|&s| {
            let (l, o, z) = decode(s);
            rule.done(l, o, z)
        }))
        .map(|(_, v)| v)
        .reduce(|best, cand| if cand.0 < best.0 { cand } else { best })?;
    let mut labels = vec![false; n];
    let mut at = node;
    while at != ROOT {
        let (parent, v, label) = arena[at as usize];
        labels[v as usize] = label;
        at = parent;
    }
    Some((cost, labels))
}
