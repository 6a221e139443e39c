//! Exact weights extended with a `+inf` top element.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};

/// An exact rational or `+inf`. Infinity absorbs addition and is larger than
/// every finite value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtendedWeight {
    Finite(BigRational),
    Infinite,
}

impl ExtendedWeight {
    pub fn zero() -> Self {
        ExtendedWeight::Finite(BigRational::zero())
    }

    pub fn one() -> Self {
        ExtendedWeight::Finite(BigRational::one())
    }

    pub fn int(v: i64) -> Self {
        ExtendedWeight::Finite(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        ExtendedWeight::Finite(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedWeight::Infinite)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_infinite()
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            ExtendedWeight::Finite(r) => Some(r),
            ExtendedWeight::Infinite => None,
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, ExtendedWeight::Finite(r) if r.is_negative())
    }

    pub fn half(&self) -> Self {
        match self {
            ExtendedWeight::Finite(r) => {
                ExtendedWeight::Finite(r / BigRational::from_integer(BigInt::from(2)))
            }
            ExtendedWeight::Infinite => ExtendedWeight::Infinite,
        }
    }

    pub fn checked_sub(&self, other: &ExtendedWeight) -> Option<ExtendedWeight> {
        match (self, other) {
            (ExtendedWeight::Finite(a), ExtendedWeight::Finite(b)) => {
                Some(ExtendedWeight::Finite(a - b))
            }
            (ExtendedWeight::Infinite, ExtendedWeight::Finite(_)) => Some(ExtendedWeight::Infinite),
            _ => None,
        }
    }
}

impl From<BigRational> for ExtendedWeight {
    fn from(r: BigRational) -> Self {
        ExtendedWeight::Finite(r)
    }
}

impl Add for ExtendedWeight {
    type Output = ExtendedWeight;

    fn add(self, rhs: ExtendedWeight) -> ExtendedWeight {
        match (self, rhs) {
            (ExtendedWeight::Finite(a), ExtendedWeight::Finite(b)) => ExtendedWeight::Finite(a + b),
            _ => ExtendedWeight::Infinite,
        }
    }
}

impl<'a> Add<&'a ExtendedWeight> for &'a ExtendedWeight {
    type Output = ExtendedWeight;

    fn add(self, rhs: &ExtendedWeight) -> ExtendedWeight {
        match (self, rhs) {
            (ExtendedWeight::Finite(a), ExtendedWeight::Finite(b)) => ExtendedWeight::Finite(a + b),
            _ => ExtendedWeight::Infinite,
        }
    }
}

impl std::iter::Sum for ExtendedWeight {
    fn sum<I: Iterator<Item = ExtendedWeight>>(iter: I) -> Self {
        iter.fold(ExtendedWeight::zero(), |acc, w| acc + w)
    }
}

impl PartialOrd for ExtendedWeight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedWeight {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtendedWeight::Finite(a), ExtendedWeight::Finite(b)) => a.cmp(b),
            (ExtendedWeight::Finite(_), ExtendedWeight::Infinite) => Ordering::Less,
            (ExtendedWeight::Infinite, ExtendedWeight::Finite(_)) => Ordering::Greater,
            (ExtendedWeight::Infinite, ExtendedWeight::Infinite) => Ordering::Equal,
        }
    }
}

/// Prints `p/q` in lowest terms (`q` is always printed) or `inf`.
impl fmt::Display for ExtendedWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedWeight::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            ExtendedWeight::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for ExtendedWeight {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "inf" {
            return Ok(ExtendedWeight::Infinite);
        }
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p, q),
            None => (s, "1"),
        };
        let p: BigInt = p.parse().map_err(|_| format!("bad numerator `{p}`"))?;
        let q: BigInt = q.parse().map_err(|_| format!("bad denominator `{q}`"))?;
        if q.is_zero() {
            return Err("zero denominator".to_string());
        }
        Ok(ExtendedWeight::Finite(BigRational::new(p, q)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightKind {
    Vertex,
    Edge,
}

/// Sparse weights on vertices or edges; entries that are absent weigh `1`.
/// Edge keys are normalized to `(min, max)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMap {
    kind: WeightKind,
    vertices: BTreeMap<usize, ExtendedWeight>,
    edges: BTreeMap<(usize, usize), ExtendedWeight>,
}

fn edge_key(u: usize, v: usize) -> (usize, usize) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

impl WeightMap {
    pub fn unit(kind: WeightKind) -> Self {
        WeightMap {
            kind,
            vertices: BTreeMap::new(),
            edges: BTreeMap::new(),
        }
    }

    pub fn from_vertex_weights(weights: impl IntoIterator<Item = ExtendedWeight>) -> Self {
        let mut map = WeightMap::unit(WeightKind::Vertex);
        for (v, w) in weights.into_iter().enumerate() {
            map.set_vertex(v, w);
        }
        map
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    pub fn vertex(&self, v: usize) -> ExtendedWeight {
        self.vertices.get(&v).cloned().unwrap_or_else(ExtendedWeight::one)
    }

    pub fn edge(&self, u: usize, v: usize) -> ExtendedWeight {
        self.edges
            .get(&edge_key(u, v))
            .cloned()
            .unwrap_or_else(ExtendedWeight::one)
    }

    pub fn set_vertex(&mut self, v: usize, w: ExtendedWeight) {
        if w == ExtendedWeight::one() {
            self.vertices.remove(&v);
        } else {
            self.vertices.insert(v, w);
        }
    }

    pub fn set_edge(&mut self, u: usize, v: usize, w: ExtendedWeight) {
        let key = edge_key(u, v);
        if w == ExtendedWeight::one() {
            self.edges.remove(&key);
        } else {
            self.edges.insert(key, w);
        }
    }

    /// Explicit (non-default) vertex entries.
    pub fn vertex_entries(&self) -> impl Iterator<Item = (usize, &ExtendedWeight)> {
        self.vertices.iter().map(|(v, w)| (*v, w))
    }

    /// Explicit (non-default) edge entries.
    pub fn edge_entries(&self) -> impl Iterator<Item = ((usize, usize), &ExtendedWeight)> {
        self.edges.iter().map(|(e, w)| (*e, w))
    }

    /// True when some explicit entry is negative.
    pub fn has_negative(&self) -> bool {
        match self.kind {
            WeightKind::Vertex => self.vertices.values().any(ExtendedWeight::is_negative),
            WeightKind::Edge => self.edges.values().any(ExtendedWeight::is_negative),
        }
    }

    pub fn has_infinite(&self) -> bool {
        match self.kind {
            WeightKind::Vertex => self.vertices.values().any(ExtendedWeight::is_infinite),
            WeightKind::Edge => self.edges.values().any(ExtendedWeight::is_infinite),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_absorbs_and_dominates() {
        let inf = ExtendedWeight::Infinite;
        assert_eq!(ExtendedWeight::int(3) + inf.clone(), inf);
        assert!(ExtendedWeight::int(1_000_000) < inf);
        assert!(ExtendedWeight::int(-2) < ExtendedWeight::zero());
    }

    #[test]
    fn parse_and_print_lowest_terms() {
        let w: ExtendedWeight = "6/4".parse().unwrap();
        assert_eq!(w.to_string(), "3/2");
        assert_eq!("7".parse::<ExtendedWeight>().unwrap().to_string(), "7/1");
        assert_eq!("-2/6".parse::<ExtendedWeight>().unwrap().to_string(), "-1/3");
        assert!("inf".parse::<ExtendedWeight>().unwrap().is_infinite());
        assert!("1/0".parse::<ExtendedWeight>().is_err());
    }

    #[test]
    fn half_is_exact() {
        assert_eq!(ExtendedWeight::int(3).half(), ExtendedWeight::ratio(3, 2));
    }

    #[test]
    fn missing_entries_default_to_one() {
        let mut w = WeightMap::unit(WeightKind::Edge);
        w.set_edge(3, 1, ExtendedWeight::int(5));
        assert_eq!(w.edge(1, 3), ExtendedWeight::int(5));
        assert_eq!(w.edge(0, 2), ExtendedWeight::one());
    }
}
