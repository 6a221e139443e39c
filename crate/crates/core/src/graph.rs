//! Simple undirected graphs derived from arc models.

use crate::model::CircularArcModel;

/// Simple undirected graph. Edge ids are positions in the lexicographically
/// sorted edge list, so identical constructions give identical ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from an edge list. Self-loops and duplicates are dropped.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut list: Vec<(usize, usize)> = edges
            .into_iter()
            .filter(|&(u, v)| u != v)
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        list.sort_unstable();
        list.dedup();
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in &list {
            assert!(v < vertex_count, "edge ({u},{v}) out of range");
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for row in &mut adjacency {
            row.sort_unstable();
        }
        Graph {
            adjacency,
            edges: list,
        }
    }

    pub fn from_model(model: &CircularArcModel) -> Self {
        intersection_graph(model)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// Partition into components, each sorted, ordered by least vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut comp = vec![root];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &u in &self.adjacency[v] {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Subgraph induced by `keep`, with vertices renumbered in the given order.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges = self.edges.iter().filter_map(|&(u, v)| {
            (index[u] != usize::MAX && index[v] != usize::MAX).then(|| (index[u], index[v]))
        });
        Graph::new(keep.len(), edges)
    }
}

/// Vertex `i` is arc `A_i`; two vertices are adjacent iff their open arcs meet,
/// which happens exactly when one arc starts strictly inside the other.
pub fn intersection_graph(model: &CircularArcModel) -> Graph {
    let g = model.grid_size();
    let mut edges = Vec::new();
    for a in model.arcs() {
        let mut x = (a.start + 1) % g.max(1);
        while x != a.end {
            let (owner, side) = model.owner(x);
            if side == crate::model::Side::Start {
                edges.push((a.id, owner));
            }
            x = (x + 1) % g;
        }
    }
    Graph::new(model.n(), edges)
}

/// Line graph of `g`; line-vertex `i` is edge id `i` of `g`.
pub fn line_graph(g: &Graph) -> Graph {
    let mut edges = Vec::new();
    for v in 0..g.vertex_count() {
        let incident: Vec<usize> = g
            .neighbors(v)
            .iter()
            .map(|&u| g.edge_id(u, v).expect("adjacent"))
            .collect();
        for (i, &e) in incident.iter().enumerate() {
            for &f in &incident[i + 1..] {
                edges.push((e, f));
            }
        }
    }
    Graph::new(g.edge_count(), edges)
}

/// `m <= 2n`, which every K4-free circular-arc graph satisfies.
pub fn k4_free_edge_bound(g: &Graph) -> bool {
    g.edge_count() <= 2 * g.vertex_count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(usize, usize)]) -> CircularArcModel {
        CircularArcModel::from_grid(pairs).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    #[test]
    fn c4_model_gives_c4() {
        let g = intersection_graph(&m(&[(0, 3), (2, 5), (4, 7), (6, 1)]));
        assert_eq!(g.edges(), &[(0, 1), (0, 3), (1, 2), (2, 3)]);
    }

    #[test]
    fn k3_and_star() {
        let k3 = intersection_graph(&m(&[(4, 1), (0, 3), (2, 5)]));
        assert_eq!(k3.edge_count(), 3);
        let star = intersection_graph(&m(&[(0, 7), (1, 2), (3, 4), (5, 6)]));
        assert_eq!(star.edges(), &[(0, 1), (0, 2), (0, 3)]);
    }

    #[test]
    fn octahedron_is_tight() {
        let g = intersection_graph(&m(&[(0, 5), (6, 11), (2, 7), (8, 1), (4, 9), (10, 3)]));
        assert_eq!((g.vertex_count(), g.edge_count()), (6, 12));
        assert!(k4_free_edge_bound(&g));
        for v in 0..6 {
            assert_eq!(g.degree(v), 4);
        }
    }

    #[test]
    fn edge_bound_examples() {
        let k5 = Graph::new(5, (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))));
        assert!(k4_free_edge_bound(&k5));
        let dense = Graph::new(10, (0..10).flat_map(|u| (u + 1..10).map(move |v| (u, v))).take(21));
        assert!(!k4_free_edge_bound(&dense));
    }

    #[test]
    fn line_graphs() {
        let k3 = cycle(3);
        assert_eq!(line_graph(&k3).edge_count(), 3);
        let p3 = Graph::new(3, [(0, 1), (1, 2)]);
        assert_eq!(line_graph(&p3).edges(), &[(0, 1)]);
        let l6 = line_graph(&cycle(6));
        assert_eq!(l6.edge_count(), 6);
        assert!((0..6).all(|v| l6.degree(v) == 2));
        assert_eq!(l6.connected_components().len(), 1);
    }

    #[test]
    fn components() {
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]);
        assert_eq!(star.induced(&[1, 2, 3]).connected_components(), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(cycle(4).connected_components().len(), 1);
        assert!(Graph::new(0, []).connected_components().is_empty());
    }

    #[test]
    fn edges_agree_with_segment_membership() {
        let model = m(&[(0, 5), (4, 1), (2, 3), (6, 7)]);
        let g = intersection_graph(&model);
        for u in 0..model.n() {
            for v in u + 1..model.n() {
                let shared = (0..model.grid_size()).any(|s| {
                    let at = model.arcs_at_segment(s);
                    at.contains(&u) && at.contains(&v)
                });
                assert_eq!(g.has_edge(u, v), shared, "({u},{v})");
            }
        }
    }
}
