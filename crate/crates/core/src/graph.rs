//! Simple undirected graphs on dense vertex ids and their distance data.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Distance recorded for a pair of vertices in different components.
pub const UNREACHABLE: usize = usize::MAX;

/// A finite simple undirected graph on vertices `0..vertex_count`.
///
/// Neighbor lists are kept sorted ascending; the structure is immutable once
/// built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and endpoints
    /// outside `0..vertex_count`.
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::EndpointOutOfRange { u, v, n: vertex_count });
            }
            if u == v {
                return Err(Error::SelfLoop { v });
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge { u: u.min(w[0]), v: u.max(w[0]) });
            }
        }
        Ok(Graph { adjacency, edge_count: edges.len() })
    }

    /// The edgeless graph on `vertex_count` vertices.
    pub fn empty(vertex_count: usize) -> Graph {
        Graph { adjacency: vec![Vec::new(); vertex_count], edge_count: 0 }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(min, max)` pairs in ascending order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (u, list) in self.adjacency.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// Hop distances from `source`; unreachable vertices get [`UNREACHABLE`].
    pub fn bfs(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![UNREACHABLE; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if dist[v] == UNREACHABLE {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        match self.vertex_count() {
            0 => true,
            _ => self.bfs(0).iter().all(|&d| d != UNREACHABLE),
        }
    }

    pub fn is_tree(&self) -> bool {
        self.vertex_count() >= 1 && self.edge_count + 1 == self.vertex_count() && self.is_connected()
    }

    /// All-pairs hop distances by one BFS per source.
    pub fn distances(&self) -> DistanceTable {
        let n = self.vertex_count();
        let mut dist = Vec::with_capacity(n * n);
        for s in 0..n {
            dist.extend(self.bfs(s));
        }
        DistanceTable::from_matrix(n, dist)
    }

    /// Adds a vertex with id `vertex_count()` adjacent to every other vertex.
    pub fn with_universal_vertex(&self) -> Result<Graph> {
        let n = self.vertex_count();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut edges = self.edges();
        edges.extend((0..n).map(|v| (v, n)));
        Graph::new(n + 1, &edges)
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.vertex_count();
        if perm.len() != n {
            return Err(Error::InvalidParameter(format!(
                "permutation of length {} for {} vertices",
                perm.len(),
                n
            )));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
        }
        let edges: Vec<_> = self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::new(n, &edges)
    }

    /// Subgraph induced by `keep`, with vertices renumbered in the order given.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut index = vec![UNREACHABLE; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adjacency[v] {
                let j = index[w];
                if j != UNREACHABLE && i < j {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(keep.len(), &edges).expect("induced subgraph of a simple graph is simple")
    }

    /// Whether no two vertices of `set` are adjacent.
    pub fn is_independent(&self, set: &[usize]) -> bool {
        let mut mark = vec![false; self.vertex_count()];
        for &v in set {
            mark[v] = true;
        }
        set.iter().all(|&v| self.adjacency[v].iter().all(|&w| !mark[w]))
    }
}

/// All-pairs distances together with eccentricities and the diameter.
///
/// For a disconnected graph every vertex has eccentricity [`UNREACHABLE`],
/// and so does the diameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    n: usize,
    dist: Vec<usize>,
    ecc: Vec<usize>,
    diameter: usize,
}

impl DistanceTable {
    fn from_matrix(n: usize, dist: Vec<usize>) -> DistanceTable {
        let ecc: Vec<usize> = (0..n)
            .map(|v| dist[v * n..(v + 1) * n].iter().copied().max().unwrap_or(0))
            .collect();
        let diameter = ecc.iter().copied().max().unwrap_or(0);
        DistanceTable { n, dist, ecc, diameter }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn dist(&self, u: usize, v: usize) -> usize {
        self.dist[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[usize] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    pub fn ecc(&self, v: usize) -> usize {
        self.ecc[v]
    }

    pub fn eccentricities(&self) -> &[usize] {
        &self.ecc
    }

    pub fn diameter(&self) -> usize {
        self.diameter
    }
}
