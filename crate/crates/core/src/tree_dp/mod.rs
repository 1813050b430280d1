//! Polynomial-time broadcast independence for trees.
//!
//! The tree is rooted and every vertex `u` with children `v_1 < ... < v_k`
//! defines the nested subtrees `T(u, i)`: `u` together with its first `i`
//! children and all of their descendants. For every such subtree the table
//! records, per pair of envelopes `(in, out)`, the largest weight of a
//! value assignment on the subtree that
//!
//! * stays within eccentricities and is independent inside the subtree,
//! * respects the caps `in` imposed from outside, measured from `u`, and
//! * leaves the outside at least the room described by `out`.
//!
//! Slabs for `(u, 0)` are closed-form; `(u, i)` combines `(u, i - 1)` with
//! the finished subtree of `v_i`. The answer is the entry for the whole
//! tree under the vacuous envelopes `in = (-1, n)` and `out = (n, 1)`.

mod table;

pub use table::{beta_base, BetaTable, EnvelopeSpace, Mode};

use crate::envelope::Envelope;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::Broadcast;

/// A tree with a fixed root, children ordered by ascending id.
#[derive(Debug, Clone)]
pub struct RootedTree {
    base: Graph,
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    depth: Vec<usize>,
    order: Vec<usize>,
}

impl RootedTree {
    pub fn new(g: &Graph, root: usize) -> Result<RootedTree> {
        let n = g.vertex_count();
        if !g.is_tree() {
            return Err(Error::NotATree);
        }
        if root >= n {
            return Err(Error::VertexOutOfRange { vertex: root, n });
        }
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut depth = vec![0; n];
        let mut stack = vec![root];
        let mut visited = vec![false; n];
        visited[root] = true;
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if !visited[w] {
                    visited[w] = true;
                    parent[w] = Some(u);
                    depth[w] = depth[u] + 1;
                    children[u].push(w);
                    stack.push(w);
                }
            }
        }
        // Neighbor lists are sorted, so children already ascend.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(depth[v]), v));
        Ok(RootedTree { base: g.clone(), root, parent, children, depth, order })
    }

    pub fn graph(&self) -> &Graph {
        &self.base
    }

    pub fn vertex_count(&self) -> usize {
        self.base.vertex_count()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    /// Vertices by nonincreasing depth, ties by id; children precede parents.
    pub fn processing_order(&self) -> &[usize] {
        &self.order
    }

    /// Vertex set of `T(u, i)`, ascending.
    pub fn subtree_vertices(&self, idx: SubtreeIndex) -> Vec<usize> {
        let mut out = vec![idx.u];
        let mut stack: Vec<usize> = self.children[idx.u][..idx.i].to_vec();
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend_from_slice(&self.children[v]);
        }
        out.sort_unstable();
        out
    }

    /// The subtree index covering `u` and all its descendants.
    pub fn full(&self, u: usize) -> SubtreeIndex {
        SubtreeIndex { u, i: self.children[u].len() }
    }
}

/// `T(u, i)`: `u`, its first `i` children and their descendants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubtreeIndex {
    pub u: usize,
    pub i: usize,
}

/// Broadcast independence number with an optimal broadcast.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeSolution {
    pub weight: usize,
    pub witness: Broadcast,
}

/// The envelopes under which the whole-tree entry equals the answer.
pub fn top_envelopes(n: usize) -> (Envelope, Envelope) {
    (Envelope::new(-1, n as i32), Envelope::new(n as i32, 1))
}

/// Solves with the literal combination step and reconstructs a witness.
pub fn solve_alpha_b(t: &RootedTree) -> TreeSolution {
    solve(t, Mode::Naive, 1)
}

/// Value-only solve with the aggregated combination step; slabs are freed
/// as soon as their parent slab is complete.
pub fn solve_alpha_b_pruned(t: &RootedTree) -> usize {
    let table = BetaTable::build_with(t, Mode::Pruned, 1, false);
    let (inn, out) = top_envelopes(t.vertex_count());
    table.get(t.full(t.root()), inn, out).expect("root slab is kept") as usize
}

/// Fills the table in the given mode on `threads` workers and reconstructs
/// an optimal broadcast.
pub fn solve(t: &RootedTree, mode: Mode, threads: usize) -> TreeSolution {
    let table = BetaTable::build_with(t, mode, threads, true);
    let (inn, out) = top_envelopes(t.vertex_count());
    let weight = table.get(t.full(t.root()), inn, out).expect("root slab is kept") as usize;
    let witness = table.witness(t, t.full(t.root()), inn, out);
    debug_assert_eq!(witness.weight(), weight);
    TreeSolution { weight, witness }
}
