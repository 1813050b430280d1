//! Gadget construction from cubic graphs, plus the broadcast rewrites and
//! the independent-set extraction that relate the two optimisation problems
//! on the gadget.
//!
//! From a connected cubic graph `H`, every edge is subdivided twice, giving
//! `H'`. Each original vertex then receives one pendant star with three
//! leaves, and each subdivision vertex two such stars. For an `H'` vertex
//! `x`, `L(x)` is the set of leaves of its own stars, i.e. the endvertices at
//! distance 2 from `x`.

use std::collections::VecDeque;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::graph::{DistanceTable, Graph};
use crate::oracle::{max_independent_set_until, validate_with, Broadcast, VertexSet};

/// Leaves per attached star.
pub const STAR_LEAVES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Original,
    Subdivision,
    StarCenter,
    StarLeaf,
}

impl Role {
    pub fn tag(self) -> &'static str {
        match self {
            Role::Original => "orig",
            Role::Subdivision => "sub",
            Role::StarCenter => "ctr",
            Role::StarLeaf => "leaf",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Role> {
        match tag {
            "orig" => Some(Role::Original),
            "sub" => Some(Role::Subdivision),
            "ctr" => Some(Role::StarCenter),
            "leaf" => Some(Role::StarLeaf),
            _ => None,
        }
    }
}

/// Edge `{u, v}` of `H` replaced by the path `u - a - b - v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubdividedEdge {
    pub u: usize,
    pub v: usize,
    pub a: usize,
    pub b: usize,
}

/// Replaces every edge by a path of length three.
///
/// Vertices of `h` keep their ids; the `j`-th edge `(u, v)` in sorted order
/// gets `a = n + 2j` next to `u` and `b = n + 2j + 1` next to `v`.
pub fn subdivide_twice(h: &Graph) -> (Graph, Vec<SubdividedEdge>) {
    let n = h.vertex_count();
    let mut edges = Vec::with_capacity(3 * h.edge_count());
    let mut map = Vec::with_capacity(h.edge_count());
    for (j, (u, v)) in h.edges().into_iter().enumerate() {
        let (a, b) = (n + 2 * j, n + 2 * j + 1);
        edges.extend([(u, a), (a, b), (b, v)]);
        map.push(SubdividedEdge { u, v, a, b });
    }
    let g = Graph::new(n + 2 * h.edge_count(), &edges).expect("subdivision of a simple graph is simple");
    (g, map)
}

/// The gadget graph with its vertex roles and `L`-sets.
#[derive(Debug, Clone)]
pub struct GadgetGraph {
    graph: Graph,
    source: Graph,
    subdivided: Vec<SubdividedEdge>,
    roles: Vec<Role>,
    owners: Vec<Option<usize>>,
    // Star centers per H' vertex.
    centers: Vec<Vec<usize>>,
    l_sets: Vec<Vec<usize>>,
    h_prime_order: usize,
}

/// Builds the gadget for a connected 3-regular graph.
///
/// Ids: `H'` vertices first (as in [`subdivide_twice`]), then for each `H'`
/// vertex in order its stars, each as the center followed by its leaves.
pub fn build_gadget(h: &Graph) -> Result<GadgetGraph> {
    if h.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    if let Some(v) = (0..h.vertex_count()).find(|&v| h.degree(v) != 3) {
        return Err(Error::NotCubic { vertex: v, degree: h.degree(v) });
    }
    if !h.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = h.vertex_count();
    let (h_prime, subdivided) = subdivide_twice(h);
    let np = h_prime.vertex_count();
    let mut edges = h_prime.edges();
    let mut roles: Vec<Role> = (0..np).map(|x| if x < n { Role::Original } else { Role::Subdivision }).collect();
    let mut owners: Vec<Option<usize>> = vec![None; np];
    let mut centers = vec![Vec::new(); np];
    let mut l_sets = vec![Vec::new(); np];
    let mut next = np;
    for x in 0..np {
        let stars = if x < n { 1 } else { 2 };
        for _ in 0..stars {
            let c = next;
            edges.push((x, c));
            roles.push(Role::StarCenter);
            owners.push(Some(x));
            centers[x].push(c);
            for leaf in c + 1..=c + STAR_LEAVES {
                edges.push((c, leaf));
                roles.push(Role::StarLeaf);
                owners.push(Some(x));
                l_sets[x].push(leaf);
            }
            next = c + STAR_LEAVES + 1;
        }
    }
    let graph = Graph::new(next, &edges)?;
    Ok(GadgetGraph { graph, source: h.clone(), subdivided, roles, owners, centers, l_sets, h_prime_order: np })
}

impl GadgetGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn source(&self) -> &Graph {
        &self.source
    }

    pub fn subdivided_edges(&self) -> &[SubdividedEdge] {
        &self.subdivided
    }

    pub fn role(&self, v: usize) -> Role {
        self.roles[v]
    }

    /// The `H'` vertex a star vertex hangs off; `None` for `H'` vertices.
    pub fn owner(&self, v: usize) -> Option<usize> {
        self.owners[v]
    }

    /// Number of `H'` vertices; they occupy ids `0..h_prime_order()`.
    pub fn h_prime_order(&self) -> usize {
        self.h_prime_order
    }

    pub fn is_original(&self, x: usize) -> bool {
        x < self.source.vertex_count()
    }

    /// `L(x)` for an `H'` vertex `x`, ascending.
    pub fn l_set(&self, x: usize) -> &[usize] {
        &self.l_sets[x]
    }

    pub fn star_centers(&self, x: usize) -> &[usize] {
        &self.centers[x]
    }

    pub fn in_l(&self, v: usize) -> bool {
        self.roles[v] == Role::StarLeaf
    }

    /// Neighbors of `x` inside `H'`, ascending.
    pub fn h_prime_neighbors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.graph.neighbors(x).iter().copied().filter(|&w| w < self.h_prime_order)
    }

    pub fn endvertex_count(&self) -> usize {
        (0..self.graph.vertex_count()).filter(|&v| self.graph.degree(v) == 1).count()
    }

    /// Checks the structural identities of the construction.
    pub fn structure(&self) -> GadgetStructure {
        let n = self.source.vertex_count();
        let l_sizes_ok = (0..self.h_prime_order)
            .all(|x| self.l_sets[x].len() == if self.is_original(x) { 3 } else { 6 });
        // Every endvertex lies in exactly one L-set, at distance 2 from its owner.
        let mut hits = vec![0usize; self.graph.vertex_count()];
        for x in 0..self.h_prime_order {
            for &leaf in &self.l_sets[x] {
                hits[leaf] += 1;
            }
        }
        let l_partition_ok = (0..self.graph.vertex_count())
            .all(|v| (self.graph.degree(v) == 1) == (hits[v] == 1) && hits[v] <= 1)
            && (0..self.h_prime_order).all(|x| {
                let d = self.graph.bfs(x);
                let at_two: Vec<usize> =
                    (0..self.graph.vertex_count()).filter(|&v| d[v] == 2 && self.graph.degree(v) == 1).collect();
                at_two == self.l_sets[x]
            });
        GadgetStructure {
            source_order: n,
            order: self.graph.vertex_count(),
            endvertices: self.endvertex_count(),
            max_degree: self.graph.max_degree(),
            connected: self.graph.is_connected(),
            l_sizes_ok,
            l_partition_ok,
        }
    }
}

/// Measured invariants of a gadget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetStructure {
    pub source_order: usize,
    pub order: usize,
    pub endvertices: usize,
    pub max_degree: usize,
    pub connected: bool,
    pub l_sizes_ok: bool,
    pub l_partition_ok: bool,
}

impl GadgetStructure {
    /// Order `32n`, `21n` endvertices, maximum degree 4, connected, and
    /// `L`-sets of sizes 3 / 6 partitioning the endvertices.
    pub fn holds(&self) -> bool {
        let n = self.source_order;
        self.order == 32 * n
            && self.endvertices == 21 * n
            && self.max_degree == 4
            && self.connected
            && self.l_sizes_ok
            && self.l_partition_ok
    }
}

/// Independence number the gadget must have: `alpha(H) + 45 n(H) / 2`.
pub fn target_value(h: &Graph, alpha_h: usize) -> Result<usize> {
    let n = h.vertex_count();
    if n % 2 == 1 {
        return Err(Error::OddOrder(n));
    }
    Ok(alpha_h + 45 * n / 2)
}

/// Which rewrite produced a [`RewriteStep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    /// A value of at least 2 off the leaves moved to the nearest leaf.
    Relocate,
    /// A leaf value of 2 or 3 spread into ones over its `L`-set.
    SpreadSmall,
    /// A leaf value of 4 to 6 under a subdivision vertex spread into ones.
    SpreadSubdivision,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteStep {
    pub phase: Phase,
    /// The vertex whose value triggered the rewrite.
    pub trigger: usize,
    pub weight_before: usize,
    pub weight_after: usize,
}

/// Result of [`normalize_broadcast`] with the applied rewrites in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub broadcast: Broadcast,
    pub steps: Vec<RewriteStep>,
}

/// Rewrites an independent broadcast on the gadget, without losing weight,
/// into one where
///
/// 1. only leaves carry values of 2 or more,
/// 2. no vertex carries 2 or 3, and
/// 3. no leaf under a subdivision vertex carries 4, 5 or 6.
///
/// Each phase runs to a fixpoint before the next starts. Every single
/// rewrite is re-validated; a failure is reported as an internal error that
/// names the rewrite.
pub fn normalize_broadcast(gg: &GadgetGraph, f: &Broadcast) -> Result<Normalized> {
    normalize_with(gg, &gg.graph.distances(), f)
}

/// [`normalize_broadcast`] against precomputed gadget distances.
pub fn normalize_with(gg: &GadgetGraph, dist: &DistanceTable, f: &Broadcast) -> Result<Normalized> {
    if f.len() != gg.graph.vertex_count() {
        return Err(Error::LengthMismatch { got: f.len(), expected: gg.graph.vertex_count() });
    }
    if let Some(v) = validate_with(dist, f).first() {
        return Err(Error::InvalidBroadcast(v.to_string()));
    }
    let mut f = f.clone();
    let mut steps = Vec::new();
    let mut record = |f: &Broadcast, phase: Phase, trigger: usize, before: usize| -> Result<()> {
        if let Some(v) = validate_with(dist, f).first() {
            return Err(Error::Internal(format!("{phase:?} rewrite at vertex {trigger} broke the broadcast: {v}")));
        }
        steps.push(RewriteStep { phase, trigger, weight_before: before, weight_after: f.weight() });
        Ok(())
    };

    while let Some(x) = (0..f.len()).find(|&x| !gg.in_l(x) && f.get(x) >= 2) {
        let before = f.weight();
        let y = nearest_leaf(gg, dist, x);
        let k = f.get(x);
        f.set(x, 0);
        f.set(y, k);
        record(&f, Phase::Relocate, x, before)?;
    }

    while let Some(x) = (0..f.len()).find(|&x| gg.in_l(x) && matches!(f.get(x), 2 | 3)) {
        let before = f.weight();
        spread_ones(gg, &mut f, gg.owners[x].expect("leaves have owners"));
        record(&f, Phase::SpreadSmall, x, before)?;
    }

    while let Some(x) = (0..f.len()).find(|&x| {
        gg.in_l(x) && matches!(f.get(x), 4..=6) && !gg.is_original(gg.owners[x].expect("leaves have owners"))
    }) {
        let before = f.weight();
        spread_ones(gg, &mut f, gg.owners[x].unwrap());
        record(&f, Phase::SpreadSubdivision, x, before)?;
    }

    Ok(Normalized { broadcast: f, steps })
}

// Closest leaf to x, smallest id among ties.
fn nearest_leaf(gg: &GadgetGraph, dist: &DistanceTable, x: usize) -> usize {
    let row = dist.row(x);
    (0..row.len()).filter(|&v| gg.in_l(v)).min_by_key(|&v| (row[v], v)).expect("gadget has leaves")
}

// Puts 1 on every leaf of L(y). The star centers of y are the only other
// vertices adjacent to those leaves and must end at 0; a center can hold 1
// next to a leaf valued 2 in the other star of a subdivision vertex.
fn spread_ones(gg: &GadgetGraph, f: &mut Broadcast, y: usize) {
    for &c in &gg.centers[y] {
        f.set(c, 0);
    }
    for &leaf in &gg.l_sets[y] {
        f.set(leaf, 1);
    }
}

/// Whether `f` is in the form produced by [`normalize_broadcast`].
pub fn is_normalized(gg: &GadgetGraph, f: &Broadcast) -> bool {
    (0..f.len()).all(|x| {
        let value = f.get(x);
        let off_leaf_ok = value < 2 || gg.in_l(x);
        let small_ok = !matches!(value, 2 | 3);
        let sub_ok = !(gg.in_l(x) && matches!(value, 4..=6) && !gg.is_original(gg.owners[x].unwrap()));
        off_leaf_ok && small_ok && sub_ok
    })
}

/// Builds an independent set of size at least the weight of a normalized
/// broadcast, as the union of one block `I(x)` per positive vertex `x`:
///
/// * value 1: `{x}`;
/// * value 4: `{y} ∪ L(y)` for the original owner `y` of `x`;
/// * value 5: `L(y) ∪ L(y')`, `y'` the smallest `H'`-neighbor of `y`;
/// * value `k >= 6`: the union of `L(x_i)` for `i = 2..=k/2` along a
///   shortest path `x_0 = x, x_1, x_2 = y, ...` that stays in `H'` after
///   `x_2`, heading to the smallest-id `H'` vertex at the needed distance
///   and taking the smallest-id next step each time.
///
/// Block sizes, pairwise disjointness and independence of the union are all
/// checked; a failure is an internal error naming the vertex involved.
pub fn extract_independent_set(gg: &GadgetGraph, f: &Broadcast) -> Result<VertexSet> {
    if f.len() != gg.graph.vertex_count() {
        return Err(Error::LengthMismatch { got: f.len(), expected: gg.graph.vertex_count() });
    }
    if !is_normalized(gg, f) {
        return Err(Error::Precondition("broadcast is not normalized".into()));
    }
    let mut owner_of = vec![usize::MAX; gg.graph.vertex_count()];
    let mut union = Vec::new();
    for x in f.support() {
        let value = f.get(x);
        let block = block_for(gg, x, value)?;
        if block.len() < value {
            return Err(Error::Internal(format!("block of vertex {x} has {} < {value} vertices", block.len())));
        }
        if !gg.graph.is_independent(&block) {
            return Err(Error::Internal(format!("block of vertex {x} is not independent")));
        }
        for &v in &block {
            if owner_of[v] != usize::MAX {
                return Err(Error::Internal(format!("blocks of vertices {} and {x} share vertex {v}", owner_of[v])));
            }
            owner_of[v] = x;
        }
        union.extend(block);
    }
    if let Some((u, v)) = union.iter().flat_map(|&u| gg.graph.neighbors(u).iter().map(move |&v| (u, v))).find(|&(_, v)| owner_of[v] != usize::MAX) {
        return Err(Error::Internal(format!(
            "blocks of vertices {} and {} are joined by edge ({u}, {v})",
            owner_of[u], owner_of[v]
        )));
    }
    Ok(VertexSet::new(union))
}

fn block_for(gg: &GadgetGraph, x: usize, value: usize) -> Result<Vec<usize>> {
    if value == 1 {
        return Ok(vec![x]);
    }
    let y = match (gg.roles[x], gg.owners[x]) {
        (Role::StarLeaf, Some(y)) => y,
        _ => return Err(Error::Internal(format!("vertex {x} carries {value} but is not a leaf"))),
    };
    match value {
        4 | 5 if !gg.is_original(y) => {
            Err(Error::Internal(format!("vertex {x} carries {value} under subdivision vertex {y}")))
        }
        4 => {
            let mut block = vec![y];
            block.extend_from_slice(gg.l_set(y));
            Ok(block)
        }
        5 => {
            let y2 = gg.h_prime_neighbors(y).next().expect("original vertices have H' neighbors");
            let mut block = gg.l_set(y).to_vec();
            block.extend_from_slice(gg.l_set(y2));
            Ok(block)
        }
        k if k >= 6 => {
            let path = h_prime_path(gg, y, k / 2 - 2)
                .ok_or_else(|| Error::Internal(format!("no H' path of length {} from {y} for vertex {x}", k / 2 - 2)))?;
            Ok(path.into_iter().flat_map(|z| gg.l_set(z).iter().copied()).collect())
        }
        _ => Err(Error::Internal(format!("vertex {x} carries unnormalized value {value}"))),
    }
}

// Shortest path y = z_0, ..., z_len in H' to the smallest-id vertex at
// distance `len`, choosing the smallest-id neighbor one step closer each time.
fn h_prime_path(gg: &GadgetGraph, y: usize, len: usize) -> Option<Vec<usize>> {
    let from_y = h_prime_bfs(gg, y);
    let target = (0..gg.h_prime_order).find(|&z| from_y[z] == len)?;
    let to_target = h_prime_bfs(gg, target);
    let mut path = vec![y];
    let mut cur = y;
    while cur != target {
        cur = gg.h_prime_neighbors(cur).find(|&w| to_target[w] + 1 == to_target[cur])?;
        path.push(cur);
    }
    Some(path)
}

fn h_prime_bfs(gg: &GadgetGraph, s: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; gg.h_prime_order];
    let mut queue = VecDeque::from([s]);
    dist[s] = 0;
    while let Some(u) = queue.pop_front() {
        for w in gg.h_prime_neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Outcome of [`certify_small`]. The independence numbers are `None` when
/// the solver ran out of time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub structure: GadgetStructure,
    pub alpha_h: Option<usize>,
    pub alpha_g: Option<usize>,
    pub target: Option<usize>,
}

impl Certificate {
    pub fn is_complete(&self) -> bool {
        self.alpha_h.is_some() && self.alpha_g.is_some()
    }

    /// Structure holds and the gadget independence number hits the target.
    pub fn holds(&self) -> bool {
        self.structure.holds() && self.target.is_some() && self.alpha_g == self.target
    }
}

/// Builds the gadget of `h` and checks its structure and that its
/// independence number equals [`target_value`], both sides computed by the
/// exact solver within `budget`.
pub fn certify_small(h: &Graph, budget: Option<Duration>) -> Result<Certificate> {
    let gg = build_gadget(h)?;
    let deadline = budget.map(|b| Instant::now() + b);
    let structure = gg.structure();
    let alpha_h = max_independent_set_until(h, deadline).map(|(a, _)| a);
    let alpha_g = max_independent_set_until(&gg.graph, deadline).map(|(a, _)| a);
    let target = alpha_h.map(|a| target_value(h, a)).transpose()?;
    Ok(Certificate { structure, alpha_h, alpha_g, target })
}
