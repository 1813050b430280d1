//! Ground-truth solvers for small graphs: broadcast validation, exhaustive
//! broadcast search, and an exact maximum independent set solver.

mod mis;

use std::fmt;

pub use mis::{max_independent_set, max_independent_set_until};

use crate::error::{Error, Result};
use crate::graph::{DistanceTable, Graph};
use crate::rng::SplitMix64;

/// Vertex count above which [`brute_alpha_b`] refuses unless told otherwise.
pub const DEFAULT_BRUTE_LIMIT: usize = 10;

/// A value per vertex; the candidate independent broadcast.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Broadcast {
    values: Vec<usize>,
}

impl Broadcast {
    pub fn new(values: Vec<usize>) -> Broadcast {
        Broadcast { values }
    }

    pub fn zeros(n: usize) -> Broadcast {
        Broadcast { values: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn get(&self, v: usize) -> usize {
        self.values[v]
    }

    pub fn set(&mut self, v: usize, value: usize) {
        self.values[v] = value;
    }

    pub fn weight(&self) -> usize {
        self.values.iter().sum()
    }

    /// Vertices with a positive value, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&v| self.values[v] > 0).collect()
    }
}

/// A strictly increasing list of vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(mut vertices: Vec<usize>) -> VertexSet {
        vertices.sort_unstable();
        vertices.dedup();
        VertexSet(vertices)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }
}

/// A failed broadcast condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The value exceeds the vertex eccentricity.
    Eccentricity { vertex: usize, value: usize, ecc: usize },
    /// Two positive vertices are within the larger of their values.
    Distance { x: usize, y: usize, dist: usize, max: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Eccentricity { vertex, value, ecc } => {
                write!(f, "eccentricity vertex {vertex}: value {value} > ecc {ecc}")
            }
            Violation::Distance { x, y, dist, max } => {
                write!(f, "distance pair {x} {y}: dist {dist} <= max value {max}")
            }
        }
    }
}

/// Outcome of [`validate_broadcast`]: eccentricity violations in vertex
/// order, then distance violations in lexicographic pair order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Verdict {
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

/// Checks both independent-broadcast conditions on a connected graph.
pub fn validate_broadcast(g: &Graph, f: &Broadcast) -> Result<Verdict> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if f.len() != g.vertex_count() {
        return Err(Error::LengthMismatch { got: f.len(), expected: g.vertex_count() });
    }
    Ok(validate_with(&g.distances(), f))
}

/// [`validate_broadcast`] against precomputed distances of a connected graph.
pub fn validate_with(dist: &DistanceTable, f: &Broadcast) -> Verdict {
    let mut violations = Vec::new();
    for (vertex, &value) in f.values().iter().enumerate() {
        if value > dist.ecc(vertex) {
            violations.push(Violation::Eccentricity { vertex, value, ecc: dist.ecc(vertex) });
        }
    }
    let support = f.support();
    for (i, &x) in support.iter().enumerate() {
        for &y in &support[i + 1..] {
            let d = dist.dist(x, y);
            let max = f.get(x).max(f.get(y));
            if d <= max {
                violations.push(Violation::Distance { x, y, dist: d, max });
            }
        }
    }
    Verdict { violations }
}

/// Exact broadcast independence number with the lexicographically smallest
/// optimal value vector.
///
/// Vertices are assigned in id order. Each vertex may take 0 or any value up
/// to its cap, which starts at its eccentricity and shrinks as earlier
/// vertices become positive. Branches whose weight plus remaining caps
/// cannot beat the incumbent are cut.
pub fn brute_alpha_b(g: &Graph, limit: usize) -> Result<(usize, Broadcast)> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n > limit {
        return Err(Error::OverLimit { n, limit });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let dist = g.distances();
    let mut search = BruteSearch {
        dist: &dist,
        n,
        values: vec![0; n],
        // Any feasible weight minus one is a safe starting threshold: the
        // lexicographically first optimum still gets recorded.
        threshold: floor_weight(&dist) as isize - 1,
        best: None,
    };
    let caps: Vec<usize> = dist.eccentricities().to_vec();
    search.run(0, caps, 0);
    let best = search.best.ok_or_else(|| Error::Internal("broadcast search found nothing".into()))?;
    Ok((best.weight(), best))
}

// Weight of a trivially valid broadcast: the two ends of a diametral pair
// each get diameter - 1.
fn floor_weight(dist: &DistanceTable) -> usize {
    let d = dist.diameter();
    if d >= 2 {
        2 * (d - 1)
    } else {
        usize::from(d == 1)
    }
}

struct BruteSearch<'a> {
    dist: &'a DistanceTable,
    n: usize,
    values: Vec<usize>,
    threshold: isize,
    best: Option<Broadcast>,
}

impl BruteSearch<'_> {
    fn run(&mut self, i: usize, caps: Vec<usize>, weight: usize) {
        if i == self.n {
            if weight as isize > self.threshold {
                self.threshold = weight as isize;
                self.best = Some(Broadcast::new(self.values.clone()));
            }
            return;
        }
        let optimistic = weight + caps[i..].iter().sum::<usize>();
        if optimistic as isize <= self.threshold {
            return;
        }
        for value in 0..=caps[i] {
            self.values[i] = value;
            if value == 0 {
                self.run(i + 1, caps.clone(), weight);
            } else {
                let mut next = caps.clone();
                let row = self.dist.row(i);
                for j in i + 1..self.n {
                    next[j] = if row[j] <= value { 0 } else { next[j].min(row[j] - 1) };
                }
                self.run(i + 1, next, weight + value);
            }
        }
        self.values[i] = 0;
    }
}

/// Whether the broadcast independence number equals the independence
/// number, for graphs of diameter two with independence number at least 3.
pub fn alpha_b_equals_alpha_diam2(g: &Graph, limit: usize) -> Result<bool> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let diameter = g.distances().diameter();
    if diameter != 2 {
        return Err(Error::Precondition(format!("diameter is {diameter}, not 2")));
    }
    let (alpha, _) = max_independent_set(g);
    if alpha < 3 {
        return Err(Error::Precondition(format!("independence number {alpha} < 3")));
    }
    let (alpha_b, _) = brute_alpha_b(g, limit)?;
    Ok(alpha_b == alpha)
}

/// Random independent broadcast built greedily: vertices are visited in a
/// shuffled order and each may take a value up to what the current positive
/// vertices still allow. `keep` is the probability of trying a vertex.
pub fn random_broadcast(dist: &DistanceTable, rng: &mut SplitMix64, keep: f64) -> Broadcast {
    let n = dist.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut order);
    let mut f = Broadcast::zeros(n);
    let mut positive: Vec<usize> = Vec::new();
    for x in order {
        let mut cap = dist.ecc(x);
        for &y in &positive {
            let d = dist.dist(x, y);
            cap = if d <= f.get(y) { 0 } else { cap.min(d - 1) };
        }
        if cap == 0 || rng.unit_f64() >= keep {
            continue;
        }
        let value = if rng.below(2) == 0 { 1 } else { 1 + rng.below(cap as u64) as usize };
        f.set(x, value);
        positive.push(x);
    }
    f
}
