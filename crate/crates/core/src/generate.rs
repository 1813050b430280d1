//! Deterministic graph families used by tests, benchmarks and the CLI.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::SplitMix64;

/// Named 3-regular planar graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cubic {
    K4,
    Prism3,
    Cube,
}

impl Cubic {
    pub const ALL: [Cubic; 3] = [Cubic::K4, Cubic::Prism3, Cubic::Cube];

    pub fn graph(self) -> Graph {
        let edges: Vec<(usize, usize)> = match self {
            Cubic::K4 => vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
            Cubic::Prism3 => vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
            Cubic::Cube => {
                let mut e = Vec::new();
                for v in 0..8usize {
                    for bit in [1, 2, 4] {
                        if v & bit == 0 {
                            e.push((v, v | bit));
                        }
                    }
                }
                e
            }
        };
        let n = match self {
            Cubic::K4 => 4,
            Cubic::Prism3 => 6,
            Cubic::Cube => 8,
        };
        Graph::new(n, &edges).expect("catalog graphs are simple")
    }

    pub fn name(self) -> &'static str {
        match self {
            Cubic::K4 => "k4",
            Cubic::Prism3 => "prism3",
            Cubic::Cube => "cube",
        }
    }
}

impl FromStr for Cubic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Cubic> {
        match s {
            "k4" => Ok(Cubic::K4),
            "prism3" | "prism" => Ok(Cubic::Prism3),
            "cube" => Ok(Cubic::Cube),
            other => Err(Error::UnknownGenerator(format!("cubic {other}"))),
        }
    }
}

/// A graph family together with its size parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Path(usize),
    /// Star with the given number of leaves; center is vertex 0.
    Star(usize),
    Spider { legs: usize, leg_length: usize },
    RandomTree(usize),
    RandomConnected { n: usize, edge_prob: f64 },
    Cubic(Cubic),
}

impl Family {
    /// Parses a family from its kind name and positional parameters, e.g.
    /// `("spider", ["3", "2"])`.
    pub fn parse(kind: &str, params: &[&str]) -> Result<Family> {
        fn count(params: &[&str], want: usize, kind: &str) -> Result<()> {
            if params.len() != want {
                return Err(Error::InvalidParameter(format!(
                    "{kind} takes {want} parameter(s), got {}",
                    params.len()
                )));
            }
            Ok(())
        }
        fn int(s: &str) -> Result<usize> {
            s.parse().map_err(|_| Error::InvalidParameter(format!("`{s}` is not a nonnegative integer")))
        }
        let family = match kind {
            "path" => {
                count(params, 1, kind)?;
                Family::Path(int(params[0])?)
            }
            "star" => {
                count(params, 1, kind)?;
                Family::Star(int(params[0])?)
            }
            "spider" => {
                count(params, 2, kind)?;
                Family::Spider { legs: int(params[0])?, leg_length: int(params[1])? }
            }
            "random_tree" | "random-tree" => {
                count(params, 1, kind)?;
                Family::RandomTree(int(params[0])?)
            }
            "random_connected" | "random-connected" => {
                count(params, 2, kind)?;
                let edge_prob: f64 = params[1]
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("`{}` is not a probability", params[1])))?;
                Family::RandomConnected { n: int(params[0])?, edge_prob }
            }
            "cubic" | "cubic_catalog" | "cubic-catalog" => {
                count(params, 1, kind)?;
                Family::Cubic(params[0].parse()?)
            }
            other => return Err(Error::UnknownGenerator(other.to_string())),
        };
        Ok(family)
    }

    /// Builds the graph. Only the random families consume `seed`.
    pub fn generate(&self, seed: u64) -> Result<Graph> {
        match *self {
            Family::Path(n) => path(n),
            Family::Star(k) => Ok(star(k)),
            Family::Spider { legs, leg_length } => Ok(spider(legs, leg_length)),
            Family::RandomTree(n) => random_tree(n, &mut SplitMix64::new(seed)),
            Family::RandomConnected { n, edge_prob } => {
                random_connected(n, edge_prob, &mut SplitMix64::new(seed))
            }
            Family::Cubic(c) => Ok(c.graph()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Path(n) => write!(f, "path {n}"),
            Family::Star(k) => write!(f, "star {k}"),
            Family::Spider { legs, leg_length } => write!(f, "spider {legs} {leg_length}"),
            Family::RandomTree(n) => write!(f, "random_tree {n}"),
            Family::RandomConnected { n, edge_prob } => write!(f, "random_connected {n} {edge_prob}"),
            Family::Cubic(c) => write!(f, "cubic {}", c.name()),
        }
    }
}

pub fn path(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::InvalidParameter("path needs n >= 1".into()));
    }
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::new(n, &edges)
}

/// `K_{1,leaves}` with center 0.
pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
    Graph::new(leaves + 1, &edges).expect("star is simple")
}

/// Center 0 with `legs` paths of `leg_length` vertices each; leg `j` occupies
/// ids `1 + j*leg_length ..= (j+1)*leg_length`, nearest the center first.
pub fn spider(legs: usize, leg_length: usize) -> Graph {
    let mut edges = Vec::new();
    for j in 0..legs {
        let mut prev = 0;
        for s in 0..leg_length {
            let v = 1 + j * leg_length + s;
            edges.push((prev, v));
            prev = v;
        }
    }
    Graph::new(1 + legs * leg_length, &edges).expect("spider is simple")
}

/// Decodes a Prüfer sequence over `0..n` into the labeled tree it encodes.
pub fn tree_from_pruefer(n: usize, code: &[usize]) -> Result<Graph> {
    if n < 2 || code.len() != n - 2 || code.iter().any(|&c| c >= n) {
        return Err(Error::InvalidParameter(format!("invalid code of length {} for n = {n}", code.len())));
    }
    let mut degree = vec![1usize; n];
    for &c in code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    // Classic linear-time decoding: `leaf` walks the smallest current leaf.
    let mut ptr = (0..n).find(|&v| degree[v] == 1).unwrap();
    let mut leaf = ptr;
    for &c in code {
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 && c < ptr {
            leaf = c;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    Graph::new(n, &edges)
}

/// Uniform labeled tree: a code of `n - 2` draws `below(n)` decoded with
/// [`tree_from_pruefer`].
pub fn random_tree(n: usize, rng: &mut SplitMix64) -> Result<Graph> {
    match n {
        0 => Err(Error::InvalidParameter("random_tree needs n >= 1".into())),
        1 => Ok(Graph::empty(1)),
        _ => {
            let code: Vec<usize> = (0..n - 2).map(|_| rng.below(n as u64) as usize).collect();
            tree_from_pruefer(n, &code)
        }
    }
}

/// Erdős–Rényi sample over pairs `(u, v)`, `u < v` in lexicographic order,
/// each kept when `unit_f64() < edge_prob`; resampled until connected.
pub fn random_connected(n: usize, edge_prob: f64, rng: &mut SplitMix64) -> Result<Graph> {
    if n < 1 {
        return Err(Error::InvalidParameter("random_connected needs n >= 1".into()));
    }
    if !(edge_prob > 0.0 && edge_prob <= 1.0) && n > 1 {
        return Err(Error::InvalidParameter(format!("edge probability {edge_prob} not in (0, 1]")));
    }
    loop {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.unit_f64() < edge_prob {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::new(n, &edges)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_families() {
        assert_eq!(Family::parse("path", &["4"]).unwrap().generate(0).unwrap().edges(), vec![(0, 1), (1, 2), (2, 3)]);
        let s = star(3);
        assert_eq!(s.neighbors(0), &[1, 2, 3]);
        let sp = spider(3, 2);
        assert_eq!(sp.vertex_count(), 7);
        assert!(sp.is_tree());
        assert_eq!(sp.neighbors(0), &[1, 3, 5]);
        assert_eq!(star(0).vertex_count(), 1);
    }

    #[test]
    fn cubic_catalog() {
        for c in Cubic::ALL {
            let g = c.graph();
            assert!(g.is_connected());
            assert!((0..g.vertex_count()).all(|v| g.degree(v) == 3), "{}", c.name());
            assert_eq!(g.edge_count() * 2, 3 * g.vertex_count());
        }
        let k4 = Family::parse("cubic_catalog", &["k4"]).unwrap().generate(0).unwrap();
        assert_eq!((k4.vertex_count(), k4.edge_count()), (4, 6));
    }

    #[test]
    fn pruefer_decoding() {
        // Code [3, 3, 3] is the star centered at 3.
        let g = tree_from_pruefer(5, &[3, 3, 3]).unwrap();
        assert_eq!(g.neighbors(3), &[0, 1, 2, 4]);
        // Code [0, 1, 2] is the path 3-0-1-2-4.
        let g = tree_from_pruefer(5, &[0, 1, 2]).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (0, 3), (1, 2), (2, 4)]);
    }

    #[test]
    fn pruefer_is_a_bijection_for_n5() {
        let mut seen = std::collections::HashSet::new();
        for code in 0..125usize {
            let c = [code % 5, code / 5 % 5, code / 25];
            let g = tree_from_pruefer(5, &c).unwrap();
            assert!(g.is_tree());
            seen.insert(g.edges());
        }
        // Cayley: 5^3 labeled trees.
        assert_eq!(seen.len(), 125);
    }

    #[test]
    fn random_tree_is_a_tree_and_reproducible() {
        let a = Family::RandomTree(9).generate(7).unwrap();
        let b = Family::RandomTree(9).generate(7).unwrap();
        assert!(a.is_tree());
        assert_eq!(a, b);
        assert!(Family::RandomTree(0).generate(1).is_err());
    }

    #[test]
    fn random_connected_is_connected() {
        for seed in 0..20 {
            let g = Family::RandomConnected { n: 8, edge_prob: 0.3 }.generate(seed).unwrap();
            assert!(g.is_connected());
        }
        assert!(Family::RandomConnected { n: 4, edge_prob: 0.0 }.generate(0).is_err());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Family::parse("wheel", &["4"]), Err(Error::UnknownGenerator(_))));
        assert!(matches!(Family::parse("cubic", &["petersen"]), Err(Error::UnknownGenerator(_))));
        assert!(Family::parse("path", &[]).is_err());
        assert!(Family::parse("path", &["0"]).unwrap().generate(0).is_err());
    }
}
