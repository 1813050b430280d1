use std::time::Instant;

use super::VertexSet;
use crate::graph::Graph;

/// Exact maximum independent set.
///
/// Branch and bound over induced subgraphs: vertices of degree at most one
/// are taken greedily, components are solved separately, and otherwise the
/// search branches on a vertex of maximum degree.
pub fn max_independent_set(g: &Graph) -> (usize, VertexSet) {
    max_independent_set_until(g, None).expect("no deadline was set")
}

/// [`max_independent_set`] that gives up, returning `None`, once `deadline`
/// has passed.
pub fn max_independent_set_until(g: &Graph, deadline: Option<Instant>) -> Option<(usize, VertexSet)> {
    let mut solver = Solver { g, deadline, timed_out: false, mark: vec![false; g.vertex_count()] };
    let all: Vec<usize> = (0..g.vertex_count()).collect();
    let set = solver.solve(&all);
    if solver.timed_out {
        return None;
    }
    let set = VertexSet::new(set);
    assert!(g.is_independent(set.as_slice()), "solver returned a dependent set {:?}", set);
    Some((set.len(), set))
}

struct Solver<'a> {
    g: &'a Graph,
    deadline: Option<Instant>,
    timed_out: bool,
    mark: Vec<bool>,
}

impl Solver<'_> {
    fn degree_in(&self, v: usize) -> usize {
        self.g.neighbors(v).iter().filter(|&&w| self.mark[w]).count()
    }

    fn set_marks(&mut self, verts: &[usize], on: bool) {
        for &v in verts {
            self.mark[v] = on;
        }
    }

    fn solve(&mut self, verts: &[usize]) -> Vec<usize> {
        if self.timed_out || self.deadline.is_some_and(|d| Instant::now() > d) {
            self.timed_out = true;
            return Vec::new();
        }
        let mut live = verts.to_vec();
        let mut taken = Vec::new();
        self.set_marks(&live, true);

        // A vertex of degree <= 1 lies in some maximum independent set: swap
        // its neighbor out of any optimum for it.
        while let Some(&v) = live.iter().find(|&&v| self.degree_in(v) <= 1) {
            taken.push(v);
            self.mark[v] = false;
            for &w in self.g.neighbors(v) {
                self.mark[w] = false;
            }
            live.retain(|&x| self.mark[x]);
        }
        if live.is_empty() {
            return taken;
        }

        let components = self.components(&live);
        self.set_marks(&live, false);
        if components.len() > 1 {
            for comp in components {
                let part = self.solve(&comp);
                taken.extend(part);
            }
            return taken;
        }

        self.set_marks(&live, true);
        let branch = *live
            .iter()
            .max_by_key(|&&v| (self.degree_in(v), std::cmp::Reverse(v)))
            .expect("nonempty");
        let without_closed: Vec<usize> =
            live.iter().copied().filter(|&x| x != branch && !self.g.has_edge(branch, x)).collect();
        let without_branch: Vec<usize> = live.iter().copied().filter(|&x| x != branch).collect();
        self.set_marks(&live, false);

        let exclude = self.solve(&without_branch);
        let best = if without_closed.len() + 1 > exclude.len() {
            let mut include = self.solve(&without_closed);
            if include.len() + 1 > exclude.len() {
                include.push(branch);
                include
            } else {
                exclude
            }
        } else {
            exclude
        };
        taken.extend(best);
        taken
    }

    // Expects `live` marked; leaves marks untouched.
    fn components(&self, live: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for &s in live {
            if !seen.insert(s) {
                continue;
            }
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in self.g.neighbors(u) {
                    if self.mark[w] && seen.insert(w) {
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}
