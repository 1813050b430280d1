use rayon::prelude::*;

use super::{RootedTree, SubtreeIndex};
use crate::envelope::{min_pair, Envelope};
use crate::error::{Error, Result};
use crate::oracle::Broadcast;

/// How slabs `(u, i)` with `i >= 1` are combined from their two parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Enumerate every pair of part out-envelopes for every table key.
    Naive,
    /// Per in-envelope, fold all pairs into the best weight per combined
    /// out-envelope once, then answer every out-envelope by a dominance
    /// lookup.
    Pruned,
}

/// Table keys: envelopes with `p` in `[-n, n]` and `q` in `[1, n]`.
#[derive(Debug, Clone)]
pub struct EnvelopeSpace {
    n: i32,
    all: Vec<Envelope>,
}

impl EnvelopeSpace {
    pub fn new(n: usize) -> EnvelopeSpace {
        let n = n.max(1) as i32;
        let all = (-n..=n).flat_map(|p| (1..=n).map(move |q| Envelope::new(p, q))).collect();
        EnvelopeSpace { n, all }
    }

    pub fn len(&self) -> usize {
        self.all.len()
    }

    pub fn is_empty(&self) -> bool {
        self.all.is_empty()
    }

    pub fn envelopes(&self) -> &[Envelope] {
        &self.all
    }

    pub fn contains(&self, e: Envelope) -> bool {
        (-self.n..=self.n).contains(&e.p) && (1..=self.n).contains(&e.q)
    }

    #[inline]
    pub fn index(&self, e: Envelope) -> usize {
        debug_assert!(self.contains(e), "{e:?} outside n = {}", self.n);
        ((e.p + self.n) * self.n + e.q - 1) as usize
    }

    /// Key for an in-envelope that may sit one step below the key range.
    ///
    /// `(-(n+1), q)` agrees with `(-n, q+1)` everywhere, and when `q = n`
    /// both exceed every eccentricity at every distance, as does `(-n, n)`.
    #[inline]
    fn in_key(&self, e: Envelope) -> usize {
        if e.p < -self.n {
            debug_assert_eq!(e.p, -self.n - 1);
            self.index(Envelope::new(-self.n, (e.q + 1).min(self.n)))
        } else {
            self.index(e)
        }
    }
}

/// The single-vertex entry for `T(u, 0)`.
///
/// Without room outside (`q_out > p_out`) only the zero value fits;
/// otherwise `u` takes the largest value its eccentricity, the incoming cap
/// at distance 0, and the outgoing requirement all allow.
pub fn beta_base(inn: Envelope, out: Envelope, ecc_u: usize) -> u32 {
    if out.q > out.p {
        0
    } else {
        (ecc_u as i32).min(inn.eval(0)).min(out.p) as u32
    }
}

/// Best weights per `(subtree, in, out)`, one slab per subtree index.
#[derive(Debug, Clone)]
pub struct BetaTable {
    space: EnvelopeSpace,
    // slabs[u][i], row-major by in-envelope key.
    slabs: Vec<Vec<Option<Vec<u32>>>>,
}

impl BetaTable {
    /// Fills every slab, keeping all of them.
    pub fn build(t: &RootedTree, mode: Mode) -> BetaTable {
        Self::build_with(t, mode, 1, true)
    }

    /// Fills slabs bottom-up. With `keep_all == false` a slab is dropped
    /// once the slab that consumes it is complete.
    pub fn build_with(t: &RootedTree, mode: Mode, threads: usize, keep_all: bool) -> BetaTable {
        let n = t.vertex_count();
        let space = EnvelopeSpace::new(n);
        let ecc = t.graph().distances();
        let admitted = (mode == Mode::Naive).then(|| Admitted::new(&space));
        let pool = (threads > 1).then(|| {
            rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool")
        });
        let mut slabs: Vec<Vec<Option<Vec<u32>>>> =
            (0..n).map(|u| vec![None; t.children(u).len() + 1]).collect();

        for &u in t.processing_order() {
            slabs[u][0] = Some(base_slab(&space, ecc.ecc(u)));
            for (i, &child) in t.children(u).iter().enumerate() {
                let k = t.children(child).len();
                let left = slabs[u][i].as_ref().expect("previous slab present");
                let right = slabs[child][k].as_ref().expect("child processed before parent");
                let merged = match &pool {
                    Some(pool) => pool.install(|| merge_slab(&space, admitted.as_ref(), left, right, true)),
                    None => merge_slab(&space, admitted.as_ref(), left, right, false),
                };
                slabs[u][i + 1] = Some(merged);
                if !keep_all {
                    slabs[u][i] = None;
                    slabs[child][k] = None;
                }
            }
        }
        BetaTable { space, slabs }
    }

    pub fn space(&self) -> &EnvelopeSpace {
        &self.space
    }

    fn slab(&self, idx: SubtreeIndex) -> Option<&[u32]> {
        self.slabs.get(idx.u)?.get(idx.i)?.as_deref()
    }

    /// Stored entry, or `None` for keys outside the range or dropped slabs.
    pub fn get(&self, idx: SubtreeIndex, inn: Envelope, out: Envelope) -> Option<u32> {
        if !self.space.contains(inn) || !self.space.contains(out) {
            return None;
        }
        let e = self.space.len();
        Some(self.slab(idx)?[self.space.index(inn) * e + self.space.index(out)])
    }

    /// Whether two tables hold identical slabs.
    pub fn same_entries(&self, other: &BetaTable) -> bool {
        self.slabs == other.slabs
    }

    /// Recomputes the entry for `(u, i)`, `i >= 1`, from the stored slabs of
    /// `(u, i - 1)` and of the `i`-th child, by literal enumeration of all
    /// part out-envelope pairs.
    pub fn merge_entry(&self, t: &RootedTree, idx: SubtreeIndex, inn: Envelope, out: Envelope) -> Result<u32> {
        if idx.i == 0 || idx.i > t.children(idx.u).len() {
            return Err(Error::InvalidParameter(format!("no merge step for {idx:?}")));
        }
        let child = t.children(idx.u)[idx.i - 1];
        let left = self
            .slab(SubtreeIndex { u: idx.u, i: idx.i - 1 })
            .ok_or_else(|| Error::Internal(format!("slab ({}, {}) missing", idx.u, idx.i - 1)))?;
        let right = self
            .slab(t.full(child))
            .ok_or_else(|| Error::Internal(format!("slab of child {child} missing")))?;
        Ok(self.best_pair(inn, out, left, right).map_or(0, |(w, _, _)| w))
    }

    // First admissible (out0, out1) pair of maximum weight, scanning out0
    // then out1 in key order; `None` only if nothing is admissible.
    fn best_pair(&self, inn: Envelope, out: Envelope, left: &[u32], right: &[u32]) -> Option<(u32, usize, usize)> {
        let s = &self.space;
        let e = s.len();
        let mut best: Option<(u32, usize, usize)> = None;
        for (o0, &out0) in s.envelopes().iter().enumerate() {
            let in1 = s.in_key(min_pair(inn.shift(1), out0.shift(1)));
            for (o1, &out1) in s.envelopes().iter().enumerate() {
                if !out.dominates(min_pair(out0, out1.shift(1))) {
                    continue;
                }
                let in0 = s.in_key(min_pair(inn, out1.shift(1)));
                let w = left[in0 * e + o0] + right[in1 * e + o1];
                if best.is_none_or(|(b, _, _)| w > b) {
                    best = Some((w, o0, o1));
                }
            }
        }
        best
    }

    /// An assignment achieving the entry `(idx, inn, out)`, zero outside the
    /// subtree. Needs every slab below `idx`.
    pub fn witness(&self, t: &RootedTree, idx: SubtreeIndex, inn: Envelope, out: Envelope) -> Broadcast {
        let s = &self.space;
        let e = s.len();
        let mut f = Broadcast::zeros(t.vertex_count());
        let mut stack = vec![(idx, s.index(inn), s.index(out))];
        while let Some((idx, a, b)) = stack.pop() {
            let slab = self.slab(idx).expect("witness needs every slab");
            let target = slab[a * e + b];
            if idx.i == 0 {
                f.set(idx.u, target as usize);
                continue;
            }
            let child = t.children(idx.u)[idx.i - 1];
            let left_idx = SubtreeIndex { u: idx.u, i: idx.i - 1 };
            let right_idx = t.full(child);
            let (inn, out) = (s.envelopes()[a], s.envelopes()[b]);
            let (w, o0, o1) = self
                .best_pair(inn, out, self.slab(left_idx).unwrap(), self.slab(right_idx).unwrap())
                .expect("some pair is always admissible");
            assert_eq!(w, target, "slab entry disagrees with its parts at {idx:?}");
            let (out0, out1) = (s.envelopes()[o0], s.envelopes()[o1]);
            let in0 = s.in_key(min_pair(inn, out1.shift(1)));
            let in1 = s.in_key(min_pair(inn.shift(1), out0.shift(1)));
            stack.push((left_idx, in0, o0));
            stack.push((right_idx, in1, o1));
        }
        f
    }
}

fn base_slab(space: &EnvelopeSpace, ecc_u: usize) -> Vec<u32> {
    let env = space.envelopes();
    let mut slab = Vec::with_capacity(env.len() * env.len());
    for &inn in env {
        slab.extend(env.iter().map(|&out| beta_base(inn, out, ecc_u)));
    }
    slab
}

// Admitted part out-envelope pairs per outer out-envelope, in CSR form:
// for key `b * e + o0`, the `o1` with `out_b` dominating
// `min(out_o0, shift(out_o1, 1))`, stored as maximal runs `start..end`.
// Independent of the in-envelope, so computed once per table.
struct Admitted {
    offsets: Vec<u32>,
    runs: Vec<(u32, u32)>,
}

impl Admitted {
    fn new(space: &EnvelopeSpace) -> Admitted {
        let env = space.envelopes();
        let e = env.len();
        let mut offsets = Vec::with_capacity(e * e + 1);
        let mut runs: Vec<(u32, u32)> = Vec::new();
        offsets.push(0);
        for &out in env {
            for &out0 in env {
                // The combined requirement is at most out0 pointwise.
                if out.dominates(out0) {
                    let first = runs.len();
                    for o1 in 0..e as u32 {
                        if !out.dominates(min_pair(out0, env[o1 as usize].shift(1))) {
                            continue;
                        }
                        let extends = runs.len() > first && runs[runs.len() - 1].1 == o1;
                        if extends {
                            runs.last_mut().unwrap().1 = o1 + 1;
                        } else {
                            runs.push((o1, o1 + 1));
                        }
                    }
                }
                offsets.push(runs.len() as u32);
            }
        }
        Admitted { offsets, runs }
    }

    #[inline]
    fn pairs(&self, key: usize) -> &[(u32, u32)] {
        &self.runs[self.offsets[key] as usize..self.offsets[key + 1] as usize]
    }
}

fn merge_slab(space: &EnvelopeSpace, admitted: Option<&Admitted>, left: &[u32], right: &[u32], parallel: bool) -> Vec<u32> {
    let e = space.len();
    let mut slab = vec![0u32; e * e];
    let fill = |(a, row): (usize, &mut [u32])| {
        let inn = space.envelopes()[a];
        match admitted {
            Some(admitted) => naive_row(space, admitted, inn, left, right, row),
            None => pruned_row(space, inn, left, right, row),
        }
    };
    if parallel {
        slab.par_chunks_mut(e).enumerate().for_each(fill);
    } else {
        slab.chunks_mut(e).enumerate().for_each(fill);
    }
    slab
}

// Part in-envelopes for a fixed outer in-envelope: the left part (u side)
// is capped by the right part's out-envelope one step further, the right
// part by the outer caps and the left out-envelope, both one step further.
fn part_in_keys(space: &EnvelopeSpace, inn: Envelope) -> (Vec<usize>, Vec<usize>) {
    let env = space.envelopes();
    let in0 = env.iter().map(|&out1| space.in_key(min_pair(inn, out1.shift(1)))).collect();
    let in1 = env.iter().map(|&out0| space.in_key(min_pair(inn.shift(1), out0.shift(1)))).collect();
    (in0, in1)
}

fn naive_row(space: &EnvelopeSpace, admitted: &Admitted, inn: Envelope, left: &[u32], right: &[u32], row: &mut [u32]) {
    let e = space.len();
    let (in0, in1) = part_in_keys(space, inn);
    // sums[o0 * e + o1]: weight of the pair under this in-envelope.
    let mut sums = vec![0u32; e * e];
    for (o0, chunk) in sums.chunks_mut(e).enumerate() {
        let right_row = &right[in1[o0] * e..(in1[o0] + 1) * e];
        for (o1, w) in chunk.iter_mut().enumerate() {
            *w = left[in0[o1] * e + o0] + right_row[o1];
        }
    }
    for (b, slot) in row.iter_mut().enumerate() {
        let mut best = 0;
        for (o0, pair_row) in sums.chunks(e).enumerate() {
            for &(start, end) in admitted.pairs(b * e + o0) {
                let run = &pair_row[start as usize..end as usize];
                best = best.max(run.iter().copied().max().unwrap_or(0));
            }
        }
        *slot = best;
    }
}

fn pruned_row(space: &EnvelopeSpace, inn: Envelope, left: &[u32], right: &[u32], row: &mut [u32]) {
    let env = space.envelopes();
    let e = env.len();
    let n = space.n;
    let (in0, in1) = part_in_keys(space, inn);

    // Combined out-envelopes have p in [-(n+1), n], q in [1, n].
    let mut best = DominanceMax::new(n);
    for (o0, &out0) in env.iter().enumerate() {
        let right_row = &right[in1[o0] * e..(in1[o0] + 1) * e];
        for (o1, &out1) in env.iter().enumerate() {
            let w = left[in0[o1] * e + o0] + right_row[o1];
            if w > 0 {
                best.insert(min_pair(out0, out1.shift(1)), w);
            }
        }
    }
    best.finish();
    for (b, &out) in env.iter().enumerate() {
        row[b] = best.query(out);
    }
}

/// Max-weight lookup over envelopes dominated from below.
///
/// `out.dominates(c)` holds iff `q_out - p_out <= q_c - p_c` and either
/// `p_c <= 0` or `p_c <= p_out`. Writing `s = q - p`, the candidates with
/// `p_c <= 0` form a suffix over `s`; those with `p_c >= 1` form a
/// prefix over `p_c` times a suffix over `s`.
struct DominanceMax {
    n: i32,
    width: usize,
    // Best weight with p_c <= 0, indexed by s.
    flat: Vec<u32>,
    // Best weight per (p_c in 1..=n, s), row-major by p_c.
    grid: Vec<u32>,
}

impl DominanceMax {
    fn new(n: i32) -> DominanceMax {
        // s ranges over [1 - n, 2n + 1].
        let width = (3 * n + 2) as usize;
        DominanceMax { n, width, flat: vec![0; width], grid: vec![0; n as usize * width] }
    }

    #[inline]
    fn s_index(&self, e: Envelope) -> usize {
        (e.q - e.p - (1 - self.n)) as usize
    }

    #[inline]
    fn insert(&mut self, c: Envelope, w: u32) {
        let s = self.s_index(c);
        let cell = if c.p <= 0 {
            &mut self.flat[s]
        } else {
            &mut self.grid[(c.p - 1) as usize * self.width + s]
        };
        *cell = (*cell).max(w);
    }

    fn finish(&mut self) {
        let w = self.width;
        for s in (0..w - 1).rev() {
            self.flat[s] = self.flat[s].max(self.flat[s + 1]);
        }
        for p in 0..self.n as usize {
            for s in (0..w - 1).rev() {
                self.grid[p * w + s] = self.grid[p * w + s].max(self.grid[p * w + s + 1]);
            }
            if p > 0 {
                for s in 0..w {
                    self.grid[p * w + s] = self.grid[p * w + s].max(self.grid[(p - 1) * w + s]);
                }
            }
        }
    }

    #[inline]
    fn query(&self, out: Envelope) -> u32 {
        let s = self.s_index(out);
        let mut best = self.flat[s];
        if out.p >= 1 {
            best = best.max(self.grid[(out.p.min(self.n) - 1) as usize * self.width + s]);
        }
        best
    }
}
