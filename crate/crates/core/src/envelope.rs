//! Two-parameter bound functions over tree distances.
//!
//! An [`Envelope`] `(p, q)` stands for the function
//!
//! ```text
//! g(d) = 0              if d <= p
//! g(d) = d - p + q - 1  if d >= p + 1
//! ```
//!
//! It is zero up to distance `p` and grows with slope one afterwards,
//! taking the value `q` at `d = p + 1`. A positive broadcast value `f` at
//! distance `dist` from a reference vertex caps every other value at
//! `Envelope::new(f - dist, f)` measured from that reference vertex.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Envelope {
    pub p: i32,
    pub q: i32,
}

impl Envelope {
    pub const fn new(p: i32, q: i32) -> Envelope {
        debug_assert!(q >= 1);
        Envelope { p, q }
    }

    #[inline]
    pub fn eval(self, d: i32) -> i32 {
        if d <= self.p {
            0
        } else {
            d - self.p + self.q - 1
        }
    }

    /// The envelope `e'` with `e'.eval(d) == self.eval(d + k)`.
    #[inline]
    pub fn shift(self, k: i32) -> Envelope {
        Envelope { p: self.p - k, q: self.q }
    }

    /// Whether `self.eval(d) <= other.eval(d)` for every positive `d`.
    ///
    /// Beyond both breakpoints the functions are parallel, so the offsets
    /// `q - p` decide; below `other`'s breakpoint `other` is zero on
    /// `1..=other.p`, which `self` must match.
    #[inline]
    pub fn dominates(self, other: Envelope) -> bool {
        self.q - self.p <= other.q - other.p && (other.p <= 0 || self.p >= other.p)
    }
}

/// Pointwise minimum of two envelopes, exact for every `d >= min(a.p, b.p)`.
#[inline]
pub fn min_pair(a: Envelope, b: Envelope) -> Envelope {
    let p = a.p.max(b.p);
    Envelope { p, q: a.eval(p + 1).min(b.eval(p + 1)) }
}

/// Pointwise minimum of a nonempty list of envelopes.
///
/// The result has the largest breakpoint and, at the point just past it,
/// the smallest value among the inputs. It agrees with the true minimum for
/// every `d` at least the smallest input breakpoint.
pub fn min_combine(envelopes: &[Envelope]) -> Result<Envelope> {
    let p = envelopes.iter().map(|e| e.p).max().ok_or(Error::EmptyEnvelopeList)?;
    let q = envelopes.iter().map(|e| e.eval(p + 1)).min().unwrap_or(1);
    Ok(Envelope { p, q })
}

/// Whether a positive value `f` at distance `dist` from the reference vertex
/// respects the requirement `(p, q)`, i.e. `(p, q).eval(d) <= (f, f).eval(d + dist)`
/// for every positive `d`.
#[inline]
pub fn permits(p: i32, q: i32, f: i32, dist: i32) -> bool {
    (f - p.max(0)).max(q - p) <= dist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;
    use proptest::prelude::*;

    // Finite-horizon pointwise oracles. Past every breakpoint involved both
    // sides are affine with slope one, so a short horizon decides.
    fn pointwise_le(a: Envelope, b: Envelope, from: i32, to: i32) -> bool {
        (from..=to).all(|d| a.eval(d) <= b.eval(d))
    }

    fn pointwise_min_matches(inputs: &[Envelope], got: Envelope, from: i32, to: i32) -> bool {
        (from..=to).all(|d| got.eval(d) == inputs.iter().map(|e| e.eval(d)).min().unwrap())
    }

    #[test]
    fn eval_examples() {
        assert_eq!(Envelope::new(2, 3).eval(1), 0);
        assert_eq!(Envelope::new(2, 3).eval(3), 3);
        assert_eq!(Envelope::new(-1, 2).eval(0), 2);
    }

    #[test]
    fn shift_examples() {
        assert_eq!(Envelope::new(2, 3).shift(1), Envelope::new(1, 3));
        assert_eq!(Envelope::new(-1, 2).shift(1), Envelope::new(-2, 2));
        let s = Envelope::new(0, 1).shift(2);
        assert_eq!(s, Envelope::new(-2, 1));
        assert_eq!(s.eval(0), Envelope::new(0, 1).eval(2));
        assert_eq!(s.eval(0), 2);
        let n = 4;
        assert!((-2..=3 * n).all(|d| s.eval(d) == Envelope::new(0, 1).eval(d + 2)));
    }

    #[test]
    fn min_combine_examples() {
        let one = [Envelope::new(2, 3)];
        assert_eq!(min_combine(&one).unwrap(), Envelope::new(2, 3));

        let two = [Envelope::new(0, 1), Envelope::new(2, 5)];
        let got = min_combine(&two).unwrap();
        assert_eq!(got, Envelope::new(2, 3));
        assert!(pointwise_min_matches(&two, got, 0, 30));

        let three = [Envelope::new(-1, 2), Envelope::new(1, 1)];
        let got = min_combine(&three).unwrap();
        assert_eq!(got, Envelope::new(1, 1));
        assert!(pointwise_min_matches(&three, got, 0, 30));

        assert_eq!(min_combine(&[]), Err(Error::EmptyEnvelopeList));
    }

    #[test]
    fn permits_examples() {
        let oracle = |p: i32, q: i32, f: i32, dist: i32| {
            let horizon = p.abs() + f + dist + 2;
            (1..=horizon).all(|d| Envelope::new(p, q).eval(d) <= Envelope::new(f, f).eval(d + dist))
        };
        for (args, want) in [((0, 1, 1, 1), true), ((0, 1, 2, 1), false), ((-3, 2, 1, 5), true)] {
            let (p, q, f, dist) = args;
            assert_eq!(permits(p, q, f, dist), want, "{args:?}");
            assert_eq!(oracle(p, q, f, dist), want, "{args:?}");
        }
    }

    #[test]
    fn dominates_examples() {
        let e = Envelope::new(3, 2);
        assert!(e.dominates(e));
        assert!(Envelope::new(3, 2).dominates(Envelope::new(2, 1)));
        assert!(pointwise_le(Envelope::new(3, 2), Envelope::new(2, 1), 1, 5));
        assert!(!Envelope::new(1, 1).dominates(Envelope::new(2, 3)));
        assert_eq!(Envelope::new(1, 1).eval(2), 1);
        assert_eq!(Envelope::new(2, 3).eval(2), 0);
    }

    #[test]
    fn oracle_sweep_in_range() {
        // 10^4 random draws per operation in the DP ranges p in [-(n+1), n], q in [1, n].
        let mut rng = SplitMix64::new(0xE1);
        for _ in 0..10_000 {
            let n = 1 + rng.below(12) as i32;
            let draw = |rng: &mut SplitMix64| {
                Envelope::new(rng.below(2 * n as u64 + 2) as i32 - (n + 1), 1 + rng.below(n as u64) as i32)
            };
            let k = 1 + rng.below(4) as usize;
            let list: Vec<_> = (0..k).map(|_| draw(&mut rng)).collect();
            let got = min_combine(&list).unwrap();
            assert!(pointwise_min_matches(&list, got, 0, 4 * n), "{list:?}");

            let (a, b) = (draw(&mut rng), draw(&mut rng));
            let horizon = a.p.max(b.p).max(0) + 2;
            assert_eq!(a.dominates(b), pointwise_le(a, b, 1, horizon), "{a:?} {b:?}");

            let (p, q) = (a.p.max(-n), a.q);
            let f = 1 + rng.below(n as u64) as i32;
            let dist = rng.below(n as u64 + 1) as i32;
            let horizon = p.abs() + f + dist + 2;
            let want = (1..=horizon).all(|d| Envelope::new(p, q).eval(d) <= Envelope::new(f, f).eval(d + dist));
            assert_eq!(permits(p, q, f, dist), want, "{p} {q} {f} {dist}");
        }
    }

    fn env(n: i32) -> impl Strategy<Value = Envelope> {
        (-(n + 1)..=n, 1..=n).prop_map(|(p, q)| Envelope::new(p, q))
    }

    proptest! {
        #[test]
        fn eval_shape(e in env(12), d in -20i32..40) {
            prop_assert!(e.eval(d) <= e.eval(d + 1));
            prop_assert_eq!(e.eval(e.p + 1), e.q);
            if d > e.p {
                prop_assert!(e.eval(d) >= 1);
            }
        }

        #[test]
        fn shift_composes(e in env(12), a in 1i32..6, b in 1i32..6, d in -10i32..30) {
            prop_assert_eq!(e.shift(a).shift(b), e.shift(a + b));
            prop_assert_eq!(e.shift(a).eval(d), e.eval(d + a));
        }

        #[test]
        fn min_combine_is_order_free(a in env(10), b in env(10), c in env(10)) {
            let ab_c = min_pair(min_pair(a, b), c);
            let a_bc = min_pair(a, min_pair(b, c));
            let all = min_combine(&[c, a, b]).unwrap();
            for d in 0..=40 {
                prop_assert_eq!(ab_c.eval(d), a_bc.eval(d));
                prop_assert_eq!(all.eval(d), ab_c.eval(d));
                prop_assert_eq!(min_pair(a, a).eval(d), a.eval(d));
                prop_assert_eq!(min_pair(a, b).eval(d), min_pair(b, a).eval(d));
            }
        }

        #[test]
        fn permits_is_dominance_against_shifted_value(p in -10i32..=10, q in 1i32..=10, f in 1i32..=10, dist in 0i32..=10) {
            prop_assert_eq!(permits(p, q, f, dist), Envelope::new(p, q).dominates(Envelope::new(f - dist, f)));
        }
    }
}
