use bcast_core::envelope::Envelope;
use bcast_core::generate::{path, random_connected, random_tree, spider, star, Family};
use bcast_core::oracle::{brute_alpha_b, max_independent_set, validate_broadcast};
use bcast_core::rng::SplitMix64;
use bcast_core::tree_dp::{solve_alpha_b, solve_alpha_b_pruned, BetaTable, Mode, RootedTree, SubtreeIndex};
use bcast_core::Graph;
use proptest::prelude::*;

fn le_on(a: Envelope, b: Envelope, from: i32, to: i32) -> bool {
    (from..=to).all(|d| a.eval(d) <= b.eval(d))
}

fn all_indices(t: &RootedTree) -> Vec<SubtreeIndex> {
    (0..t.vertex_count()).flat_map(|u| (0..=t.children(u).len()).map(move |i| SubtreeIndex { u, i })).collect()
}

// Lowering the caps from outside never helps; lowering the requirement on
// the outside never hurts. In-envelopes are compared from distance 0, out
// envelopes from distance 1, each pointwise.
#[test]
fn entries_are_monotone() {
    let mut rng = SplitMix64::new(61);
    for k in 0..8 {
        let n = 2 + k % 5;
        let g = random_tree(n, &mut rng).unwrap();
        let t = RootedTree::new(&g, rng.below(n as u64) as usize).unwrap();
        let table = BetaTable::build(&t, Mode::Pruned);
        let envs = table.space().envelopes().to_vec();
        let horizon = 4 * n as i32 + 4;
        let in_le: Vec<(Envelope, Envelope)> = envs
            .iter()
            .flat_map(|&a| envs.iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| a != b && le_on(a, b, 0, horizon))
            .collect();
        let out_le: Vec<(Envelope, Envelope)> = envs
            .iter()
            .flat_map(|&a| envs.iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| a != b && le_on(a, b, 1, horizon))
            .collect();
        for idx in all_indices(&t) {
            for &fixed in &envs {
                for &(lo, hi) in &in_le {
                    assert!(table.get(idx, lo, fixed).unwrap() <= table.get(idx, hi, fixed).unwrap());
                }
                for &(lo, hi) in &out_le {
                    assert!(table.get(idx, fixed, lo).unwrap() >= table.get(idx, fixed, hi).unwrap());
                }
            }
        }
    }
}

#[test]
fn value_ignores_root_and_labels() {
    let mut rng = SplitMix64::new(62);
    for _ in 0..25 {
        let n = 2 + rng.below(8) as usize;
        let g = random_tree(n, &mut rng).unwrap();
        let base = solve_alpha_b_pruned(&RootedTree::new(&g, 0).unwrap());
        for _ in 0..5 {
            let r = rng.below(n as u64) as usize;
            assert_eq!(solve_alpha_b_pruned(&RootedTree::new(&g, r).unwrap()), base);
        }
        // Relabelling permutes the child order at every vertex.
        let mut perm: Vec<usize> = (0..n).collect();
        rng.shuffle(&mut perm);
        let h = g.relabel(&perm).unwrap();
        let t = RootedTree::new(&h, perm[0]).unwrap();
        let s = solve_alpha_b(&t);
        assert_eq!(s.weight, base);
        assert!(validate_broadcast(&h, &s.witness).unwrap().is_ok());
    }
}

#[test]
fn threads_give_identical_tables() {
    let g = random_tree(8, &mut SplitMix64::new(63)).unwrap();
    let t = RootedTree::new(&g, 2).unwrap();
    let one = BetaTable::build_with(&t, Mode::Naive, 1, true);
    let four = BetaTable::build_with(&t, Mode::Naive, 4, true);
    assert!(one.same_entries(&four));
}

#[test]
fn named_families() {
    // Paths: two endpoints at n - 2 beat everything else from n = 4 on.
    for n in 4..=9 {
        let t = RootedTree::new(&path(n).unwrap(), 0).unwrap();
        assert_eq!(solve_alpha_b(&t).weight, brute_alpha_b(&path(n).unwrap(), 10).unwrap().0);
    }
    for leaves in 2..=8 {
        let t = RootedTree::new(&star(leaves), 0).unwrap();
        assert_eq!(solve_alpha_b_pruned(&t), leaves);
    }
    let s = spider(3, 2);
    assert_eq!(solve_alpha_b(&RootedTree::new(&s, 0).unwrap()).weight, brute_alpha_b(&s, 10).unwrap().0);
}

// Tree distances from parent pointers and depths, against BFS.
#[test]
fn rooted_depths_give_tree_distances() {
    let mut rng = SplitMix64::new(64);
    for _ in 0..20 {
        let n = 1 + rng.below(30) as usize;
        let g = random_tree(n, &mut rng).unwrap();
        let t = RootedTree::new(&g, rng.below(n as u64) as usize).unwrap();
        let dist = g.distances();
        for u in 0..n {
            for v in 0..n {
                let (mut a, mut b) = (u, v);
                while t.depth(a) > t.depth(b) {
                    a = t.parent(a).unwrap();
                }
                while t.depth(b) > t.depth(a) {
                    b = t.parent(b).unwrap();
                }
                while a != b {
                    a = t.parent(a).unwrap();
                    b = t.parent(b).unwrap();
                }
                assert_eq!(dist.dist(u, v), t.depth(u) + t.depth(v) - 2 * t.depth(a));
            }
        }
    }
}

#[test]
fn generators_are_deterministic() {
    for case in [("random_tree", vec!["9"]), ("random_connected", vec!["8", "0.3"]), ("spider", vec!["3", "2"])] {
        let f = Family::parse(case.0, &case.1).unwrap();
        assert_eq!(f.generate(7).unwrap().edges(), f.generate(7).unwrap().edges());
    }
    let a = random_tree(20, &mut SplitMix64::new(1)).unwrap();
    let b = random_tree(20, &mut SplitMix64::new(2)).unwrap();
    assert_ne!(a.edges(), b.edges());
}

fn graph_strategy() -> impl Strategy<Value = (Graph, Vec<usize>)> {
    (2usize..=7, any::<u64>(), 0.2f64..0.9).prop_map(|(n, seed, p)| {
        let mut rng = SplitMix64::new(seed);
        let g = random_connected(n, p, &mut rng).unwrap();
        let mut perm: Vec<usize> = (0..n).collect();
        rng.shuffle(&mut perm);
        (g, perm)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn brute_value_ignores_labels((g, perm) in graph_strategy()) {
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(brute_alpha_b(&g, 10).unwrap().0, brute_alpha_b(&h, 10).unwrap().0);
        prop_assert_eq!(max_independent_set(&g).0, max_independent_set(&h).0);
    }

    #[test]
    fn sandwich_holds((g, _) in graph_strategy()) {
        let alpha = max_independent_set(&g).0;
        let (alpha_b, witness) = brute_alpha_b(&g, 10).unwrap();
        prop_assert!(alpha <= alpha_b && alpha_b <= 4 * alpha);
        prop_assert!(validate_broadcast(&g, &witness).unwrap().is_ok());
    }

    #[test]
    fn tree_dp_matches_brute(n in 2usize..=7, seed in any::<u64>()) {
        let g = random_tree(n, &mut SplitMix64::new(seed)).unwrap();
        let t = RootedTree::new(&g, 0).unwrap();
        let s = solve_alpha_b(&t);
        prop_assert_eq!(s.weight, brute_alpha_b(&g, 10).unwrap().0);
        prop_assert_eq!(s.witness.weight(), s.weight);
        prop_assert_eq!(solve_alpha_b_pruned(&t), s.weight);
    }
}
