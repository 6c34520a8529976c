//! Seeded generators and fixed corpus posets.
//!
//! Every random generator takes a caller-owned [`ChaCha8Rng`], so a seed
//! fully determines the output.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poset::FinitePoset;
use crate::recognition::IntervalAssignment;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Closure of a random DAG: each pair `i < j` of a random linear order is an
/// edge with probability `density`.
pub fn random_poset(rng: &mut ChaCha8Rng, n: usize, density: f64) -> FinitePoset {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((order[i], order[j]));
            }
        }
    }
    FinitePoset::from_edges(n, &pairs, false).expect("edges follow a linear order")
}

/// Interval order from `n` random closed intervals with endpoints in
/// `[0, 2n]`.
pub fn random_interval_order(rng: &mut ChaCha8Rng, n: usize) -> (FinitePoset, IntervalAssignment) {
    let span = 2 * n.max(1);
    let intervals = (0..n)
        .map(|_| {
            let a = rng.gen_range(0..=span);
            let b = rng.gen_range(0..=span);
            (a.min(b), a.max(b))
        })
        .collect();
    let assignment = IntervalAssignment { intervals };
    (assignment.to_poset(), assignment)
}

/// A poset built level by level: each element picks a few covers from the
/// level just below, plus occasional longer edges. Sizes up to `max_n`.
pub fn random_layered_poset(rng: &mut ChaCha8Rng, max_n: usize) -> FinitePoset {
    let n = rng.gen_range(1..=max_n.max(1));
    let mut level_of = Vec::with_capacity(n);
    let mut levels: Vec<Vec<usize>> = vec![Vec::new()];
    for x in 0..n {
        if x > 0 && rng.gen_bool(0.2) {
            levels.push(Vec::new());
        }
        levels.last_mut().unwrap().push(x);
        level_of.push(levels.len() - 1);
    }
    let mut pairs = Vec::new();
    for x in 0..n {
        let l = level_of[x];
        if l == 0 {
            continue;
        }
        let below = &levels[l - 1];
        pairs.push((*below.choose(rng).unwrap(), x));
        for _ in 0..rng.gen_range(0..3) {
            let k = rng.gen_range(0..l);
            pairs.push((*levels[k].choose(rng).unwrap(), x));
        }
    }
    FinitePoset::from_edges(n, &pairs, false).expect("edges go up in level")
}

/// Positions of `0..n` in a permutation where no element moves more than
/// `displacement` places: sort by `i + U[0, displacement]`.
pub fn bounded_displacement_positions(rng: &mut ChaCha8Rng, n: usize, displacement: usize) -> Vec<usize> {
    let mut keyed: Vec<(usize, usize)> = (0..n).map(|i| (i + rng.gen_range(0..=displacement), i)).collect();
    keyed.sort_unstable();
    let mut pos = vec![0; n];
    for (rank, &(_, i)) in keyed.iter().enumerate() {
        pos[i] = rank;
    }
    pos
}

/// Every strict order on `n <= 5` labeled elements: closures of all
/// subsets of the upper triangle, under all relabelings, deduplicated.
/// Sorted by relation.
pub fn all_labeled_posets(n: usize) -> Vec<FinitePoset> {
    assert!(n <= 5, "exhaustive enumeration is limited to 5 elements");
    let upper: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut perms = vec![(0..n).collect::<Vec<_>>()];
    permutations(n, &mut perms);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << upper.len() {
        let pairs: Vec<(usize, usize)> = upper
            .iter()
            .enumerate()
            .filter(|&(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let p = FinitePoset::from_edges(n, &pairs, false).unwrap();
        for perm in &perms {
            let q = p.relabel(perm);
            if seen.insert(q.pairs()) {
                out.push(q);
            }
        }
    }
    out.sort_by_key(|p| p.pairs());
    out
}

fn permutations(n: usize, out: &mut Vec<Vec<usize>>) {
    // Heap's algorithm, appending every permutation after the first.
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Small corpus posets shared by tests and the CLI.
pub mod fixtures {
    use crate::poset::FinitePoset;

    /// `x < y` iff `x + 2 <= y`, on `[0, n)`.
    pub fn le2(n: usize) -> FinitePoset {
        FinitePoset::from_relation(n, |a, b| a + 2 <= b).unwrap()
    }

    /// Two chains `a_0 < … < a_5` (elements `0..6`) and `b_0 < … < b_63`
    /// (elements `6..70`) with `a_i < b_j` iff `j >= 2^i`.
    pub fn q_analog() -> FinitePoset {
        FinitePoset::from_relation(70, |x, y| match (x < 6, y < 6) {
            (true, true) | (false, false) => x < y,
            (true, false) => y - 6 >= 1 << x,
            (false, true) => false,
        })
        .unwrap()
    }

    /// A chain of `n` elements and one more element beside it.
    pub fn chain_plus_point(n: usize) -> FinitePoset {
        FinitePoset::disjoint_sum(&FinitePoset::chain(n), &FinitePoset::antichain(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labeled_poset_counts() {
        // Number of labeled posets on n points.
        let counts: Vec<usize> = (0..=5).map(|n| all_labeled_posets(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 19, 219, 4231]);
    }

    #[test]
    fn seeds_are_deterministic() {
        let a = random_poset(&mut rng(7), 9, 0.3);
        let b = random_poset(&mut rng(7), 9, 0.3);
        assert_eq!(a, b);
        let (p, iv) = random_interval_order(&mut rng(1), 7);
        assert_eq!(iv.to_poset(), p);
    }

    #[test]
    fn displacement_is_bounded() {
        let mut r = rng(3);
        for _ in 0..20 {
            let pos = bounded_displacement_positions(&mut r, 500, 16);
            let mut seen = pos.clone();
            seen.sort_unstable();
            assert_eq!(seen, (0..500).collect::<Vec<_>>());
            assert!(pos.iter().enumerate().all(|(i, &p)| i.abs_diff(p) <= 16));
        }
    }

    #[test]
    fn layered_posets_fit_the_cap() {
        let mut r = rng(11);
        for _ in 0..50 {
            assert!(random_layered_poset(&mut r, 200).len() <= 200);
        }
    }
}
