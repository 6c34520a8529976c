//! Interval orders, semiorders and threshold orders.
//!
//! Each class is recognised twice: by searching for the forbidden patterns
//! (`2+2`, and `3+1` for semiorders) and by testing totality of the
//! predecessor/successor quasi-orders. The public checks run both and insist
//! they agree.

use crate::bitset::BitSet;
use crate::certificate::{Certificate, Verdict, Witness};
use crate::error::{Error, Result};
use crate::poset::{patterns, FinitePoset};

/// A reflexive, transitive relation on `{0, .., n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiOrder {
    leq: Vec<BitSet>,
}

impl QuasiOrder {
    fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        QuasiOrder {
            leq: (0..n)
                .map(|x| BitSet::from_indices(n, (0..n).filter(|&y| f(x, y))))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x].contains(y)
    }

    pub fn intersection(&self, other: &QuasiOrder) -> QuasiOrder {
        let mut leq = self.leq.clone();
        for (a, b) in leq.iter_mut().zip(&other.leq) {
            a.intersect_with(b);
        }
        QuasiOrder { leq }
    }

    /// First pair (lexicographically) related in neither direction.
    pub fn first_incomparable(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
            .find(|&(x, y)| !self.leq(x, y) && !self.leq(y, x))
    }

    pub fn is_total(&self) -> bool {
        self.first_incomparable().is_none()
    }

    pub fn is_reflexive_and_transitive(&self) -> bool {
        (0..self.len()).all(|x| {
            self.leq(x, x) && self.leq[x].iter().all(|y| self.leq[y].is_subset(&self.leq[x]))
        })
    }

    /// Equivalence classes of a total quasi-order, bottom first, members in
    /// index order. `None` if the relation is not total.
    pub fn classes(&self) -> Option<Vec<Vec<usize>>> {
        if !self.is_total() {
            return None;
        }
        let mut elems: Vec<usize> = (0..self.len()).collect();
        // In a total quasi-order, fewer elements above means higher.
        elems.sort_by_key(|&x| (std::cmp::Reverse(self.leq[x].len()), x));
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in elems {
            match classes.last_mut() {
                Some(c) if self.leq(c[0], x) && self.leq(x, c[0]) => c.push(x),
                _ => classes.push(vec![x]),
            }
        }
        Some(classes)
    }
}

/// `x ≤_pred y` iff every strict predecessor of `x` is one of `y`.
pub fn pred_quasiorder(p: &FinitePoset) -> QuasiOrder {
    QuasiOrder::from_fn(p.len(), |x, y| p.predecessors(x).is_subset(p.predecessors(y)))
}

/// `x ≤_succ y` iff every strict successor of `y` is one of `x`.
pub fn succ_quasiorder(p: &FinitePoset) -> QuasiOrder {
    QuasiOrder::from_fn(p.len(), |x, y| p.successors(y).is_subset(p.successors(x)))
}

/// Pattern route alone: the first induced `2+2`, if any.
pub fn find_two_plus_two(p: &FinitePoset) -> Option<Vec<usize>> {
    p.embeds_pattern(&patterns::two_plus_two())
        .expect("pattern within size bound")
        .map(|e| e.map)
}

/// Pattern route alone: the first induced `3+1`, if any.
pub fn find_three_plus_one(p: &FinitePoset) -> Option<Vec<usize>> {
    p.embeds_pattern(&patterns::three_plus_one())
        .expect("pattern within size bound")
        .map(|e| e.map)
}

pub fn interval_by_pattern(p: &FinitePoset) -> bool {
    find_two_plus_two(p).is_none()
}

pub fn interval_by_quasiorder(p: &FinitePoset) -> bool {
    pred_quasiorder(p).is_total()
}

pub fn semiorder_by_pattern(p: &FinitePoset) -> bool {
    find_two_plus_two(p).is_none() && find_three_plus_one(p).is_none()
}

pub fn semiorder_by_quasiorder(p: &FinitePoset) -> bool {
    pred_quasiorder(p).intersection(&succ_quasiorder(p)).is_total()
}

const ROUTE: &str = "pattern+quasi-order";

/// Above this size a positive verdict rests on the quasi-order route alone;
/// an exhaustive search for an absent pattern costs `O(n^4)`.
pub const PATTERN_ROUTE_LIMIT: usize = 64;

fn agree(check: &str, by_pattern: bool, by_quasiorder: bool) {
    assert_eq!(
        by_pattern, by_quasiorder,
        "{check}: forbidden-pattern and quasi-order routes disagree"
    );
}

/// Interval-order check. A negative certificate holds the first `2+2`
/// embedding; a positive one lists the classes of `≤_pred`. Both routes run
/// and must agree, except for positive verdicts on posets larger than
/// [`PATTERN_ROUTE_LIMIT`].
pub fn is_interval_order(p: &FinitePoset) -> Certificate {
    let pred = pred_quasiorder(p);
    if pred.is_total() && p.len() > PATTERN_ROUTE_LIMIT {
        return Certificate::new(
            Verdict::Pass,
            "quasi-order",
            Witness::Classes {
                name: "pred".into(),
                classes: pred.classes().expect("total"),
            },
        );
    }
    let pattern = find_two_plus_two(p);
    agree("interval order", pattern.is_none(), pred.is_total());
    match pattern {
        Some(map) => Certificate::new(
            Verdict::Fail,
            ROUTE,
            Witness::Embedding {
                pattern: "2+2".into(),
                map,
            },
        ),
        None => Certificate::new(
            Verdict::Pass,
            ROUTE,
            Witness::Classes {
                name: "pred".into(),
                classes: pred.classes().expect("total"),
            },
        ),
    }
}

/// Semiorder check. `2+2` is searched before `3+1`; the positive witness is
/// the class list of `≤_pred ∩ ≤_succ`.
pub fn is_semiorder(p: &FinitePoset) -> Certificate {
    let both = pred_quasiorder(p).intersection(&succ_quasiorder(p));
    if both.is_total() && p.len() > PATTERN_ROUTE_LIMIT {
        return Certificate::new(
            Verdict::Pass,
            "quasi-order",
            Witness::Classes {
                name: "pred-and-succ".into(),
                classes: both.classes().expect("total"),
            },
        );
    }
    let pattern = find_two_plus_two(p)
        .map(|m| ("2+2", m))
        .or_else(|| find_three_plus_one(p).map(|m| ("3+1", m)));
    agree("semiorder", pattern.is_none(), both.is_total());
    match pattern {
        Some((name, map)) => Certificate::new(
            Verdict::Fail,
            ROUTE,
            Witness::Embedding {
                pattern: name.into(),
                map,
            },
        ),
        None => Certificate::new(
            Verdict::Pass,
            ROUTE,
            Witness::Classes {
                name: "pred-and-succ".into(),
                classes: both.classes().expect("total"),
            },
        ),
    }
}

/// Threshold check: `≤_pred` and `≤_succ` are total and equal.
pub fn is_threshold(p: &FinitePoset) -> bool {
    let pred = pred_quasiorder(p);
    pred.is_total() && pred == succ_quasiorder(p)
}

/// Re-checks a certificate from [`is_interval_order`] or [`is_semiorder`]
/// against `p` by direct evaluation.
pub fn verify_recognition(p: &FinitePoset, cert: &Certificate) -> bool {
    match (&cert.verdict, &cert.witness) {
        (Verdict::Fail, Witness::Embedding { pattern, map }) => {
            let pat = match pattern.as_str() {
                "2+2" => patterns::two_plus_two(),
                "3+1" => patterns::three_plus_one(),
                _ => return false,
            };
            crate::poset::Embedding { map: map.clone() }.verify(p, &pat)
        }
        (Verdict::Pass, Witness::Classes { name, classes }) => {
            let q = match name.as_str() {
                "pred" => pred_quasiorder(p),
                "pred-and-succ" => pred_quasiorder(p).intersection(&succ_quasiorder(p)),
                _ => return false,
            };
            let mut rank = vec![usize::MAX; p.len()];
            for (r, class) in classes.iter().enumerate() {
                for &x in class {
                    if x >= p.len() || rank[x] != usize::MAX {
                        return false;
                    }
                    rank[x] = r;
                }
            }
            rank.iter().all(|&r| r != usize::MAX)
                && (0..p.len()).all(|x| (0..p.len()).all(|y| q.leq(x, y) == (rank[x] <= rank[y])))
        }
        _ => false,
    }
}

/// Closed intervals on the integer chain; `x < y` iff `right(x) < left(y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalAssignment {
    pub intervals: Vec<(usize, usize)>,
}

impl IntervalAssignment {
    pub fn precedes(&self, x: usize, y: usize) -> bool {
        self.intervals[x].1 < self.intervals[y].0
    }

    pub fn to_poset(&self) -> FinitePoset {
        FinitePoset::from_relation(self.intervals.len(), |x, y| self.precedes(x, y))
            .expect("interval precedence is a strict order")
    }
}

/// Intervals with endpoints in `0..2n`: the left end of `y` encodes the rank
/// of its predecessor set, the right end of `x` the first predecessor set
/// containing `x`.
pub fn interval_representation(p: &FinitePoset) -> Result<IntervalAssignment> {
    if !is_interval_order(p).passed() {
        return Err(Error::NotIntervalOrder);
    }
    let mut sets: Vec<&BitSet> = (0..p.len()).map(|x| p.predecessors(x)).collect();
    sets.sort_by_key(|s| s.len());
    sets.dedup();
    let m = sets.len() - usize::from(!sets.is_empty());
    let intervals = (0..p.len())
        .map(|x| {
            let left = 2 * sets.iter().position(|s| *s == p.predecessors(x)).unwrap();
            let right = match sets.iter().position(|s| s.contains(x)) {
                Some(first) => 2 * first - 1,
                None => 2 * m + 1,
            };
            (left, right)
        })
        .collect();
    Ok(IntervalAssignment { intervals })
}

/// Chain `K` of positions with a final segment `Ψ(k) = {k' : k' >= threshold[k]}`
/// attached to each position; `x < y` iff `h(y) ∈ Ψ(h(x))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiRepresentation {
    /// Element to position.
    pub h: Vec<usize>,
    /// Position to element: the chain `K` listed bottom first.
    pub chain: Vec<usize>,
    pub threshold: Vec<usize>,
    pub order_reversing: bool,
}

impl PsiRepresentation {
    pub fn in_psi(&self, k: usize, k2: usize) -> bool {
        k2 >= self.threshold[k]
    }

    /// `k ∉ Ψ(k)` everywhere, and monotone thresholds when order reversing.
    pub fn is_valid(&self) -> bool {
        let n = self.h.len();
        self.chain.len() == n
            && self.threshold.len() == n
            && (0..n).all(|k| self.threshold[k] > k && self.threshold[k] <= n)
            && (0..n).all(|x| self.chain[self.h[x]] == x)
            && (!self.order_reversing || self.threshold.windows(2).all(|w| w[0] <= w[1]))
    }

    /// Rebuilds the order; errors if the data does not define a strict order.
    pub fn reconstruct(&self) -> Result<FinitePoset> {
        FinitePoset::from_relation(self.h.len(), |x, y| self.in_psi(self.h[x], self.h[y]))
    }
}

/// Builds the chain-and-Ψ representation. `K` linearly extends `≤_pred`
/// (ties by index); with `order_reversing` it extends `≤_pred ∩ ≤_succ`
/// and `Ψ` is antitone, which requires a semiorder.
pub fn psi_representation(p: &FinitePoset, order_reversing: bool) -> Result<PsiRepresentation> {
    if !is_interval_order(p).passed() {
        return Err(Error::NotIntervalOrder);
    }
    if order_reversing && !is_semiorder(p).passed() {
        return Err(Error::NotSemiorder);
    }
    let n = p.len();
    let mut chain: Vec<usize> = (0..n).collect();
    if order_reversing {
        chain.sort_by_key(|&x| (p.predecessors(x).len(), n - p.successors(x).len(), x));
    } else {
        chain.sort_by_key(|&x| (p.predecessors(x).len(), x));
    }
    let mut h = vec![0; n];
    for (k, &x) in chain.iter().enumerate() {
        h[x] = k;
    }
    let threshold = chain
        .iter()
        .map(|&x| p.successors(x).iter().map(|y| h[y]).min().unwrap_or(n))
        .collect();
    let rep = PsiRepresentation {
        h,
        chain,
        threshold,
        order_reversing,
    };
    debug_assert!(rep.is_valid());
    Ok(rep)
}

/// For any placement `h` and thresholds with `threshold[k] > k`, the
/// relation `h(y) >= threshold[h(x)]` is a strict order. Returns the first
/// violation if the data breaks it, which would refute the claim.
pub fn psi_relation_violation(h: &[usize], threshold: &[usize]) -> Option<Vec<usize>> {
    match FinitePoset::from_relation(h.len(), |x, y| h[y] >= threshold[h[x]]) {
        Ok(_) => None,
        Err(Error::NotStrictOrder(w)) => Some(w),
        Err(_) => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::patterns::*;
    use proptest::prelude::*;

    fn le2(n: usize) -> FinitePoset {
        FinitePoset::from_relation(n, |a, b| a + 2 <= b).unwrap()
    }

    fn arb_poset(max_n: usize) -> impl Strategy<Value = FinitePoset> {
        (0..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
                let pairs: Vec<(usize, usize)> = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| bits[i * n + j])
                    .collect();
                FinitePoset::from_edges(n, &pairs, false).unwrap()
            })
        })
    }

    /// Orders induced by random integer intervals.
    fn arb_interval_order(max_n: usize) -> impl Strategy<Value = FinitePoset> {
        proptest::collection::vec((0usize..12, 0usize..5), 0..=max_n).prop_map(|iv| {
            FinitePoset::from_relation(iv.len(), |x, y| iv[x].0 + iv[x].1 < iv[y].0).unwrap()
        })
    }

    #[test]
    fn pred_quasiorder_examples() {
        let q = pred_quasiorder(&FinitePoset::antichain(2));
        assert!(q.leq(0, 1) && q.leq(1, 0));
        let q = pred_quasiorder(&two_plus_two());
        assert!(!q.leq(1, 3) && !q.leq(3, 1));
        let q = pred_quasiorder(&FinitePoset::chain(3));
        assert!(q.leq(0, 1) && q.leq(1, 2) && !q.leq(2, 1));
        assert_eq!(q.classes().unwrap(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn interval_examples() {
        let c = is_interval_order(&two_plus_two());
        assert_eq!(c.verdict, Verdict::Fail);
        assert_eq!(
            c.witness,
            Witness::Embedding {
                pattern: "2+2".into(),
                map: vec![0, 1, 2, 3]
            }
        );
        assert!(is_interval_order(&three_plus_one()).passed());
        assert!(is_interval_order(&FinitePoset::chain(5)).passed());
    }

    #[test]
    fn semiorder_examples() {
        let c = is_semiorder(&three_plus_one());
        assert_eq!(
            c.witness,
            Witness::Embedding {
                pattern: "3+1".into(),
                map: vec![0, 1, 2, 3]
            }
        );
        assert!(verify_recognition(&three_plus_one(), &c));
        assert!(is_semiorder(&le2(6)).passed());
        assert!(is_semiorder(&FinitePoset::antichain(2)).passed());
    }

    #[test]
    fn threshold_examples() {
        assert!(is_threshold(&FinitePoset::chain(4)));
        assert!(!is_threshold(&two_plus_one()));
        assert!(!is_threshold(&le2(6)));
        // On the ≤₂ window the pred order ties 0 and 1, the succ order does not.
        let pred = pred_quasiorder(&le2(6));
        assert!(pred.leq(0, 1) && pred.leq(1, 0));
        let succ = succ_quasiorder(&le2(6));
        assert!(succ.leq(0, 1) && !succ.leq(1, 0));
    }

    #[test]
    fn interval_representation_examples() {
        let iv = interval_representation(&FinitePoset::chain(3)).unwrap();
        assert!(iv.intervals.windows(2).all(|w| w[0].1 < w[1].0));
        let iv = interval_representation(&FinitePoset::antichain(3)).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert!(!iv.precedes(a, b));
            }
        }
        assert_eq!(interval_representation(&two_plus_two()), Err(Error::NotIntervalOrder));
    }

    #[test]
    fn psi_examples() {
        let c = FinitePoset::chain(3);
        let rep = psi_representation(&c, true).unwrap();
        assert_eq!(rep.threshold, vec![1, 2, 3]);
        assert_eq!(rep.reconstruct().unwrap(), c);

        let p = three_plus_one();
        let rep = psi_representation(&p, false).unwrap();
        assert!(rep.is_valid());
        assert_eq!(rep.reconstruct().unwrap(), p);
        assert_eq!(psi_representation(&p, true), Err(Error::NotSemiorder));

        let w = le2(8);
        let rep = psi_representation(&w, true).unwrap();
        assert!(rep.order_reversing && rep.is_valid());
        assert_eq!(rep.reconstruct().unwrap(), w);
        assert_eq!(psi_representation(&two_plus_two(), false), Err(Error::NotIntervalOrder));
    }

    proptest! {
        #[test]
        fn strict_order_is_below_both_quasiorders(p in arb_poset(8)) {
            let pred = pred_quasiorder(&p);
            let succ = succ_quasiorder(&p);
            prop_assert!(pred.is_reflexive_and_transitive());
            prop_assert!(succ.is_reflexive_and_transitive());
            for (x, y) in p.pairs() {
                prop_assert!(pred.leq(x, y) && !pred.leq(y, x));
                prop_assert!(succ.leq(x, y) && !succ.leq(y, x));
            }
        }

        #[test]
        fn routes_agree(p in arb_poset(8)) {
            prop_assert_eq!(interval_by_pattern(&p), interval_by_quasiorder(&p));
            prop_assert_eq!(semiorder_by_pattern(&p), semiorder_by_quasiorder(&p));
            prop_assert!(verify_recognition(&p, &is_interval_order(&p)));
            prop_assert!(verify_recognition(&p, &is_semiorder(&p)));
        }

        #[test]
        fn interval_round_trip(p in arb_interval_order(7)) {
            prop_assert!(is_interval_order(&p).passed());
            let iv = interval_representation(&p).unwrap();
            prop_assert!(iv.intervals.iter().all(|&(l, r)| l <= r && r < 2 * p.len().max(1)));
            prop_assert_eq!(iv.to_poset(), p.clone());
            let rep = psi_representation(&p, false).unwrap();
            prop_assert!(rep.is_valid());
            prop_assert_eq!(rep.reconstruct().unwrap(), p);
        }

        #[test]
        fn psi_claim_holds(thresholds in proptest::collection::vec(0usize..10, 0..10), perm_seed in any::<u64>()) {
            let n = thresholds.len();
            let t: Vec<usize> = thresholds.iter().enumerate().map(|(k, &d)| (k + 1 + d).min(n)).collect();
            let mut h: Vec<usize> = (0..n).collect();
            let mut s = perm_seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                h.swap(i, (s >> 33) as usize % (i + 1));
            }
            prop_assert_eq!(psi_relation_violation(&h, &t), None);
        }

        #[test]
        fn semiorders_are_hereditary(p in arb_interval_order(8), mask in any::<u16>()) {
            if is_semiorder(&p).passed() {
                let keep: Vec<usize> = (0..p.len()).filter(|&i| mask >> i & 1 == 1).collect();
                prop_assert!(is_semiorder(&p.induced(&keep)).passed());
            }
        }
    }

    #[test]
    fn psi_claim_rejects_nonextensive_thresholds() {
        // threshold[0] = 0 puts 0 inside its own Ψ.
        assert_eq!(psi_relation_violation(&[0, 1], &[0, 2]), Some(vec![0]));
    }
}
