//! Levels and heights, König chains, uniformity inside a window, the
//! minimal linear-extension type, autonomous subsets and antichain rank.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::bitset::BitSet;
use crate::certificate::{Certificate, Verdict, Witness};
use crate::error::{Error, Result};
use crate::poset::{ExtensionCount, FinitePoset};
use crate::Ordinal;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightProfile {
    pub heights: Vec<usize>,
    /// `levels[α]` lists the elements of height `α` in index order.
    pub levels: Vec<Vec<usize>>,
    /// Number of non-empty levels.
    pub height: usize,
}

/// Heights by repeatedly removing minimal elements.
pub fn peel_heights(p: &FinitePoset) -> Vec<usize> {
    let n = p.len();
    let mut heights = vec![usize::MAX; n];
    let mut removed = BitSet::new(n);
    let mut level = 0;
    while removed.len() < n {
        let minimal: Vec<usize> = (0..n)
            .filter(|&x| !removed.contains(x) && p.predecessors(x).is_subset(&removed))
            .collect();
        for &x in &minimal {
            heights[x] = level;
            removed.insert(x);
        }
        level += 1;
    }
    heights
}

/// Heights as the number of elements strictly below on a longest chain.
pub fn longest_chain_heights(p: &FinitePoset) -> Vec<usize> {
    let n = p.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| p.predecessors(x).len());
    let mut heights = vec![0; n];
    for &x in &order {
        heights[x] = p
            .predecessors(x)
            .iter()
            .map(|y| heights[y] + 1)
            .max()
            .unwrap_or(0);
    }
    heights
}

/// Level decomposition. Computes heights both ways and panics if they
/// differ.
pub fn levels(p: &FinitePoset) -> HeightProfile {
    let heights = peel_heights(p);
    assert_eq!(heights, longest_chain_heights(p), "height computations disagree");
    let height = heights.iter().map(|&h| h + 1).max().unwrap_or(0);
    let mut levels = vec![Vec::new(); height];
    for (x, &h) in heights.iter().enumerate() {
        levels[h].push(x);
    }
    HeightProfile {
        heights,
        levels,
        height,
    }
}

/// A chain meeting every level, bottom first: the smallest top-level
/// element, then at each step the smallest predecessor one level down.
pub fn konig_chain(p: &FinitePoset) -> Vec<usize> {
    let profile = levels(p);
    let Some(top) = profile.levels.last() else {
        return Vec::new();
    };
    let mut chain = vec![top[0]];
    for h in (0..profile.height - 1).rev() {
        let above = *chain.last().unwrap();
        let next = p
            .predecessors(above)
            .iter()
            .find(|&y| profile.heights[y] == h)
            .expect("an element of height h+1 has a predecessor of height h");
        chain.push(next);
    }
    chain.reverse();
    chain
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UniformityKind {
    Uniform,
    WeaklyUniform,
    None,
}

impl UniformityKind {
    pub fn as_str(self) -> &'static str {
        match self {
            UniformityKind::Uniform => "uniform",
            UniformityKind::WeaklyUniform => "weakly-uniform",
            UniformityKind::None => "none",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformityWitness {
    pub kind: UniformityKind,
    /// `phi[α]` for `α < boundary`. Order preserving when `kind` is
    /// `Uniform`; when `kind` is `None` it stops before `failing_level`.
    pub phi: Vec<usize>,
    pub boundary: usize,
    pub failing_level: Option<usize>,
}

fn check_boundary(profile: &HeightProfile, boundary: usize) -> Result<()> {
    if boundary + 2 > profile.height {
        return Err(Error::BoundaryTooLarge {
            boundary,
            needed: boundary + 2,
            height: profile.height,
        });
    }
    Ok(())
}

/// Least `γ` in `[α, H-2]` such that everything of height above `γ` lies
/// above all of level `α`; `H` is the window height.
fn weak_witness(p: &FinitePoset, profile: &HeightProfile, alpha: usize) -> Option<usize> {
    let level = &profile.levels[alpha];
    // Highest element that fails to dominate the level.
    let worst = (0..p.len())
        .filter(|&y| !level.iter().all(|&x| p.lt(x, y)))
        .map(|y| profile.heights[y])
        .max()
        .unwrap_or(0);
    let gamma = worst.max(alpha);
    (gamma + 2 <= profile.height).then_some(gamma)
}

/// Uniformity of the levels below `boundary`, which must leave at least two
/// levels above it. The weak witness is the pointwise least `φ`; the uniform
/// witness is its running maximum, accepted only if it never exceeds
/// `boundary`.
pub fn uniformity(p: &FinitePoset, boundary: usize) -> Result<UniformityWitness> {
    let profile = levels(p);
    check_boundary(&profile, boundary)?;
    let mut weak = Vec::with_capacity(boundary);
    for alpha in 0..boundary {
        match weak_witness(p, &profile, alpha) {
            Some(g) => weak.push(g),
            None => {
                return Ok(UniformityWitness {
                    kind: UniformityKind::None,
                    phi: weak,
                    boundary,
                    failing_level: Some(alpha),
                })
            }
        }
    }
    let running: Vec<usize> = weak
        .iter()
        .scan(0, |m, &g| {
            *m = g.max(*m);
            Some(*m)
        })
        .collect();
    let (kind, phi) = if running.iter().all(|&g| g <= boundary) {
        (UniformityKind::Uniform, running)
    } else {
        (UniformityKind::WeaklyUniform, weak)
    };
    Ok(UniformityWitness {
        kind,
        phi,
        boundary,
        failing_level: None,
    })
}

/// Checks `φ` directly against the weak condition: for `α < boundary`,
/// `h(x) = α` and `h(y) > φ(α)` imply `x < y`.
pub fn satisfies_weak(p: &FinitePoset, phi: &[usize]) -> bool {
    let h = longest_chain_heights(p);
    (0..p.len()).all(|x| {
        h[x] >= phi.len() || (0..p.len()).all(|y| h[y] <= phi[h[x]] || p.lt(x, y))
    })
}

/// Checks `φ` directly against the uniform condition: `h(x) <= α` and
/// `h(y) > φ(α)` imply `x < y`.
pub fn satisfies_uniform(p: &FinitePoset, phi: &[usize]) -> bool {
    let h = longest_chain_heights(p);
    (0..phi.len()).all(|alpha| {
        (0..p.len()).all(|x| {
            h[x] > alpha || (0..p.len()).all(|y| h[y] <= phi[alpha] || p.lt(x, y))
        })
    })
}

/// Exhaustive backtracking over extensive, order-preserving
/// `φ: [0, boundary) -> [0, boundary]` satisfying the uniform condition.
/// Independent of [`uniformity`]; returns the first one found.
pub fn search_uniform_phi(p: &FinitePoset, boundary: usize) -> Option<Vec<usize>> {
    let h = longest_chain_heights(p);
    let ok = |alpha: usize, value: usize| {
        (0..p.len()).all(|x| h[x] > alpha || (0..p.len()).all(|y| h[y] <= value || p.lt(x, y)))
    };
    fn extend(
        phi: &mut Vec<usize>,
        boundary: usize,
        ok: &dyn Fn(usize, usize) -> bool,
    ) -> bool {
        let alpha = phi.len();
        if alpha == boundary {
            return true;
        }
        let lo = phi.last().copied().unwrap_or(0).max(alpha);
        for v in lo..=boundary {
            if ok(alpha, v) {
                phi.push(v);
                if extend(phi, boundary, ok) {
                    return true;
                }
                phi.pop();
            }
        }
        false
    }
    let mut phi = Vec::new();
    extend(&mut phi, boundary, &ok).then_some(phi)
}

/// For `x` below the boundary, `P \ ↑x` stays under the top level of the
/// window. Returns the first `(x, culprit)` where it does not.
pub fn h_minimal_violation(p: &FinitePoset, boundary: usize) -> Result<Option<(usize, usize)>> {
    let profile = levels(p);
    check_boundary(&profile, boundary)?;
    let top = profile.height - 1;
    for x in (0..p.len()).filter(|&x| profile.heights[x] < boundary) {
        if let Some(&culprit) = profile.levels[top].iter().find(|&&y| y != x && !p.lt(x, y)) {
            return Ok(Some((x, culprit)));
        }
    }
    Ok(None)
}

/// First level below the boundary that no single element dominates.
pub fn unmajorized_level(p: &FinitePoset, boundary: usize) -> Result<Option<usize>> {
    let profile = levels(p);
    check_boundary(&profile, boundary)?;
    Ok((0..boundary).find(|&alpha| {
        !(0..p.len()).any(|y| profile.levels[alpha].iter().all(|&x| p.lt(x, y)))
    }))
}

/// h-minimality and majorization inside the window. The route names the
/// side that failed first.
pub fn h_minimal_check(p: &FinitePoset, boundary: usize) -> Result<Certificate> {
    if let Some((x, culprit)) = h_minimal_violation(p, boundary)? {
        return Ok(Certificate::new(
            Verdict::Fail,
            "window:h-minimal",
            Witness::Unbounded { x, culprit },
        ));
    }
    if let Some(alpha) = unmajorized_level(p, boundary)? {
        return Ok(Certificate::new(
            Verdict::Fail,
            "window:majorized",
            Witness::Element(alpha),
        ));
    }
    Ok(Certificate::new(Verdict::Pass, "window:h-minimal+majorized", Witness::None))
}

/// Height data for the minimal extension type: the height ordinal and the
/// heights of the finitely many elements at or above its limit part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredPresentation {
    pub height: Ordinal,
    pub residue: Vec<Ordinal>,
    pub levels_finite: bool,
}

impl LayeredPresentation {
    pub fn of_finite(p: &FinitePoset) -> Self {
        let profile = levels(p);
        LayeredPresentation {
            height: Ordinal::nat(profile.height as u64),
            residue: profile.heights.iter().map(|&h| Ordinal::nat(h as u64)).collect(),
            levels_finite: true,
        }
    }
}

/// `ℓ(h) + |res|`, the least order type of a linear extension.
pub fn min_extension_type(layered: &LayeredPresentation) -> Result<Ordinal> {
    if !layered.levels_finite {
        return Err(Error::LevelInfinite);
    }
    let (limit, rem) = layered.height.limit_part();
    let mut seen = vec![false; rem as usize];
    for r in &layered.residue {
        if *r < limit || *r >= layered.height {
            return Err(Error::InvalidLayering(format!(
                "residue height {r} outside [{limit}, {})",
                layered.height
            )));
        }
        let (_, k) = r.limit_part();
        seen[k as usize] = true;
    }
    if let Some(k) = seen.iter().position(|&s| !s) {
        return Err(Error::InvalidLayering(format!(
            "level {} has no residue element",
            limit.add(&Ordinal::nat(k as u64))
        )));
    }
    Ok(limit.add(&Ordinal::nat(layered.residue.len() as u64)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumReport {
    pub min_type: Ordinal,
    pub extension_count: ExtensionCount,
    pub single_type: bool,
}

/// Every linear extension of a finite poset has type `n`.
pub fn spectrum_finite(p: &FinitePoset, cap: u64) -> SpectrumReport {
    SpectrumReport {
        min_type: min_extension_type(&LayeredPresentation::of_finite(p)).expect("finite layering is valid"),
        extension_count: p.count_linear_extensions(cap),
        single_type: true,
    }
}

/// Largest element count for the exhaustive autonomous-set scan.
pub const MAX_EXHAUSTIVE_AUTONOMOUS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AutonomousMode {
    /// Tests every subset.
    Exhaustive,
    /// Grows sets by adding splitters until none remain, starting from
    /// pairs and extending found sets one element at a time.
    Fast,
}

/// No element outside `set` distinguishes two members of it.
pub fn is_autonomous(p: &FinitePoset, set: &BitSet) -> bool {
    splitter(p, set).is_none()
}

fn splitter(p: &FinitePoset, set: &BitSet) -> Option<usize> {
    let size = set.len();
    (0..p.len()).filter(|&y| !set.contains(y)).find(|&y| {
        let mut below = p.predecessors(y).clone();
        below.intersect_with(set);
        let mut above = p.successors(y).clone();
        above.intersect_with(set);
        let (b, a) = (below.len(), above.len());
        (b != 0 && b != size) || (a != 0 && a != size)
    })
}

fn autonomous_closure(p: &FinitePoset, mut set: BitSet) -> BitSet {
    while let Some(y) = splitter(p, &set) {
        set.insert(y);
    }
    set
}

/// Autonomous subsets sorted by size, then lexicographically. With
/// `proper_only` the empty set, singletons and the whole set are left out.
pub fn autonomous_subsets(
    p: &FinitePoset,
    proper_only: bool,
    mode: AutonomousMode,
) -> Result<Vec<Vec<usize>>> {
    let n = p.len();
    let mut found: Vec<Vec<usize>> = match mode {
        AutonomousMode::Exhaustive => {
            if n > MAX_EXHAUSTIVE_AUTONOMOUS {
                return Err(Error::TooLargeForExhaustive {
                    n,
                    limit: MAX_EXHAUSTIVE_AUTONOMOUS,
                });
            }
            exhaustive_autonomous(p)
        }
        AutonomousMode::Fast => {
            let mut sets: Vec<Vec<usize>> = fast_autonomous(p).into_iter().map(|s| s.to_vec()).collect();
            sets.push(Vec::new());
            sets.extend((0..n).map(|x| vec![x]));
            sets
        }
    };
    if proper_only {
        found.retain(|s| s.len() >= 2 && s.len() < n);
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    found.dedup();
    Ok(found)
}

fn exhaustive_autonomous(p: &FinitePoset) -> Vec<Vec<usize>> {
    let n = p.len();
    let mask = |row: &BitSet| row.iter().fold(0u32, |m, j| m | 1 << j);
    let pred: Vec<u32> = (0..n).map(|y| mask(p.predecessors(y))).collect();
    let succ: Vec<u32> = (0..n).map(|y| mask(p.successors(y))).collect();
    let mut out = Vec::new();
    for set in 0u32..(1u32 << n) {
        let ok = (0..n).filter(|&y| set >> y & 1 == 0).all(|y| {
            let b = pred[y] & set;
            let a = succ[y] & set;
            (b == 0 || b == set) && (a == 0 || a == set)
        });
        if ok {
            out.push((0..n).filter(|&i| set >> i & 1 == 1).collect());
        }
    }
    out
}

/// Every autonomous set with at least two elements is reached: the closure
/// of any pair inside it is contained in it, and adding a missing member and
/// re-closing stays inside it while growing.
fn fast_autonomous(p: &FinitePoset) -> BTreeSet<BitSet> {
    let n = p.len();
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut queue = VecDeque::new();
    for a in 0..n {
        for b in a + 1..n {
            let c = autonomous_closure(p, BitSet::from_indices(n, [a, b]));
            if seen.insert(c.clone()) {
                queue.push_back(c);
            }
        }
    }
    while let Some(set) = queue.pop_front() {
        for z in (0..n).filter(|&z| !set.contains(z)) {
            let mut bigger = set.clone();
            bigger.insert(z);
            let c = autonomous_closure(p, bigger);
            if seen.insert(c.clone()) {
                queue.push_back(c);
            }
        }
    }
    seen.into_iter().collect()
}

/// Levels `Q_0 .. Q_{k-1}` with `Q_0` a 2-antichain and `Q_{i+1}` the
/// subsets of `Q_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowersetTower {
    pub poset: FinitePoset,
    pub level: Vec<usize>,
    /// `Q0:0`, `Q1:{}`, `Q2:{0,2}` ... members named by index within the
    /// previous level.
    pub labels: Vec<String>,
}

pub fn powerset_tower(k: usize) -> Result<PowersetTower> {
    if k > 3 {
        return Err(Error::TowerTooTall(k));
    }
    let mut sizes: Vec<usize> = Vec::new();
    for i in 0..k {
        sizes.push(if i == 0 { 2 } else { 1 << sizes[i - 1] });
    }
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, &s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();
    let total: usize = sizes.iter().sum();
    let mut level = Vec::with_capacity(total);
    let mut labels = Vec::with_capacity(total);
    for (i, &s) in sizes.iter().enumerate() {
        for code in 0..s {
            level.push(i);
            labels.push(if i == 0 {
                format!("Q0:{code}")
            } else {
                let members: Vec<String> = (0..sizes[i - 1])
                    .filter(|&e| code >> e & 1 == 1)
                    .map(|e| e.to_string())
                    .collect();
                format!("Q{i}:{{{}}}", members.join(","))
            });
        }
    }
    let mut pairs = Vec::new();
    for x in 0..total {
        for y in 0..total {
            let (lx, ly) = (level[x], level[y]);
            let member = ly == lx + 1 && (y - offsets[ly]) >> (x - offsets[lx]) & 1 == 1;
            if member || lx + 2 <= ly {
                pairs.push((x, y));
            }
        }
    }
    Ok(PowersetTower {
        poset: FinitePoset::from_edges(total, &pairs, false)?,
        level,
        labels,
    })
}

/// Largest element count for [`antichain_rank`].
pub const MAX_ANTICHAIN_RANK: usize = 16;

/// Height of `∅` among antichains ordered by reverse inclusion.
pub fn antichain_rank(p: &FinitePoset) -> Result<usize> {
    let n = p.len();
    if n > MAX_ANTICHAIN_RANK {
        return Err(Error::TooLarge {
            what: "antichain rank",
            n,
            limit: MAX_ANTICHAIN_RANK,
        });
    }
    let comparable: Vec<u32> = (0..n)
        .map(|x| (0..n).filter(|&y| p.comparable(x, y)).fold(0u32, |m, y| m | 1 << y))
        .collect();
    let size = 1usize << n;
    // height[A] for antichains A, filled from larger masks down.
    let mut height = vec![0usize; size];
    for mask in (0..size).rev() {
        let m = mask as u32;
        if (0..n).any(|x| m >> x & 1 == 1 && comparable[x] & m != 1 << x) {
            continue;
        }
        height[mask] = (0..n)
            .filter(|&x| comparable[x] & m == 0)
            .map(|x| height[mask | 1 << x] + 1)
            .max()
            .unwrap_or(0);
    }
    Ok(height[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::fixtures::{chain_plus_point, le2, q_analog};
    use crate::poset::patterns::*;
    use proptest::prelude::*;

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

    fn max_antichain_brute(p: &FinitePoset) -> usize {
        let n = p.len();
        (0u32..1 << n)
            .filter(|&m| {
                (0..n).all(|x| (0..n).all(|y| m >> x & 1 == 0 || m >> y & 1 == 0 || !p.lt(x, y)))
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn levels_examples() {
        let a = levels(&FinitePoset::antichain(3));
        assert_eq!(a.heights, vec![0, 0, 0]);
        assert_eq!(a.height, 1);
        assert_eq!(levels(&two_plus_two()).levels, vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(levels(&le2(10)).heights, vec![0, 0, 1, 1, 2, 2, 3, 3, 4, 4]);
        assert_eq!(levels(&FinitePoset::empty()).height, 0);
    }

    #[test]
    fn konig_examples() {
        assert_eq!(konig_chain(&FinitePoset::chain(3)), vec![0, 1, 2]);
        assert_eq!(konig_chain(&two_plus_two()), vec![0, 1]);
        assert!(konig_chain(&FinitePoset::empty()).is_empty());
    }

    #[test]
    fn uniformity_examples() {
        let w = uniformity(&FinitePoset::chain(10), 5).unwrap();
        assert_eq!(w.kind, UniformityKind::Uniform);
        assert_eq!(w.phi, vec![0, 1, 2, 3, 4]);

        let w = uniformity(&le2(20), 8).unwrap();
        assert_eq!(w.kind, UniformityKind::Uniform);
        assert_eq!(w.phi, (1..=8).collect::<Vec<_>>());

        let q = q_analog();
        let w = uniformity(&q, 16).unwrap();
        assert_eq!(w.kind, UniformityKind::WeaklyUniform);
        assert_eq!(&w.phi[..8], &[5, 5, 5, 7, 15, 31, 6, 7]);
        assert!(satisfies_weak(&q, &w.phi));
        assert_eq!(search_uniform_phi(&q, 16), None);

        let w = uniformity(&chain_plus_point(8), 3).unwrap();
        assert_eq!(w.kind, UniformityKind::None);
        assert_eq!(w.failing_level, Some(0));

        assert!(matches!(
            uniformity(&FinitePoset::chain(4), 3),
            Err(Error::BoundaryTooLarge { boundary: 3, needed: 5, height: 4 })
        ));
    }

    #[test]
    fn h_minimal_examples() {
        assert!(h_minimal_check(&FinitePoset::chain(6), 3).unwrap().passed());
        let c = h_minimal_check(&chain_plus_point(8), 3).unwrap();
        assert_eq!(c.verdict, Verdict::Fail);
        assert_eq!(c.route, "window:h-minimal");
        assert_eq!(c.witness, Witness::Unbounded { x: 8, culprit: 7 });
        assert_eq!(unmajorized_level(&chain_plus_point(8), 3).unwrap(), Some(0));
        assert!(h_minimal_check(&le2(40), 15).unwrap().passed());
    }

    #[test]
    fn min_extension_type_examples() {
        let p = FinitePoset::antichain(5);
        assert_eq!(min_extension_type(&LayeredPresentation::of_finite(&p)).unwrap(), Ordinal::nat(5));
        let w: Ordinal = "w".parse().unwrap();
        let lp = LayeredPresentation {
            height: w.clone(),
            residue: vec![],
            levels_finite: true,
        };
        assert_eq!(min_extension_type(&lp).unwrap(), w);
        let lp = LayeredPresentation {
            height: "w+2".parse().unwrap(),
            residue: vec![w.clone(), w.clone(), "w+1".parse().unwrap()],
            levels_finite: true,
        };
        assert_eq!(min_extension_type(&lp).unwrap(), "w+3".parse().unwrap());
        let bad = LayeredPresentation {
            residue: vec![w.clone(), w.clone()],
            ..lp.clone()
        };
        assert!(matches!(min_extension_type(&bad), Err(Error::InvalidLayering(_))));
        let infinite = LayeredPresentation {
            levels_finite: false,
            ..lp
        };
        assert_eq!(min_extension_type(&infinite), Err(Error::LevelInfinite));
    }

    #[test]
    fn spectrum_examples() {
        let s = spectrum_finite(&FinitePoset::chain(4), 1000);
        assert_eq!((s.extension_count.count, s.min_type.clone()), (1, Ordinal::nat(4)));
        let s = spectrum_finite(&FinitePoset::antichain(3), 1000);
        assert_eq!(s.extension_count.count, 6);
        let s = spectrum_finite(&two_plus_two(), 1000);
        assert_eq!((s.extension_count.count, s.min_type), (6, Ordinal::nat(4)));
    }

    #[test]
    fn autonomous_examples() {
        let found = autonomous_subsets(&two_plus_two(), true, AutonomousMode::Exhaustive).unwrap();
        assert!(found.contains(&vec![0, 1]) && found.contains(&vec![2, 3]));
        let sum = FinitePoset::lexicographic_sum(
            &FinitePoset::chain(2),
            &[FinitePoset::antichain(2), FinitePoset::antichain(2)],
        )
        .unwrap();
        let found = autonomous_subsets(&sum, true, AutonomousMode::Fast).unwrap();
        assert!(found.contains(&vec![0, 1]) && found.contains(&vec![2, 3]));
        assert_eq!(
            autonomous_subsets(&FinitePoset::chain(3), true, AutonomousMode::Exhaustive).unwrap(),
            vec![vec![0, 1], vec![1, 2]]
        );
        assert!(matches!(
            autonomous_subsets(&FinitePoset::antichain(25), true, AutonomousMode::Exhaustive),
            Err(Error::TooLargeForExhaustive { .. })
        ));
    }

    #[test]
    fn powerset_tower_examples() {
        assert_eq!(powerset_tower(1).unwrap().poset, FinitePoset::antichain(2));
        let t = powerset_tower(2).unwrap();
        assert_eq!(t.poset.len(), 6);
        // Q0:0 is a member of Q1:{0} (index 3) and Q1:{0,1} (index 5).
        assert_eq!(t.labels[3], "Q1:{0}");
        assert!(t.poset.lt(0, 3) && t.poset.lt(0, 5) && !t.poset.lt(0, 4));
        assert_eq!(powerset_tower(3).unwrap().poset.len(), 22);
        assert_eq!(powerset_tower(4), Err(Error::TowerTooTall(4)));
    }

    #[test]
    fn antichain_rank_examples() {
        assert_eq!(antichain_rank(&FinitePoset::antichain(5)).unwrap(), 5);
        assert_eq!(antichain_rank(&FinitePoset::chain(4)).unwrap(), 1);
        assert_eq!(antichain_rank(&FinitePoset::empty()).unwrap(), 0);
        assert!(antichain_rank(&FinitePoset::antichain(17)).is_err());
    }

    proptest! {
        #[test]
        fn konig_chain_meets_every_level(p in arb_poset(12)) {
            let profile = levels(&p);
            let chain = konig_chain(&p);
            prop_assert_eq!(chain.len(), profile.height);
            for (i, w) in chain.windows(2).enumerate() {
                prop_assert!(p.lt(w[0], w[1]));
                prop_assert_eq!(profile.heights[w[0]], i);
            }
        }

        #[test]
        fn uniformity_is_sound(p in arb_poset(10), b in 0usize..4) {
            if let Ok(w) = uniformity(&p, b) {
                prop_assert!(w.phi.iter().enumerate().all(|(a, &f)| f >= a));
                match w.kind {
                    UniformityKind::Uniform => {
                        prop_assert!(w.phi.windows(2).all(|x| x[0] <= x[1]));
                        prop_assert!(satisfies_uniform(&p, &w.phi));
                        prop_assert!(satisfies_weak(&p, &w.phi));
                        prop_assert!(search_uniform_phi(&p, b).is_some());
                    }
                    UniformityKind::WeaklyUniform => {
                        prop_assert!(satisfies_weak(&p, &w.phi));
                        prop_assert!(search_uniform_phi(&p, b).is_none());
                    }
                    UniformityKind::None => {}
                }
                let weak = w.kind != UniformityKind::None;
                let hmin = h_minimal_violation(&p, b).unwrap().is_none();
                let maj = unmajorized_level(&p, b).unwrap().is_none();
                prop_assert_eq!(weak, hmin && maj);
            }
        }

        #[test]
        fn min_type_is_n(p in arb_poset(7)) {
            let s = spectrum_finite(&p, 10_000);
            prop_assert_eq!(s.min_type, Ordinal::nat(p.len() as u64));
        }

        #[test]
        fn autonomous_modes_agree(p in arb_poset(9)) {
            let ex = autonomous_subsets(&p, false, AutonomousMode::Exhaustive).unwrap();
            let fast = autonomous_subsets(&p, false, AutonomousMode::Fast).unwrap();
            for s in &ex {
                prop_assert!(is_autonomous(&p, &BitSet::from_indices(p.len(), s.iter().copied())));
            }
            prop_assert!(ex.contains(&(0..p.len()).collect()));
            prop_assert_eq!(ex, fast);
        }

        #[test]
        fn antichain_rank_is_width(p in arb_poset(10)) {
            prop_assert_eq!(antichain_rank(&p).unwrap(), max_antichain_brute(&p));
        }
    }
}
