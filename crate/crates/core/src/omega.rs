//! Countable posets on ℕ given by finite presentations, and certificates
//! computed from a window `[0, N)` together with the presentation's own
//! bounds.
//!
//! Every presentation is past-finite and comes with two kinds of bound for
//! each element `x`: a predecessor bound (all `y < x` lie in `[0, b]`) and a
//! complement bound (`P \ ↑x ⊆ [0, b]`). The bounds are what let a finite
//! window say something exact about the infinite order.

use std::fmt;
use std::sync::Arc;

use crate::bitset::BitSet;
use crate::certificate::{Certificate, Verdict, Witness};
use crate::error::{Error, Result};
use crate::poset::{strict_order_violation, FinitePoset};
use crate::recognition;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tail {
    /// `a_n = c`.
    Const(u64),
    /// `a_n = slope·n + offset`.
    Affine { slope: u64, offset: u64 },
}

/// The sequence `a_n`: explicit prefix, then a closed-form tail evaluated at
/// the absolute index `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacoRule {
    prefix: Vec<u64>,
    tail: Tail,
    validated: bool,
}

impl JacoRule {
    /// Accepts only positive, nondecreasing sequences.
    pub fn new(prefix: Vec<u64>, tail: Tail) -> Result<Self> {
        if let Some(i) = prefix.iter().position(|&a| a == 0) {
            return Err(Error::InvalidRule(format!("a_{i} = 0, entries must be positive")));
        }
        if let Some(i) = prefix.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::InvalidRule(format!("a_{} > a_{}", i, i + 1)));
        }
        let first_tail = match tail {
            Tail::Const(c) => c,
            Tail::Affine { slope, offset } => slope
                .checked_mul(prefix.len() as u64)
                .and_then(|v| v.checked_add(offset))
                .ok_or_else(|| Error::InvalidRule("tail overflows".into()))?,
        };
        if matches!(tail, Tail::Const(0) | Tail::Affine { offset: 0, .. }) {
            return Err(Error::InvalidRule("tail must be positive".into()));
        }
        if prefix.last().is_some_and(|&last| last > first_tail) {
            return Err(Error::InvalidRule(format!(
                "tail starts at {first_tail}, below the last prefix entry"
            )));
        }
        Ok(JacoRule {
            prefix,
            tail,
            validated: true,
        })
    }

    /// Skips validation; certificates for such rules never claim more than
    /// the window.
    pub fn new_unchecked(prefix: Vec<u64>, tail: Tail) -> Self {
        JacoRule {
            prefix,
            tail,
            validated: false,
        }
    }

    pub fn constant(c: u64) -> Result<Self> {
        Self::new(Vec::new(), Tail::Const(c))
    }

    pub fn affine(slope: u64, offset: u64) -> Result<Self> {
        Self::new(Vec::new(), Tail::Affine { slope, offset })
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    pub fn a(&self, n: usize) -> u64 {
        match (self.prefix.get(n), self.tail) {
            (Some(&a), _) => a,
            (None, Tail::Const(c)) => c,
            (None, Tail::Affine { slope, offset }) => slope.saturating_mul(n as u64).saturating_add(offset),
        }
    }

    /// `a_n + n`: everything above it is above `n`.
    pub fn reach(&self, n: usize) -> usize {
        usize::try_from(self.a(n).saturating_add(n as u64)).unwrap_or(usize::MAX)
    }

    /// `n < m` iff `m > a_n + n`.
    pub fn lt(&self, n: usize, m: usize) -> bool {
        m > self.reach(n)
    }
}

/// What the presentation knows about a set of indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    /// Contained in `[0, b]`.
    Finite(usize),
    /// Provably not bounded.
    Infinite,
    /// The presentation does not say.
    Unknown,
}

/// Order on the positions of a lexicographic ω-sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexOrder {
    Chain,
    Jaco(JacoRule),
    /// The natural chain with position `k` made incomparable to every other
    /// position.
    ChainWithIsolated(usize),
}

impl IndexOrder {
    pub fn lt(&self, i: usize, j: usize) -> bool {
        match self {
            IndexOrder::Chain => i < j,
            IndexOrder::Jaco(r) => r.lt(i, j),
            IndexOrder::ChainWithIsolated(k) => i < j && i != *k && j != *k,
        }
    }
}

/// Blocks `blocks[i mod len]` placed along an index order on ℕ, numbered
/// block-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexSumOmega {
    blocks: Vec<FinitePoset>,
    index: IndexOrder,
    offsets: Vec<usize>,
    period: usize,
}

impl LexSumOmega {
    pub fn new(blocks: Vec<FinitePoset>, index: IndexOrder) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::MalformedPresentation("no blocks".into()));
        }
        if let Some(index) = blocks.iter().position(FinitePoset::is_empty) {
            return Err(Error::EmptyBlock { index });
        }
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut period = 0;
        for b in &blocks {
            offsets.push(period);
            period += b.len();
        }
        Ok(LexSumOmega {
            blocks,
            index,
            offsets,
            period,
        })
    }

    pub fn blocks(&self) -> &[FinitePoset] {
        &self.blocks
    }

    pub fn index(&self) -> &IndexOrder {
        &self.index
    }

    /// `(position, element within block)`.
    pub fn locate(&self, e: usize) -> (usize, usize) {
        let (cycle, r) = (e / self.period, e % self.period);
        let slot = self.offsets.partition_point(|&o| o <= r) - 1;
        (cycle * self.blocks.len() + slot, r - self.offsets[slot])
    }

    fn block_end(&self, position: usize) -> usize {
        let len = self.blocks.len();
        let slot = position % len;
        (position / len) * self.period + self.offsets[slot] + self.blocks[slot].len() - 1
    }

    pub fn lt(&self, e: usize, f: usize) -> bool {
        let (i, x) = self.locate(e);
        let (j, y) = self.locate(f);
        if i == j {
            self.blocks[i % self.blocks.len()].lt(x, y)
        } else {
            self.index.lt(i, j)
        }
    }

    fn predecessor_bound(&self, e: usize) -> Bound {
        Bound::Finite(self.block_end(self.locate(e).0))
    }

    fn complement_bound(&self, e: usize) -> Bound {
        let i = self.locate(e).0;
        match &self.index {
            IndexOrder::Chain => Bound::Finite(self.block_end(i)),
            IndexOrder::Jaco(r) => Bound::Finite(self.block_end(r.reach(i))),
            IndexOrder::ChainWithIsolated(k) if i == *k => Bound::Infinite,
            IndexOrder::ChainWithIsolated(k) => Bound::Finite(self.block_end(i.max(*k))),
        }
    }
}

/// A lower presentation strengthened by finitely many extra pairs, closed
/// under transitivity.
#[derive(Debug, Clone)]
pub struct Sandwich {
    lower: OmegaPresentation,
    extras: Vec<(usize, usize)>,
    /// `reach[i]` holds the extras `j` reachable from extra `i`.
    reach: Vec<BitSet>,
}

impl Sandwich {
    pub fn lower(&self) -> &OmegaPresentation {
        &self.lower
    }

    pub fn extras(&self) -> &[(usize, usize)] {
        &self.extras
    }

    pub fn lt(&self, n: usize, m: usize) -> bool {
        if self.lower.lt(n, m) {
            return true;
        }
        let le = |a: usize, b: usize| a == b || self.lower.lt(a, b);
        self.extras.iter().enumerate().any(|(i, &(a, _))| {
            le(n, a) && self.reach[i].iter().any(|j| le(self.extras[j].1, m))
        })
    }
}

type LtFn = Arc<dyn Fn(usize, usize) -> bool + Send + Sync>;
type BoundFn = Arc<dyn Fn(usize) -> Bound + Send + Sync>;

/// An arbitrary comparability function, optionally with bounds. Without
/// bounds every certificate is window evidence only.
#[derive(Clone)]
pub struct Computable {
    pub name: String,
    lt: LtFn,
    predecessor_bound: Option<BoundFn>,
    complement_bound: Option<BoundFn>,
}

impl Computable {
    pub fn new(name: impl Into<String>, lt: impl Fn(usize, usize) -> bool + Send + Sync + 'static) -> Self {
        Computable {
            name: name.into(),
            lt: Arc::new(lt),
            predecessor_bound: None,
            complement_bound: None,
        }
    }

    pub fn with_bounds(
        mut self,
        predecessor: impl Fn(usize) -> Bound + Send + Sync + 'static,
        complement: impl Fn(usize) -> Bound + Send + Sync + 'static,
    ) -> Self {
        self.predecessor_bound = Some(Arc::new(predecessor));
        self.complement_bound = Some(Arc::new(complement));
        self
    }
}

impl fmt::Debug for Computable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Computable")
            .field("name", &self.name)
            .field("bounded", &self.complement_bound.is_some())
            .finish()
    }
}

#[derive(Debug, Clone)]
pub enum OmegaPresentation {
    /// `n < m` iff `m > a_n + n`.
    Jaco(JacoRule),
    LexSum(LexSumOmega),
    Sandwich(Box<Sandwich>),
    Computable(Computable),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Less,
    Greater,
    Equal,
    Incomparable,
}

impl OmegaPresentation {
    pub fn jaco(rule: JacoRule) -> Self {
        OmegaPresentation::Jaco(rule)
    }

    /// Adds `extras` to `lower` and closes. Rejects extras that would put
    /// some element below itself.
    pub fn sandwich(lower: OmegaPresentation, extras: Vec<(usize, usize)>) -> Result<Self> {
        let k = extras.len();
        let le = |a: usize, b: usize| a == b || lower.lt(a, b);
        // Edge i -> j when extra i's top sits below extra j's bottom.
        let mut reach: Vec<BitSet> = (0..k)
            .map(|i| BitSet::from_indices(k, (0..k).filter(|&j| le(extras[i].1, extras[j].0))))
            .collect();
        for mid in 0..k {
            for i in 0..k {
                if reach[i].contains(mid) {
                    let via = reach[mid].clone();
                    reach[i].union_with(&via);
                }
            }
        }
        if let Some(i) = (0..k).find(|&i| reach[i].contains(i)) {
            return Err(Error::MalformedPresentation(format!(
                "extra pair ({}, {}) lies on a cycle",
                extras[i].0, extras[i].1
            )));
        }
        for (i, row) in reach.iter_mut().enumerate() {
            row.insert(i);
        }
        Ok(OmegaPresentation::Sandwich(Box::new(Sandwich {
            lower,
            extras,
            reach,
        })))
    }

    pub fn lt(&self, n: usize, m: usize) -> bool {
        match self {
            OmegaPresentation::Jaco(r) => r.lt(n, m),
            OmegaPresentation::LexSum(l) => l.lt(n, m),
            OmegaPresentation::Sandwich(s) => s.lt(n, m),
            OmegaPresentation::Computable(c) => (c.lt)(n, m),
        }
    }

    pub fn comparability(&self, n: usize, m: usize) -> Comparison {
        if n == m {
            Comparison::Equal
        } else if self.lt(n, m) {
            Comparison::Less
        } else if self.lt(m, n) {
            Comparison::Greater
        } else {
            Comparison::Incomparable
        }
    }

    /// Every `y < x` lies in `[0, b]`.
    pub fn predecessor_bound(&self, x: usize) -> Bound {
        match self {
            OmegaPresentation::Jaco(_) => Bound::Finite(x),
            OmegaPresentation::LexSum(l) => l.predecessor_bound(x),
            OmegaPresentation::Sandwich(s) => {
                let mut b = match s.lower.predecessor_bound(x) {
                    Bound::Finite(b) => b,
                    other => return other,
                };
                for &(a, _) in &s.extras {
                    match s.lower.predecessor_bound(a) {
                        Bound::Finite(pa) => b = b.max(a).max(pa),
                        other => return other,
                    }
                }
                Bound::Finite(b)
            }
            OmegaPresentation::Computable(c) => c.predecessor_bound.as_ref().map_or(Bound::Unknown, |f| f(x)),
        }
    }

    /// `P \ ↑x ⊆ [0, b]`.
    pub fn complement_bound(&self, x: usize) -> Bound {
        match self {
            OmegaPresentation::Jaco(r) => Bound::Finite(r.reach(x)),
            OmegaPresentation::LexSum(l) => l.complement_bound(x),
            // The sandwich order contains the lower one, so ↑x only grows.
            OmegaPresentation::Sandwich(s) => s.lower.complement_bound(x),
            OmegaPresentation::Computable(c) => c.complement_bound.as_ref().map_or(Bound::Unknown, |f| f(x)),
        }
    }

    /// Certificates may extend to all of ℕ only for validated Jaco rules,
    /// whose closed-form tails make the threshold argument finite.
    pub fn certifies_all_omega(&self) -> bool {
        matches!(self, OmegaPresentation::Jaco(r) if r.is_validated())
    }

    /// Induced order on `[0, n)`, checked to be a strict order.
    pub fn truncate(&self, n: usize) -> Result<FinitePoset> {
        FinitePoset::from_relation(n, |a, b| self.lt(a, b))
    }
}

fn window_rows(pres: &OmegaPresentation, n: usize) -> Vec<BitSet> {
    (0..n)
        .map(|a| BitSet::from_indices(n, (0..n).filter(|&b| pres.lt(a, b))))
        .collect()
}

/// Irreflexivity and transitivity on the window. Validated Jaco rules,
/// lexicographic sums and sandwiches over them are strict orders by
/// construction and pass outright; computable ones are window-verified.
pub fn strict_order_check(pres: &OmegaPresentation, n: usize) -> Certificate {
    if let Some(w) = strict_order_violation(&window_rows(pres, n)) {
        let witness = match w.as_slice() {
            [a] => Witness::Element(*a),
            [a, b] => Witness::Pair(*a, *b),
            [a, b, c] => Witness::Triple(*a, *b, *c),
            _ => unreachable!(),
        };
        return Certificate::new(Verdict::Fail, "window-scan", witness);
    }
    fn structural(p: &OmegaPresentation) -> Option<&'static str> {
        match p {
            OmegaPresentation::Jaco(r) if r.is_validated() => Some("monotone-thresholds"),
            OmegaPresentation::LexSum(_) => Some("lexicographic-sum"),
            OmegaPresentation::Sandwich(s) => structural(&s.lower).map(|_| "acyclic-extras"),
            _ => None,
        }
    }
    match structural(pres) {
        Some(route) => Certificate::new(Verdict::Pass, route, Witness::None),
        None => Certificate::new(Verdict::VerifiedUpTo(n), "window-scan", Witness::None),
    }
}

/// Window data shared by the minimal-type, Jónsson and purity checks.
struct Window {
    poset: FinitePoset,
    /// Heights of elements whose whole down-set lies in the window.
    heights: Vec<Option<usize>>,
    /// Complement bounds, with unknown ones replaced by window evidence.
    complement: Vec<Bound>,
    evidence: bool,
}

impl Window {
    fn new(pres: &OmegaPresentation, n: usize) -> Result<Self> {
        let poset = pres.truncate(n)?;
        let mut evidence = false;
        // Without a presentation bound, trust the window below 3n/4.
        let trusted = n - n / 4;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| poset.predecessors(x).len());
        let mut heights: Vec<Option<usize>> = vec![None; n];
        for &x in &order {
            let inside = match pres.predecessor_bound(x) {
                Bound::Finite(b) => b < n,
                Bound::Infinite => false,
                Bound::Unknown => {
                    evidence = true;
                    x < trusted
                }
            };
            if !inside {
                continue;
            }
            let mut h = 0;
            let mut exact = true;
            for y in poset.predecessors(x).iter() {
                match heights[y] {
                    Some(hy) => h = h.max(hy + 1),
                    None => exact = false,
                }
            }
            if exact {
                heights[x] = Some(h);
            }
        }
        let complement = (0..n)
            .map(|x| match pres.complement_bound(x) {
                Bound::Unknown => {
                    evidence = true;
                    let last = (0..n).rev().find(|&y| y != x && !poset.lt(x, y)).unwrap_or(0);
                    if last < trusted {
                        Bound::Finite(last)
                    } else {
                        Bound::Infinite
                    }
                }
                b => b,
            })
            .collect();
        Ok(Window {
            poset,
            heights,
            complement,
            evidence,
        })
    }

    fn route(&self, exact: &'static str) -> &'static str {
        if self.evidence {
            "window-evidence"
        } else {
            exact
        }
    }

    /// First element whose complement is unbounded, with the highest window
    /// element outside its up-set.
    fn unbounded(&self) -> Option<(usize, usize)> {
        let n = self.poset.len();
        let x = (0..n).find(|&x| self.complement[x] == Bound::Infinite)?;
        let y = (0..n).rev().find(|&y| y != x && !self.poset.lt(x, y)).unwrap_or(x);
        Some((x, y))
    }

    fn verdict(&self, pres: &OmegaPresentation) -> Verdict {
        if pres.certifies_all_omega() {
            Verdict::Pass
        } else {
            Verdict::VerifiedUpTo(self.poset.len())
        }
    }

    /// Rows `(n, m(n))` for every safe level, stopping at the first unsafe
    /// one. Level `n` is safe when the complement bounds of all elements of
    /// height `<= n` stay inside the window and every element up to that
    /// bound has an exact height; then no element outside the window can
    /// have height `<= n`.
    fn witness_table(&self) -> Vec<(usize, usize)> {
        let n = self.poset.len();
        let max_height = self.heights.iter().flatten().copied().max();
        let Some(max_height) = max_height else {
            return Vec::new();
        };
        let mut by_height = vec![Vec::new(); max_height + 1];
        for (x, h) in self.heights.iter().enumerate() {
            if let Some(h) = h {
                by_height[*h].push(x);
            }
        }
        let mut dominators = BitSet::full(n);
        let mut bound = 0usize;
        let mut rows = Vec::new();
        for (level, members) in by_height.iter().enumerate() {
            if members.is_empty() {
                break;
            }
            for &z in members {
                dominators.intersect_with(self.poset.successors(z));
                match self.complement[z] {
                    Bound::Finite(b) => bound = bound.max(b),
                    _ => return rows,
                }
            }
            if bound >= n || (0..=bound).any(|y| self.heights[y].is_none()) {
                break;
            }
            let top = (0..=bound)
                .filter(|&y| !dominators.contains(y))
                .map(|y| self.heights[y].unwrap())
                .max()
                .unwrap_or(level);
            rows.push((level, top + 1));
        }
        rows
    }
}

/// Exact heights inside the window, `None` where part of the down-set may
/// lie beyond it.
pub fn window_heights(pres: &OmegaPresentation, n: usize) -> Result<Vec<Option<usize>>> {
    Ok(Window::new(pres, n)?.heights)
}

/// Condition (v) of minimal type: finite levels and, for each level `n`, an
/// `m(n)` such that everything of height `<= n` is below everything of
/// height `>= m(n)`. The table covers the levels the window can decide.
pub fn minimal_type_certify(pres: &OmegaPresentation, n: usize) -> Result<Certificate> {
    let w = Window::new(pres, n)?;
    if let Some((x, y)) = w.unbounded() {
        return Ok(Certificate::new(Verdict::Fail, w.route("bounds"), Witness::Pair(x, y)));
    }
    let rows = w.witness_table();
    Ok(Certificate::new(
        w.verdict(pres),
        w.route(if pres.certifies_all_omega() { "threshold" } else { "window" }),
        Witness::Table { name: "m".into(), rows },
    ))
}

/// Re-checks an `m(n)` table on the window: the domination holds at `m(n)`
/// and fails at `m(n) - 1` unless that is `n` itself.
pub fn verify_witness_table(pres: &OmegaPresentation, n: usize, rows: &[(usize, usize)]) -> Result<bool> {
    let p = pres.truncate(n)?;
    let h = Window::new(pres, n)?.heights;
    // Lowest height of an element not below y.
    let lowest_missing: Vec<usize> = (0..n)
        .map(|y| (0..n).filter(|&x| !p.lt(x, y)).filter_map(|x| h[x]).min().unwrap_or(usize::MAX))
        .collect();
    let dominated = |level: usize, m: usize| {
        (0..n).all(|y| !matches!(h[y], Some(hy) if hy >= m) || lowest_missing[y] > level)
    };
    Ok(rows
        .iter()
        .all(|&(level, m)| m > level && dominated(level, m) && (m == level + 1 || !dominated(level, m - 1))))
}

/// Countable Jónsson check: every `P \ ↑x` is finite. Sizes are reported
/// where the bound falls inside the window.
pub fn jonsson_countable_check(pres: &OmegaPresentation, n: usize) -> Result<Certificate> {
    let w = Window::new(pres, n)?;
    if let Some((x, _)) = w.unbounded() {
        return Ok(Certificate::new(Verdict::Fail, w.route("bounds"), Witness::Element(x)));
    }
    let sizes = (0..n)
        .filter_map(|x| match w.complement[x] {
            Bound::Finite(b) if b < n => {
                Some((x, (0..=b).filter(|&y| y != x && !w.poset.lt(x, y)).count()))
            }
            _ => None,
        })
        .collect();
    Ok(Certificate::new(w.verdict(pres), w.route("bounds"), Witness::Sizes(sizes)))
}

/// Window sizes `N/4, N/2, N` and, at each, statistics whose unbounded
/// growth would point at one of the four patterns excluded by minimal type:
/// an infinite antichain, a descending chain, a chain with a top, and a
/// chain beside a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternGrowth {
    pub windows: [usize; 3],
    /// Greedy antichain through `0`, taking the least compatible index.
    pub antichain: [usize; 3],
    /// Longest chain whose order runs against the index order.
    pub descending: [usize; 3],
    /// Largest down-set of a probe element.
    pub below: [usize; 3],
    /// Most elements incomparable to a single probe element.
    pub beside: [usize; 3],
}

impl PatternGrowth {
    /// Names of the statistics that grew at both doublings.
    pub fn evidence(&self) -> Vec<&'static str> {
        let grows = |v: &[usize; 3]| v[0] < v[1] && v[1] < v[2];
        [
            ("antichain", &self.antichain),
            ("descending-chain", &self.descending),
            ("chain-with-top", &self.below),
            ("chain-beside-point", &self.beside),
        ]
        .into_iter()
        .filter(|(_, v)| grows(v))
        .map(|(name, _)| name)
        .collect()
    }
}

/// Probes are elements whose complement bound falls in the smallest window
/// (or is infinite); with no bound at all only the first sixteenth is used.
pub fn pattern_growth(pres: &OmegaPresentation, n: usize) -> Result<PatternGrowth> {
    let windows = [n / 4, n / 2, n];
    let p = pres.truncate(n)?;
    let probes: Vec<usize> = (0..n / 4)
        .filter(|&x| match pres.complement_bound(x) {
            Bound::Finite(b) => b < n / 4,
            Bound::Infinite => true,
            Bound::Unknown => x < n / 16,
        })
        .collect();
    let mut out = PatternGrowth {
        windows,
        antichain: [0; 3],
        descending: [0; 3],
        below: [0; 3],
        beside: [0; 3],
    };
    for (k, &w) in windows.iter().enumerate() {
        let mut chosen: Vec<usize> = Vec::new();
        for y in 0..w {
            if chosen.iter().all(|&c| !p.comparable(c, y)) {
                chosen.push(y);
            }
        }
        out.antichain[k] = chosen.len();
        let mut desc = vec![1usize; w];
        for y in 0..w {
            for x in 0..y {
                if p.lt(y, x) {
                    desc[y] = desc[y].max(desc[x] + 1);
                }
            }
        }
        out.descending[k] = desc.into_iter().max().unwrap_or(0).saturating_sub(1);
        for &x in &probes {
            let below = (0..w).filter(|&y| p.lt(y, x)).count();
            let beside = (0..w).filter(|&y| y != x && !p.comparable(x, y)).count();
            out.below[k] = out.below[k].max(below);
            out.beside[k] = out.beside[k].max(beside);
        }
    }
    Ok(out)
}

/// Purity: for each `x`, the least `y` strictly above `x` with
/// `P \ ↑x ⊆ ↓y`, and the sequence `x_0 = 0`, `x_{k+1} = y(x_k)`.
pub fn purity_certify(pres: &OmegaPresentation, n: usize) -> Result<Certificate> {
    let w = Window::new(pres, n)?;
    let p = &w.poset;
    let mut rows = Vec::new();
    for x in 0..n {
        let b = match w.complement[x] {
            Bound::Finite(b) => b,
            _ => {
                let (_, culprit) = w.unbounded().unwrap();
                return Ok(Certificate::new(Verdict::Fail, w.route("bounds"), Witness::Unbounded { x, culprit }));
            }
        };
        if b >= n {
            continue;
        }
        let outside: Vec<usize> = (0..=b).filter(|&z| z != x && !p.lt(x, z)).collect();
        // Anything past every bound in play is above all of `outside`.
        let mut limit = b;
        let mut escaped = None;
        for &z in &outside {
            match w.complement[z] {
                Bound::Finite(bz) => limit = limit.max(bz),
                _ => escaped = Some(z),
            }
        }
        if let Some(culprit) = escaped {
            return Ok(Certificate::new(Verdict::Fail, w.route("bounds"), Witness::Unbounded { x, culprit }));
        }
        let limit = limit + 1;
        if limit >= n {
            continue;
        }
        let y = (x + 1..=limit)
            .find(|&y| p.lt(x, y) && outside.iter().all(|&z| p.lt(z, y)))
            .expect("the element past every bound qualifies");
        rows.push((x, y));
    }
    let mut sequence = Vec::new();
    let mut cur = 0;
    while let Ok(i) = rows.binary_search_by_key(&cur, |&(x, _)| x) {
        sequence.push(cur);
        cur = rows[i].1;
    }
    Ok(Certificate::new(
        w.verdict(pres),
        w.route("bounds"),
        Witness::Purity { rows, sequence },
    ))
}

/// Re-checks purity rows on the window: `x < y`, and every window element
/// outside `↑x` is below `y`.
pub fn verify_purity_rows(pres: &OmegaPresentation, n: usize, rows: &[(usize, usize)]) -> Result<bool> {
    let p = pres.truncate(n)?;
    Ok(rows.iter().all(|&(x, y)| {
        x < n && y < n && p.lt(x, y) && (0..n).all(|m| m == x || p.lt(x, m) || p.lt(m, y))
    }))
}

/// Sandwich conditions on the window: (c) the order refines the natural
/// order of ℕ, (b) it contains its lower order, and (a) the lower order is
/// a semiorder in which every element has something above it. A
/// presentation that is not a sandwich serves as its own lower order.
///
/// A violation of (c) is an error carrying the first offending pair.
pub fn sandwich_check(pres: &OmegaPresentation, n: usize) -> Result<Certificate> {
    let (lower, extras): (&OmegaPresentation, &[(usize, usize)]) = match pres {
        OmegaPresentation::Sandwich(s) => (&s.lower, &s.extras),
        other => (other, &[]),
    };
    let window = pres.truncate(n)?;
    let mut bad: Vec<(usize, usize)> = window.pairs().into_iter().filter(|&(a, b)| a > b).collect();
    bad.extend(extras.iter().copied().filter(|&(a, b)| a >= b));
    if let Some(&(a, b)) = bad.iter().min() {
        return Err(Error::ContainmentViolated(a, b));
    }
    let lower_window = lower.truncate(n)?;
    if !window.strengthens(&lower_window)? {
        let (a, b) = lower_window
            .pairs()
            .into_iter()
            .find(|&(a, b)| !window.lt(a, b))
            .unwrap();
        return Ok(Certificate::new(Verdict::Fail, "lower-contained", Witness::Pair(a, b)));
    }
    if !recognition::semiorder_by_quasiorder(&lower_window) {
        let cert = recognition::is_semiorder(&lower_window);
        return Ok(Certificate::new(Verdict::Fail, "lower-semiorder", cert.witness));
    }
    for x in 0..n {
        if !matches!(lower.complement_bound(x), Bound::Finite(_)) {
            return Ok(Certificate::new(Verdict::Fail, "lower-unbounded", Witness::Element(x)));
        }
    }
    Ok(Certificate::new(Verdict::VerifiedUpTo(n), "containment+semiorder", Witness::None))
}

/// Intersection of linear orders on ℕ given by the positions of the window
/// elements in each order. `displacement` bounds how far any element moves,
/// which supplies both bounds: nothing beyond `x + displacement` can be
/// below `x`, and everything beyond it is above.
pub fn intersection_presentation(positions: Vec<Vec<usize>>, displacement: usize) -> OmegaPresentation {
    let positions = Arc::new(positions);
    let p2 = Arc::clone(&positions);
    let lt = move |a: usize, b: usize| a != b && p2.iter().all(|pos| pos[a] < pos[b]);
    let c = Computable::new("intersection", lt).with_bounds(
        move |x| Bound::Finite(x + displacement),
        move |x| Bound::Finite(x + displacement),
    );
    OmegaPresentation::Computable(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn le2() -> OmegaPresentation {
        OmegaPresentation::jaco(JacoRule::constant(1).unwrap())
    }

    fn chain_of_singletons() -> OmegaPresentation {
        OmegaPresentation::LexSum(LexSumOmega::new(vec![FinitePoset::antichain(1)], IndexOrder::Chain).unwrap())
    }

    fn with_isolated(k: usize) -> OmegaPresentation {
        OmegaPresentation::LexSum(
            LexSumOmega::new(vec![FinitePoset::antichain(1)], IndexOrder::ChainWithIsolated(k)).unwrap(),
        )
    }

    #[test]
    fn rule_validation() {
        assert!(JacoRule::constant(0).is_err());
        assert!(JacoRule::new(vec![2, 1], Tail::Const(3)).is_err());
        assert!(JacoRule::new(vec![1, 5], Tail::Const(3)).is_err());
        assert!(JacoRule::new(vec![1, 2], Tail::Const(4)).is_ok());
        assert!(JacoRule::affine(0, 0).is_err());
        let r = JacoRule::new(vec![1, 2], Tail::Affine { slope: 1, offset: 1 }).unwrap();
        assert_eq!((0..5).map(|n| r.a(n)).collect::<Vec<_>>(), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn comparability_examples() {
        assert_eq!(le2().comparability(0, 2), Comparison::Less);
        assert_eq!(le2().comparability(0, 1), Comparison::Incomparable);
        assert_eq!(le2().comparability(3, 1), Comparison::Greater);
        let affine = OmegaPresentation::jaco(JacoRule::affine(1, 1).unwrap());
        assert_eq!(affine.comparability(2, 6), Comparison::Less);
        assert_eq!(affine.comparability(2, 5), Comparison::Incomparable);
    }

    #[test]
    fn truncate_examples() {
        assert_eq!(le2().truncate(4).unwrap().pairs(), vec![(0, 2), (0, 3), (1, 3)]);
        assert_eq!(le2().truncate(1).unwrap(), FinitePoset::antichain(1));
        let s = OmegaPresentation::sandwich(le2(), vec![(0, 1)]).unwrap();
        assert_eq!(s.truncate(4).unwrap().pairs(), vec![(0, 1), (0, 2), (0, 3), (1, 3)]);
    }

    #[test]
    fn sandwich_construction() {
        assert!(matches!(
            OmegaPresentation::sandwich(le2(), vec![(0, 1), (1, 0)]),
            Err(Error::MalformedPresentation(_))
        ));
        assert!(matches!(
            OmegaPresentation::sandwich(le2(), vec![(3, 0)]),
            Err(Error::MalformedPresentation(_))
        ));
        // (1, 0) closes no cycle over ≤₂ but breaks containment in ℕ.
        let s = OmegaPresentation::sandwich(le2(), vec![(1, 0)]).unwrap();
        assert_eq!(sandwich_check(&s, 20), Err(Error::ContainmentViolated(1, 0)));
    }

    #[test]
    fn strict_order_examples() {
        let c = strict_order_check(&le2(), 500);
        assert_eq!((c.verdict, c.route.as_str()), (Verdict::Pass, "monotone-thresholds"));
        assert!(strict_order_check(&chain_of_singletons(), 50).passed());
        let bad = OmegaPresentation::Computable(Computable::new("successor", |a, b| b == a + 1));
        let c = strict_order_check(&bad, 10);
        assert_eq!((c.verdict, c.witness), (Verdict::Fail, Witness::Triple(0, 1, 2)));
        let unchecked = OmegaPresentation::jaco(JacoRule::new_unchecked(vec![3, 1], Tail::Const(2)));
        assert_eq!(strict_order_check(&unchecked, 50).verdict, Verdict::VerifiedUpTo(50));
    }

    #[test]
    fn minimal_type_le2() {
        let c = minimal_type_certify(&le2(), 200).unwrap();
        assert_eq!(c.verdict, Verdict::Pass);
        let Witness::Table { rows, .. } = &c.witness else { panic!() };
        assert!(rows.len() > 90);
        assert!(rows.iter().all(|&(n, m)| m == n + 2));
        assert!(verify_witness_table(&le2(), 200, rows).unwrap());
        let h = window_heights(&le2(), 20).unwrap();
        assert!((0..20).all(|k| h[k] == Some(k / 2)));
    }

    #[test]
    fn minimal_type_chain_and_isolated() {
        let c = minimal_type_certify(&chain_of_singletons(), 50).unwrap();
        assert_eq!(c.verdict, Verdict::VerifiedUpTo(50));
        let Witness::Table { rows, .. } = &c.witness else { panic!() };
        assert!(rows.iter().all(|&(n, m)| m == n + 1));
        let c = minimal_type_certify(&with_isolated(3), 50).unwrap();
        assert_eq!((c.verdict, c.witness), (Verdict::Fail, Witness::Pair(3, 49)));
    }

    #[test]
    fn jonsson_examples() {
        let c = jonsson_countable_check(&le2(), 100).unwrap();
        assert_eq!(c.verdict, Verdict::Pass);
        let Witness::Sizes(rows) = &c.witness else { panic!() };
        assert_eq!(rows[5], (5, 6));
        let c = jonsson_countable_check(&chain_of_singletons(), 30).unwrap();
        let Witness::Sizes(rows) = &c.witness else { panic!() };
        assert!(rows.iter().all(|&(x, s)| s == x));
        let c = jonsson_countable_check(&with_isolated(2), 30).unwrap();
        assert_eq!((c.verdict, c.witness), (Verdict::Fail, Witness::Element(2)));
    }

    #[test]
    fn purity_examples() {
        let c = purity_certify(&le2(), 100).unwrap();
        assert_eq!(c.verdict, Verdict::Pass);
        let Witness::Purity { rows, sequence } = &c.witness else { panic!() };
        assert!(rows.iter().all(|&(x, y)| y == x + 3));
        assert_eq!(&sequence[..4], &[0, 3, 6, 9]);
        assert!(verify_purity_rows(&le2(), 100, rows).unwrap());

        let c = purity_certify(&chain_of_singletons(), 30).unwrap();
        let Witness::Purity { rows, .. } = &c.witness else { panic!() };
        assert!(rows.iter().all(|&(x, y)| y == x + 1));

        let c = purity_certify(&with_isolated(4), 30).unwrap();
        assert_eq!(c.verdict, Verdict::Fail);
        assert_eq!(c.witness, Witness::Unbounded { x: 0, culprit: 4 });
    }

    #[test]
    fn sandwich_examples() {
        let s = OmegaPresentation::sandwich(le2(), vec![(0, 1)]).unwrap();
        assert!(sandwich_check(&s, 60).unwrap().passed());
        assert!(minimal_type_certify(&s, 60).unwrap().passed());
        assert!(sandwich_check(&le2(), 60).unwrap().passed());
        // A chain is not a sandwich over itself failing anything.
        assert!(sandwich_check(&chain_of_singletons(), 20).unwrap().passed());
        let c = sandwich_check(&with_isolated(1), 20).unwrap();
        assert_eq!(c.verdict, Verdict::Fail);
    }

    #[test]
    fn pattern_growth_agrees_with_certificates() {
        let rules = [
            JacoRule::constant(1).unwrap(),
            JacoRule::constant(3).unwrap(),
            JacoRule::affine(1, 1).unwrap(),
            JacoRule::new(vec![1, 2], Tail::Const(4)).unwrap(),
        ];
        for r in rules {
            let pres = OmegaPresentation::jaco(r);
            assert!(pattern_growth(&pres, 400).unwrap().evidence().is_empty());
            assert!(minimal_type_certify(&pres, 400).unwrap().passed());
            assert!(jonsson_countable_check(&pres, 400).unwrap().passed());
        }
        let iso = with_isolated(3);
        assert_eq!(pattern_growth(&iso, 400).unwrap().evidence(), vec!["chain-beside-point"]);
        assert!(!minimal_type_certify(&iso, 400).unwrap().passed());
        assert!(!jonsson_countable_check(&iso, 400).unwrap().passed());
    }

    #[test]
    fn lex_sum_layout() {
        let l = LexSumOmega::new(vec![FinitePoset::antichain(2), FinitePoset::chain(3)], IndexOrder::Chain).unwrap();
        assert_eq!(l.locate(0), (0, 0));
        assert_eq!(l.locate(4), (1, 2));
        assert_eq!(l.locate(5), (2, 0));
        assert!(!l.lt(0, 1) && l.lt(2, 3) && l.lt(1, 2));
        assert_eq!(l.block_end(3), 9);
    }

    fn arb_rule() -> impl Strategy<Value = JacoRule> {
        (proptest::collection::vec(1u64..4, 0..4), 0u64..3, any::<bool>()).prop_map(|(mut prefix, extra, affine)| {
            prefix.sort();
            let last = prefix.last().copied().unwrap_or(1);
            let tail = if affine {
                Tail::Affine { slope: 1, offset: last + extra }
            } else {
                Tail::Const(last + extra)
            };
            JacoRule::new(prefix, tail).unwrap()
        })
    }

    proptest! {
        #[test]
        fn truncations_are_nested(rule in arb_rule(), m in 1usize..30) {
            let pres = OmegaPresentation::jaco(rule);
            let big = pres.truncate(40).unwrap();
            let keep: Vec<usize> = (0..m).collect();
            prop_assert_eq!(big.induced(&keep), pres.truncate(m).unwrap());
        }

        #[test]
        fn past_finiteness(rule in arb_rule(), x in 0usize..20) {
            let pres = OmegaPresentation::jaco(rule);
            let Bound::Finite(b) = pres.predecessor_bound(x) else { unreachable!() };
            let small = pres.truncate(b + 1).unwrap();
            let big = pres.truncate(b + 30).unwrap();
            prop_assert_eq!(small.predecessors(x).to_vec(), big.predecessors(x).to_vec());
        }

        #[test]
        fn jaco_checks_agree(rule in arb_rule()) {
            let pres = OmegaPresentation::jaco(rule);
            let m = minimal_type_certify(&pres, 120).unwrap();
            let j = jonsson_countable_check(&pres, 120).unwrap();
            prop_assert_eq!(m.verdict, j.verdict);
            let Witness::Table { rows, .. } = &m.witness else { unreachable!() };
            prop_assert!(verify_witness_table(&pres, 120, rows).unwrap());
            let p = purity_certify(&pres, 120).unwrap();
            let Witness::Purity { rows, .. } = &p.witness else { unreachable!() };
            prop_assert!(verify_purity_rows(&pres, 120, rows).unwrap());
        }

        #[test]
        fn sandwiches_strengthen_lower(extras in proptest::collection::vec((0usize..20, 1usize..4), 0..4)) {
            let extras: Vec<(usize, usize)> = extras.into_iter().map(|(a, d)| (a, a + d)).collect();
            let s = OmegaPresentation::sandwich(le2(), extras).unwrap();
            let w = s.truncate(30).unwrap();
            prop_assert!(w.strengthens(&le2().truncate(30).unwrap()).unwrap());
            prop_assert!(sandwich_check(&s, 30).unwrap().passed());
        }
    }
}
