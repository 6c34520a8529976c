//! Finite strict orders on `{0, .., n-1}` stored as dense bit tables.
//!
//! Every [`FinitePoset`] is irreflexive, transitive and antisymmetric by
//! construction; the only ways in are [`FinitePoset::from_edges`] and
//! [`FinitePoset::from_relation`], both of which check.

use std::collections::HashMap;
use std::fmt;
use std::ops::Add;

use num_traits::{One, Zero};

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Largest element count accepted by [`FinitePoset::from_edges`].
pub const DEFAULT_MAX_ELEMENTS: usize = 4096;
/// Default cap on enumerated linear extensions.
pub const DEFAULT_EXTENSION_CAP: u64 = 1_000_000;
/// Largest pattern [`FinitePoset::embeds_pattern`] searches for.
pub const MAX_PATTERN_SIZE: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    n: usize,
    succ: Vec<BitSet>,
    pred: Vec<BitSet>,
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinitePoset(n={}, lt={:?})", self.n, self.pairs())
    }
}

/// An induced embedding of a pattern poset into a host: `map[i]` is the host
/// element playing pattern element `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    /// Re-checks injectivity and that comparabilities and incomparabilities
    /// are both preserved.
    pub fn verify(&self, host: &FinitePoset, pattern: &FinitePoset) -> bool {
        if self.map.len() != pattern.len() || self.map.iter().any(|&h| h >= host.len()) {
            return false;
        }
        let mut seen = BitSet::new(host.len());
        if !self.map.iter().all(|&h| seen.insert(h)) {
            return false;
        }
        (0..pattern.len()).all(|i| {
            (0..pattern.len())
                .all(|j| pattern.lt(i, j) == host.lt(self.map[i], self.map[j]))
        })
    }
}

/// Outcome of a capped linear-extension count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtensionCount {
    pub count: u64,
    pub truncated: bool,
}

impl fmt::Display for ExtensionCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.truncated {
            write!(f, ">={}", self.count)
        } else {
            write!(f, "{}", self.count)
        }
    }
}

impl FinitePoset {
    pub fn empty() -> Self {
        Self::antichain(0)
    }

    pub fn antichain(n: usize) -> Self {
        FinitePoset {
            n,
            succ: vec![BitSet::new(n); n],
            pred: vec![BitSet::new(n); n],
        }
    }

    /// The chain `0 < 1 < .. < n-1`.
    pub fn chain(n: usize) -> Self {
        Self::from_succ_rows((0..n).map(|i| BitSet::from_indices(n, i + 1..n)).collect())
    }

    /// Builds the strict order generated by `pairs` (`(i, j)` meaning `i < j`).
    ///
    /// With `closed` set the pairs must already be transitive; they are
    /// checked rather than trusted.
    pub fn from_edges(n: usize, pairs: &[(usize, usize)], closed: bool) -> Result<Self> {
        Self::from_edges_with_limit(n, pairs, closed, DEFAULT_MAX_ELEMENTS)
    }

    pub fn from_edges_with_limit(
        n: usize,
        pairs: &[(usize, usize)],
        closed: bool,
        limit: usize,
    ) -> Result<Self> {
        if n > limit {
            return Err(Error::TooLarge {
                what: "poset",
                n,
                limit,
            });
        }
        let mut direct = vec![BitSet::new(n); n];
        for &(i, j) in pairs {
            for index in [i, j] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, n });
                }
            }
            if i == j {
                return Err(Error::CycleDetected { element: i });
            }
            direct[i].insert(j);
        }
        let order = topological_order(n, &direct)?;
        let mut succ = vec![BitSet::new(n); n];
        for &v in order.iter().rev() {
            let mut row = direct[v].clone();
            for s in direct[v].iter() {
                row.union_with(&succ[s]);
            }
            succ[v] = row;
        }
        if closed && succ != direct {
            for i in 0..n {
                for j in direct[i].iter() {
                    if let Some(k) = direct[j].iter().find(|&k| !direct[i].contains(k)) {
                        return Err(Error::NotTransitive(i, j, k));
                    }
                }
            }
        }
        Ok(Self::from_succ_rows(succ))
    }

    /// Builds a poset from a relation predicate, checking that it is a strict
    /// order. On failure the error carries a witness: `[i]` for `i < i`,
    /// `[i, j]` for a symmetric pair, `[i, j, k]` for a transitivity gap.
    pub fn from_relation(n: usize, lt: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let succ: Vec<BitSet> = (0..n)
            .map(|i| BitSet::from_indices(n, (0..n).filter(|&j| lt(i, j))))
            .collect();
        if let Some(w) = strict_order_violation(&succ) {
            return Err(Error::NotStrictOrder(w));
        }
        Ok(Self::from_succ_rows(succ))
    }

    /// `order` lists the elements from bottom to top.
    pub fn from_linear_order(order: &[usize]) -> Result<Self> {
        let n = order.len();
        let mut seen = BitSet::new(n);
        for &e in order {
            if e >= n {
                return Err(Error::IndexOutOfRange { index: e, n });
            }
            if !seen.insert(e) {
                return Err(Error::CycleDetected { element: e });
            }
        }
        let mut succ = vec![BitSet::new(n); n];
        for (p, &e) in order.iter().enumerate() {
            for &f in &order[p + 1..] {
                succ[e].insert(f);
            }
        }
        Ok(Self::from_succ_rows(succ))
    }

    fn from_succ_rows(succ: Vec<BitSet>) -> Self {
        let n = succ.len();
        let mut pred = vec![BitSet::new(n); n];
        for (i, row) in succ.iter().enumerate() {
            for j in row.iter() {
                pred[j].insert(i);
            }
        }
        FinitePoset { n, succ, pred }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.succ[i].contains(j)
    }

    #[inline]
    pub fn le(&self, i: usize, j: usize) -> bool {
        i == j || self.lt(i, j)
    }

    #[inline]
    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.le(i, j) || self.lt(j, i)
    }

    /// Strict upper set of `i`.
    pub fn successors(&self, i: usize) -> &BitSet {
        &self.succ[i]
    }

    /// Strict lower set of `i`.
    pub fn predecessors(&self, i: usize) -> &BitSet {
        &self.pred[i]
    }

    /// All pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| self.succ[i].iter().map(move |j| (i, j)))
            .collect()
    }

    pub fn is_chain(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.comparable(i, j)))
    }

    pub fn is_antichain(&self) -> bool {
        self.succ.iter().all(BitSet::is_empty)
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.pred[i].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.succ[i].is_empty()).collect()
    }

    /// Cover pairs of the Hasse diagram, lexicographically ordered.
    pub fn transitive_reduction(&self) -> Vec<(usize, usize)> {
        let mut covers = Vec::new();
        for i in 0..self.n {
            let mut row = self.succ[i].clone();
            for k in self.succ[i].iter() {
                row.difference_with(&self.succ[k]);
            }
            covers.extend(row.iter().map(|j| (i, j)));
        }
        covers
    }

    /// `↓A`: every element below or equal to some member of `elements`.
    pub fn down_set<I: IntoIterator<Item = usize>>(&self, elements: I) -> BitSet {
        let mut out = BitSet::new(self.n);
        for a in elements {
            out.insert(a);
            out.union_with(&self.pred[a]);
        }
        out
    }

    /// `↑A`.
    pub fn up_set<I: IntoIterator<Item = usize>>(&self, elements: I) -> BitSet {
        let mut out = BitSet::new(self.n);
        for a in elements {
            out.insert(a);
            out.union_with(&self.succ[a]);
        }
        out
    }

    pub fn is_initial_segment(&self, set: &BitSet) -> bool {
        set.iter().all(|a| self.pred[a].is_subset(set))
    }

    pub fn is_final_segment(&self, set: &BitSet) -> bool {
        set.iter().all(|a| self.succ[a].is_subset(set))
    }

    /// Lazily enumerates linear extensions as permutations (bottom element
    /// first) in lexicographic order.
    pub fn linear_extensions(&self) -> LinearExtensions<'_> {
        LinearExtensions::new(self)
    }

    /// Counts linear extensions by enumeration, stopping after `cap`.
    pub fn count_linear_extensions(&self, cap: u64) -> ExtensionCount {
        let mut count = 0u64;
        for _ in self.linear_extensions() {
            if count == cap {
                return ExtensionCount {
                    count,
                    truncated: true,
                };
            }
            count += 1;
        }
        ExtensionCount {
            count,
            truncated: false,
        }
    }

    /// Exact linear-extension count by dynamic programming over initial
    /// segments, in any counter type. Supports at most 64 elements.
    pub fn extension_count_exact<C>(&self) -> Result<C>
    where
        C: Clone + Zero + One + Add<Output = C>,
    {
        if self.n > 64 {
            return Err(Error::TooLarge {
                what: "exact extension count",
                n: self.n,
                limit: 64,
            });
        }
        let pred: Vec<u64> = self
            .pred
            .iter()
            .map(|row| row.iter().fold(0u64, |m, j| m | 1 << j))
            .collect();
        let full = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        let mut memo: HashMap<u64, C> = HashMap::new();
        Ok(count_from(full, 0, &pred, &mut memo))
    }

    /// Induced embedding of `pattern` into `self`, the first one in
    /// lexicographic order of host images.
    pub fn embeds_pattern(&self, pattern: &FinitePoset) -> Result<Option<Embedding>> {
        if pattern.len() > MAX_PATTERN_SIZE {
            return Err(Error::PatternTooLarge {
                n: pattern.len(),
                limit: MAX_PATTERN_SIZE,
            });
        }
        let mut map = Vec::with_capacity(pattern.len());
        let mut used = BitSet::new(self.n);
        Ok(self
            .extend_embedding(pattern, &mut map, &mut used)
            .then_some(Embedding { map }))
    }

    fn extend_embedding(
        &self,
        pattern: &FinitePoset,
        map: &mut Vec<usize>,
        used: &mut BitSet,
    ) -> bool {
        let i = map.len();
        if i == pattern.len() {
            return true;
        }
        for h in 0..self.n {
            if used.contains(h) {
                continue;
            }
            let fits = map.iter().enumerate().all(|(j, &hj)| {
                self.lt(hj, h) == pattern.lt(j, i) && self.lt(h, hj) == pattern.lt(i, j)
            });
            if fits {
                map.push(h);
                used.insert(h);
                if self.extend_embedding(pattern, map, used) {
                    return true;
                }
                used.remove(h);
                map.pop();
            }
        }
        false
    }

    /// Lexicographic sum of `blocks` along `index`, numbered block-major.
    pub fn lexicographic_sum(index: &FinitePoset, blocks: &[FinitePoset]) -> Result<Self> {
        if blocks.len() != index.len() {
            return Err(Error::ArityMismatch {
                expected: index.len(),
                got: blocks.len(),
            });
        }
        if let Some(index) = blocks.iter().position(FinitePoset::is_empty) {
            return Err(Error::EmptyBlock { index });
        }
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut total = 0;
        for b in blocks {
            offsets.push(total);
            total += b.len();
        }
        let mut succ = vec![BitSet::new(total); total];
        for (a, block) in blocks.iter().enumerate() {
            for x in 0..block.len() {
                let row = &mut succ[offsets[a] + x];
                for y in block.successors(x).iter() {
                    row.insert(offsets[a] + y);
                }
                for b in index.successors(a).iter() {
                    for y in 0..blocks[b].len() {
                        row.insert(offsets[b] + y);
                    }
                }
            }
        }
        Ok(Self::from_succ_rows(succ))
    }

    /// Disjoint union: `b`'s elements are renumbered after `a`'s, with no
    /// comparabilities across.
    pub fn disjoint_sum(a: &FinitePoset, b: &FinitePoset) -> Self {
        let n = a.len() + b.len();
        let mut succ = vec![BitSet::new(n); n];
        for (i, j) in a.pairs() {
            succ[i].insert(j);
        }
        for (i, j) in b.pairs() {
            succ[a.len() + i].insert(a.len() + j);
        }
        Self::from_succ_rows(succ)
    }

    /// True iff `self` contains every comparability of `weaker`.
    pub fn strengthens(&self, weaker: &FinitePoset) -> Result<bool> {
        if self.n != weaker.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: weaker.n,
            });
        }
        Ok((0..self.n).all(|i| weaker.succ[i].is_subset(&self.succ[i])))
    }

    pub fn intersect_orders(orders: &[FinitePoset]) -> Result<Self> {
        let first = orders.first().ok_or(Error::ArityMismatch {
            expected: 1,
            got: 0,
        })?;
        let mut succ = first.succ.clone();
        for o in &orders[1..] {
            if o.n != first.n {
                return Err(Error::SizeMismatch {
                    left: first.n,
                    right: o.n,
                });
            }
            for (row, other) in succ.iter_mut().zip(&o.succ) {
                row.intersect_with(other);
            }
        }
        Ok(Self::from_succ_rows(succ))
    }

    /// Searches for `k` linear extensions whose intersection is exactly this
    /// order. Each returned order lists elements bottom to top.
    ///
    /// Works by distributing the critical pairs over `k` strengthenings;
    /// exhaustive for `n <= 10`, `k <= 3`.
    pub fn realizer_search(&self, k: usize) -> Result<Option<Vec<Vec<usize>>>> {
        if self.n > 10 || k == 0 || k > 3 {
            return Err(Error::SearchBoundExceeded { n: self.n, k });
        }
        let base: Vec<u16> = self
            .succ
            .iter()
            .map(|row| row.iter().fold(0u16, |m, j| m | 1 << j))
            .collect();
        let critical = self.critical_pairs();
        let mut classes = vec![base; k];
        if !assign_critical(&critical, 0, &mut classes, 0) {
            return Ok(None);
        }
        let realizer: Vec<Vec<usize>> = classes.iter().map(|c| first_topological(c)).collect();
        debug_assert!({
            let orders: Vec<FinitePoset> = realizer
                .iter()
                .map(|o| FinitePoset::from_linear_order(o).unwrap())
                .collect();
            FinitePoset::intersect_orders(&orders).unwrap() == *self
        });
        Ok(Some(realizer))
    }

    /// Ordered incomparable pairs `(x, y)` with `↓x ⊆ ↓y` and `↑y ⊆ ↑x`
    /// (strict sets). A family of linear extensions is a realizer iff each
    /// such pair has `y` below `x` in one of them.
    pub fn critical_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in 0..self.n {
                if x != y
                    && !self.comparable(x, y)
                    && self.pred[x].is_subset(&self.pred[y])
                    && self.succ[y].is_subset(&self.succ[x])
                {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn dual(&self) -> Self {
        FinitePoset {
            n: self.n,
            succ: self.pred.clone(),
            pred: self.succ.clone(),
        }
    }

    /// Sub-poset induced on `elements`, renumbered in the given order.
    pub fn induced(&self, elements: &[usize]) -> Self {
        let m = elements.len();
        let succ = elements
            .iter()
            .map(|&a| {
                BitSet::from_indices(
                    m,
                    elements
                        .iter()
                        .enumerate()
                        .filter(|&(_, &b)| self.lt(a, b))
                        .map(|(j, _)| j),
                )
            })
            .collect();
        Self::from_succ_rows(succ)
    }

    /// Renames element `i` to `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut succ = vec![BitSet::new(self.n); self.n];
        for (i, j) in self.pairs() {
            succ[perm[i]].insert(perm[j]);
        }
        Self::from_succ_rows(succ)
    }

    /// Hasse diagram as a DOT digraph, edges pointing from lower to upper
    /// cover.
    pub fn to_dot(&self, name: &str) -> String {
        self.to_dot_labeled(name, &[])
    }

    /// Like [`Self::to_dot`], with `labels[i]` attached to node `i` when
    /// present.
    pub fn to_dot_labeled(&self, name: &str, labels: &[String]) -> String {
        let mut out = format!("digraph {name} {{\n");
        for i in 0..self.n {
            match labels.get(i) {
                Some(l) => out.push_str(&format!("  {i} [label={l:?}];\n")),
                None => out.push_str(&format!("  {i};\n")),
            }
        }
        for (i, j) in self.transitive_reduction() {
            out.push_str(&format!("  {i} -> {j};\n"));
        }
        out.push_str("}\n");
        out
    }
}

fn topological_order(n: usize, direct: &[BitSet]) -> Result<Vec<usize>> {
    let mut indegree = vec![0usize; n];
    for row in direct {
        for j in row.iter() {
            indegree[j] += 1;
        }
    }
    let mut ready: Vec<usize> = (0..n).rev().filter(|&v| indegree[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop() {
        order.push(v);
        for j in direct[v].iter() {
            indegree[j] -= 1;
            if indegree[j] == 0 {
                ready.push(j);
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }
    // Walk backwards through unprocessed vertices until one repeats.
    let mut preds = vec![Vec::new(); n];
    for (i, row) in direct.iter().enumerate() {
        for j in row.iter() {
            preds[j].push(i);
        }
    }
    let mut v = (0..n).find(|&v| indegree[v] > 0).expect("cycle exists");
    let mut seen = BitSet::new(n);
    while seen.insert(v) {
        v = *preds[v]
            .iter()
            .find(|&&p| indegree[p] > 0)
            .expect("unprocessed vertex has an unprocessed predecessor");
    }
    Err(Error::CycleDetected { element: v })
}

/// First witness against irreflexivity, antisymmetry or transitivity.
pub(crate) fn strict_order_violation(succ: &[BitSet]) -> Option<Vec<usize>> {
    for (i, row) in succ.iter().enumerate() {
        if row.contains(i) {
            return Some(vec![i]);
        }
    }
    for (i, row) in succ.iter().enumerate() {
        for j in row.iter() {
            if succ[j].contains(i) {
                return Some(vec![i, j]);
            }
            if !succ[j].is_subset(row) {
                let k = succ[j].iter().find(|&k| !row.contains(k)).unwrap();
                return Some(vec![i, j, k]);
            }
        }
    }
    None
}

fn count_from<C>(remaining: u64, placed: u64, pred: &[u64], memo: &mut HashMap<u64, C>) -> C
where
    C: Clone + Zero + One + Add<Output = C>,
{
    if remaining == 0 {
        return C::one();
    }
    if let Some(c) = memo.get(&remaining) {
        return c.clone();
    }
    let mut total = C::zero();
    let mut rest = remaining;
    while rest != 0 {
        let x = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if pred[x] & !placed == 0 {
            total = total + count_from(remaining & !(1 << x), placed | 1 << x, pred, memo);
        }
    }
    memo.insert(remaining, total.clone());
    total
}

fn assign_critical(critical: &[(usize, usize)], idx: usize, classes: &mut [Vec<u16>], used: usize) -> bool {
    let Some(&(x, y)) = critical.get(idx) else {
        return true;
    };
    if classes.iter().any(|c| c[y] >> x & 1 == 1) {
        return assign_critical(critical, idx + 1, classes, used);
    }
    // Classes beyond the first unused one are interchangeable.
    let tries = (used + 1).min(classes.len());
    for c in 0..tries {
        if classes[c][x] >> y & 1 == 1 {
            continue;
        }
        let saved = classes[c].clone();
        add_closed(&mut classes[c], y, x);
        if assign_critical(critical, idx + 1, classes, used.max(c + 1)) {
            return true;
        }
        classes[c] = saved;
    }
    false
}

/// Adds `a < b` to a closed relation and re-closes it.
fn add_closed(rel: &mut [u16], a: usize, b: usize) {
    let above_b = rel[b] | 1 << b;
    for u in 0..rel.len() {
        if u == a || rel[u] >> a & 1 == 1 {
            rel[u] |= above_b;
        }
    }
}

fn first_topological(rel: &[u16]) -> Vec<usize> {
    let n = rel.len();
    let mut placed = 0u16;
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let next = (0..n)
            .find(|&v| placed >> v & 1 == 0 && (0..n).all(|u| rel[u] >> v & 1 == 0 || placed >> u & 1 == 1))
            .expect("relation is acyclic");
        placed |= 1 << next;
        out.push(next);
    }
    out
}

/// Lexicographic enumeration of linear extensions; see
/// [`FinitePoset::linear_extensions`].
pub struct LinearExtensions<'a> {
    poset: &'a FinitePoset,
    prefix: Vec<usize>,
    cursor: Vec<usize>,
    waiting: Vec<usize>,
    placed: BitSet,
    done: bool,
}

impl<'a> LinearExtensions<'a> {
    fn new(poset: &'a FinitePoset) -> Self {
        let n = poset.len();
        LinearExtensions {
            poset,
            prefix: Vec::with_capacity(n),
            cursor: vec![0; n + 1],
            waiting: (0..n).map(|i| poset.predecessors(i).len()).collect(),
            placed: BitSet::new(n),
            done: false,
        }
    }

    fn place(&mut self, c: usize) {
        let d = self.prefix.len();
        self.cursor[d] = c + 1;
        self.cursor[d + 1] = 0;
        self.prefix.push(c);
        self.placed.insert(c);
        for s in self.poset.successors(c).iter() {
            self.waiting[s] -= 1;
        }
    }

    fn unplace(&mut self) {
        let c = self.prefix.pop().expect("non-empty prefix");
        self.placed.remove(c);
        for s in self.poset.successors(c).iter() {
            self.waiting[s] += 1;
        }
    }
}

impl Iterator for LinearExtensions<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let n = self.poset.len();
        if self.done {
            return None;
        }
        if n == 0 {
            self.done = true;
            return Some(Vec::new());
        }
        loop {
            let d = self.prefix.len();
            if d == n {
                let out = self.prefix.clone();
                self.unplace();
                return Some(out);
            }
            let next = (self.cursor[d]..n).find(|&c| !self.placed.contains(c) && self.waiting[c] == 0);
            match next {
                Some(c) => self.place(c),
                None if d == 0 => {
                    self.done = true;
                    return None;
                }
                None => self.unplace(),
            }
        }
    }
}

/// Small named posets used as forbidden patterns and test fixtures.
pub mod patterns {
    use super::FinitePoset;

    /// `0 < 1`, `2 < 3`.
    pub fn two_plus_two() -> FinitePoset {
        FinitePoset::from_edges(4, &[(0, 1), (2, 3)], false).unwrap()
    }

    /// `0 < 1 < 2`, `3` isolated.
    pub fn three_plus_one() -> FinitePoset {
        FinitePoset::from_edges(4, &[(0, 1), (1, 2)], false).unwrap()
    }

    /// `0 < 1`, `2` isolated.
    pub fn two_plus_one() -> FinitePoset {
        FinitePoset::from_edges(3, &[(0, 1)], false).unwrap()
    }
}
