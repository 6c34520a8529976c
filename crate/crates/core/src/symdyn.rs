//! Substitution words, recurrence estimates and factor posets.
//!
//! Words are ASCII strings. A factor poset orders the distinct factors of a
//! long prefix by "is a proper contiguous block of"; its level `k - 1` is
//! the set of factors of length `k`.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::certificate::{Certificate, Verdict, Witness};
use crate::error::{Error, Result};
use crate::poset::FinitePoset;

/// Prefixes shorter than this multiple of the longest factor length are
/// rejected by the recurrence estimates.
pub const PREFIX_FACTOR: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordSystem {
    /// Fixed point of `rules` starting from `seed`.
    Substitution { rules: BTreeMap<char, String>, seed: char },
    /// `prefix` followed by `period` repeated forever.
    Literal { prefix: String, period: String },
}

impl WordSystem {
    pub fn substitution(rules: &[(char, &str)], seed: char) -> Result<Self> {
        let rules: BTreeMap<char, String> = rules.iter().map(|&(c, w)| (c, w.to_string())).collect();
        for (c, w) in &rules {
            if !c.is_ascii() || !w.is_ascii() {
                return Err(Error::InvalidRule(format!("rule for '{c}' is not ASCII")));
            }
            if let Some(missing) = w.chars().find(|s| !rules.contains_key(s)) {
                return Err(Error::InvalidRule(format!("symbol '{missing}' has no rule")));
            }
        }
        if !rules.contains_key(&seed) {
            return Err(Error::InvalidRule(format!("seed '{seed}' has no rule")));
        }
        Ok(WordSystem::Substitution { rules, seed })
    }

    pub fn literal(prefix: &str, period: &str) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidRule("period must be non-empty".into()));
        }
        if !prefix.is_ascii() || !period.is_ascii() {
            return Err(Error::InvalidRule("literal word is not ASCII".into()));
        }
        Ok(WordSystem::Literal {
            prefix: prefix.into(),
            period: period.into(),
        })
    }

    pub fn fibonacci() -> Self {
        Self::substitution(&[('0', "01"), ('1', "0")], '0').unwrap()
    }

    pub fn thue_morse() -> Self {
        Self::substitution(&[('0', "01"), ('1', "10")], '0').unwrap()
    }

    /// Length-`len` prefix of the word.
    pub fn generate(&self, len: usize) -> Result<String> {
        match self {
            WordSystem::Literal { prefix, period } => {
                Ok(prefix.chars().chain(period.chars().cycle()).take(len).collect())
            }
            WordSystem::Substitution { rules, seed } => {
                let image = &rules[seed];
                if !image.starts_with(*seed) || image.len() < 2 {
                    return Err(Error::NotProlongable(*seed));
                }
                let mut word = seed.to_string();
                while word.len() < len {
                    let mut next = String::with_capacity(len);
                    for c in word.chars() {
                        next.push_str(&rules[&c]);
                        if next.len() >= len {
                            break;
                        }
                    }
                    if next.len() <= word.len() {
                        return Err(Error::NotProlongable(*seed));
                    }
                    word = next;
                }
                word.truncate(len);
                Ok(word)
            }
        }
    }
}

/// Distinct factors of lengths `1..=maxlen`, sorted by length then
/// lexicographically.
pub fn factors(word: &str, maxlen: usize) -> Vec<String> {
    let mut set: HashSet<&str> = HashSet::new();
    for len in 1..=maxlen.min(word.len()) {
        for start in 0..=word.len() - len {
            set.insert(&word[start..start + len]);
        }
    }
    let mut out: Vec<String> = set.into_iter().map(str::to_string).collect();
    sort_factors(&mut out);
    out
}

fn sort_factors(v: &mut [String]) {
    v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
}

/// Start positions of every factor of length `len`.
fn occurrences(word: &str, len: usize) -> HashMap<&str, Vec<usize>> {
    let mut map: HashMap<&str, Vec<usize>> = HashMap::new();
    if len <= word.len() {
        for start in 0..=word.len() - len {
            map.entry(&word[start..start + len]).or_default().push(start);
        }
    }
    map
}

/// Least `R` such that every length-`R` window of `word` contains an
/// occurrence starting at one of `positions` (each occurrence has length
/// `len`).
fn window_size(word_len: usize, len: usize, positions: &[usize]) -> usize {
    let first = positions[0] + len;
    let gap = positions
        .windows(2)
        .map(|w| w[1] - w[0] + len - 1)
        .max()
        .unwrap_or(0);
    let last = word_len - positions[positions.len() - 1];
    first.max(gap).max(last)
}

/// Recurrence window for factors of exactly `len` within `word`.
fn recurrence_at(word: &str, len: usize) -> usize {
    occurrences(word, len)
        .values()
        .map(|pos| window_size(word.len(), len, pos))
        .max()
        .unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recurrence {
    Bounded(usize),
    /// The window size grew at every prefix doubling; values are for
    /// prefixes of length `L/8, L/4, L/2, L`.
    Unbounded { observed: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceProfile {
    /// Entry `i` is for factor length `i + 1`.
    pub values: Vec<Recurrence>,
}

impl RecurrenceProfile {
    pub fn get(&self, len: usize) -> Option<&Recurrence> {
        self.values.get(len.checked_sub(1)?)
    }
}

fn check_prefix(length: usize, maxlen: usize) -> Result<()> {
    let required = PREFIX_FACTOR * maxlen;
    if length < required {
        return Err(Error::PrefixTooShort { length, required });
    }
    Ok(())
}

/// Empirical `R(ℓ)` for `ℓ = 1..=maxlen`: the least window size such that
/// every window of the prefix contains every factor of length `ℓ`.
pub fn recurrence_profile(word: &str, maxlen: usize) -> Result<RecurrenceProfile> {
    check_prefix(word.len(), maxlen)?;
    let values = (1..=maxlen)
        .map(|len| {
            let observed: Vec<usize> = [8, 4, 2, 1]
                .iter()
                .map(|d| recurrence_at(&word[..word.len() / d], len))
                .collect();
            if observed.windows(2).all(|w| w[0] < w[1]) {
                Recurrence::Unbounded { observed }
            } else {
                Recurrence::Bounded(observed[3])
            }
        })
        .collect();
    Ok(RecurrenceProfile { values })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorPoset {
    /// Factors sorted by length then lexicographically; element `i` of
    /// `poset` is `words[i]`.
    pub words: Vec<String>,
    pub poset: FinitePoset,
    /// The prefix the factors were read from, when known.
    pub source: Option<String>,
}

impl FactorPoset {
    pub fn from_prefix(prefix: &str, maxlen: usize) -> Result<Self> {
        let mut fp = factor_poset(&factors(prefix, maxlen))?;
        fp.source = Some(prefix.to_string());
        Ok(fp)
    }

    pub fn max_len(&self) -> usize {
        self.words.last().map_or(0, String::len)
    }

    pub fn to_dot(&self, name: &str) -> String {
        self.poset.to_dot_labeled(name, &self.words)
    }
}

/// Orders a factor-closed set of words by the proper factor relation.
pub fn factor_poset(words: &[String]) -> Result<FactorPoset> {
    let mut words = words.to_vec();
    sort_factors(&mut words);
    words.dedup();
    if words.iter().any(String::is_empty) {
        return Err(Error::NotFactorClosed(String::new()));
    }
    let known: HashSet<&str> = words.iter().map(String::as_str).collect();
    for w in &words {
        if w.len() >= 2 {
            for part in [&w[1..], &w[..w.len() - 1]] {
                if !known.contains(part) {
                    return Err(Error::NotFactorClosed(part.to_string()));
                }
            }
        }
    }
    let poset = FinitePoset::from_relation(words.len(), |a, b| {
        words[a].len() < words[b].len() && words[b].contains(words[a].as_str())
    })?;
    Ok(FactorPoset {
        words,
        poset,
        source: None,
    })
}

/// Minimal-type test for the factor poset, over levels
/// `0 ..= L - 1 - margin` where `L` is the longest factor length.
///
/// `m(n)` is the least `m` with every factor of length `<= n + 1` inside
/// every factor of length `>= m + 1`. It is read off the source prefix as
/// `max(n + 2, R) - 1`, with `R` the largest recurrence window among those
/// factors, and accepted only while `R` stays within half the prefix.
pub fn minimal_type_window_check(fp: &FactorPoset, margin: usize) -> Result<Certificate> {
    let levels = fp.max_len();
    if levels <= margin {
        return Err(Error::MarginTooSmall { margin, levels });
    }
    let source = fp
        .source
        .as_deref()
        .ok_or_else(|| Error::InvalidRule("factor poset has no source prefix".into()))?;
    check_prefix(source.len(), levels)?;
    let half = source.len() / 2;
    let mut worst = 0;
    let mut rows = Vec::new();
    for n in 0..levels - margin {
        worst = worst.max(recurrence_at(source, n + 1));
        let m = (n + 2).max(worst) - 1;
        if m + 1 > half {
            let witness = missing_pair(fp, n + 1).map_or(
                Witness::Table {
                    name: "m".into(),
                    rows: rows.clone(),
                },
                |(s, t)| Witness::Words(s, t),
            );
            return Ok(Certificate::new(Verdict::Fail, "recurrence", witness));
        }
        rows.push((n, m));
    }
    Ok(Certificate::new(
        Verdict::VerifiedUpTo(levels - margin),
        "recurrence",
        Witness::Table { name: "m".into(), rows },
    ))
}

/// First top-level factor missing some factor of length `<= len`, paired
/// with the first such missing factor.
fn missing_pair(fp: &FactorPoset, len: usize) -> Option<(String, String)> {
    let top = fp.max_len();
    fp.words.iter().filter(|t| t.len() == top).find_map(|t| {
        fp.words
            .iter()
            .take_while(|s| s.len() <= len)
            .find(|s| !t.contains(s.as_str()))
            .map(|s| (s.clone(), t.clone()))
    })
}

/// `m(n) + 1 = max(R(n + 1), n + 2)` against an independently computed
/// recurrence profile.
pub fn recurrence_cross_check(rows: &[(usize, usize)], profile: &RecurrenceProfile) -> bool {
    let mut running = 0;
    rows.iter().all(|&(n, m)| match profile.get(n + 1) {
        Some(Recurrence::Bounded(r)) => {
            running = running.max(*r);
            m + 1 == running.max(n + 2)
        }
        _ => false,
    })
}

/// Direct check of one row: every factor of length `<= n + 1` occurs in
/// every factor (of the source prefix) of length `m + 1`.
pub fn verify_row(fp: &FactorPoset, n: usize, m: usize) -> bool {
    let Some(source) = fp.source.as_deref() else {
        return false;
    };
    let short: Vec<&str> = fp
        .words
        .iter()
        .filter(|w| w.len() <= n + 1)
        .map(String::as_str)
        .collect();
    let long = m + 1;
    long <= source.len()
        && (0..=source.len() - long).all(|s| short.iter().all(|f| source[s..s + long].contains(f)))
}
