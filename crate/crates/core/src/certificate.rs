//! Verdicts and the witnesses that back them.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Every checkable instance below the window size passed; nothing is
    /// claimed beyond it.
    VerifiedUpTo(usize),
}

impl Verdict {
    /// True unless the verdict is `Fail`.
    pub fn is_ok(self) -> bool {
        !matches!(self, Verdict::Fail)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("pass"),
            Verdict::Fail => f.write_str("fail"),
            Verdict::VerifiedUpTo(n) => write!(f, "verified-up-to {n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Witness {
    None,
    /// Induced copy of a named forbidden pattern; `map[i]` hosts pattern
    /// element `i`.
    Embedding { pattern: String, map: Vec<usize> },
    /// A total quasi-order listed as equivalence classes, bottom first.
    Classes { name: String, classes: Vec<Vec<usize>> },
    /// Rows `(n, f(n))` of a witness function such as `m(n)`.
    Table { name: String, rows: Vec<(usize, usize)> },
    /// Purity table `x -> y` and the increasing sequence read off it.
    Purity {
        rows: Vec<(usize, usize)>,
        sequence: Vec<usize>,
    },
    Pair(usize, usize),
    Triple(usize, usize, usize),
    Element(usize),
    /// `x` has no element above everything outside `↑x`; `culprit` lies
    /// outside `↑x` and escapes every candidate.
    Unbounded { x: usize, culprit: usize },
    /// `s` is not a factor of `t`.
    Words(String, String),
    /// Rows `(x, |P \ ↑x|)`.
    Sizes(Vec<(usize, usize)>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    /// Which argument produced the verdict, e.g. `pattern+quasi-order`.
    pub route: String,
    pub witness: Witness,
}

impl Certificate {
    pub fn new(verdict: Verdict, route: impl Into<String>, witness: Witness) -> Self {
        Certificate {
            verdict,
            route: route.into(),
            witness,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict.is_ok()
    }

    /// Line-oriented rendering used by reports: `key: value` pairs.
    pub fn lines(&self) -> Vec<(String, String)> {
        let mut out = vec![("route".to_string(), self.route.clone())];
        out.extend(self.witness.lines());
        out
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn rows(items: &[(usize, usize)]) -> String {
    items
        .iter()
        .map(|(a, b)| format!("{a}:{b}"))
        .collect::<Vec<_>>()
        .join(" ")
}

impl Witness {
    pub fn lines(&self) -> Vec<(String, String)> {
        let kv = |k: &str, v: String| (k.to_string(), v);
        match self {
            Witness::None => vec![],
            Witness::Embedding { pattern, map } => vec![
                kv("witness-pattern", pattern.clone()),
                kv("witness-map", join(map)),
            ],
            Witness::Classes { name, classes } => vec![
                kv("witness-quasi-order", name.clone()),
                kv(
                    "witness-classes",
                    classes
                        .iter()
                        .map(|c| format!("{{{}}}", join(c)))
                        .collect::<Vec<_>>()
                        .join(" "),
                ),
            ],
            Witness::Table { name, rows: r } => vec![kv("witness-table", name.clone()), kv("witness-rows", rows(r))],
            Witness::Purity { rows: r, sequence } => vec![
                kv("witness-purity", rows(r)),
                kv("witness-sequence", join(sequence)),
            ],
            Witness::Pair(a, b) => vec![kv("witness-pair", format!("{a} {b}"))],
            Witness::Triple(a, b, c) => vec![kv("witness-triple", format!("{a} {b} {c}"))],
            Witness::Element(x) => vec![kv("witness-element", x.to_string())],
            Witness::Unbounded { x, culprit } => vec![
                kv("witness-element", x.to_string()),
                kv("witness-culprit", culprit.to_string()),
            ],
            Witness::Words(s, t) => vec![kv("witness-words", format!("{s} {t}"))],
            Witness::Sizes(r) => vec![kv("witness-sizes", rows(r))],
        }
    }
}
