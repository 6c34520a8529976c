//! Line-oriented `key: value` reports.
//!
//! A report opens with `subcommand:` and `input-digest:` lines and closes
//! with `verdict:`. Keys never contain `:`; values never span lines.

use std::fmt;

use crate::certificate::{Certificate, Witness};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub subcommand: String,
    pub digest: String,
    pub fields: Vec<(String, String)>,
    pub verdict: String,
}

impl Report {
    pub fn new(subcommand: impl Into<String>, digest: impl Into<String>) -> Self {
        Report {
            subcommand: subcommand.into(),
            digest: digest.into(),
            fields: Vec::new(),
            verdict: "complete".into(),
        }
    }

    pub fn field(&mut self, key: impl Into<String>, value: impl fmt::Display) -> &mut Self {
        let key = key.into();
        debug_assert!(!key.contains(':') && !key.contains('\n'));
        let value = value.to_string();
        debug_assert!(!value.contains('\n'));
        self.fields.push((key, value));
        self
    }

    /// Adds the route and witness lines and takes the certificate's
    /// verdict.
    pub fn certificate(&mut self, cert: &Certificate) -> &mut Self {
        for (k, v) in cert.lines() {
            self.field(k, v);
        }
        self.verdict = cert.verdict.to_string();
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let (k, v) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("report line {} has no key", i + 1)))?;
            lines.push((k.to_string(), v.strip_prefix(' ').unwrap_or(v).to_string()));
        }
        let expect = |pos: usize, key: &str, lines: &[(String, String)]| -> Result<String> {
            match lines.get(pos) {
                Some((k, v)) if k == key => Ok(v.clone()),
                _ => Err(Error::Parse(format!("report is missing its '{key}' line"))),
            }
        };
        if lines.len() < 3 {
            return Err(Error::Parse("report is too short".into()));
        }
        let subcommand = expect(0, "subcommand", &lines)?;
        let digest = expect(1, "input-digest", &lines)?;
        let verdict = expect(lines.len() - 1, "verdict", &lines)?;
        let fields = lines[2..lines.len() - 1].to_vec();
        Ok(Report {
            subcommand,
            digest,
            fields,
            verdict,
        })
    }

    /// Reads the witness back from its `witness-*` lines.
    pub fn witness(&self) -> Result<Witness> {
        let nums = |key: &str| -> Result<Vec<usize>> {
            self.get(key)
                .unwrap_or("")
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad number '{t}' in {key}"))))
                .collect()
        };
        let rows = |key: &str| -> Result<Vec<(usize, usize)>> {
            self.get(key)
                .unwrap_or("")
                .split_whitespace()
                .map(|t| {
                    let bad = || Error::Parse(format!("bad row '{t}' in {key}"));
                    let (a, b) = t.split_once(':').ok_or_else(bad)?;
                    Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
                })
                .collect()
        };
        let exactly = |key: &str, k: usize| -> Result<Vec<usize>> {
            let v = nums(key)?;
            if v.len() != k {
                return Err(Error::Parse(format!("{key} needs {k} numbers")));
            }
            Ok(v)
        };
        if let Some(pattern) = self.get("witness-pattern") {
            return Ok(Witness::Embedding {
                pattern: pattern.into(),
                map: nums("witness-map")?,
            });
        }
        if let Some(name) = self.get("witness-quasi-order") {
            let classes = self
                .get("witness-classes")
                .unwrap_or("")
                .split('}')
                .map(|c| c.trim().trim_start_matches('{'))
                .filter(|c| !c.trim().is_empty())
                .map(|c| {
                    c.split_whitespace()
                        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad class member '{t}'"))))
                        .collect()
                })
                .collect::<Result<_>>()?;
            return Ok(Witness::Classes {
                name: name.into(),
                classes,
            });
        }
        if let Some(name) = self.get("witness-table") {
            return Ok(Witness::Table {
                name: name.into(),
                rows: rows("witness-rows")?,
            });
        }
        if self.get("witness-purity").is_some() {
            return Ok(Witness::Purity {
                rows: rows("witness-purity")?,
                sequence: nums("witness-sequence")?,
            });
        }
        if self.get("witness-pair").is_some() {
            let v = exactly("witness-pair", 2)?;
            return Ok(Witness::Pair(v[0], v[1]));
        }
        if self.get("witness-triple").is_some() {
            let v = exactly("witness-triple", 3)?;
            return Ok(Witness::Triple(v[0], v[1], v[2]));
        }
        if self.get("witness-element").is_some() {
            let x = exactly("witness-element", 1)?[0];
            if self.get("witness-culprit").is_some() {
                let culprit = exactly("witness-culprit", 1)?[0];
                return Ok(Witness::Unbounded { x, culprit });
            }
            return Ok(Witness::Element(x));
        }
        if let Some(words) = self.get("witness-words") {
            let (s, t) = words
                .split_once(' ')
                .ok_or_else(|| Error::Parse("witness-words needs two words".into()))?;
            return Ok(Witness::Words(s.into(), t.into()));
        }
        if self.get("witness-sizes").is_some() {
            return Ok(Witness::Sizes(rows("witness-sizes")?));
        }
        Ok(Witness::None)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "subcommand: {}", self.subcommand)?;
        writeln!(f, "input-digest: {}", self.digest)?;
        for (k, v) in &self.fields {
            writeln!(f, "{k}: {v}")?;
        }
        writeln!(f, "verdict: {}", self.verdict)
    }
}
