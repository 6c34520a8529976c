//! JSON documents for posets, presentations and word systems.
//!
//! ```json
//! {"n": 4, "pairs": [[0, 1], [2, 3]], "closed": false}
//! {"kind": "jaco", "prefix": [1, 2], "tail": {"const": 4}}
//! {"kind": "sandwich", "lower": {"kind": "jaco", "tail": {"const": 1}}, "extras": [[0, 1]]}
//! {"kind": "layered", "height": "w*2+1", "residue": ["w*2", "w*2"]}
//! {"kind": "substitution", "rules": {"0": "01", "1": "0"}, "seed": "0"}
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::omega::{IndexOrder, JacoRule, LexSumOmega, OmegaPresentation, Tail};
use crate::poset::FinitePoset;
use crate::structure::LayeredPresentation;
use crate::symdyn::WordSystem;
use crate::Ordinal;

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDoc {
    pub n: usize,
    #[serde(default)]
    pub pairs: Vec<[usize; 2]>,
    /// The pairs are already the full relation; it is verified, not closed.
    #[serde(default)]
    pub closed: bool,
}

impl PosetDoc {
    pub fn parse(text: &str) -> Result<Self> {
        parse(text)
    }

    pub fn to_poset(&self) -> Result<FinitePoset> {
        let pairs: Vec<(usize, usize)> = self.pairs.iter().map(|&[a, b]| (a, b)).collect();
        FinitePoset::from_edges(self.n, &pairs, self.closed)
    }

    /// The full relation, marked closed.
    pub fn from_poset(p: &FinitePoset) -> Self {
        PosetDoc {
            n: p.len(),
            pairs: p.pairs().into_iter().map(|(a, b)| [a, b]).collect(),
            closed: true,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("poset documents always serialize")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum TailDoc {
    Const(u64),
    /// `[slope, offset]`.
    Affine([u64; 2]),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleDoc {
    #[serde(default)]
    pub prefix: Vec<u64>,
    pub tail: TailDoc,
    /// Set to `false` to skip monotonicity checks (for testing rejections).
    #[serde(default = "yes")]
    pub validate: bool,
}

fn yes() -> bool {
    true
}

impl RuleDoc {
    pub fn to_rule(&self) -> Result<JacoRule> {
        let tail = match self.tail {
            TailDoc::Const(c) => Tail::Const(c),
            TailDoc::Affine([slope, offset]) => Tail::Affine { slope, offset },
        };
        if self.validate {
            JacoRule::new(self.prefix.clone(), tail)
        } else {
            Ok(JacoRule::new_unchecked(self.prefix.clone(), tail))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum IndexDoc {
    Chain,
    Jaco(RuleDoc),
    ChainWithIsolated(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum PresentationDoc {
    Jaco {
        #[serde(default)]
        prefix: Vec<u64>,
        tail: TailDoc,
        #[serde(default = "yes")]
        validate: bool,
    },
    LexSum {
        blocks: Vec<PosetDoc>,
        index: IndexDoc,
    },
    Sandwich {
        lower: Box<PresentationDoc>,
        extras: Vec<[usize; 2]>,
    },
    Layered {
        height: String,
        #[serde(default)]
        residue: Vec<String>,
        #[serde(default = "yes")]
        levels_finite: bool,
    },
}

impl PresentationDoc {
    pub fn parse(text: &str) -> Result<Self> {
        parse(text)
    }

    pub fn is_layered(&self) -> bool {
        matches!(self, PresentationDoc::Layered { .. })
    }

    pub fn to_presentation(&self) -> Result<OmegaPresentation> {
        match self {
            PresentationDoc::Jaco { prefix, tail, validate } => Ok(OmegaPresentation::jaco(
                RuleDoc {
                    prefix: prefix.clone(),
                    tail: *tail,
                    validate: *validate,
                }
                .to_rule()?,
            )),
            PresentationDoc::LexSum { blocks, index } => {
                let blocks = blocks.iter().map(PosetDoc::to_poset).collect::<Result<Vec<_>>>()?;
                let index = match index {
                    IndexDoc::Chain => IndexOrder::Chain,
                    IndexDoc::Jaco(r) => IndexOrder::Jaco(r.to_rule()?),
                    IndexDoc::ChainWithIsolated(k) => IndexOrder::ChainWithIsolated(*k),
                };
                Ok(OmegaPresentation::LexSum(LexSumOmega::new(blocks, index)?))
            }
            PresentationDoc::Sandwich { lower, extras } => {
                let extras = extras.iter().map(|&[a, b]| (a, b)).collect();
                OmegaPresentation::sandwich(lower.to_presentation()?, extras)
            }
            PresentationDoc::Layered { .. } => Err(Error::Document(
                "a layered presentation has no order on ℕ; use it with the spectrum check".into(),
            )),
        }
    }

    pub fn to_layered(&self) -> Result<LayeredPresentation> {
        let PresentationDoc::Layered {
            height,
            residue,
            levels_finite,
        } = self
        else {
            return Err(Error::Document("expected kind \"layered\"".into()));
        };
        Ok(LayeredPresentation {
            height: height.parse::<Ordinal>()?,
            residue: residue.iter().map(|r| r.parse()).collect::<Result<_>>()?,
            levels_finite: *levels_finite,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum WordDoc {
    Substitution {
        /// Optional; when given, every symbol needs a rule.
        #[serde(default)]
        alphabet: Option<String>,
        rules: BTreeMap<char, String>,
        seed: char,
    },
    Literal {
        #[serde(default)]
        prefix: String,
        period: String,
    },
}

impl WordDoc {
    pub fn parse(text: &str) -> Result<Self> {
        parse(text)
    }

    pub fn to_system(&self) -> Result<WordSystem> {
        match self {
            WordDoc::Substitution { alphabet, rules, seed } => {
                if let Some(missing) = alphabet.iter().flat_map(|a| a.chars()).find(|c| !rules.contains_key(c)) {
                    return Err(Error::InvalidRule(format!("symbol '{missing}' has no rule")));
                }
                let pairs: Vec<(char, &str)> = rules.iter().map(|(&c, w)| (c, w.as_str())).collect();
                WordSystem::substitution(&pairs, *seed)
            }
            WordDoc::Literal { prefix, period } => WordSystem::literal(prefix, period),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_round_trip() {
        let doc = PosetDoc::parse(r#"{"n": 4, "pairs": [[0, 1], [2, 3]], "closed": false}"#).unwrap();
        let p = doc.to_poset().unwrap();
        assert_eq!(p.pairs(), vec![(0, 1), (2, 3)]);
        let again = PosetDoc::parse(&PosetDoc::from_poset(&p).to_json()).unwrap();
        assert_eq!(again.to_poset().unwrap(), p);
        assert!(PosetDoc::parse(r#"{"n": 2, "pairs": [[0, 1]], "extra": 1}"#).is_err());
        assert_eq!(
            PosetDoc::parse(r#"{"n": 2, "pairs": [[0, 5]]}"#).unwrap().to_poset(),
            Err(Error::IndexOutOfRange { index: 5, n: 2 })
        );
    }

    #[test]
    fn presentation_kinds() {
        let jaco = PresentationDoc::parse(r#"{"kind": "jaco", "prefix": [1, 2], "tail": {"const": 4}}"#).unwrap();
        assert!(jaco.to_presentation().unwrap().lt(0, 2));
        let affine = PresentationDoc::parse(r#"{"kind": "jaco", "tail": {"affine": [1, 1]}}"#).unwrap();
        assert!(affine.to_presentation().unwrap().lt(2, 6));
        let bad = PresentationDoc::parse(r#"{"kind": "jaco", "prefix": [3], "tail": {"const": 1}}"#).unwrap();
        assert!(bad.to_presentation().is_err());
        let sw = PresentationDoc::parse(
            r#"{"kind": "sandwich", "lower": {"kind": "jaco", "tail": {"const": 1}}, "extras": [[0, 1]]}"#,
        )
        .unwrap();
        assert_eq!(sw.to_presentation().unwrap().truncate(4).unwrap().pairs().len(), 4);
        let lex = PresentationDoc::parse(
            r#"{"kind": "lex-sum", "blocks": [{"n": 1}], "index": {"chain-with-isolated": 2}}"#,
        )
        .unwrap();
        assert!(!lex.to_presentation().unwrap().lt(2, 5));
        let layered =
            PresentationDoc::parse(r#"{"kind": "layered", "height": "w*2+1", "residue": ["w*2", "w*2"]}"#).unwrap();
        let l = layered.to_layered().unwrap();
        assert_eq!(l.height.to_string(), "w*2+1");
        assert!(layered.to_presentation().is_err());
        assert_eq!(serde_json::from_str::<PresentationDoc>(&serde_json::to_string(&sw).unwrap()).unwrap(), sw);
    }

    #[test]
    fn word_documents() {
        let fib = WordDoc::parse(r#"{"kind": "substitution", "alphabet": "01", "rules": {"0": "01", "1": "0"}, "seed": "0"}"#)
            .unwrap();
        assert_eq!(fib.to_system().unwrap(), WordSystem::fibonacci());
        let lonely = WordDoc::parse(r#"{"kind": "literal", "prefix": "1", "period": "0"}"#).unwrap();
        assert_eq!(lonely.to_system().unwrap().generate(3).unwrap(), "100");
        let partial = WordDoc::parse(r#"{"kind": "substitution", "alphabet": "012", "rules": {"0": "01", "1": "0"}, "seed": "0"}"#)
            .unwrap();
        assert!(partial.to_system().is_err());
    }
}
