//! Provenance headers carried as `#` comments in compiled system files.
//!
//! `verify` re-derives the artifact from the recorded source and parameters,
//! so the header must pin everything the compilation depended on: the
//! construction, the characteristic, the seed and extension degree (random
//! route), and the source instance itself, flattened to one line.

use resultant_core::error::Error;
use resultant_core::Result;

use crate::args::Via;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SourceText {
    Cnf(String),
    Boolsys(String),
    Partition(String),
}

impl SourceText {
    pub fn tag(&self) -> &'static str {
        match self {
            SourceText::Cnf(_) => "source-cnf",
            SourceText::Boolsys(_) => "source-boolsys",
            SourceText::Partition(_) => "source-partition",
        }
    }

    pub fn text(&self) -> &str {
        match self {
            SourceText::Cnf(t) | SourceText::Boolsys(t) | SourceText::Partition(t) => t,
        }
    }
}

/// Multi-line instance text to a single header payload and back.
pub fn flatten(text: &str) -> String {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .collect::<Vec<_>>()
        .join(" ; ")
}

pub fn unflatten(payload: &str) -> String {
    payload
        .split(" ; ")
        .map(str::trim)
        .collect::<Vec<_>>()
        .join("\n")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProvenanceHeader {
    pub via: Via,
    pub characteristic: u64,
    pub seed: u64,
    pub ext_degree: usize,
    pub source: SourceText,
}

impl ProvenanceHeader {
    /// The `#` comment lines for a compiled file (without the leading `#`).
    pub fn comment_lines(&self) -> Vec<String> {
        vec![
            format!("via: {}", self.via.name()),
            format!("char: {}", self.characteristic),
            format!("seed: {}", self.seed),
            format!("ext-degree: {}", self.ext_degree),
            format!("{}: {}", self.source.tag(), flatten(self.source.text())),
        ]
    }

    /// Recovers the header from parsed comment lines.
    pub fn from_comments(comments: &[String]) -> Result<Self> {
        let mut via = None;
        let mut characteristic = None;
        let mut seed = 0u64;
        let mut ext_degree = 1usize;
        let mut source = None;
        for c in comments {
            let Some((key, value)) = c.split_once(':') else {
                continue;
            };
            let value = value.trim();
            match key.trim() {
                "via" => {
                    via = Some(match value {
                        "lemma1" => Via::Lemma1,
                        "thm1" => Via::Thm1,
                        "thm1-bounded" => Via::Thm1Bounded,
                        "thm5" => Via::Thm5,
                        "thm6" => Via::Thm6,
                        "thm4" => Via::Thm4,
                        "plaisted" => Via::Plaisted,
                        "prop1" => Via::Prop1,
                        other => {
                            return Err(Error::InvalidInput(format!(
                                "unknown construction `{other}` in provenance"
                            )))
                        }
                    })
                }
                "char" => {
                    characteristic = Some(value.parse().map_err(|_| {
                        Error::InvalidInput(format!("bad char `{value}` in provenance"))
                    })?)
                }
                "seed" => {
                    seed = value.parse().map_err(|_| {
                        Error::InvalidInput(format!("bad seed `{value}` in provenance"))
                    })?
                }
                "ext-degree" => {
                    ext_degree = value.parse().map_err(|_| {
                        Error::InvalidInput(format!("bad ext-degree `{value}` in provenance"))
                    })?
                }
                "source-cnf" => source = Some(SourceText::Cnf(unflatten(value))),
                "source-boolsys" => source = Some(SourceText::Boolsys(unflatten(value))),
                "source-partition" => source = Some(SourceText::Partition(unflatten(value))),
                _ => {}
            }
        }
        match (via, characteristic, source) {
            (Some(via), Some(characteristic), Some(source)) => Ok(ProvenanceHeader {
                via,
                characteristic,
                seed,
                ext_degree,
                source,
            }),
            _ => Err(Error::MissingProvenance),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_round_trip() {
        let h = ProvenanceHeader {
            via: Via::Thm6,
            characteristic: 3,
            seed: 0,
            ext_degree: 1,
            source: SourceText::Boolsys("x1 = true\nx2 = not x1".into()),
        };
        let lines = h.comment_lines();
        let back = ProvenanceHeader::from_comments(&lines).unwrap();
        assert_eq!(back, h);
    }

    #[test]
    fn missing_pieces_are_rejected() {
        let lines = vec!["via: thm6".to_string()];
        assert!(matches!(
            ProvenanceHeader::from_comments(&lines),
            Err(Error::MissingProvenance)
        ));
    }
}
