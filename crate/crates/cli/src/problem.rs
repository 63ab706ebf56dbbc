//! Problem files: one JSON object tagged by `kind`. Rationals are strings
//! (`"3/4"`, `"2"`, `"0.25"`) or nonnegative integers.

use maxcirc::{Circulant, IntervalBox, IntervalCirculant, MaxVector, Scalar, ScalarInterval};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid problem file: {0}")]
    Schema(String),
    #[error("invalid problem file: {0}")]
    Value(#[from] maxcirc::Error),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Num {
    Text(String),
    Int(u64),
}

impl Num {
    fn scalar(&self) -> Result<Scalar, ProblemError> {
        match self {
            Num::Text(s) => Ok(s.trim().parse()?),
            Num::Int(v) => Ok(Scalar::from(*v)),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct IntervalSpec {
    lower: Num,
    upper: Num,
    #[serde(default = "closed_brackets")]
    brackets: String,
}

fn closed_brackets() -> String {
    "[]".into()
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum RawProblem {
    CirculantAnalysis {
        circulant: Vec<Num>,
        #[serde(default)]
        vectors: Vec<Vec<Num>>,
    },
    AttractionCheck {
        circulant: Vec<Num>,
        vectors: Vec<Vec<Num>>,
    },
    InclusionCheck {
        a: Vec<Num>,
        b: Vec<Num>,
    },
    RobustnessClassify {
        circulant: Vec<IntervalSpec>,
        #[serde(rename = "box")]
        bx: Vec<IntervalSpec>,
    },
}

#[derive(Debug)]
pub enum Problem {
    CirculantAnalysis { circulant: Circulant, vectors: Vec<MaxVector> },
    AttractionCheck { circulant: Circulant, vectors: Vec<MaxVector> },
    InclusionCheck { a: Circulant, b: Circulant },
    RobustnessClassify { circulant: IntervalCirculant, bx: IntervalBox },
}

fn scalars(v: &[Num]) -> Result<Vec<Scalar>, ProblemError> {
    v.iter().map(Num::scalar).collect()
}

fn circulant(v: &[Num]) -> Result<Circulant, ProblemError> {
    Ok(Circulant::new(scalars(v)?)?)
}

fn vectors(vs: &[Vec<Num>], n: usize) -> Result<Vec<MaxVector>, ProblemError> {
    vs.iter()
        .map(|v| {
            let x = MaxVector::new(scalars(v)?)?;
            if x.dim() != n {
                return Err(maxcirc::Error::DimensionMismatch { expected: n, found: x.dim() }.into());
            }
            Ok(x)
        })
        .collect()
}

fn intervals(specs: &[IntervalSpec]) -> Result<Vec<ScalarInterval>, ProblemError> {
    specs
        .iter()
        .map(|s| Ok(ScalarInterval::with_kind(s.lower.scalar()?, s.upper.scalar()?, &s.brackets)?))
        .collect()
}

impl Problem {
    pub fn parse(text: &str) -> Result<Problem, ProblemError> {
        let raw: RawProblem = serde_json::from_str(text).map_err(|e| ProblemError::Schema(e.to_string()))?;
        Ok(match raw {
            RawProblem::CirculantAnalysis { circulant: c, vectors: vs } => {
                let circulant = circulant(&c)?;
                let vectors = vectors(&vs, circulant.dim())?;
                Problem::CirculantAnalysis { circulant, vectors }
            }
            RawProblem::AttractionCheck { circulant: c, vectors: vs } => {
                let circulant = circulant(&c)?;
                let vectors = vectors(&vs, circulant.dim())?;
                Problem::AttractionCheck { circulant, vectors }
            }
            RawProblem::InclusionCheck { a, b } => {
                let (a, b) = (circulant(&a)?, circulant(&b)?);
                if a.dim() != b.dim() {
                    return Err(maxcirc::Error::DimensionMismatch { expected: a.dim(), found: b.dim() }.into());
                }
                Problem::InclusionCheck { a, b }
            }
            RawProblem::RobustnessClassify { circulant, bx } => {
                let circulant = IntervalCirculant::new(intervals(&circulant)?)?;
                let bx = IntervalBox::new(intervals(&bx)?)?;
                if circulant.dim() != bx.dim() {
                    return Err(maxcirc::Error::DimensionMismatch {
                        expected: circulant.dim(),
                        found: bx.dim(),
                    }
                    .into());
                }
                Problem::RobustnessClassify { circulant, bx }
            }
        })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Problem::CirculantAnalysis { .. } => "circulant_analysis",
            Problem::AttractionCheck { .. } => "attraction_check",
            Problem::InclusionCheck { .. } => "inclusion_check",
            Problem::RobustnessClassify { .. } => "robustness_classify",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_as_strings_or_integers() {
        let p = Problem::parse(r#"{"kind": "circulant_analysis", "circulant": [0, "1/2", "0.25", 3]}"#).unwrap();
        let Problem::CirculantAnalysis { circulant, vectors } = p else { panic!() };
        assert_eq!(circulant, Circulant::parse(&["0", "1/2", "1/4", "3"]).unwrap());
        assert!(vectors.is_empty());
    }

    #[test]
    fn brackets_default_to_closed() {
        let p = Problem::parse(
            r#"{"kind": "robustness_classify",
                "circulant": [{"lower": "0", "upper": "1"}],
                "box": [{"lower": "0", "upper": "1", "brackets": "(]"}]}"#,
        )
        .unwrap();
        let Problem::RobustnessClassify { circulant, bx } = p else { panic!() };
        assert_eq!(circulant.entries()[0].kind(), "[]");
        assert_eq!(bx.intervals()[0].kind(), "(]");
    }

    #[test]
    fn rejects_bad_values() {
        for text in [
            r#"{"kind": "circulant_analysis", "circulant": []}"#,
            r#"{"kind": "circulant_analysis", "circulant": ["1/0"]}"#,
            r#"{"kind": "attraction_check", "circulant": ["1", "0"], "vectors": [["1"]]}"#,
            r#"{"kind": "robustness_classify", "circulant": [{"lower": "1", "upper": "1", "brackets": "[)"}], "box": [{"lower": "1", "upper": "1"}]}"#,
            r#"{"kind": "robustness_classify", "circulant": [{"lower": "0", "upper": "1", "brackets": "<>"}], "box": [{"lower": "1", "upper": "1"}]}"#,
        ] {
            assert!(Problem::parse(text).is_err(), "{text}");
        }
    }
}
