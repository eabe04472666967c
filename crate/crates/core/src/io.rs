//! JSON documents for complexes and fans. Rationals are "p/q" strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexError, SimplicialComplex};
use crate::fan::{FanError, Ray, TopologicalFan};
use crate::rational::{format_rat, parse_rat, Rat};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON")]
    Json(#[from] serde_json::Error),
    #[error("bad rational {0:?}")]
    Rational(String),
    #[error("vertex label key {0:?} is not a vertex index")]
    LabelKey(String),
    #[error("{expected} positions expected, got {got}")]
    PositionCount { expected: usize, got: usize },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Fan(#[from] FanError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub m: usize,
    pub facets: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positions: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanDoc {
    pub n: usize,
    pub complex: ComplexDoc,
    pub rays: Vec<Ray>,
}

/// A complex together with optional vertex positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedComplex {
    pub complex: SimplicialComplex,
    pub positions: Option<Vec<Vec<Rat>>>,
}

impl ComplexDoc {
    pub fn from_complex(k: &SimplicialComplex, positions: Option<&[Vec<Rat>]>) -> Self {
        Self {
            m: k.m(),
            facets: k.listed_facets().to_vec(),
            labels: k.labels().iter().map(|(v, l)| (v.to_string(), l.clone())).collect(),
            positions: positions.map(|ps| ps.iter().map(|p| p.iter().map(format_rat).collect()).collect()),
        }
    }

    pub fn to_complex(&self) -> Result<EmbeddedComplex, IoError> {
        let mut labels = BTreeMap::new();
        for (k, l) in &self.labels {
            let v: usize = k.parse().map_err(|_| IoError::LabelKey(k.clone()))?;
            labels.insert(v, l.clone());
        }
        let complex = SimplicialComplex::new(self.m, self.facets.clone())?.with_labels(labels);
        let positions = match &self.positions {
            None => None,
            Some(ps) => {
                if ps.len() != self.m {
                    return Err(IoError::PositionCount { expected: self.m, got: ps.len() });
                }
                let parsed = ps
                    .iter()
                    .map(|p| p.iter().map(|s| parse_rat(s).map_err(|_| IoError::Rational(s.clone()))).collect())
                    .collect::<Result<Vec<Vec<Rat>>, IoError>>()?;
                Some(parsed)
            }
        };
        Ok(EmbeddedComplex { complex, positions })
    }
}

impl FanDoc {
    pub fn from_fan(f: &TopologicalFan) -> Self {
        Self { n: f.n, complex: ComplexDoc::from_complex(&f.complex, None), rays: f.rays.clone() }
    }

    pub fn to_fan(&self) -> Result<TopologicalFan, IoError> {
        let complex = self.complex.to_complex()?.complex;
        Ok(TopologicalFan::new(self.n, complex, self.rays.clone())?)
    }
}

pub fn parse_complex(s: &str) -> Result<EmbeddedComplex, IoError> {
    serde_json::from_str::<ComplexDoc>(s)?.to_complex()
}

pub fn parse_fan(s: &str) -> Result<TopologicalFan, IoError> {
    serde_json::from_str::<FanDoc>(s)?.to_fan()
}

pub fn complex_to_json(k: &SimplicialComplex, positions: Option<&[Vec<Rat>]>) -> String {
    serde_json::to_string_pretty(&ComplexDoc::from_complex(k, positions)).expect("serializable")
}

pub fn fan_to_json(f: &TopologicalFan) -> String {
    serde_json::to_string_pretty(&FanDoc::from_fan(f)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{ratio, rat_vec};

    #[test]
    fn fan_round_trip() {
        let k = SimplicialComplex::new(3, vec![vec![2, 1], vec![2, 3], vec![3, 1]]).unwrap();
        let mut f = TopologicalFan::algebraic(k, &[vec![1, 0], vec![0, 1], vec![-1, -1]]).unwrap();
        f.rays[0].c = vec![ratio(1, 2), ratio(-3, 4)];
        let s = fan_to_json(&f);
        assert!(s.contains("\"1/2\""));
        assert!(s.contains("[\n        2,\n        1\n      ]"));
        assert_eq!(parse_fan(&s).unwrap(), f);
    }

    #[test]
    fn complex_with_positions() {
        let k = SimplicialComplex::polygon(3);
        let pos = vec![rat_vec(&[1, 0]), rat_vec(&[0, 1]), vec![ratio(-1, 2), ratio(-1, 2)]];
        let s = complex_to_json(&k, Some(&pos));
        let e = parse_complex(&s).unwrap();
        assert_eq!(e.complex, k);
        assert_eq!(e.positions.unwrap(), pos);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_fan("{"), Err(IoError::Json(_))));
        assert!(matches!(parse_complex(r#"{"m":2,"facets":[[1,3]]}"#), Err(IoError::Complex(_))));
        assert!(matches!(
            parse_complex(r#"{"m":2,"facets":[[1],[2]],"positions":[["x"],["1"]]}"#),
            Err(IoError::Rational(_))
        ));
        let bad_ray = r#"{"n":1,"complex":{"m":2,"facets":[[1],[2]]},"rays":[{"b":["1"],"c":["0"],"v":[2]},{"b":["-1"],"c":["0"],"v":[-1]}]}"#;
        assert!(matches!(parse_fan(bad_ray), Err(IoError::Fan(_))));
    }
}
