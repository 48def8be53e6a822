//! JSON document format for tuples.
//!
//! ```json
//! {
//!   "n": 2,
//!   "infinity": {"m": 1, "coeffs": {"1": [["0", "0"], ["0", "-1"]]}},
//!   "finite": [{"t": "0", "m": 0, "coeffs": {"0": [["-1/3", "1"], ["1/18", "-1/6"]]}}]
//! }
//! ```
//!
//! Coefficient maps are keyed by the index `j` and written highest first.
//! Matrices are lists of rows of canonical rational strings. The location
//! `t` of a finite point is carried along but never used in a computation.

use std::fmt;

use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exactla::{Mat, Scalar};
use crate::model::{Location, ModelError, SingularPoint, Tuple};

#[derive(Debug, Error)]
pub enum TupleFileError {
    #[error("malformed tuple document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("point {point}: coefficient A_{j} is missing")]
    MissingCoeff { point: usize, j: usize },
    #[error("point {point}: unexpected coefficient A_{j} for m={m}")]
    ExtraCoeff { point: usize, j: usize, m: usize },
    #[error("point {point}: coefficient A_{j} has ragged rows")]
    Ragged { point: usize, j: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Coefficient matrices keyed by index, kept in the order given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coeffs(pub Vec<(usize, Vec<Vec<Scalar>>)>);

impl Serialize for Coeffs {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (j, rows) in &self.0 {
            map.serialize_entry(&j.to_string(), rows)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Coeffs {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct CoeffVisitor;
        impl<'de> Visitor<'de> for CoeffVisitor {
            type Value = Coeffs;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map from coefficient index to matrix")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Coeffs, A::Error> {
                let mut out: Vec<(usize, Vec<Vec<Scalar>>)> = Vec::new();
                while let Some((key, rows)) = access.next_entry::<String, Vec<Vec<Scalar>>>()? {
                    let valid = !key.is_empty() && key.bytes().all(|b| b.is_ascii_digit());
                    let j: usize = match key.parse() {
                        Ok(j) if valid => j,
                        _ => return Err(serde::de::Error::custom(format!("invalid coefficient index {key:?}"))),
                    };
                    if out.iter().any(|(k, _)| *k == j) {
                        return Err(serde::de::Error::custom(format!("duplicate coefficient index {j}")));
                    }
                    out.push((j, rows));
                }
                Ok(Coeffs(out))
            }
        }
        deserializer.deserialize_map(CoeffVisitor)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InfinityEntry {
    pub m: usize,
    pub coeffs: Coeffs,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteEntry {
    pub t: Scalar,
    pub m: usize,
    pub coeffs: Coeffs,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleFile {
    pub n: usize,
    pub infinity: InfinityEntry,
    pub finite: Vec<FiniteEntry>,
}

fn coeffs_of(p: &SingularPoint) -> Coeffs {
    Coeffs(p.coeffs.iter().enumerate().map(|(k, a)| (p.m - k, a.to_rows())).collect())
}

fn matrices(point: usize, m: usize, low: usize, coeffs: &Coeffs) -> Result<Vec<Mat>, TupleFileError> {
    if let Some(&(j, _)) = coeffs.0.iter().find(|(j, _)| *j > m || *j < low) {
        return Err(TupleFileError::ExtraCoeff { point, j, m });
    }
    (low..=m)
        .rev()
        .map(|j| {
            let rows = coeffs.0.iter().find(|(k, _)| *k == j).ok_or(TupleFileError::MissingCoeff { point, j })?;
            Mat::from_rows(rows.1.clone()).map_err(|_| TupleFileError::Ragged { point, j })
        })
        .collect()
}

impl TupleFile {
    pub fn from_tuple(t: &Tuple) -> Self {
        let finite = t
            .finite()
            .iter()
            .map(|p| {
                let Location::Finite(loc) = &p.location else { unreachable!("finite point") };
                FiniteEntry { t: loc.clone(), m: p.m, coeffs: coeffs_of(p) }
            })
            .collect();
        TupleFile {
            n: t.n(),
            infinity: InfinityEntry { m: t.infinity().m, coeffs: coeffs_of(t.infinity()) },
            finite,
        }
    }

    pub fn to_tuple(&self) -> Result<Tuple, TupleFileError> {
        let inf = SingularPoint::infinity(matrices(0, self.infinity.m, 1, &self.infinity.coeffs)?);
        let finite = self
            .finite
            .iter()
            .enumerate()
            .map(|(k, e)| {
                let mats = matrices(k + 1, e.m, 0, &e.coeffs)?;
                Ok(SingularPoint::finite(e.t.clone(), mats))
            })
            .collect::<Result<Vec<_>, TupleFileError>>()?;
        Ok(Tuple::new(self.n, inf, finite)?)
    }
}

pub fn parse_tuple(text: &str) -> Result<Tuple, TupleFileError> {
    let file: TupleFile = serde_json::from_str(text)?;
    file.to_tuple()
}

/// Pretty-printed document with a trailing newline.
pub fn write_tuple(t: &Tuple) -> String {
    let mut s = serde_json::to_string_pretty(&TupleFile::from_tuple(t)).expect("serializable");
    s.push('\n');
    s
}
