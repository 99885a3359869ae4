//! The `sset/v1` document: nondegenerate simplices by dimension, faces by name.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{FinSSet, NdSimplex, SimplexRef};
use crate::fincat::JsonError;

pub const SSET_SCHEMA: &str = "sset/v1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceDoc {
    /// Name of the nondegenerate simplex the face degenerates from.
    pub of: String,
    /// Degeneracy indices, strictly decreasing.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub s: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplexDoc {
    pub name: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub faces: Vec<FaceDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SSetDoc {
    pub schema: String,
    pub name: String,
    pub simplices: Vec<Vec<SimplexDoc>>,
}

impl SSetDoc {
    pub fn from_sset(x: &FinSSet) -> Self {
        SSetDoc {
            schema: SSET_SCHEMA.into(),
            name: x.name.clone(),
            simplices: x
                .simplices
                .iter()
                .map(|level| {
                    level
                        .iter()
                        .map(|s| SimplexDoc {
                            name: s.name.clone(),
                            faces: s
                                .faces
                                .iter()
                                .map(|f| FaceDoc {
                                    of: x.simplices[f.base_dim][f.base].name.clone(),
                                    s: f.degeneracy.clone(),
                                })
                                .collect(),
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_sset(&self) -> Result<FinSSet, JsonError> {
        if self.schema != SSET_SCHEMA {
            return Err(JsonError::Schema {
                expected: SSET_SCHEMA.into(),
                found: self.schema.clone(),
            });
        }
        let names: Vec<HashMap<&str, usize>> = self
            .simplices
            .iter()
            .map(|l| {
                l.iter()
                    .enumerate()
                    .map(|(i, s)| (s.name.as_str(), i))
                    .collect()
            })
            .collect();
        for (k, l) in names.iter().enumerate() {
            if l.len() != self.simplices[k].len() {
                return Err(JsonError::Invalid(format!(
                    "duplicate simplex names in dimension {k}"
                )));
            }
        }
        let mut simplices = Vec::with_capacity(self.simplices.len());
        for (k, level) in self.simplices.iter().enumerate() {
            let mut out = Vec::with_capacity(level.len());
            for s in level {
                let expected = if k == 0 { 0 } else { k + 1 };
                if s.faces.len() != expected {
                    return Err(JsonError::Invalid(format!(
                        "{} needs {expected} faces",
                        s.name
                    )));
                }
                let mut faces = Vec::with_capacity(expected);
                for f in &s.faces {
                    let base_dim = (k - 1).checked_sub(f.s.len()).ok_or_else(|| {
                        JsonError::Invalid(format!("face {} of {} is too degenerate", f.of, s.name))
                    })?;
                    let base = *names[base_dim].get(f.of.as_str()).ok_or_else(|| {
                        JsonError::Invalid(format!("no {base_dim}-simplex named {}", f.of))
                    })?;
                    if !f.s.windows(2).all(|w| w[0] > w[1]) || f.s.iter().any(|&j| j + 1 > k - 1) {
                        return Err(JsonError::Invalid(format!(
                            "degeneracy word of a face of {} is not normal",
                            s.name
                        )));
                    }
                    faces.push(SimplexRef {
                        dim: k - 1,
                        base_dim,
                        base,
                        degeneracy: f.s.clone(),
                    });
                }
                out.push(NdSimplex {
                    name: s.name.clone(),
                    faces,
                });
            }
            simplices.push(out);
        }
        let x = FinSSet {
            name: self.name.clone(),
            simplices,
        };
        let problems = x.validate();
        if let Some(p) = problems.first() {
            return Err(JsonError::Invalid(p.clone()));
        }
        Ok(x)
    }

    pub fn parse(text: &str) -> Result<FinSSet, JsonError> {
        let doc: SSetDoc = serde_json::from_str(text).map_err(JsonError::Parse)?;
        doc.to_sset()
    }
}
