use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{EndpointSurjection, ZigZag, ZigZagCell};
use crate::fincat::{FinCat, JsonError};

pub const ZIGZAG_SCHEMA: &str = "zigzag/v1";

fn schema() -> String {
    ZIGZAG_SCHEMA.to_string()
}

/// `zigzag/v1`: objects and morphisms of the index category by name.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ZigZagDoc {
    #[serde(default = "schema")]
    pub schema: String,
    pub feet: Vec<String>,
    pub apexes: Vec<String>,
    pub lefts: Vec<String>,
    pub rights: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CellDoc {
    #[serde(default = "schema")]
    pub schema: String,
    pub source: ZigZagDoc,
    pub target: ZigZagDoc,
    pub theta: Vec<usize>,
    pub foot_components: Vec<String>,
    pub apex_components: Vec<String>,
}

fn names_obj(j: &FinCat, v: &[crate::fincat::ObjId]) -> Vec<String> {
    v.iter().map(|&o| j.object_name(o).to_string()).collect()
}

fn names_mor(j: &FinCat, v: &[crate::fincat::MorId]) -> Vec<String> {
    v.iter().map(|&m| j.morphism_name(m).to_string()).collect()
}

fn lookup_obj(j: &FinCat, v: &[String]) -> Result<Vec<crate::fincat::ObjId>, JsonError> {
    v.iter()
        .map(|n| {
            j.find_object(n)
                .ok_or_else(|| JsonError::Invalid(format!("unknown object {n}")))
        })
        .collect()
}

fn lookup_mor(j: &FinCat, v: &[String]) -> Result<Vec<crate::fincat::MorId>, JsonError> {
    v.iter()
        .map(|n| {
            j.find_morphism(n)
                .ok_or_else(|| JsonError::Invalid(format!("unknown morphism {n}")))
        })
        .collect()
}

impl ZigZagDoc {
    pub fn from_zigzag(j: &FinCat, z: &ZigZag) -> Self {
        ZigZagDoc {
            schema: schema(),
            feet: names_obj(j, &z.feet),
            apexes: names_obj(j, &z.apexes),
            lefts: names_mor(j, &z.lefts),
            rights: names_mor(j, &z.rights),
        }
    }

    pub fn to_zigzag(&self, j: &FinCat) -> Result<ZigZag, JsonError> {
        if self.schema != ZIGZAG_SCHEMA {
            return Err(JsonError::Schema {
                expected: ZIGZAG_SCHEMA.into(),
                found: self.schema.clone(),
            });
        }
        let z = ZigZag {
            feet: lookup_obj(j, &self.feet)?,
            apexes: lookup_obj(j, &self.apexes)?,
            lefts: lookup_mor(j, &self.lefts)?,
            rights: lookup_mor(j, &self.rights)?,
        };
        match z.validate(j).first() {
            Some(e) => Err(JsonError::Invalid(e.clone())),
            None => Ok(z),
        }
    }
}

impl CellDoc {
    pub fn from_cell(j: &FinCat, c: &ZigZagCell) -> Self {
        CellDoc {
            schema: schema(),
            source: ZigZagDoc::from_zigzag(j, &c.source),
            target: ZigZagDoc::from_zigzag(j, &c.target),
            theta: c.theta.0.clone(),
            foot_components: names_mor(j, &c.foot_components),
            apex_components: names_mor(j, &c.apex_components),
        }
    }

    pub fn to_cell(&self, j: &FinCat) -> Result<ZigZagCell, JsonError> {
        Ok(ZigZagCell {
            source: self.source.to_zigzag(j)?,
            target: self.target.to_zigzag(j)?,
            theta: EndpointSurjection(self.theta.clone()),
            foot_components: lookup_mor(j, &self.foot_components)?,
            apex_components: lookup_mor(j, &self.apex_components)?,
        })
    }
}

fn esc(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn row(out: &mut String, j: &FinCat, z: &ZigZag, prefix: &str, y: f64) {
    for (k, &i) in z.feet.iter().enumerate() {
        let _ = writeln!(
            out,
            "  {prefix}f{k} [label=\"{}\", pos=\"{},{}!\"];",
            esc(j.object_name(i)),
            2 * k,
            y
        );
    }
    for (k, &a) in z.apexes.iter().enumerate() {
        let _ = writeln!(
            out,
            "  {prefix}a{k} [label=\"{}\", pos=\"{},{}!\"];",
            esc(j.object_name(a)),
            2 * k + 1,
            y + 1.0
        );
        let _ = writeln!(
            out,
            "  {prefix}a{k} -> {prefix}f{k} [label=\"{}\"];",
            esc(j.morphism_name(z.lefts[k]))
        );
        let _ = writeln!(
            out,
            "  {prefix}a{k} -> {prefix}f{} [label=\"{}\"];",
            k + 1,
            esc(j.morphism_name(z.rights[k]))
        );
    }
}

/// Feet on a line, apexes raised above them.
pub fn zigzag_to_dot(j: &FinCat, z: &ZigZag) -> String {
    let mut out = String::from("digraph zigzag {\n  layout=neato;\n  node [shape=plaintext];\n");
    row(&mut out, j, z, "", 0.0);
    out.push_str("}\n");
    out
}

/// Source above target, components as dashed vertical edges.
pub fn cell_to_dot(j: &FinCat, c: &ZigZagCell) -> String {
    let mut out = String::from("digraph cell {\n  layout=neato;\n  node [shape=plaintext];\n");
    row(&mut out, j, &c.source, "s", 3.0);
    row(&mut out, j, &c.target, "t", 0.0);
    for (k, &m) in c.foot_components.iter().enumerate() {
        let _ = writeln!(
            out,
            "  sf{k} -> tf{} [style=dashed, label=\"{}\"];",
            c.theta.at(k),
            esc(j.morphism_name(m))
        );
    }
    for (k, &m) in c.apex_components.iter().enumerate() {
        let t = c.theta.at(k + 1);
        let dst = if c.theta.advances(k + 1) {
            format!("ta{}", t - 1)
        } else {
            format!("tf{t}")
        };
        let _ = writeln!(
            out,
            "  sa{k} -> {dst} [style=dashed, label=\"{}\"];",
            esc(j.morphism_name(m))
        );
    }
    out.push_str("}\n");
    out
}
