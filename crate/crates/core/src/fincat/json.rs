//! The `fincat/v1` and `diagram/v1` document formats.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Diagram, FinCat, FinCatBuilder, Functor, MorId, ObjId};

pub const FINCAT_SCHEMA: &str = "fincat/v1";
pub const DIAGRAM_SCHEMA: &str = "diagram/v1";

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("expected schema {expected}, found {found}")]
    Schema { expected: String, found: String },
    #[error("{0}")]
    Invalid(String),
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, JsonError> {
    Err(JsonError::Invalid(msg.into()))
}

/// `{"objects": [..], "homs": {"a→b": [..]}, "compose": {"g∘f": "h"}, "identity": {"a": "id_a"}}`.
///
/// Composites with an identity may be omitted from `compose`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FinCatDoc {
    #[serde(default = "fincat_schema")]
    pub schema: String,
    #[serde(default)]
    pub name: String,
    pub objects: Vec<String>,
    pub homs: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub compose: BTreeMap<String, String>,
    pub identity: BTreeMap<String, String>,
}

fn fincat_schema() -> String {
    FINCAT_SCHEMA.to_string()
}

fn diagram_schema() -> String {
    DIAGRAM_SCHEMA.to_string()
}

fn split2<'a>(key: &'a str, seps: &[&str]) -> Option<(&'a str, &'a str)> {
    seps.iter()
        .find_map(|sep| key.split_once(sep))
        .map(|(a, b)| (a.trim(), b.trim()))
}

impl FinCatDoc {
    pub fn from_fincat(c: &FinCat) -> Self {
        let mut homs = BTreeMap::new();
        for a in c.objects() {
            for b in c.objects() {
                let h = c.hom(a, b);
                if !h.is_empty() {
                    homs.insert(
                        format!("{}→{}", c.object_name(a), c.object_name(b)),
                        h.iter().map(|&m| c.morphism_name(m).to_string()).collect(),
                    );
                }
            }
        }
        let mut compose = BTreeMap::new();
        for f in c.morphisms() {
            for &g in c.out_of(c.tgt(f)) {
                if c.is_identity(f) || c.is_identity(g) {
                    continue;
                }
                if let Some(h) = c.compose(g, f) {
                    compose.insert(
                        format!("{}∘{}", c.morphism_name(g), c.morphism_name(f)),
                        c.morphism_name(h).to_string(),
                    );
                }
            }
        }
        let identity = c
            .objects()
            .filter_map(|o| {
                c.try_identity(o)
                    .map(|m| (c.object_name(o).to_string(), c.morphism_name(m).to_string()))
            })
            .collect();
        FinCatDoc {
            schema: fincat_schema(),
            name: c.name().to_string(),
            objects: c.objects().map(|o| c.object_name(o).to_string()).collect(),
            homs,
            compose,
            identity,
        }
    }

    pub fn to_fincat(&self) -> Result<FinCat, JsonError> {
        if self.schema != FINCAT_SCHEMA {
            return Err(JsonError::Schema {
                expected: FINCAT_SCHEMA.into(),
                found: self.schema.clone(),
            });
        }
        let mut b = FinCatBuilder::new(self.name.clone());
        let mut objs = BTreeMap::new();
        for o in &self.objects {
            if objs.insert(o.clone(), b.object(o.clone())).is_some() {
                return invalid(format!("duplicate object {o}"));
            }
        }
        let obj = |name: &str| objs.get(name).copied();
        let mut mors: BTreeMap<String, MorId> = BTreeMap::new();
        // Morphism ids follow object order of the hom keys so that output is stable.
        let mut hom_entries: Vec<(ObjId, ObjId, &Vec<String>)> = Vec::new();
        for (key, list) in &self.homs {
            let Some((sa, sb)) = split2(key, &["→", "->"]) else {
                return invalid(format!("hom key {key} is not of the form a→b"));
            };
            let (Some(a), Some(bb)) = (obj(sa), obj(sb)) else {
                return invalid(format!("hom key {key} names an unknown object"));
            };
            hom_entries.push((a, bb, list));
        }
        hom_entries.sort_by_key(|&(a, b, _)| (a, b));
        for (a, bb, list) in hom_entries {
            for m in list {
                if mors.contains_key(m) {
                    return invalid(format!("duplicate morphism {m}"));
                }
                mors.insert(m.clone(), b.morphism(m.clone(), a, bb));
            }
        }
        let mor = |name: &str| match mors.get(name) {
            Some(&m) => Ok(m),
            None => invalid(format!("unknown morphism {name}")),
        };
        for (o, m) in &self.identity {
            let Some(oid) = obj(o) else {
                return invalid(format!("identity for unknown object {o}"));
            };
            b.set_identity(oid, mor(m)?);
        }
        for (key, h) in &self.compose {
            let Some((g, f)) = split2(key, &["∘", "*"]) else {
                return invalid(format!("compose key {key} is not of the form g∘f"));
            };
            b.compose(mor(g)?, mor(f)?, mor(h)?);
        }
        Ok(b.build())
    }

    pub fn parse(text: &str) -> Result<FinCat, JsonError> {
        let doc: FinCatDoc = serde_json::from_str(text)?;
        doc.to_fincat()
    }
}

/// A functor given by name: `{"obj_map": {"a": "x"}, "mor_map": {"f": "g"}}`.
///
/// Identities may be left out of `mor_map`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FunctorDoc {
    pub obj_map: BTreeMap<String, String>,
    #[serde(default)]
    pub mor_map: BTreeMap<String, String>,
}

impl FunctorDoc {
    pub fn from_functor(f: &Functor, src: &FinCat, tgt: &FinCat) -> Self {
        FunctorDoc {
            obj_map: src
                .objects()
                .map(|o| {
                    (
                        src.object_name(o).to_string(),
                        tgt.object_name(f.obj(o)).to_string(),
                    )
                })
                .collect(),
            mor_map: src
                .morphisms()
                .filter(|&m| !src.is_identity(m))
                .map(|m| {
                    (
                        src.morphism_name(m).to_string(),
                        tgt.morphism_name(f.mor(m)).to_string(),
                    )
                })
                .collect(),
        }
    }

    pub fn to_functor(&self, src: &FinCat, tgt: &FinCat) -> Result<Functor, JsonError> {
        let mut obj_map = Vec::with_capacity(src.num_objects());
        for o in src.objects() {
            let name = src.object_name(o);
            let Some(t) = self.obj_map.get(name) else {
                return invalid(format!("functor misses object {name}"));
            };
            let Some(to) = tgt.find_object(t) else {
                return invalid(format!("functor sends {name} to unknown object {t}"));
            };
            obj_map.push(to);
        }
        let mut mor_map = Vec::with_capacity(src.num_morphisms());
        for m in src.morphisms() {
            let name = src.morphism_name(m);
            let image = match self.mor_map.get(name) {
                Some(t) => match tgt.find_morphism(t) {
                    Some(tm) => tm,
                    None => {
                        return invalid(format!("functor sends {name} to unknown morphism {t}"))
                    }
                },
                None if src.is_identity(m) => match tgt.try_identity(obj_map[src.src(m).idx()]) {
                    Some(id) => id,
                    None => return invalid(format!("target of {name} has no identity")),
                },
                None => return invalid(format!("functor misses morphism {name}")),
            };
            mor_map.push(image);
        }
        Ok(Functor { obj_map, mor_map })
    }
}

/// `{"categories": {name: fincat}, "index": fincat, "nodes": {i: name}, "edges": {u: functor}}`.
///
/// Edges at identities of the index may be omitted, as may edges at
/// composites whose factors are present.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DiagramDoc {
    #[serde(default = "diagram_schema")]
    pub schema: String,
    pub categories: BTreeMap<String, FinCatDoc>,
    pub index: FinCatDoc,
    pub nodes: BTreeMap<String, String>,
    #[serde(default)]
    pub edges: BTreeMap<String, FunctorDoc>,
}

impl DiagramDoc {
    pub fn from_diagram(d: &Diagram) -> Self {
        let mut categories = BTreeMap::new();
        let mut nodes = BTreeMap::new();
        for i in d.index.objects() {
            let cat = d.node(i);
            let mut key = if cat.name().is_empty() {
                format!("C{}", i.0)
            } else {
                cat.name().to_string()
            };
            let doc = FinCatDoc::from_fincat(cat);
            if categories
                .get(&key)
                .is_some_and(|existing| *existing != doc)
            {
                key = format!("{key}#{}", i.0);
            }
            categories.insert(key.clone(), doc);
            nodes.insert(d.index.object_name(i).to_string(), key);
        }
        let edges = d
            .index
            .morphisms()
            .filter(|&u| !d.index.is_identity(u))
            .map(|u| {
                let src = d.node(d.index.src(u));
                let tgt = d.node(d.index.tgt(u));
                (
                    d.index.morphism_name(u).to_string(),
                    FunctorDoc::from_functor(d.edge(u), src, tgt),
                )
            })
            .collect();
        DiagramDoc {
            schema: diagram_schema(),
            categories,
            index: FinCatDoc::from_fincat(&d.index),
            nodes,
            edges,
        }
    }

    pub fn to_diagram(&self) -> Result<Diagram, JsonError> {
        if self.schema != DIAGRAM_SCHEMA {
            return Err(JsonError::Schema {
                expected: DIAGRAM_SCHEMA.into(),
                found: self.schema.clone(),
            });
        }
        let index = self.index.to_fincat()?;
        let mut built: BTreeMap<&str, Arc<FinCat>> = BTreeMap::new();
        for (name, doc) in &self.categories {
            let mut c = doc.to_fincat()?;
            if c.name().is_empty() {
                c = c.with_name(name.clone());
            }
            built.insert(name, Arc::new(c));
        }
        let mut nodes = Vec::new();
        for i in index.objects() {
            let iname = index.object_name(i);
            let Some(cname) = self.nodes.get(iname) else {
                return invalid(format!("no category for index object {iname}"));
            };
            let Some(c) = built.get(cname.as_str()) else {
                return invalid(format!("unknown category {cname}"));
            };
            nodes.push(c.clone());
        }
        let mut edges: Vec<Option<Arc<Functor>>> = vec![None; index.num_morphisms()];
        for u in index.morphisms() {
            let uname = index.morphism_name(u);
            if let Some(doc) = self.edges.get(uname) {
                let f = doc.to_functor(&nodes[index.src(u).idx()], &nodes[index.tgt(u).idx()])?;
                edges[u.idx()] = Some(Arc::new(f));
            } else if index.is_identity(u) {
                edges[u.idx()] = Some(Arc::new(Functor::identity(&nodes[index.src(u).idx()])));
            }
        }
        for key in self.edges.keys() {
            if index.find_morphism(key).is_none() {
                return invalid(format!("edge for unknown index morphism {key}"));
            }
        }
        // Fill missing composite edges from present factors.
        loop {
            let mut changed = false;
            for f in index.morphisms() {
                for &g in index.out_of(index.tgt(f)) {
                    let Some(h) = index.compose(g, f) else {
                        continue;
                    };
                    if edges[h.idx()].is_some() {
                        continue;
                    }
                    if let (Some(ef), Some(eg)) = (&edges[f.idx()], &edges[g.idx()]) {
                        edges[h.idx()] = Some(Arc::new(eg.after(ef)));
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut out = Vec::with_capacity(edges.len());
        for (u, e) in edges.into_iter().enumerate() {
            match e {
                Some(e) => out.push(e),
                None => {
                    return invalid(format!(
                        "no functor for index morphism {}",
                        index.morphism_name(MorId::from(u))
                    ))
                }
            }
        }
        Ok(Diagram {
            index,
            nodes,
            edges: out,
        })
    }

    pub fn parse(text: &str) -> Result<Diagram, JsonError> {
        let doc: DiagramDoc = serde_json::from_str(text)?;
        doc.to_diagram()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::validate_fincat;

    #[test]
    fn fincat_round_trip() {
        let c = FinCat::ordinal(2);
        let doc = FinCatDoc::from_fincat(&c);
        let text = serde_json::to_string(&doc).unwrap();
        let back = FinCatDoc::parse(&text).unwrap();
        assert!(validate_fincat(&back).is_empty());
        assert_eq!(FinCatDoc::from_fincat(&back), doc);
    }

    #[test]
    fn wrong_schema_is_rejected() {
        let mut doc = FinCatDoc::from_fincat(&FinCat::terminal());
        doc.schema = "fincat/v0".into();
        assert!(matches!(doc.to_fincat(), Err(JsonError::Schema { .. })));
    }
}
