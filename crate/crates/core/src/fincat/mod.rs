//! Finite categories, functors between them, and diagrams of finite categories.
//!
//! Categories are stored as explicit tables: every morphism has an id, a
//! source and a target, and composition is a lookup. This is the data model
//! every other module builds on.

mod json;
pub mod oracle;
pub mod present;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use json::{DiagramDoc, FinCatDoc, FunctorDoc, JsonError};
pub use oracle::{oracle_hom, OracleError, OracleTable, Word};
pub use present::{
    present_colimit, ColimitPresentation, FinPresCat, GenId, Generator, Path, Relation,
};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ObjId(pub u32);

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MorId(pub u32);

impl ObjId {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl MorId {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for ObjId {
    fn from(i: usize) -> Self {
        ObjId(i as u32)
    }
}

impl From<usize> for MorId {
    fn from(i: usize) -> Self {
        MorId(i as u32)
    }
}

const NONE: u32 = u32::MAX;
const DENSE_LIMIT: usize = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub src: ObjId,
    pub tgt: ObjId,
}

#[derive(Clone, Debug)]
enum ComposeTable {
    Dense { width: usize, table: Vec<u32> },
    Sparse(HashMap<(u32, u32), u32>),
}

impl ComposeTable {
    fn new(width: usize) -> Self {
        if width.saturating_mul(width) <= DENSE_LIMIT {
            ComposeTable::Dense {
                width,
                table: vec![NONE; width * width],
            }
        } else {
            ComposeTable::Sparse(HashMap::new())
        }
    }

    fn get(&self, g: MorId, f: MorId) -> Option<MorId> {
        match self {
            ComposeTable::Dense { width, table } => {
                let v = table[g.idx() * width + f.idx()];
                (v != NONE).then_some(MorId(v))
            }
            ComposeTable::Sparse(map) => map.get(&(g.0, f.0)).map(|&v| MorId(v)),
        }
    }

    fn set(&mut self, g: MorId, f: MorId, h: MorId) {
        match self {
            ComposeTable::Dense { width, table } => table[g.idx() * *width + f.idx()] = h.0,
            ComposeTable::Sparse(map) => {
                map.insert((g.0, f.0), h.0);
            }
        }
    }
}

/// A finite category given by explicit object, morphism and composition tables.
#[derive(Clone, Debug)]
pub struct FinCat {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<u32>,
    compose: ComposeTable,
    homs: Vec<Vec<MorId>>,
    out: Vec<Vec<MorId>>,
    into: Vec<Vec<MorId>>,
}

/// Incremental constructor for [`FinCat`].
#[derive(Clone, Debug, Default)]
pub struct FinCatBuilder {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<u32>,
    compose: Vec<(MorId, MorId, MorId)>,
}

impl FinCatBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn object(&mut self, name: impl Into<String>) -> ObjId {
        self.objects.push(name.into());
        self.identity.push(NONE);
        ObjId::from(self.objects.len() - 1)
    }

    /// Adds an object together with its identity morphism `id_<name>`.
    pub fn object_with_identity(&mut self, name: impl Into<String>) -> ObjId {
        let name = name.into();
        let o = self.object(name.clone());
        let id = self.morphism(format!("id_{name}"), o, o);
        self.identity[o.idx()] = id.0;
        o
    }

    pub fn morphism(&mut self, name: impl Into<String>, src: ObjId, tgt: ObjId) -> MorId {
        self.morphisms.push(Morphism {
            name: name.into(),
            src,
            tgt,
        });
        MorId::from(self.morphisms.len() - 1)
    }

    pub fn set_identity(&mut self, o: ObjId, m: MorId) {
        self.identity[o.idx()] = m.0;
    }

    /// Records `g ∘ f = h`.
    pub fn compose(&mut self, g: MorId, f: MorId, h: MorId) {
        self.compose.push((g, f, h));
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    /// Finishes the table. Composites with an identity that were not given
    /// explicitly are filled in by the unit laws; nothing else is checked here
    /// (see [`validate_fincat`]).
    pub fn build(self) -> FinCat {
        let n = self.objects.len();
        let m = self.morphisms.len();
        let mut compose = ComposeTable::new(m);
        for &(g, f, h) in &self.compose {
            compose.set(g, f, h);
        }
        for (fi, f) in self.morphisms.iter().enumerate() {
            let f_id = MorId::from(fi);
            let id_tgt = self.identity[f.tgt.idx()];
            if id_tgt != NONE && compose.get(MorId(id_tgt), f_id).is_none() {
                compose.set(MorId(id_tgt), f_id, f_id);
            }
            let id_src = self.identity[f.src.idx()];
            if id_src != NONE && compose.get(f_id, MorId(id_src)).is_none() {
                compose.set(f_id, MorId(id_src), f_id);
            }
        }
        let mut homs = vec![Vec::new(); n * n];
        let mut out = vec![Vec::new(); n];
        let mut into = vec![Vec::new(); n];
        for (i, mor) in self.morphisms.iter().enumerate() {
            homs[mor.src.idx() * n + mor.tgt.idx()].push(MorId::from(i));
            out[mor.src.idx()].push(MorId::from(i));
            into[mor.tgt.idx()].push(MorId::from(i));
        }
        FinCat {
            name: self.name,
            objects: self.objects,
            morphisms: self.morphisms,
            identity: self.identity,
            compose,
            homs,
            out,
            into,
        }
    }
}

impl FinCat {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> + '_ {
        (0..self.objects.len()).map(ObjId::from)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> + '_ {
        (0..self.morphisms.len()).map(MorId::from)
    }

    pub fn object_name(&self, o: ObjId) -> &str {
        &self.objects[o.idx()]
    }

    pub fn morphism(&self, m: MorId) -> &Morphism {
        &self.morphisms[m.idx()]
    }

    pub fn morphism_name(&self, m: MorId) -> &str {
        &self.morphisms[m.idx()].name
    }

    pub fn src(&self, m: MorId) -> ObjId {
        self.morphisms[m.idx()].src
    }

    pub fn tgt(&self, m: MorId) -> ObjId {
        self.morphisms[m.idx()].tgt
    }

    pub fn try_identity(&self, o: ObjId) -> Option<MorId> {
        let v = self.identity[o.idx()];
        (v != NONE).then_some(MorId(v))
    }

    /// Identity at `o`. Panics if the table has none; validated categories always do.
    pub fn identity(&self, o: ObjId) -> MorId {
        self.try_identity(o).unwrap_or_else(|| {
            panic!(
                "object {} of {} has no identity",
                self.object_name(o),
                self.name
            )
        })
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        self.identity[self.src(m).idx()] == m.0
    }

    /// `g ∘ f`, if recorded.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        if self.tgt(f) != self.src(g) {
            return None;
        }
        self.compose.get(g, f)
    }

    /// Composite of a nonempty sequence applied left to right (`fs[0]` first).
    pub fn compose_seq(&self, fs: &[MorId]) -> Option<MorId> {
        let (&first, rest) = fs.split_first()?;
        rest.iter().try_fold(first, |acc, &g| self.compose(g, acc))
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        &self.homs[a.idx() * self.objects.len() + b.idx()]
    }

    pub fn out_of(&self, a: ObjId) -> &[MorId] {
        &self.out[a.idx()]
    }

    pub fn into(&self, b: ObjId) -> &[MorId] {
        &self.into[b.idx()]
    }

    pub fn find_object(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == name).map(ObjId::from)
    }

    pub fn find_morphism(&self, name: &str) -> Option<MorId> {
        self.morphisms
            .iter()
            .position(|m| m.name == name)
            .map(MorId::from)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// The terminal category: one object, one morphism.
    pub fn terminal() -> Self {
        let mut b = FinCatBuilder::new("1");
        b.object_with_identity("*");
        b.build()
    }

    /// `0 → 1`.
    pub fn walking_arrow() -> Self {
        let mut b = FinCatBuilder::new("2");
        let a = b.object_with_identity("0");
        let c = b.object_with_identity("1");
        b.morphism("f", a, c);
        b.build()
    }

    pub fn discrete(n: usize) -> Self {
        let mut b = FinCatBuilder::new(format!("disc{n}"));
        for i in 0..n {
            b.object_with_identity(i.to_string());
        }
        b.build()
    }

    /// The poset category of `0 ≤ 1 ≤ … ≤ n`.
    pub fn ordinal(n: usize) -> Self {
        let mut b = FinCatBuilder::new(format!("[{n}]"));
        let objs: Vec<_> = (0..=n).map(|i| b.object(i.to_string())).collect();
        let mut arrow = HashMap::new();
        for i in 0..=n {
            for j in i..=n {
                let m = b.morphism(format!("{i}<{j}"), objs[i], objs[j]);
                arrow.insert((i, j), m);
                if i == j {
                    b.set_identity(objs[i], m);
                }
            }
        }
        for i in 0..=n {
            for j in i..=n {
                for k in j..=n {
                    b.compose(arrow[&(j, k)], arrow[&(i, j)], arrow[&(i, k)]);
                }
            }
        }
        b.build()
    }
}

/// A failed category law, as reported by [`validate_fincat`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LawViolation {
    MissingIdentity { object: String },
    IdentityNotEndo { object: String },
    LeftUnit { morphism: String },
    RightUnit { morphism: String },
    MissingComposite { g: String, f: String },
    CompositeEndpoints { g: String, f: String },
    Associativity { h: String, g: String, f: String },
}

impl fmt::Display for LawViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LawViolation::MissingIdentity { object } => write!(f, "no identity at {object}"),
            LawViolation::IdentityNotEndo { object } => {
                write!(f, "identity at {object} is not an endomorphism")
            }
            LawViolation::LeftUnit { morphism } => write!(f, "id ∘ {morphism} ≠ {morphism}"),
            LawViolation::RightUnit { morphism } => write!(f, "{morphism} ∘ id ≠ {morphism}"),
            LawViolation::MissingComposite { g, f: ff } => write!(f, "{g} ∘ {ff} undefined"),
            LawViolation::CompositeEndpoints { g, f: ff } => {
                write!(f, "{g} ∘ {ff} has wrong endpoints")
            }
            LawViolation::Associativity { h, g, f: ff } => {
                write!(f, "({h} ∘ {g}) ∘ {ff} ≠ {h} ∘ ({g} ∘ {ff})")
            }
        }
    }
}

/// Checks identity, unit, closure and associativity laws by exhaustive table scan.
pub fn validate_fincat(c: &FinCat) -> Vec<LawViolation> {
    let mut out = Vec::new();
    for o in c.objects() {
        match c.try_identity(o) {
            None => out.push(LawViolation::MissingIdentity {
                object: c.object_name(o).to_string(),
            }),
            Some(id) if c.src(id) != o || c.tgt(id) != o => {
                out.push(LawViolation::IdentityNotEndo {
                    object: c.object_name(o).to_string(),
                })
            }
            _ => {}
        }
    }
    if !out.is_empty() {
        return out;
    }
    for f in c.morphisms() {
        let name = c.morphism_name(f).to_string();
        if c.compose(c.identity(c.tgt(f)), f) != Some(f) {
            out.push(LawViolation::LeftUnit {
                morphism: name.clone(),
            });
        }
        if c.compose(f, c.identity(c.src(f))) != Some(f) {
            out.push(LawViolation::RightUnit { morphism: name });
        }
    }
    let mut closed = true;
    for f in c.morphisms() {
        for &g in c.out_of(c.tgt(f)) {
            match c.compose(g, f) {
                None => {
                    closed = false;
                    out.push(LawViolation::MissingComposite {
                        g: c.morphism_name(g).to_string(),
                        f: c.morphism_name(f).to_string(),
                    });
                }
                Some(h) if c.src(h) != c.src(f) || c.tgt(h) != c.tgt(g) => {
                    closed = false;
                    out.push(LawViolation::CompositeEndpoints {
                        g: c.morphism_name(g).to_string(),
                        f: c.morphism_name(f).to_string(),
                    });
                }
                _ => {}
            }
        }
    }
    if !closed {
        return out;
    }
    for f in c.morphisms() {
        for &g in c.out_of(c.tgt(f)) {
            let gf = c.compose(g, f).expect("closed");
            for &h in c.out_of(c.tgt(g)) {
                let hg = c.compose(h, g).expect("closed");
                if c.compose(hg, f) != c.compose(h, gf) {
                    out.push(LawViolation::Associativity {
                        h: c.morphism_name(h).to_string(),
                        g: c.morphism_name(g).to_string(),
                        f: c.morphism_name(f).to_string(),
                    });
                }
            }
        }
    }
    out
}

/// A functor between finite categories, stored as object and morphism maps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Functor {
    pub obj_map: Vec<ObjId>,
    pub mor_map: Vec<MorId>,
}

impl Functor {
    pub fn identity(c: &FinCat) -> Self {
        Functor {
            obj_map: c.objects().collect(),
            mor_map: c.morphisms().collect(),
        }
    }

    pub fn obj(&self, o: ObjId) -> ObjId {
        self.obj_map[o.idx()]
    }

    pub fn mor(&self, m: MorId) -> MorId {
        self.mor_map[m.idx()]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Functor) -> Functor {
        Functor {
            obj_map: first.obj_map.iter().map(|&o| self.obj(o)).collect(),
            mor_map: first.mor_map.iter().map(|&m| self.mor(m)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctorViolation {
    WrongArity,
    Endpoints { morphism: String },
    Identity { object: String },
    Composition { g: String, f: String },
}

/// Exhaustive check that `fun` is a functor `src → tgt`.
pub fn validate_functor(fun: &Functor, src: &FinCat, tgt: &FinCat) -> Vec<FunctorViolation> {
    if fun.obj_map.len() != src.num_objects()
        || fun.mor_map.len() != src.num_morphisms()
        || fun.obj_map.iter().any(|o| o.idx() >= tgt.num_objects())
        || fun.mor_map.iter().any(|m| m.idx() >= tgt.num_morphisms())
    {
        return vec![FunctorViolation::WrongArity];
    }
    let mut out = Vec::new();
    for f in src.morphisms() {
        let img = fun.mor(f);
        if tgt.src(img) != fun.obj(src.src(f)) || tgt.tgt(img) != fun.obj(src.tgt(f)) {
            out.push(FunctorViolation::Endpoints {
                morphism: src.morphism_name(f).to_string(),
            });
        }
    }
    for o in src.objects() {
        if let (Some(id), Some(id2)) = (src.try_identity(o), tgt.try_identity(fun.obj(o))) {
            if fun.mor(id) != id2 {
                out.push(FunctorViolation::Identity {
                    object: src.object_name(o).to_string(),
                });
            }
        }
    }
    for f in src.morphisms() {
        for &g in src.out_of(src.tgt(f)) {
            if let Some(gf) = src.compose(g, f) {
                if tgt.compose(fun.mor(g), fun.mor(f)) != Some(fun.mor(gf)) {
                    out.push(FunctorViolation::Composition {
                        g: src.morphism_name(g).to_string(),
                        f: src.morphism_name(f).to_string(),
                    });
                }
            }
        }
    }
    out
}

/// A diagram `F : J → Cat` with finite index and finite node categories.
///
/// `edges` is indexed by the morphisms of `index`, identities included.
#[derive(Clone, Debug)]
pub struct Diagram {
    pub index: FinCat,
    pub nodes: Vec<Arc<FinCat>>,
    pub edges: Vec<Arc<Functor>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagramViolation {
    Index(LawViolation),
    Node {
        node: String,
        law: LawViolation,
    },
    Edge {
        edge: String,
        violation: FunctorViolation,
    },
    IdentityEdge {
        object: String,
    },
    Functoriality {
        v: String,
        u: String,
    },
    Shape,
}

impl Diagram {
    pub fn node(&self, i: ObjId) -> &FinCat {
        &self.nodes[i.idx()]
    }

    pub fn edge(&self, u: MorId) -> &Functor {
        &self.edges[u.idx()]
    }

    /// `ũ(a)` for an object `a` of the source node of `u`.
    pub fn push_obj(&self, u: MorId, a: ObjId) -> ObjId {
        self.edges[u.idx()].obj(a)
    }

    pub fn push_mor(&self, u: MorId, f: MorId) -> MorId {
        self.edges[u.idx()].mor(f)
    }

    /// Every `(i, a)` with `a ∈ Ob(C_i)`, in index order.
    pub fn elements(&self) -> Vec<(ObjId, ObjId)> {
        self.index
            .objects()
            .flat_map(|i| self.node(i).objects().map(move |a| (i, a)))
            .collect()
    }

    pub fn validate(&self) -> Vec<DiagramViolation> {
        let j = &self.index;
        if self.nodes.len() != j.num_objects() || self.edges.len() != j.num_morphisms() {
            return vec![DiagramViolation::Shape];
        }
        let mut out: Vec<_> = validate_fincat(j)
            .into_iter()
            .map(DiagramViolation::Index)
            .collect();
        for i in j.objects() {
            for law in validate_fincat(self.node(i)) {
                out.push(DiagramViolation::Node {
                    node: j.object_name(i).to_string(),
                    law,
                });
            }
        }
        if !out.is_empty() {
            return out;
        }
        for u in j.morphisms() {
            let src = self.node(j.src(u));
            let tgt = self.node(j.tgt(u));
            for violation in validate_functor(self.edge(u), src, tgt) {
                out.push(DiagramViolation::Edge {
                    edge: j.morphism_name(u).to_string(),
                    violation,
                });
            }
        }
        if !out.is_empty() {
            return out;
        }
        for i in j.objects() {
            if *self.edge(j.identity(i)) != Functor::identity(self.node(i)) {
                out.push(DiagramViolation::IdentityEdge {
                    object: j.object_name(i).to_string(),
                });
            }
        }
        for u in j.morphisms() {
            for &v in j.out_of(j.tgt(u)) {
                let vu = j.compose(v, u).expect("index validated");
                if self.edge(v).after(self.edge(u)) != *self.edge(vu) {
                    out.push(DiagramViolation::Functoriality {
                        v: j.morphism_name(v).to_string(),
                        u: j.morphism_name(u).to_string(),
                    });
                }
            }
        }
        out
    }

    /// The diagram over the terminal index category at `c`.
    pub fn constant(c: FinCat) -> Self {
        let id = Functor::identity(&c);
        Diagram {
            index: FinCat::terminal(),
            nodes: vec![Arc::new(c)],
            edges: vec![Arc::new(id)],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn walking_arrow_is_valid() {
        assert!(validate_fincat(&FinCat::walking_arrow()).is_empty());
        assert!(validate_fincat(&FinCat::terminal()).is_empty());
        assert!(validate_fincat(&FinCat::ordinal(3)).is_empty());
    }

    #[test]
    fn associativity_violation_is_reported() {
        // One object, morphisms id, a, b with a∘a = b, b∘a = a, a∘b = b, b∘b = b.
        // Then (a∘a)∘a = b∘a = a but a∘(a∘a) = a∘b = b.
        let mut bld = FinCatBuilder::new("bad");
        let o = bld.object_with_identity("*");
        let a = bld.morphism("a", o, o);
        let b = bld.morphism("b", o, o);
        bld.compose(a, a, b);
        bld.compose(b, a, a);
        bld.compose(a, b, b);
        bld.compose(b, b, b);
        let c = bld.build();
        let report = validate_fincat(&c);
        assert!(
            report
                .iter()
                .any(|v| matches!(v, LawViolation::Associativity { .. })),
            "{report:?}"
        );
    }

    #[test]
    fn missing_composite_is_reported() {
        let mut bld = FinCatBuilder::new("open");
        let x = bld.object_with_identity("x");
        let y = bld.object_with_identity("y");
        let z = bld.object_with_identity("z");
        bld.morphism("f", x, y);
        bld.morphism("g", y, z);
        let report = validate_fincat(&bld.build());
        assert_eq!(
            report,
            vec![LawViolation::MissingComposite {
                g: "g".into(),
                f: "f".into()
            }]
        );
    }

    #[test]
    fn constant_diagram_validates() {
        let d = Diagram::constant(FinCat::walking_arrow());
        assert!(d.validate().is_empty());
    }
}
