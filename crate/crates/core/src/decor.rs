//! Decorations of zig-zags by a diagram of categories, and the action of cells on them.

use std::cmp::Ordering;
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fincat::{Diagram, FinCat, JsonError, MorId, ObjId};
use crate::zigzag::{concat, validate_cell, Orientation, ZigZag, ZigZagCell, ZigZagDoc};

/// A zig-zag `i₀ ⇝ i_n` in the index together with apex objects `a_k ∈ C_{j_k}`
/// and a chain `f₀ : a → l̃₁(a₁)`, `f_k : r̃_k(a_k) → l̃_{k+1}(a_{k+1})`,
/// `f_n : r̃_n(a_n) → b`, where `f_k` lives in `C_{i_k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecoratedZigZag {
    pub base: ZigZag,
    pub apex_objects: Vec<ObjId>,
    pub chain: Vec<MorId>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DecorError {
    #[error("endpoint mismatch")]
    Endpoints,
    #[error("decoration base does not match cell source")]
    Base,
    #[error("invalid cell: {0}")]
    Cell(String),
    #[error("invalid decoration: {0}")]
    Invalid(String),
}

/// A morphism `u : i → i'` of the index viewed as an arrow `(i, a) → (i', ũ(a))`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementArrow {
    pub u: MorId,
    pub a: ObjId,
}

impl ElementArrow {
    pub fn source(&self, d: &Diagram) -> (ObjId, ObjId) {
        (d.index.src(self.u), self.a)
    }

    pub fn target(&self, d: &Diagram) -> (ObjId, ObjId) {
        (d.index.tgt(self.u), d.push_obj(self.u, self.a))
    }
}

impl DecoratedZigZag {
    /// A morphism `f` of `C_i`, decorating the trivial zig-zag `{i}`.
    pub fn trivial(i: ObjId, f: MorId) -> Self {
        DecoratedZigZag {
            base: ZigZag::trivial(i),
            apex_objects: Vec::new(),
            chain: vec![f],
        }
    }

    pub fn identity(d: &Diagram, i: ObjId, a: ObjId) -> Self {
        Self::trivial(i, d.node(i).identity(a))
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_trivial()
    }

    /// `(i₀, a)`.
    pub fn start(&self, d: &Diagram) -> (ObjId, ObjId) {
        let i = self.base.first();
        (i, d.node(i).src(self.chain[0]))
    }

    /// `(i_n, b)`.
    pub fn end(&self, d: &Diagram) -> (ObjId, ObjId) {
        let i = self.base.last();
        (
            i,
            d.node(i).tgt(*self.chain.last().expect("nonempty chain")),
        )
    }

    /// Compact key `[n, i₀, (l_k, r_k, a_k)…, f₀ … f_n]`. Keys order items by
    /// length first; this is the canonical order used for representatives.
    pub fn encode(&self) -> Vec<u32> {
        let n = self.len();
        let mut key = Vec::with_capacity(3 + 4 * n);
        key.push(n as u32);
        key.push(self.base.first().0);
        for k in 0..n {
            key.push(self.base.lefts[k].0);
            key.push(self.base.rights[k].0);
            key.push(self.apex_objects[k].0);
        }
        key.extend(self.chain.iter().map(|f| f.0));
        key
    }

    /// Inverse of [`encode`](Self::encode); feet and apexes are read off the legs.
    pub fn decode(j: &FinCat, key: &[u32]) -> Self {
        let n = key[0] as usize;
        let mut feet = Vec::with_capacity(n + 1);
        feet.push(ObjId(key[1]));
        let mut apexes = Vec::with_capacity(n);
        let mut lefts = Vec::with_capacity(n);
        let mut rights = Vec::with_capacity(n);
        let mut apex_objects = Vec::with_capacity(n);
        for k in 0..n {
            let (l, r) = (MorId(key[2 + 3 * k]), MorId(key[3 + 3 * k]));
            apexes.push(j.src(l));
            feet.push(j.tgt(r));
            lefts.push(l);
            rights.push(r);
            apex_objects.push(ObjId(key[4 + 3 * k]));
        }
        DecoratedZigZag {
            base: ZigZag {
                feet,
                apexes,
                lefts,
                rights,
            },
            apex_objects,
            chain: key[2 + 3 * n..].iter().map(|&f| MorId(f)).collect(),
        }
    }

    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.encode().cmp(&other.encode())
    }

    pub fn validate(&self, d: &Diagram) -> Vec<String> {
        let j = &d.index;
        let mut out = self.base.validate(j);
        let n = self.base.len();
        if self.apex_objects.len() != n || self.chain.len() != n + 1 {
            out.push("inconsistent lengths".into());
        }
        if !out.is_empty() {
            return out;
        }
        for k in 0..n {
            if self.apex_objects[k].idx() >= d.node(self.base.apexes[k]).num_objects() {
                out.push(format!("apex object {} out of range", k + 1));
            }
        }
        for k in 0..=n {
            if self.chain[k].idx() >= d.node(self.base.feet[k]).num_morphisms() {
                out.push(format!("chain entry {k} out of range"));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for k in 0..=n {
            let c = d.node(self.base.feet[k]);
            let f = self.chain[k];
            if k > 0 {
                let want = d.push_obj(self.base.rights[k - 1], self.apex_objects[k - 1]);
                if c.src(f) != want {
                    out.push(format!("chain entry {k} has the wrong source"));
                }
            }
            if k < n {
                let want = d.push_obj(self.base.lefts[k], self.apex_objects[k]);
                if c.tgt(f) != want {
                    out.push(format!("chain entry {k} has the wrong target"));
                }
            }
        }
        out
    }

    pub fn render(&self, d: &Diagram) -> String {
        let j = &d.index;
        let mut s = String::new();
        for k in 0..=self.len() {
            let i = self.base.feet[k];
            let _ = write!(
                s,
                "{}:{}",
                j.object_name(i),
                d.node(i).morphism_name(self.chain[k])
            );
            if k < self.len() {
                let a = self.base.apexes[k];
                let _ = write!(
                    s,
                    " ←{}─ {}:{} ─{}→ ",
                    j.morphism_name(self.base.lefts[k]),
                    j.object_name(a),
                    d.node(a).object_name(self.apex_objects[k]),
                    j.morphism_name(self.base.rights[k])
                );
            }
        }
        s
    }
}

/// Concatenates bases and fuses the last entry of `d1` with the first of `d2`.
pub fn compose_decorated(
    d: &Diagram,
    d1: &DecoratedZigZag,
    d2: &DecoratedZigZag,
) -> Result<DecoratedZigZag, DecorError> {
    if d1.end(d) != d2.start(d) {
        return Err(DecorError::Endpoints);
    }
    let base = concat(&d1.base, &d2.base).map_err(|_| DecorError::Endpoints)?;
    let c = d.node(d1.base.last());
    let mid = c
        .compose(d2.chain[0], *d1.chain.last().unwrap())
        .ok_or(DecorError::Endpoints)?;
    let mut chain = d1.chain[..d1.chain.len() - 1].to_vec();
    chain.push(mid);
    chain.extend_from_slice(&d2.chain[1..]);
    let mut apex_objects = d1.apex_objects.clone();
    apex_objects.extend_from_slice(&d2.apex_objects);
    Ok(DecoratedZigZag {
        base,
        apex_objects,
        chain,
    })
}

/// `ρ*`: push every chain entry down its foot component, then compose the
/// entries over each preimage block of `θ`. The cell is assumed valid.
pub fn apply_cell_unchecked(
    d: &Diagram,
    rho: &ZigZagCell,
    dz: &DecoratedZigZag,
) -> DecoratedZigZag {
    let th = &rho.theta;
    let m = th.m();
    let mut chain: Vec<Option<MorId>> = vec![None; m + 1];
    for k in 0..=dz.len() {
        let t = th.at(k);
        let pushed = d.push_mor(rho.foot_components[k], dz.chain[k]);
        chain[t] = Some(match chain[t] {
            None => pushed,
            Some(acc) => d
                .node(rho.target.feet[t])
                .compose(pushed, acc)
                .expect("a valid cell makes pushed entries composable"),
        });
    }
    let mut apex_objects = vec![ObjId(0); m];
    for k in 1..=dz.len() {
        if th.advances(k) {
            apex_objects[th.at(k) - 1] =
                d.push_obj(rho.apex_components[k - 1], dz.apex_objects[k - 1]);
        }
    }
    DecoratedZigZag {
        base: rho.target.clone(),
        apex_objects,
        chain: chain
            .into_iter()
            .map(|f| f.expect("θ is surjective"))
            .collect(),
    }
}

pub fn apply_cell(
    d: &Diagram,
    rho: &ZigZagCell,
    dz: &DecoratedZigZag,
) -> Result<DecoratedZigZag, DecorError> {
    if rho.source != dz.base {
        return Err(DecorError::Base);
    }
    if let Some(v) = validate_cell(&d.index, rho).first() {
        return Err(DecorError::Cell(v.to_string()));
    }
    Ok(apply_cell_unchecked(d, rho, dz))
}

/// A 2-cell of decorated zig-zags: `ρ` with `ρ*(source) = target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedCell {
    pub rho: ZigZagCell,
    pub source: DecoratedZigZag,
    pub target: DecoratedZigZag,
}

impl DecoratedCell {
    pub fn from_action(
        d: &Diagram,
        rho: ZigZagCell,
        source: DecoratedZigZag,
    ) -> Result<Self, DecorError> {
        let target = apply_cell(d, &rho, &source)?;
        Ok(DecoratedCell {
            rho,
            source,
            target,
        })
    }

    /// Left boundary vertical `(i, a) → (i', a')`.
    pub fn left_boundary(&self, d: &Diagram) -> ElementArrow {
        ElementArrow {
            u: self.rho.first_component(),
            a: self.source.start(d).1,
        }
    }

    /// Right boundary vertical `(j, b) → (j', b')`.
    pub fn right_boundary(&self, d: &Diagram) -> ElementArrow {
        ElementArrow {
            u: self.rho.last_component(),
            a: self.source.end(d).1,
        }
    }
}

/// Recomputes the action and compares; empty iff the cell is valid.
pub fn validate_decorated_cell(d: &Diagram, c: &DecoratedCell) -> Vec<String> {
    let mut out: Vec<String> = c
        .source
        .validate(d)
        .into_iter()
        .map(|e| format!("source: {e}"))
        .collect();
    out.extend(
        c.target
            .validate(d)
            .into_iter()
            .map(|e| format!("target: {e}")),
    );
    if !out.is_empty() {
        return out;
    }
    match apply_cell(d, &c.rho, &c.source) {
        Err(e) => out.push(e.to_string()),
        Ok(t) => {
            if t != c.target {
                out.push("ρ* of the source differs from the target".into());
            }
        }
    }
    out
}

/// The identity-decorated zig-zag of a path of element arrows starting at `(i, a)`.
///
/// A `Forward` step `u` goes `(i, a) → (i', ũ(a))` and becomes the roof
/// `i ←id i →u i'`; a `Backward` step goes `(i', ũ(a)) ← (i, a)` and becomes
/// `i' ←u i →id i`.
pub fn identity_decoration(
    d: &Diagram,
    start: (ObjId, ObjId),
    path: &[(ElementArrow, Orientation)],
) -> Result<DecoratedZigZag, DecorError> {
    let j = &d.index;
    let (mut i, mut a) = start;
    let mut out = DecoratedZigZag::identity(d, i, a);
    for (arrow, o) in path {
        let (s, t) = (arrow.source(d), arrow.target(d));
        let (here, there) = match o {
            Orientation::Forward => (s, t),
            Orientation::Backward => (t, s),
        };
        if here != (i, a) {
            return Err(DecorError::Endpoints);
        }
        let apex = j.src(arrow.u);
        let id = j.identity(apex);
        let (l, r) = match o {
            Orientation::Forward => (id, arrow.u),
            Orientation::Backward => (arrow.u, id),
        };
        out.base.feet.push(there.0);
        out.base.apexes.push(apex);
        out.base.lefts.push(l);
        out.base.rights.push(r);
        out.apex_objects.push(arrow.a);
        out.chain.push(d.node(there.0).identity(there.1));
        (i, a) = there;
    }
    Ok(out)
}

pub const DECORATED_SCHEMA: &str = "decorated/v1";

fn schema() -> String {
    DECORATED_SCHEMA.to_string()
}

/// `decorated/v1`: names of the base, the apex objects and the chain, against a diagram document.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DecoratedDoc {
    #[serde(default = "schema")]
    pub schema: String,
    #[serde(default)]
    pub diagram: Option<String>,
    pub base: ZigZagDoc,
    pub apex_objects: Vec<String>,
    pub chain: Vec<String>,
}

impl DecoratedDoc {
    pub fn from_decorated(d: &Diagram, z: &DecoratedZigZag) -> Self {
        DecoratedDoc {
            schema: schema(),
            diagram: None,
            base: ZigZagDoc::from_zigzag(&d.index, &z.base),
            apex_objects: z
                .apex_objects
                .iter()
                .zip(&z.base.apexes)
                .map(|(&a, &j)| d.node(j).object_name(a).to_string())
                .collect(),
            chain: z
                .chain
                .iter()
                .zip(&z.base.feet)
                .map(|(&f, &i)| d.node(i).morphism_name(f).to_string())
                .collect(),
        }
    }

    pub fn to_decorated(&self, d: &Diagram) -> Result<DecoratedZigZag, JsonError> {
        if self.schema != DECORATED_SCHEMA {
            return Err(JsonError::Schema {
                expected: DECORATED_SCHEMA.into(),
                found: self.schema.clone(),
            });
        }
        let base = self.base.to_zigzag(&d.index)?;
        if self.apex_objects.len() != base.len() || self.chain.len() != base.len() + 1 {
            return Err(JsonError::Invalid(
                "decoration length does not match base".into(),
            ));
        }
        let apex_objects = self
            .apex_objects
            .iter()
            .zip(&base.apexes)
            .map(|(n, &j)| {
                d.node(j)
                    .find_object(n)
                    .ok_or_else(|| JsonError::Invalid(format!("unknown object {n}")))
            })
            .collect::<Result<_, _>>()?;
        let chain = self
            .chain
            .iter()
            .zip(&base.feet)
            .map(|(n, &i)| {
                d.node(i)
                    .find_morphism(n)
                    .ok_or_else(|| JsonError::Invalid(format!("unknown morphism {n}")))
            })
            .collect::<Result<_, _>>()?;
        let z = DecoratedZigZag {
            base,
            apex_objects,
            chain,
        };
        match z.validate(d).first() {
            Some(e) => Err(JsonError::Invalid(e.clone())),
            None => Ok(z),
        }
    }
}

fn esc(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Feet on a line labelled by their chain entry, apexes raised with their objects.
pub fn decorated_to_dot(d: &Diagram, z: &DecoratedZigZag) -> String {
    let j = &d.index;
    let mut out = String::from("digraph decorated {\n  layout=neato;\n  node [shape=box];\n");
    for (k, &i) in z.base.feet.iter().enumerate() {
        let _ = writeln!(
            out,
            "  f{k} [label=\"{} | {}\", pos=\"{},0!\"];",
            esc(j.object_name(i)),
            esc(d.node(i).morphism_name(z.chain[k])),
            2 * k
        );
    }
    for k in 0..z.len() {
        let a = z.base.apexes[k];
        let _ = writeln!(
            out,
            "  a{k} [label=\"{} | {}\", pos=\"{},1!\"];",
            esc(j.object_name(a)),
            esc(d.node(a).object_name(z.apex_objects[k])),
            2 * k + 1
        );
        let _ = writeln!(
            out,
            "  a{k} -> f{k} [label=\"{}\"];",
            esc(j.morphism_name(z.base.lefts[k]))
        );
        let _ = writeln!(
            out,
            "  a{k} -> f{} [label=\"{}\"];",
            k + 1,
            esc(j.morphism_name(z.base.rights[k]))
        );
    }
    out.push_str("}\n");
    out
}
