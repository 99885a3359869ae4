//! Zig-zags in an index category and the 2-cells between them.

mod io;

use std::fmt;

use thiserror::Error;

use crate::fincat::{FinCat, MorId, ObjId};

pub use io::{cell_to_dot, zigzag_to_dot, CellDoc, ZigZagDoc};

/// `i₀ ←l₁ j₁ →r₁ i₁ ← … → i_n`. Length 0 is the trivial zig-zag `{i₀}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZigZag {
    pub feet: Vec<ObjId>,
    pub apexes: Vec<ObjId>,
    pub lefts: Vec<MorId>,
    pub rights: Vec<MorId>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ZigZagError {
    #[error("endpoint mismatch: {0:?} vs {1:?}")]
    Endpoints(ObjId, ObjId),
    #[error("boundary component mismatch")]
    Boundary,
    #[error("cells are not composable vertically")]
    Vertical,
    #[error("malformed zig-zag: {0}")]
    Malformed(String),
}

#[allow(clippy::len_without_is_empty)]
impl ZigZag {
    pub fn trivial(i: ObjId) -> Self {
        ZigZag {
            feet: vec![i],
            apexes: Vec::new(),
            lefts: Vec::new(),
            rights: Vec::new(),
        }
    }

    /// The single roof `src(l) ←l · →r tgt(r)`.
    pub fn roof(j: &FinCat, l: MorId, r: MorId) -> Self {
        ZigZag {
            feet: vec![j.tgt(l), j.tgt(r)],
            apexes: vec![j.src(l)],
            lefts: vec![l],
            rights: vec![r],
        }
    }

    /// The constant zig-zag of length `n` at `i`.
    pub fn constant(j: &FinCat, i: ObjId, n: usize) -> Self {
        let id = j.identity(i);
        ZigZag {
            feet: vec![i; n + 1],
            apexes: vec![i; n],
            lefts: vec![id; n],
            rights: vec![id; n],
        }
    }

    pub fn len(&self) -> usize {
        self.apexes.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.apexes.is_empty()
    }

    pub fn first(&self) -> ObjId {
        self.feet[0]
    }

    pub fn last(&self) -> ObjId {
        *self.feet.last().expect("a zig-zag has at least one foot")
    }

    /// Roofs `from+1 ..= to` as a zig-zag from foot `from` to foot `to`.
    pub fn slice(&self, from: usize, to: usize) -> ZigZag {
        ZigZag {
            feet: self.feet[from..=to].to_vec(),
            apexes: self.apexes[from..to].to_vec(),
            lefts: self.lefts[from..to].to_vec(),
            rights: self.rights[from..to].to_vec(),
        }
    }

    pub fn validate(&self, j: &FinCat) -> Vec<String> {
        let n = self.apexes.len();
        if self.feet.len() != n + 1 || self.lefts.len() != n || self.rights.len() != n {
            return vec!["inconsistent lengths".into()];
        }
        let mut out = Vec::new();
        for k in 0..n {
            let (l, r) = (self.lefts[k], self.rights[k]);
            if j.src(l) != self.apexes[k] || j.tgt(l) != self.feet[k] {
                out.push(format!("left leg {} has wrong endpoints", k + 1));
            }
            if j.src(r) != self.apexes[k] || j.tgt(r) != self.feet[k + 1] {
                out.push(format!("right leg {} has wrong endpoints", k + 1));
            }
        }
        out
    }

    pub fn render(&self, j: &FinCat) -> String {
        let mut s = j.object_name(self.feet[0]).to_string();
        for k in 0..self.len() {
            s.push_str(&format!(
                " ←{}─ {} ─{}→ {}",
                j.morphism_name(self.lefts[k]),
                j.object_name(self.apexes[k]),
                j.morphism_name(self.rights[k]),
                j.object_name(self.feet[k + 1])
            ));
        }
        s
    }
}

/// `z1 ⋄ z2`; the trivial zig-zag is a two-sided unit.
pub fn concat(z1: &ZigZag, z2: &ZigZag) -> Result<ZigZag, ZigZagError> {
    if z1.last() != z2.first() {
        return Err(ZigZagError::Endpoints(z1.last(), z2.first()));
    }
    let mut out = z1.clone();
    out.feet.extend_from_slice(&z2.feet[1..]);
    out.apexes.extend_from_slice(&z2.apexes);
    out.lefts.extend_from_slice(&z2.lefts);
    out.rights.extend_from_slice(&z2.rights);
    Ok(out)
}

/// An order preserving surjection `[n] → [m]` with `θ(0) = 0`, `θ(n) = m`,
/// stored as its value list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EndpointSurjection(pub Vec<usize>);

impl EndpointSurjection {
    pub fn identity(n: usize) -> Self {
        EndpointSurjection((0..=n).collect())
    }

    /// The unique map `[n] → [0]`.
    pub fn collapse(n: usize) -> Self {
        EndpointSurjection(vec![0; n + 1])
    }

    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    pub fn m(&self) -> usize {
        *self.0.last().expect("nonempty")
    }

    pub fn at(&self, k: usize) -> usize {
        self.0[k]
    }

    pub fn is_valid(&self) -> bool {
        !self.0.is_empty()
            && self.0[0] == 0
            && self.0.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1)
    }

    /// Whether roof `k` (1-based) is sent onto a roof of the target.
    pub fn advances(&self, k: usize) -> bool {
        self.0[k] != self.0[k - 1]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &EndpointSurjection) -> EndpointSurjection {
        EndpointSurjection(self.0.iter().map(|&v| other.0[v]).collect())
    }

    /// Wedge: `self` on the first roofs, `other` shifted on the rest.
    pub fn wedge(&self, other: &EndpointSurjection) -> EndpointSurjection {
        let m = self.m();
        let mut v = self.0.clone();
        v.extend(other.0[1..].iter().map(|&x| x + m));
        EndpointSurjection(v)
    }
}

/// All surjections `[n] → [m]` in lexicographic order of value lists.
pub fn enumerate_surjections(n: usize, m: usize) -> Vec<EndpointSurjection> {
    fn go(k: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<EndpointSurjection>) {
        if k > n {
            out.push(EndpointSurjection(cur.clone()));
            return;
        }
        let prev = cur[k - 1];
        let remaining = n - k + 1;
        if m - prev < remaining {
            cur.push(prev);
            go(k + 1, n, m, cur, out);
            cur.pop();
        }
        if prev < m {
            cur.push(prev + 1);
            go(k + 1, n, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if m <= n {
        go(1, n, m, &mut vec![0], &mut out);
    }
    out
}

/// A 2-cell `source ⇒ target` over `θ`.
///
/// `foot_components[k] : i_k → i'_{θ(k)}`. For roof `k` (stored at `k - 1`),
/// the apex component goes to the apex `j'_{θ(k)}` when the roof advances and
/// to the foot `i'_{θ(k)}` when it collapses.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZigZagCell {
    pub source: ZigZag,
    pub target: ZigZag,
    pub theta: EndpointSurjection,
    pub foot_components: Vec<MorId>,
    pub apex_components: Vec<MorId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellViolation {
    Shape(String),
    Surjection,
    FootEndpoints(usize),
    ApexEndpoints(usize),
    LeftSquare(usize),
    RightSquare(usize),
}

impl fmt::Display for CellViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellViolation::Shape(s) => write!(f, "shape: {s}"),
            CellViolation::Surjection => write!(f, "θ is not an endpoint-preserving surjection"),
            CellViolation::FootEndpoints(k) => write!(f, "foot component {k} has wrong endpoints"),
            CellViolation::ApexEndpoints(k) => write!(f, "apex component {k} has wrong endpoints"),
            CellViolation::LeftSquare(k) => write!(f, "left square at roof {k} does not commute"),
            CellViolation::RightSquare(k) => write!(f, "right square at roof {k} does not commute"),
        }
    }
}

impl ZigZagCell {
    pub fn identity(j: &FinCat, z: &ZigZag) -> Self {
        ZigZagCell {
            source: z.clone(),
            target: z.clone(),
            theta: EndpointSurjection::identity(z.len()),
            foot_components: z.feet.iter().map(|&i| j.identity(i)).collect(),
            apex_components: z.apexes.iter().map(|&a| j.identity(a)).collect(),
        }
    }

    /// Left boundary vertical.
    pub fn first_component(&self) -> MorId {
        self.foot_components[0]
    }

    /// Right boundary vertical.
    pub fn last_component(&self) -> MorId {
        *self.foot_components.last().expect("nonempty")
    }
}

/// Checks `θ` and every naturality square; empty iff the data is a 2-cell.
pub fn validate_cell(j: &FinCat, c: &ZigZagCell) -> Vec<CellViolation> {
    let (s, t) = (&c.source, &c.target);
    let mut out = Vec::new();
    for (name, z) in [("source", s), ("target", t)] {
        for e in z.validate(j) {
            out.push(CellViolation::Shape(format!("{name}: {e}")));
        }
    }
    if !out.is_empty() {
        return out;
    }
    let n = s.len();
    if c.theta.0.len() != n + 1 || !c.theta.is_valid() || c.theta.m() != t.len() {
        return vec![CellViolation::Surjection];
    }
    if c.foot_components.len() != n + 1 || c.apex_components.len() != n {
        return vec![CellViolation::Shape("component count".into())];
    }
    for k in 0..=n {
        let rho = c.foot_components[k];
        if j.src(rho) != s.feet[k] || j.tgt(rho) != t.feet[c.theta.at(k)] {
            out.push(CellViolation::FootEndpoints(k));
        }
    }
    if !out.is_empty() {
        return out;
    }
    for k in 1..=n {
        let rho = c.apex_components[k - 1];
        let tk = c.theta.at(k);
        let down_left = j.compose(c.foot_components[k - 1], s.lefts[k - 1]);
        let down_right = j.compose(c.foot_components[k], s.rights[k - 1]);
        if c.theta.advances(k) {
            if j.src(rho) != s.apexes[k - 1] || j.tgt(rho) != t.apexes[tk - 1] {
                out.push(CellViolation::ApexEndpoints(k));
                continue;
            }
            if j.compose(t.lefts[tk - 1], rho) != down_left {
                out.push(CellViolation::LeftSquare(k));
            }
            if j.compose(t.rights[tk - 1], rho) != down_right {
                out.push(CellViolation::RightSquare(k));
            }
        } else {
            if j.src(rho) != s.apexes[k - 1] || j.tgt(rho) != t.feet[tk] {
                out.push(CellViolation::ApexEndpoints(k));
                continue;
            }
            if Some(rho) != down_left {
                out.push(CellViolation::LeftSquare(k));
            }
            if Some(rho) != down_right {
                out.push(CellViolation::RightSquare(k));
            }
        }
    }
    out
}

fn comp(j: &FinCat, g: MorId, f: MorId) -> MorId {
    j.compose(g, f)
        .expect("composable components of valid cells")
}

/// `c2 ∘ c1` with `c1 : z ⇒ z'` and `c2 : z' ⇒ z''`.
pub fn vcompose_cells(
    j: &FinCat,
    c1: &ZigZagCell,
    c2: &ZigZagCell,
) -> Result<ZigZagCell, ZigZagError> {
    if c1.target != c2.source {
        return Err(ZigZagError::Vertical);
    }
    let th1 = &c1.theta;
    let feet = (0..=c1.source.len())
        .map(|k| comp(j, c2.foot_components[th1.at(k)], c1.foot_components[k]))
        .collect();
    let apexes = (1..=c1.source.len())
        .map(|k| {
            let t = th1.at(k);
            let rest = if th1.advances(k) {
                c2.apex_components[t - 1]
            } else {
                c2.foot_components[t]
            };
            comp(j, rest, c1.apex_components[k - 1])
        })
        .collect();
    Ok(ZigZagCell {
        source: c1.source.clone(),
        target: c2.target.clone(),
        theta: th1.then(&c2.theta),
        foot_components: feet,
        apex_components: apexes,
    })
}

/// `c1 ⋄ c2`; the shared boundary verticals must agree.
pub fn hcompose_cells(c1: &ZigZagCell, c2: &ZigZagCell) -> Result<ZigZagCell, ZigZagError> {
    if c1.last_component() != c2.first_component() {
        return Err(ZigZagError::Boundary);
    }
    let source = concat(&c1.source, &c2.source)?;
    let target = concat(&c1.target, &c2.target)?;
    let mut feet = c1.foot_components.clone();
    feet.extend_from_slice(&c2.foot_components[1..]);
    let mut apexes = c1.apex_components.clone();
    apexes.extend_from_slice(&c2.apex_components);
    Ok(ZigZagCell {
        source,
        target,
        theta: c1.theta.wedge(&c2.theta),
        foot_components: feet,
        apex_components: apexes,
    })
}

/// Splits a cell into horizontal factors, one per source roof: each factor is
/// a generating cell of type (i) (`s⁰`, collapsing the roof) or type (ii)
/// (identity surjection). A cell on a trivial source is its own factor.
pub fn factor_cell(c: &ZigZagCell) -> Vec<ZigZagCell> {
    let n = c.source.len();
    if n == 0 {
        return vec![c.clone()];
    }
    (1..=n)
        .map(|k| {
            let (a, b) = (c.theta.at(k - 1), c.theta.at(k));
            ZigZagCell {
                source: c.source.slice(k - 1, k),
                target: c.target.slice(a, b),
                theta: EndpointSurjection(vec![0, b - a]),
                foot_components: vec![c.foot_components[k - 1], c.foot_components[k]],
                apex_components: vec![c.apex_components[k - 1]],
            }
        })
        .collect()
}

/// Inverse of [`factor_cell`].
pub fn compose_factors(factors: &[ZigZagCell]) -> Result<ZigZagCell, ZigZagError> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| ZigZagError::Malformed("no factors".into()))?;
    rest.iter()
        .try_fold(first.clone(), |acc, c| hcompose_cells(&acc, c))
}

/// Orientation of a cell inside a vertical zig-zag of cells.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// The cell goes from the row above to the row below.
    Forward,
    /// The cell goes from the row below to the row above.
    Backward,
}

/// A finite sequence of cells `R₀ ⇒ R₁ ⇐ R₂ …` with alternating orientations allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerticalZigZag {
    pub steps: Vec<(ZigZagCell, Orientation)>,
}

impl VerticalZigZag {
    /// Rows `R₀, …, R_s`; `None` if consecutive steps do not share rows.
    pub fn rows(&self) -> Option<Vec<ZigZag>> {
        let mut rows = Vec::new();
        for (cell, o) in &self.steps {
            let (upper, lower) = match o {
                Orientation::Forward => (&cell.source, &cell.target),
                Orientation::Backward => (&cell.target, &cell.source),
            };
            match rows.last() {
                None => rows.push(upper.clone()),
                Some(prev) if prev == upper => {}
                Some(_) => return None,
            }
            rows.push(lower.clone());
        }
        Some(rows)
    }

    pub fn validate(&self, j: &FinCat) -> Vec<String> {
        let mut out = Vec::new();
        if self.rows().is_none() {
            out.push("rows do not chain".to_string());
        }
        for (s, (cell, _)) in self.steps.iter().enumerate() {
            for v in validate_cell(j, cell) {
                out.push(format!("step {s}: {v}"));
            }
        }
        out
    }
}

/// The unital cell `u_n ⇒ u₀` at `i` with identity components, as a one-step
/// vertical zig-zag read downwards (`Forward`) or upwards (`Backward`).
pub fn unital_cell(j: &FinCat, i: ObjId, n: usize, orientation: Orientation) -> VerticalZigZag {
    let id = j.identity(i);
    let cell = ZigZagCell {
        source: ZigZag::constant(j, i, n),
        target: ZigZag::trivial(i),
        theta: EndpointSurjection::collapse(n),
        foot_components: vec![id; n + 1],
        apex_components: vec![id; n],
    };
    VerticalZigZag {
        steps: vec![(cell, orientation)],
    }
}

/// Which of the two symmetric transposition shapes to build.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// Rows `u_t ⋄ z_{≥t}`: the zig-zag is pushed onto its last foot.
    Left,
    /// Rows `z_{≤t} ⋄ u`: the zig-zag is pushed onto its first foot.
    Right,
}

fn idcell_parts(j: &FinCat, z: &ZigZag) -> (Vec<MorId>, Vec<MorId>) {
    (
        z.feet.iter().map(|&i| j.identity(i)).collect(),
        z.apexes.iter().map(|&a| j.identity(a)).collect(),
    )
}

/// The transposition of `z`: a vertical zig-zag of `2n` identity-indexed
/// cells whose first row is `z` and last row is the constant zig-zag at the
/// far endpoint (`Side::Left`) or the near endpoint (`Side::Right`).
pub fn transpose_cell(j: &FinCat, z: &ZigZag, side: Side) -> VerticalZigZag {
    let n = z.len();
    let mut steps = Vec::with_capacity(2 * n);
    match side {
        Side::Left => {
            let even =
                |t: usize| concat(&ZigZag::constant(j, z.feet[t], t), &z.slice(t, n)).unwrap();
            let odd = |t: usize| {
                let a = z.apexes[t];
                let hinge = ZigZag {
                    feet: vec![a, z.feet[t + 1]],
                    apexes: vec![a],
                    lefts: vec![j.identity(a)],
                    rights: vec![z.rights[t]],
                };
                let head = concat(&ZigZag::constant(j, a, t), &hinge).unwrap();
                concat(&head, &z.slice(t + 1, n)).unwrap()
            };
            for t in 0..n {
                let (l, r) = (z.lefts[t], z.rights[t]);
                let src = odd(t);
                let (mut feet, mut apexes) = idcell_parts(j, &src);
                for f in feet.iter_mut().take(t + 1) {
                    *f = l;
                }
                for a in apexes.iter_mut().take(t) {
                    *a = l;
                }
                let back = ZigZagCell {
                    source: src.clone(),
                    target: even(t),
                    theta: EndpointSurjection::identity(n),
                    foot_components: feet,
                    apex_components: apexes,
                };
                let (mut feet, mut apexes) = idcell_parts(j, &src);
                for f in feet.iter_mut().take(t + 1) {
                    *f = r;
                }
                for a in apexes.iter_mut().take(t + 1) {
                    *a = r;
                }
                let fwd = ZigZagCell {
                    source: src,
                    target: even(t + 1),
                    theta: EndpointSurjection::identity(n),
                    foot_components: feet,
                    apex_components: apexes,
                };
                steps.push((back, Orientation::Backward));
                steps.push((fwd, Orientation::Forward));
            }
        }
        Side::Right => {
            let even =
                |t: usize| concat(&z.slice(0, t), &ZigZag::constant(j, z.feet[t], n - t)).unwrap();
            let odd = |t: usize| {
                let a = z.apexes[t];
                let hinge = ZigZag {
                    feet: vec![z.feet[t], a],
                    apexes: vec![a],
                    lefts: vec![z.lefts[t]],
                    rights: vec![j.identity(a)],
                };
                let head = concat(&z.slice(0, t), &hinge).unwrap();
                concat(&head, &ZigZag::constant(j, a, n - t - 1)).unwrap()
            };
            // Built from z downwards: S_{2n} = z, then S_{2n-1}, S_{2n-2}, …, S_0.
            for t in (0..n).rev() {
                let (l, r) = (z.lefts[t], z.rights[t]);
                let src = odd(t);
                let (mut feet, mut apexes) = idcell_parts(j, &src);
                for f in feet.iter_mut().skip(t + 1) {
                    *f = r;
                }
                for a in apexes.iter_mut().skip(t + 1) {
                    *a = r;
                }
                let up = ZigZagCell {
                    source: src.clone(),
                    target: even(t + 1),
                    theta: EndpointSurjection::identity(n),
                    foot_components: feet,
                    apex_components: apexes,
                };
                let (mut feet, mut apexes) = idcell_parts(j, &src);
                for f in feet.iter_mut().skip(t + 1) {
                    *f = l;
                }
                for a in apexes.iter_mut().skip(t) {
                    *a = l;
                }
                let down = ZigZagCell {
                    source: src,
                    target: even(t),
                    theta: EndpointSurjection::identity(n),
                    foot_components: feet,
                    apex_components: apexes,
                };
                steps.push((up, Orientation::Backward));
                steps.push((down, Orientation::Forward));
            }
        }
    }
    VerticalZigZag { steps }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surjection_counts() {
        assert_eq!(
            enumerate_surjections(1, 0),
            vec![EndpointSurjection(vec![0, 0])]
        );
        assert_eq!(
            enumerate_surjections(3, 3),
            vec![EndpointSurjection::identity(3)]
        );
        assert_eq!(enumerate_surjections(3, 2).len(), 3);
        assert!(enumerate_surjections(2, 3).is_empty());
        let all = enumerate_surjections(5, 2);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
    }
}
