use std::fmt;

use crate::fincat::{MorId, ObjId};
use crate::sset::{
    simplex_category, standard_simplex, FinSSet, Monotone, SimplexCategory, SimplexRef,
};
use crate::zigzag::{validate_cell, EndpointSurjection, ZigZag, ZigZagCell};

use super::flags::{span, Flag, MAX_VERTICES};
use super::RigidError;

/// `Δ^{n₀} ∨ … ∨ Δ^{n_k}`, vertices numbered left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Necklace {
    pub beads: Vec<usize>,
}

impl Necklace {
    pub fn new(beads: Vec<usize>) -> Result<Self, RigidError> {
        let n = Necklace { beads };
        if n.beads.is_empty() || n.num_vertices() > MAX_VERTICES {
            return Err(RigidError::Shape(format!("{:?}", n.beads)));
        }
        Ok(n)
    }

    pub fn point() -> Self {
        Necklace { beads: vec![0] }
    }

    pub fn num_beads(&self) -> usize {
        self.beads.len()
    }

    /// `|V_N| = Σ nᵢ + 1`.
    pub fn num_vertices(&self) -> usize {
        self.beads.iter().sum::<usize>() + 1
    }

    /// Global position of the initial vertex of bead `i`; `start(k+1)` is the last vertex.
    pub fn start(&self, i: usize) -> usize {
        self.beads[..i].iter().sum()
    }

    /// `J_N`: the bead endpoints.
    pub fn joins(&self) -> Vec<usize> {
        (0..=self.beads.len()).map(|i| self.start(i)).collect()
    }

    pub fn join_mask(&self) -> u64 {
        self.joins().iter().fold(0, |m, &v| m | (1 << v))
    }

    pub fn vertex_mask(&self) -> u64 {
        span(0, self.num_vertices() - 1)
    }

    pub fn last(&self) -> usize {
        self.num_vertices() - 1
    }

    /// The necklace as a zig-zag of simplices `[n₀] ← [0] → [n₁] ← … → [n_k]`.
    pub fn zigzag(&self, delta: &DeltaCategory) -> Result<ZigZag, RigidError> {
        let mut z = ZigZag::trivial(delta.object(self.beads[0])?);
        for w in self.beads.windows(2) {
            z.feet.push(delta.object(w[1])?);
            z.apexes.push(delta.object(0)?);
            z.lefts.push(delta.arrow(0, w[0], &[w[0]])?);
            z.rights.push(delta.arrow(0, w[1], &[0])?);
        }
        Ok(z)
    }
}

impl fmt::Display for Necklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.beads.iter().map(|n| format!("Δ{n}")).collect();
        write!(f, "{}", parts.join("∨"))
    }
}

/// A bipointed map `N → X_{a,b}`, one simplex of `X` per bead.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NecklaceMap {
    pub necklace: Necklace,
    pub simplices: Vec<SimplexRef>,
    pub a: usize,
    pub b: usize,
}

impl NecklaceMap {
    /// Checks dimensions and that consecutive beads meet in `X`.
    pub fn new(x: &FinSSet, simplices: Vec<SimplexRef>) -> Result<Self, RigidError> {
        let necklace = Necklace::new(simplices.iter().map(|s| s.dim).collect())?;
        for s in &simplices {
            if s.base_dim > x.dim() || s.base >= x.count(s.base_dim) {
                return Err(RigidError::Shape(format!(
                    "simplex {s:?} is not in {}",
                    x.name
                )));
            }
        }
        for (i, w) in simplices.windows(2).enumerate() {
            if x.pull(&w[0], &[w[0].dim]) != x.pull(&w[1], &[0]) {
                return Err(RigidError::Shape(format!(
                    "beads {i} and {} do not meet",
                    i + 1
                )));
            }
        }
        let a = x.pull(&simplices[0], &[0]).base;
        let last = simplices.last().expect("nonempty");
        let b = x.pull(last, &[last.dim]).base;
        Ok(NecklaceMap {
            necklace,
            simplices,
            a,
            b,
        })
    }

    /// The vertex of `X` at every global position of `N`.
    pub fn vertices(&self, x: &FinSSet) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.necklace.num_vertices());
        for (i, s) in self.simplices.iter().enumerate() {
            let vs = x.vertices(s);
            out.extend_from_slice(if i == 0 { &vs[..] } else { &vs[1..] });
        }
        out
    }

    pub fn render(&self, x: &FinSSet) -> String {
        let parts: Vec<String> = self.simplices.iter().map(|s| x.name_of(s)).collect();
        parts.join("∨")
    }
}

/// A necklace map with a flag on `V_N` such that `J_N ⊆ U⁰`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NecklaceFlagPair {
    pub map: NecklaceMap,
    pub flag: Flag,
}

impl NecklaceFlagPair {
    pub fn new(map: NecklaceMap, flag: Flag) -> Result<Self, RigidError> {
        let n = &map.necklace;
        if flag.from != 0 || flag.to != n.last() || !flag.is_valid(n.num_vertices()) {
            return Err(RigidError::Shape(format!("flag {flag} on {n}")));
        }
        if flag.levels[0] & n.join_mask() != n.join_mask() {
            return Err(RigidError::JoinsNotInFlag);
        }
        Ok(NecklaceFlagPair { map, flag })
    }

    /// Canonical order: fewer vertices first, then necklace, simplices and flag.
    pub fn sort_key(&self) -> (usize, &Necklace, &[SimplexRef], &Flag) {
        (
            self.map.necklace.num_vertices(),
            &self.map.necklace,
            &self.map.simplices,
            &self.flag,
        )
    }

    pub fn render(&self, x: &FinSSet) -> String {
        format!("{} : {}", self.map.render(x), self.flag)
    }
}

/// Splits `U⃗` along the joins into one flag per bead, each from `0` to `nᵢ`.
pub fn split_flag(n: &Necklace, u: &Flag) -> Result<Vec<Flag>, RigidError> {
    if u.from != 0 || u.to != n.last() || !u.is_valid(n.num_vertices()) {
        return Err(RigidError::Shape(format!("flag {u} on {n}")));
    }
    if u.levels[0] & n.join_mask() != n.join_mask() {
        return Err(RigidError::JoinsNotInFlag);
    }
    Ok((0..n.num_beads())
        .map(|i| {
            let s = n.start(i);
            u.restrict(s, s + n.beads[i]).shifted_down(s)
        })
        .collect())
}

/// Levelwise union of per-bead flags placed along the necklace.
pub fn merge_flags(n: &Necklace, parts: &[Flag]) -> Result<Flag, RigidError> {
    if parts.len() != n.num_beads() {
        return Err(RigidError::Shape(format!("{} flags for {n}", parts.len())));
    }
    let p = parts[0].p();
    let mut levels = vec![0u64; p + 1];
    for (i, f) in parts.iter().enumerate() {
        if f.p() != p || f.from != 0 || f.to != n.beads[i] || !f.is_valid(n.beads[i] + 1) {
            return Err(RigidError::Shape(format!(
                "bead flag {f} on Δ{}",
                n.beads[i]
            )));
        }
        let g = f.shifted_up(n.start(i));
        for (l, m) in levels.iter_mut().zip(&g.levels) {
            *l |= m;
        }
    }
    Ok(Flag {
        from: 0,
        to: n.last(),
        levels,
    })
}

/// The simplex category truncated at `max_dim`, realised as the category of
/// simplices of a point.
#[derive(Clone, Debug)]
pub struct DeltaCategory {
    pub max_dim: usize,
    pub simplices: SimplexCategory,
}

impl DeltaCategory {
    pub fn new(max_dim: usize) -> Self {
        DeltaCategory {
            max_dim,
            simplices: simplex_category(&standard_simplex(0), max_dim),
        }
    }

    pub fn object(&self, n: usize) -> Result<ObjId, RigidError> {
        if n > self.max_dim {
            return Err(RigidError::Shape(format!(
                "[{n}] beyond the truncation at {}",
                self.max_dim
            )));
        }
        Ok(ObjId::from(n))
    }

    /// The arrow `θ : [m] → [n]`.
    pub fn arrow(&self, m: usize, n: usize, theta: &[usize]) -> Result<MorId, RigidError> {
        if theta.len() != m + 1 {
            return Err(RigidError::Shape(format!(
                "{theta:?} is not a map out of [{m}]"
            )));
        }
        self.simplices
            .arrow(self.object(n)?, theta)
            .ok_or_else(|| RigidError::Shape(format!("{theta:?} is not a map into [{n}]")))
    }

    pub fn theta(&self, m: MorId) -> &Monotone {
        &self.simplices.arrows[m.idx()].theta
    }

    pub fn dim(&self, o: ObjId) -> usize {
        self.simplices.simplices[o.idx()].dim
    }
}

/// A bead-respecting map `|N| → |M|`: bead `i` goes into bead `θ(i)` along
/// `components[i] : [nᵢ] → [m_θ(i)]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NecklaceMorphism {
    pub source: Necklace,
    pub target: Necklace,
    pub theta: EndpointSurjection,
    pub components: Vec<Monotone>,
}

impl NecklaceMorphism {
    pub fn identity(n: &Necklace) -> Self {
        NecklaceMorphism {
            source: n.clone(),
            target: n.clone(),
            theta: EndpointSurjection::identity(n.num_beads() - 1),
            components: n.beads.iter().map(|&d| (0..=d).collect()).collect(),
        }
    }

    /// Shapes, monotonicity, and agreement at every join.
    pub fn is_valid(&self) -> bool {
        let (s, t) = (&self.source, &self.target);
        let k = s.num_beads() - 1;
        if self.theta.0.len() != k + 1
            || !self.theta.is_valid()
            || self.theta.m() != t.num_beads() - 1
        {
            return false;
        }
        for (i, c) in self.components.iter().enumerate() {
            let m = t.beads[self.theta.at(i)];
            if c.len() != s.beads[i] + 1
                || c.windows(2).any(|w| w[0] > w[1])
                || c.iter().any(|&v| v > m)
            {
                return false;
            }
        }
        if self.components.len() != k + 1 {
            return false;
        }
        (0..k).all(|i| {
            let (end, next) = (self.components[i][s.beads[i]], self.components[i + 1][0]);
            if self.theta.advances(i + 1) {
                end == t.beads[self.theta.at(i)] && next == 0
            } else {
                end == next
            }
        })
    }

    /// First vertex to first vertex and last to last.
    pub fn is_bipointed(&self) -> bool {
        let v = self.vertex_map();
        v[0] == 0 && v[v.len() - 1] == self.target.last()
    }

    /// The induced map on global vertex positions.
    pub fn vertex_map(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.source.num_vertices());
        for (i, c) in self.components.iter().enumerate() {
            let base = self.target.start(self.theta.at(i));
            let skip = usize::from(i > 0);
            out.extend(c[skip..].iter().map(|&v| base + v));
        }
        out
    }
}

/// Enumerates bead-respecting maps `source → target` depth first, bead by
/// bead, optionally only bipointed ones. `accept(i, θ(i), φᵢ)` prunes per bead.
pub fn for_each_bead_map(
    source: &Necklace,
    target: &Necklace,
    bipointed: bool,
    mut accept: impl FnMut(usize, usize, &[usize]) -> bool,
    mut visit: impl FnMut(&NecklaceMorphism),
) {
    let k = source.num_beads() - 1;
    let l = target.num_beads() - 1;
    if l > k {
        return;
    }
    let mut phi = NecklaceMorphism {
        source: source.clone(),
        target: target.clone(),
        theta: EndpointSurjection(Vec::with_capacity(k + 1)),
        components: Vec::with_capacity(k + 1),
    };
    go(0, bipointed, &mut phi, &mut accept, &mut visit);

    fn go(
        i: usize,
        bipointed: bool,
        phi: &mut NecklaceMorphism,
        accept: &mut impl FnMut(usize, usize, &[usize]) -> bool,
        visit: &mut impl FnMut(&NecklaceMorphism),
    ) {
        let (k, l) = (phi.source.num_beads() - 1, phi.target.num_beads() - 1);
        if i > k {
            if phi.theta.m() == l
                && (!bipointed
                    || *phi.components[k].last().expect("nonempty") == phi.target.beads[l])
            {
                visit(phi);
            }
            return;
        }
        let choices: Vec<(usize, Option<usize>)> = if i == 0 {
            vec![(0, bipointed.then_some(0))]
        } else {
            let prev = phi.theta.at(i - 1);
            let end = *phi.components[i - 1].last().expect("nonempty");
            let mut c = vec![(prev, Some(end))];
            if prev < l && end == phi.target.beads[prev] {
                c.push((prev + 1, Some(0)));
            }
            c
        };
        for (t, first) in choices {
            if l - t > k - i {
                continue;
            }
            let n = phi.source.beads[i];
            let m = phi.target.beads[t];
            for lo in first.map_or(0..=m, |v| v..=v) {
                let mut comp = vec![lo; n + 1];
                loop {
                    if accept(i, t, &comp) {
                        phi.theta.0.push(t);
                        phi.components.push(comp.clone());
                        go(i + 1, bipointed, phi, accept, visit);
                        phi.theta.0.pop();
                        phi.components.pop();
                    }
                    // Next monotone sequence with comp[0] fixed at lo.
                    let mut j = n;
                    loop {
                        if j == 0 {
                            break;
                        }
                        if comp[j] < m {
                            comp[j] += 1;
                            let v = comp[j];
                            for c in &mut comp[j + 1..] {
                                *c = v;
                            }
                            break;
                        }
                        j -= 1;
                    }
                    if j == 0 {
                        break;
                    }
                }
            }
        }
    }
}

/// The 2-cell of `ℤΔ` between the necklace zig-zags that corresponds to `φ`.
pub fn cell_from_map(
    phi: &NecklaceMorphism,
    delta: &DeltaCategory,
) -> Result<ZigZagCell, RigidError> {
    if !phi.is_valid() {
        return Err(RigidError::NotBeadRespecting);
    }
    let (s, t) = (&phi.source, &phi.target);
    let mut foot_components = Vec::with_capacity(s.num_beads());
    for (i, c) in phi.components.iter().enumerate() {
        foot_components.push(delta.arrow(s.beads[i], t.beads[phi.theta.at(i)], c)?);
    }
    let mut apex_components = Vec::with_capacity(s.num_beads() - 1);
    for i in 1..s.num_beads() {
        let arrow = if phi.theta.advances(i) {
            delta.arrow(0, 0, &[0])?
        } else {
            let v = phi.components[i][0];
            delta.arrow(0, t.beads[phi.theta.at(i)], &[v])?
        };
        apex_components.push(arrow);
    }
    let cell = ZigZagCell {
        source: s.zigzag(delta)?,
        target: t.zigzag(delta)?,
        theta: phi.theta.clone(),
        foot_components,
        apex_components,
    };
    let bad = validate_cell(&delta.simplices.cat, &cell);
    if let Some(v) = bad.first() {
        return Err(RigidError::Mismatch(v.to_string()));
    }
    Ok(cell)
}

fn necklace_of(z: &ZigZag, delta: &DeltaCategory) -> Result<Necklace, RigidError> {
    let n = Necklace::new(z.feet.iter().map(|&f| delta.dim(f)).collect())?;
    if z.apexes.iter().any(|&a| delta.dim(a) != 0) {
        return Err(RigidError::NotBeadRespecting);
    }
    for k in 0..z.len() {
        let (l, r) = (delta.theta(z.lefts[k]), delta.theta(z.rights[k]));
        if l[..] != [n.beads[k]] || r[..] != [0] {
            return Err(RigidError::NotBeadRespecting);
        }
    }
    Ok(n)
}

/// Inverse of [`cell_from_map`]: reads `θ` and the foot components.
pub fn map_from_cell(
    cell: &ZigZagCell,
    delta: &DeltaCategory,
) -> Result<NecklaceMorphism, RigidError> {
    let bad = validate_cell(&delta.simplices.cat, cell);
    if let Some(v) = bad.first() {
        return Err(RigidError::Mismatch(v.to_string()));
    }
    let phi = NecklaceMorphism {
        source: necklace_of(&cell.source, delta)?,
        target: necklace_of(&cell.target, delta)?,
        theta: cell.theta.clone(),
        components: cell
            .foot_components
            .iter()
            .map(|&m| delta.theta(m).clone())
            .collect(),
    };
    if !phi.is_valid() {
        return Err(RigidError::NotBeadRespecting);
    }
    Ok(phi)
}
