//! Finite simplicial sets stored by their nondegenerate simplices.
//!
//! Every simplex is kept in Eilenberg–Zilber normal form `s_{j₁} … s_{j_r} y`
//! with `y` nondegenerate and `j₁ > … > j_r`. Faces of generators are given as
//! such normal forms; all other structure maps are derived from them.

mod io;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::fincat::{FinCat, FinCatBuilder, MorId, ObjId};
use crate::unionfind::UnionFind;

pub use io::{SSetDoc, SSET_SCHEMA};

/// A monotone map `[m] → [n]`, as the list of its values.
pub type Monotone = Vec<usize>;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SSetError {
    #[error("invalid index: {0}")]
    Index(String),
    #[error("gluing identifies incompatible simplices: {0}")]
    Glue(String),
    #[error("zig-zag legs must be injective to be realized")]
    NonInjective,
    #[error("unknown corpus entry {0:?}")]
    UnknownCorpus(String),
}

/// A simplex in normal form: `degeneracy` applied to the nondegenerate simplex
/// `base` of dimension `base_dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexRef {
    pub dim: usize,
    pub base_dim: usize,
    pub base: usize,
    /// Strictly decreasing degeneracy indices.
    pub degeneracy: Vec<usize>,
}

impl SimplexRef {
    pub fn nondegenerate(dim: usize, id: usize) -> Self {
        SimplexRef {
            dim,
            base_dim: dim,
            base: id,
            degeneracy: Vec::new(),
        }
    }

    pub fn is_degenerate(&self) -> bool {
        !self.degeneracy.is_empty()
    }

    /// The codegeneracy `σ : [dim] → [base_dim]` with `self = σ* base`.
    pub fn surjection(&self) -> Monotone {
        let mut out = Vec::with_capacity(self.dim + 1);
        let mut v = 0;
        out.push(0);
        for j in 0..self.dim {
            if !self.degeneracy.contains(&j) {
                v += 1;
            }
            out.push(v);
        }
        out
    }

    /// `σ* base` for a monotone surjection `σ : [n] → [base_dim]`.
    pub fn from_surjection(base_dim: usize, base: usize, sigma: &[usize]) -> Self {
        let mut degeneracy: Vec<usize> = (0..sigma.len() - 1)
            .filter(|&j| sigma[j] == sigma[j + 1])
            .collect();
        degeneracy.reverse();
        SimplexRef {
            dim: sigma.len() - 1,
            base_dim,
            base,
            degeneracy,
        }
    }
}

/// A nondegenerate simplex with its faces `d₀ … d_n` in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NdSimplex {
    pub name: String,
    pub faces: Vec<SimplexRef>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinSSet {
    pub name: String,
    /// Nondegenerate simplices by dimension.
    pub simplices: Vec<Vec<NdSimplex>>,
}

/// A simplicial set with two chosen vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipointedSSet {
    pub sset: FinSSet,
    pub a: usize,
    pub b: usize,
}

impl BipointedSSet {
    pub fn new(sset: FinSSet, a: usize, b: usize) -> Result<Self, SSetError> {
        let n = sset.count(0);
        if a >= n || b >= n {
            return Err(SSetError::Index(format!("vertices {a}, {b} of {n}")));
        }
        Ok(BipointedSSet { sset, a, b })
    }
}

/// All monotone maps `[m] → [n]`, lexicographically.
pub fn monotone_maps(m: usize, n: usize) -> Vec<Monotone> {
    fn go(m: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Monotone>) {
        if cur.len() == m + 1 {
            out.push(cur.clone());
            return;
        }
        for v in lo..=n {
            cur.push(v);
            go(m, n, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, n, 0, &mut Vec::new(), &mut out);
    out
}

/// Strictly increasing `k`-element subsets of `0..n`, lexicographically.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    monotone_maps(k.wrapping_sub(1), n.saturating_sub(1))
        .into_iter()
        .filter(|s| k > 0 && n > 0 && s.windows(2).all(|w| w[0] < w[1]))
        .collect()
}

fn simplex_label(vs: &[usize]) -> String {
    let sep = if vs.iter().any(|&v| v >= 10) { "," } else { "" };
    let body: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
    format!("⟨{}⟩", body.join(sep))
}

impl FinSSet {
    /// Top dimension with a nondegenerate simplex.
    pub fn dim(&self) -> usize {
        self.simplices
            .iter()
            .rposition(|s| !s.is_empty())
            .unwrap_or(0)
    }

    /// Number of nondegenerate simplices of dimension `k`.
    pub fn count(&self, k: usize) -> usize {
        self.simplices.get(k).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        (0..=self.dim()).map(|k| self.count(k)).collect()
    }

    pub fn generator(&self, k: usize, id: usize) -> &NdSimplex {
        &self.simplices[k][id]
    }

    pub fn find(&self, k: usize, name: &str) -> Option<usize> {
        self.simplices.get(k)?.iter().position(|s| s.name == name)
    }

    pub fn name_of(&self, x: &SimplexRef) -> String {
        let base = &self.simplices[x.base_dim][x.base].name;
        if x.degeneracy.is_empty() {
            base.clone()
        } else {
            let word: Vec<String> = x.degeneracy.iter().map(|j| format!("s{j}")).collect();
            format!("{}{}", word.join(""), base)
        }
    }

    /// `θ* y` for a nondegenerate `y` of dimension `n` and injective `θ : [k] → [n]`.
    fn face_of_generator(&self, n: usize, id: usize, theta: &[usize]) -> SimplexRef {
        if theta.len() == n + 1 {
            return SimplexRef::nondegenerate(n, id);
        }
        let i = (0..=n)
            .find(|v| !theta.contains(v))
            .expect("θ is not surjective");
        let rest: Monotone = theta
            .iter()
            .map(|&v| if v < i { v } else { v - 1 })
            .collect();
        let face = &self.simplices[n][id].faces[i];
        self.pull(face, &rest)
    }

    /// `θ* x` for monotone `θ : [m] → [dim x]`, in normal form.
    pub fn pull(&self, x: &SimplexRef, theta: &[usize]) -> SimplexRef {
        let sigma = x.surjection();
        let comp: Vec<usize> = theta.iter().map(|&t| sigma[t]).collect();
        let mut image = comp.clone();
        image.dedup();
        if image.len() == x.base_dim + 1 {
            return SimplexRef::from_surjection(x.base_dim, x.base, &comp);
        }
        let pi: Monotone = comp
            .iter()
            .map(|v| image.binary_search(v).expect("in image"))
            .collect();
        let z = self.face_of_generator(x.base_dim, x.base, &image);
        let tau = z.surjection();
        let total: Vec<usize> = pi.iter().map(|&v| tau[v]).collect();
        SimplexRef::from_surjection(z.base_dim, z.base, &total)
    }

    /// `d_i x`.
    pub fn face(&self, x: &SimplexRef, i: usize) -> SimplexRef {
        let theta: Monotone = (0..x.dim).map(|v| if v < i { v } else { v + 1 }).collect();
        self.pull(x, &theta)
    }

    /// `s_i x`.
    pub fn degeneracy(&self, x: &SimplexRef, i: usize) -> SimplexRef {
        let theta: Monotone = (0..=x.dim + 1)
            .map(|v| if v <= i { v } else { v - 1 })
            .collect();
        self.pull(x, &theta)
    }

    /// Vertex ids of `x` in order; repeats when `x` is degenerate or glued.
    pub fn vertices(&self, x: &SimplexRef) -> Vec<usize> {
        (0..=x.dim).map(|v| self.pull(x, &[v]).base).collect()
    }

    /// The face of `x` spanned by the positions `a ≤ … ≤ b`.
    pub fn between_subsimplex(
        &self,
        x: &SimplexRef,
        a: usize,
        b: usize,
    ) -> Result<SimplexRef, SSetError> {
        if a > b || b > x.dim {
            return Err(SSetError::Index(format!(
                "positions {a}..{b} of a {}-simplex",
                x.dim
            )));
        }
        let theta: Monotone = (a..=b).collect();
        Ok(self.pull(x, &theta))
    }

    /// Every simplex of dimension `≤ max_dim`, by dimension then base then degeneracy.
    pub fn all_simplices(&self, max_dim: usize) -> Vec<SimplexRef> {
        let mut out = Vec::new();
        for n in 0..=max_dim {
            for k in 0..=n.min(self.dim()) {
                for id in 0..self.count(k) {
                    for sigma in monotone_maps(n, k) {
                        if sigma[0] == 0
                            && sigma[n] == k
                            && sigma.windows(2).all(|w| w[1] <= w[0] + 1)
                        {
                            out.push(SimplexRef::from_surjection(k, id, &sigma));
                        }
                    }
                }
            }
        }
        out
    }

    /// Whether every face of a nondegenerate simplex is nondegenerate.
    pub fn has_nondegenerate_faces(&self) -> bool {
        self.simplices
            .iter()
            .flatten()
            .all(|s| s.faces.iter().all(|f| !f.is_degenerate()))
    }

    /// Checks face shapes and the simplicial identities `d_i d_j = d_{j-1} d_i`
    /// (`i < j`) on every generator, and `d_i s_j` against its expected value
    /// on every simplex up to dimension `dim + 1`.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (n, level) in self.simplices.iter().enumerate() {
            for (id, s) in level.iter().enumerate() {
                let expected = if n == 0 { 0 } else { n + 1 };
                if s.faces.len() != expected {
                    out.push(format!(
                        "{} has {} faces, expected {expected}",
                        s.name,
                        s.faces.len()
                    ));
                    continue;
                }
                for f in &s.faces {
                    let ok = f.dim + 1 == n
                        && f.base_dim + f.degeneracy.len() == f.dim
                        && f.base < self.count(f.base_dim)
                        && f.degeneracy.windows(2).all(|w| w[0] > w[1])
                        && f.degeneracy.iter().all(|&j| j < f.dim.max(1));
                    if !ok {
                        out.push(format!("{} has a malformed face", s.name));
                    }
                }
                if n < 2 {
                    continue;
                }
                let x = SimplexRef::nondegenerate(n, id);
                for j in 0..=n {
                    for i in 0..j {
                        let lhs = self.face(&self.face(&x, j), i);
                        let rhs = self.face(&self.face(&x, i), j - 1);
                        if lhs != rhs {
                            out.push(format!("{}: d{i} d{j} ≠ d{} d{i}", s.name, j - 1));
                        }
                    }
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for x in self.all_simplices(self.dim() + 1) {
            for j in 0..=x.dim {
                let y = self.degeneracy(&x, j);
                for i in 0..=y.dim {
                    let got = self.face(&y, i);
                    let want = if i == j || i == j + 1 {
                        x.clone()
                    } else if i < j {
                        self.degeneracy(&self.face(&x, i), j - 1)
                    } else {
                        self.degeneracy(&self.face(&x, i - 1), j)
                    };
                    if got != want {
                        out.push(format!("d{i} s{j} fails on {}", self.name_of(&x)));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for FinSSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:?}", self.name, self.counts())
    }
}

/// `Δⁿ`: nondegenerate simplices are the nonempty subsets of `[n]`.
pub fn standard_simplex(n: usize) -> FinSSet {
    let levels: Vec<Vec<Vec<usize>>> = (0..=n).map(|k| subsets(n + 1, k + 1)).collect();
    from_subsets(format!("Δ{n}"), &levels)
}

/// Builds a simplicial set from a downward closed family of subsets.
fn from_subsets(name: String, levels: &[Vec<Vec<usize>>]) -> FinSSet {
    let index: Vec<HashMap<&[usize], usize>> = levels
        .iter()
        .map(|l| {
            l.iter()
                .enumerate()
                .map(|(i, s)| (s.as_slice(), i))
                .collect()
        })
        .collect();
    let simplices = levels
        .iter()
        .enumerate()
        .map(|(k, level)| {
            level
                .iter()
                .map(|s| NdSimplex {
                    name: simplex_label(s),
                    faces: if k == 0 {
                        Vec::new()
                    } else {
                        (0..=k)
                            .map(|i| {
                                let mut f = s.clone();
                                f.remove(i);
                                SimplexRef::nondegenerate(k - 1, index[k - 1][f.as_slice()])
                            })
                            .collect()
                    },
                })
                .collect()
        })
        .collect();
    FinSSet { name, simplices }
}

/// `∂Δⁿ` for `n ≥ 1`.
pub fn boundary(n: usize) -> Result<FinSSet, SSetError> {
    if n == 0 {
        return Err(SSetError::Index(
            "∂Δ⁰ is empty; n must be at least 1".into(),
        ));
    }
    let levels: Vec<Vec<Vec<usize>>> = (0..n).map(|k| subsets(n + 1, k + 1)).collect();
    Ok(from_subsets(format!("∂Δ{n}"), &levels))
}

/// `Λⁿ_k`: the boundary without the face opposite `k`.
pub fn horn(n: usize, k: usize) -> Result<FinSSet, SSetError> {
    if n == 0 || k > n {
        return Err(SSetError::Index(format!("horn({n}, {k})")));
    }
    let mut levels: Vec<Vec<Vec<usize>>> = (0..n).map(|d| subsets(n + 1, d + 1)).collect();
    levels[n - 1].retain(|s| s.contains(&k));
    Ok(from_subsets(format!("Λ{n}_{k}"), &levels))
}

/// A generator of one of the parts of a gluing: `(part, dimension, id)`.
pub type GlueRef = (usize, usize, usize);

/// The quotient of `⊔ parts` identifying the listed pairs of nondegenerate
/// simplices (of equal dimension) together with their faces.
pub fn glue(
    name: impl Into<String>,
    parts: &[FinSSet],
    identify: &[(GlueRef, GlueRef)],
) -> Result<FinSSet, SSetError> {
    let top = parts.iter().map(FinSSet::dim).max().unwrap_or(0);
    // Global ids per dimension, part-major.
    let mut offset = vec![vec![0usize; top + 1]; parts.len()];
    let mut total = vec![0usize; top + 1];
    for (p, part) in parts.iter().enumerate() {
        for k in 0..=top {
            offset[p][k] = total[k];
            total[k] += part.count(k);
        }
    }
    let global = |(p, k, id): GlueRef| -> Result<usize, SSetError> {
        if p >= parts.len() || id >= parts[p].count(k) {
            return Err(SSetError::Index(format!("no simplex ({p}, {k}, {id})")));
        }
        Ok(offset[p][k] + id)
    };
    let mut uf: Vec<UnionFind> = total.iter().map(|&t| UnionFind::new(t)).collect();
    let mut queue: Vec<(usize, usize, usize, usize, usize)> = Vec::new();
    for &(x, y) in identify {
        if x.1 != y.1 {
            return Err(SSetError::Glue(format!("dimensions {} and {}", x.1, y.1)));
        }
        queue.push((x.1, x.0, x.2, y.0, y.2));
    }
    while let Some((k, px, x, py, y)) = queue.pop() {
        if !uf[k].union(global((px, k, x))?, global((py, k, y))?) || k == 0 {
            continue;
        }
        let (fx, fy) = (
            &parts[px].simplices[k][x].faces,
            &parts[py].simplices[k][y].faces,
        );
        for (a, b) in fx.iter().zip(fy) {
            if a.degeneracy != b.degeneracy {
                return Err(SSetError::Glue(format!(
                    "faces {} and {} have different degeneracies",
                    parts[px].name_of(a),
                    parts[py].name_of(b)
                )));
            }
            queue.push((a.base_dim, px, a.base, py, b.base));
        }
    }
    let mut label: Vec<Vec<usize>> = Vec::with_capacity(top + 1);
    let mut simplices: Vec<Vec<NdSimplex>> = Vec::with_capacity(top + 1);
    for (k, u) in uf.iter_mut().enumerate() {
        let (labels, count) = u.labels();
        let mut level: Vec<Option<NdSimplex>> = vec![None; count];
        for (p, part) in parts.iter().enumerate() {
            for (id, s) in part.simplices.get(k).into_iter().flatten().enumerate() {
                let l = labels[offset[p][k] + id];
                if level[l].is_none() {
                    let faces = s
                        .faces
                        .iter()
                        .map(|f| SimplexRef {
                            base: label[f.base_dim][offset[p][f.base_dim] + f.base],
                            ..f.clone()
                        })
                        .collect();
                    level[l] = Some(NdSimplex {
                        name: s.name.clone(),
                        faces,
                    });
                }
            }
        }
        label.push(labels);
        simplices.push(
            level
                .into_iter()
                .map(|s| s.expect("every class has a member"))
                .collect(),
        );
    }
    while simplices.len() > 1 && simplices.last().is_some_and(Vec::is_empty) {
        simplices.pop();
    }
    Ok(FinSSet {
        name: name.into(),
        simplices,
    })
}

/// `Δ¹` with its endpoints identified.
pub fn circle() -> FinSSet {
    let mut s =
        glue("S1", &[standard_simplex(1)], &[((0, 0, 0), (0, 0, 1))]).expect("valid gluing");
    s.simplices[0][0].name = "*".into();
    s.simplices[1][0].name = "x".into();
    s
}

/// `n` edges glued head to tail; vertices are `0 … n`.
pub fn spine(n: usize) -> FinSSet {
    if n == 0 {
        return standard_simplex(0).renamed("spine0");
    }
    let parts = vec![standard_simplex(1); n];
    let identify: Vec<(GlueRef, GlueRef)> =
        (0..n - 1).map(|i| ((i, 0, 1), (i + 1, 0, 0))).collect();
    let mut s = glue(format!("spine{n}"), &parts, &identify).expect("valid gluing");
    for (v, x) in s.simplices[0].iter_mut().enumerate() {
        x.name = simplex_label(&[v]);
    }
    for (e, x) in s.simplices[1].iter_mut().enumerate() {
        x.name = simplex_label(&[e, e + 1]);
    }
    s
}

impl FinSSet {
    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

/// Built-in simplicial sets: `delta:n`, `boundary:n`, `horn:n:k`, `circle`, `spine:n`.
pub fn corpus(name: &str) -> Result<FinSSet, SSetError> {
    let parts: Vec<&str> = name.split(':').collect();
    let num = |i: usize| -> Result<usize, SSetError> {
        parts
            .get(i)
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| SSetError::UnknownCorpus(name.to_string()))
    };
    let s = match parts[0] {
        "delta" if parts.len() == 2 => standard_simplex(num(1)?),
        "boundary" if parts.len() == 2 => boundary(num(1)?)?,
        "horn" if parts.len() == 3 => horn(num(1)?, num(2)?)?,
        "circle" if parts.len() == 1 => circle(),
        "spine" if parts.len() == 2 => spine(num(1)?),
        _ => return Err(SSetError::UnknownCorpus(name.to_string())),
    };
    Ok(s.renamed(name))
}

/// An arrow `x → y` of the category of simplices: `θ : [dim x] → [dim y]` with `x = θ* y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexCatArrow {
    pub theta: Monotone,
    pub source: SimplexRef,
    pub target: SimplexRef,
}

/// A category of simplices together with the simplex and arrow behind each
/// object and morphism.
#[derive(Clone, Debug)]
pub struct SimplexCategory {
    pub cat: FinCat,
    pub simplices: Vec<SimplexRef>,
    pub arrows: Vec<SimplexCatArrow>,
}

impl SimplexCategory {
    pub fn object_of(&self, x: &SimplexRef) -> Option<ObjId> {
        self.simplices.iter().position(|s| s == x).map(ObjId::from)
    }

    /// The arrow into `target` along `θ`, when its source is an object.
    pub fn arrow(&self, target: ObjId, theta: &[usize]) -> Option<MorId> {
        FinCat::into(&self.cat, target)
            .iter()
            .copied()
            .find(|m| self.arrows[m.idx()].theta == theta)
    }
}

fn build_simplex_category(
    x: &FinSSet,
    name: String,
    simplices: Vec<SimplexRef>,
    keep: impl Fn(&Monotone) -> bool,
) -> SimplexCategory {
    let index: HashMap<SimplexRef, usize> = simplices
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    let mut b = FinCatBuilder::new(name);
    for s in &simplices {
        b.object(x.name_of(s));
    }
    let mut arrows = Vec::new();
    let mut arrow_index: HashMap<(usize, Monotone), usize> = HashMap::new();
    let top = simplices.iter().map(|s| s.dim).max().unwrap_or(0);
    for (t, y) in simplices.iter().enumerate() {
        for n in 0..=top {
            for theta in monotone_maps(n, y.dim) {
                if !keep(&theta) {
                    continue;
                }
                let src = x.pull(y, &theta);
                let Some(&s) = index.get(&src) else { continue };
                let digits: Vec<String> = theta.iter().map(|v| v.to_string()).collect();
                let m = b.morphism(
                    format!("{}→{}[{}]", x.name_of(&src), x.name_of(y), digits.join(",")),
                    ObjId::from(s),
                    ObjId::from(t),
                );
                if theta.len() == y.dim + 1 && theta.iter().enumerate().all(|(i, &v)| i == v) {
                    b.set_identity(ObjId::from(t), m);
                }
                arrow_index.insert((t, theta.clone()), m.idx());
                arrows.push(SimplexCatArrow {
                    theta,
                    source: src,
                    target: y.clone(),
                });
            }
        }
    }
    let mut out_of = vec![Vec::new(); simplices.len()];
    for (g, c) in arrows.iter().enumerate() {
        out_of[index[&c.source]].push(g);
    }
    for (f, a) in arrows.iter().enumerate() {
        for &g in &out_of[index[&a.target]] {
            let c = &arrows[g];
            let theta: Monotone = a.theta.iter().map(|&v| c.theta[v]).collect();
            let h = arrow_index[&(index[&c.target], theta)];
            b.compose(MorId::from(g), MorId::from(f), MorId::from(h));
        }
    }
    SimplexCategory {
        cat: b.build(),
        simplices,
        arrows,
    }
}

/// The category of simplices of dimension `≤ max_dim`, degenerate ones included.
pub fn simplex_category(x: &FinSSet, max_dim: usize) -> SimplexCategory {
    let simplices = x.all_simplices(max_dim);
    build_simplex_category(x, format!("S({})", x.name), simplices, |_| true)
}

/// The category of nondegenerate simplices and face inclusions between them.
/// Computes the same colimits as the full category when
/// [`FinSSet::has_nondegenerate_faces`] holds.
pub fn nondegenerate_simplex_category(x: &FinSSet) -> SimplexCategory {
    let simplices: Vec<SimplexRef> = (0..=x.dim())
        .flat_map(|k| (0..x.count(k)).map(move |id| SimplexRef::nondegenerate(k, id)))
        .collect();
    build_simplex_category(x, format!("Snd({})", x.name), simplices, |t| {
        t.windows(2).all(|w| w[0] < w[1])
    })
}

/// A zig-zag `[n₀] ← [m₁] → [n₁] ← … → [n_k]` in the simplex category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaZigZag {
    pub feet: Vec<usize>,
    pub apexes: Vec<usize>,
    pub lefts: Vec<Monotone>,
    pub rights: Vec<Monotone>,
}

impl DeltaZigZag {
    pub fn trivial(n: usize) -> Self {
        DeltaZigZag {
            feet: vec![n],
            apexes: Vec::new(),
            lefts: Vec::new(),
            rights: Vec::new(),
        }
    }

    /// The necklace `Δ^{n₀} ∨ … ∨ Δ^{n_k}`: apexes `[0]` on terminal and initial vertices.
    pub fn necklace(beads: &[usize]) -> Self {
        DeltaZigZag {
            feet: beads.to_vec(),
            apexes: vec![0; beads.len().saturating_sub(1)],
            lefts: beads.windows(2).map(|w| vec![w[0]]).collect(),
            rights: vec![vec![0]; beads.len().saturating_sub(1)],
        }
    }

    pub fn len(&self) -> usize {
        self.apexes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.apexes.is_empty()
    }

    /// Concatenation along the shared end foot.
    pub fn concat(&self, other: &DeltaZigZag) -> Option<DeltaZigZag> {
        if self.feet.last() != other.feet.first() {
            return None;
        }
        let mut out = self.clone();
        out.feet.extend_from_slice(&other.feet[1..]);
        out.apexes.extend_from_slice(&other.apexes);
        out.lefts.extend_from_slice(&other.lefts);
        out.rights.extend_from_slice(&other.rights);
        Some(out)
    }
}

/// The iterated pushout `Δ^{n₀} +_{Δ^{m₁}} … +_{Δ^{m_k}} Δ^{n_k}`; legs must be injective.
pub fn realize_zigzag(t: &DeltaZigZag) -> Result<FinSSet, SSetError> {
    let injective = |f: &Monotone| f.windows(2).all(|w| w[0] < w[1]);
    for k in 0..t.len() {
        let (l, r) = (&t.lefts[k], &t.rights[k]);
        if l.len() != t.apexes[k] + 1 || r.len() != t.apexes[k] + 1 {
            return Err(SSetError::Index(format!(
                "roof {k} legs do not start at [{}]",
                t.apexes[k]
            )));
        }
        if l.iter().any(|&v| v > t.feet[k]) || r.iter().any(|&v| v > t.feet[k + 1]) {
            return Err(SSetError::Index(format!("roof {k} legs leave their feet")));
        }
        if !injective(l) || !injective(r) {
            return Err(SSetError::NonInjective);
        }
    }
    let parts: Vec<FinSSet> = t.feet.iter().map(|&n| standard_simplex(n)).collect();
    let lookup = |n: usize, s: &[usize]| -> usize {
        subsets(n + 1, s.len())
            .iter()
            .position(|x| x == s)
            .expect("subset of the foot")
    };
    let mut identify = Vec::new();
    for k in 0..t.len() {
        let m = t.apexes[k];
        for d in 0..=m {
            for s in subsets(m + 1, d + 1) {
                let ls: Vec<usize> = s.iter().map(|&v| t.lefts[k][v]).collect();
                let rs: Vec<usize> = s.iter().map(|&v| t.rights[k][v]).collect();
                let a = lookup(t.feet[k], &ls);
                let b = lookup(t.feet[k + 1], &rs);
                identify.push(((k, d, a), (k + 1, d, b)));
            }
        }
    }
    glue("|T|", &parts, &identify)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surjection_round_trip() {
        for n in 0..5 {
            for k in 0..=n {
                for sigma in monotone_maps(n, k) {
                    if sigma[0] == 0 && sigma[n] == k && sigma.windows(2).all(|w| w[1] <= w[0] + 1)
                    {
                        let x = SimplexRef::from_surjection(k, 0, &sigma);
                        assert_eq!(x.surjection(), sigma);
                        assert_eq!(x.degeneracy.len(), n - k);
                    }
                }
            }
        }
    }

    #[test]
    fn subsets_are_binomial() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 3), vec![vec![0, 1, 2]]);
    }
}
