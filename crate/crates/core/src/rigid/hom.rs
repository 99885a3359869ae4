use std::collections::HashMap;

use crate::par;
use crate::sset::{FinSSet, SimplexRef};
use crate::unionfind::UnionFind;
use crate::Budget;

use super::flags::Flag;
use super::necklace::{
    for_each_bead_map, merge_flags, split_flag, Necklace, NecklaceFlagPair, NecklaceMap,
};
use super::RigidError;

/// Which necklace/flag pairs are enumerated.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum RigidMode {
    /// Every pair within bounds, degenerate and point beads included.
    Triangles,
    /// Only pairs with nondegenerate beads of positive dimension, `U⁰ = J_N`
    /// and `Uᵖ = V_N` (plus the point necklace at `a = b`).
    #[default]
    NormalForms,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct RigidBounds {
    pub max_beads: usize,
    pub max_bead_dim: usize,
    pub mode: RigidMode,
    pub budget: Budget,
    /// Rerun one size larger to decide the saturation certificate.
    pub certify: bool,
}

impl RigidBounds {
    pub fn new(max_beads: usize, max_bead_dim: usize) -> Self {
        RigidBounds {
            max_beads,
            max_bead_dim,
            mode: RigidMode::NormalForms,
            budget: Budget::from_env(),
            certify: true,
        }
    }

    fn larger(self) -> Self {
        RigidBounds {
            max_beads: self.max_beads + 1,
            max_bead_dim: self.max_bead_dim + 1,
            ..self
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidClass {
    pub id: usize,
    pub representative: NecklaceFlagPair,
    pub size: usize,
}

/// Classes of necklace/flag pairs from `a` to `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidHomTable {
    pub a: usize,
    pub b: usize,
    pub p: usize,
    pub max_beads: usize,
    pub max_bead_dim: usize,
    pub classes: Vec<RigidClass>,
    pub items: usize,
    pub saturated: bool,
}

impl RigidHomTable {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// The flags carried by one necklace map, indexed in mixed radix over the
/// non-join vertices.
#[derive(Clone, Debug)]
struct FlagSpace {
    free: Vec<usize>,
    lo: usize,
    radix: usize,
    count: usize,
}

impl FlagSpace {
    fn new(n: &Necklace, p: usize, mode: RigidMode) -> Self {
        let joins = n.join_mask();
        let free: Vec<usize> = (0..n.num_vertices())
            .filter(|v| joins & (1 << v) == 0)
            .collect();
        // Digit d is a first level; in `Triangles` mode `p + 1` means absent.
        let (lo, radix) = match mode {
            RigidMode::Triangles => (0, p + 2),
            RigidMode::NormalForms => (1, p),
        };
        let count = radix.checked_pow(free.len() as u32).unwrap_or(usize::MAX);
        FlagSpace {
            free,
            lo,
            radix,
            count,
        }
    }

    fn flag(&self, n: &Necklace, p: usize, mut index: usize) -> Flag {
        let mut first = vec![Some(0); n.num_vertices()];
        for &v in self.free.iter().rev() {
            let d = self.lo + index % self.radix;
            index /= self.radix;
            first[v] = (d <= p).then_some(d);
        }
        Flag::from_levels(0, p, &first)
    }

    fn index(&self, n: &Necklace, f: &Flag) -> Option<usize> {
        if f.from != 0 || f.to != n.last() || f.levels[0] & n.join_mask() != n.join_mask() {
            return None;
        }
        let p = f.p();
        let mut index = 0;
        for &v in &self.free {
            let d = f.first_level(v).unwrap_or(p + 1);
            if d < self.lo || d >= self.lo + self.radix {
                return None;
            }
            index = index * self.radix + (d - self.lo);
        }
        Some(index)
    }
}

/// Every necklace map `N → X_{a,b}` within bounds, in a fixed order.
pub fn necklace_maps(
    x: &FinSSet,
    a: usize,
    b: usize,
    max_beads: usize,
    max_bead_dim: usize,
    mode: RigidMode,
) -> Vec<NecklaceMap> {
    let candidates: Vec<(SimplexRef, usize, usize)> = match mode {
        RigidMode::Triangles => x.all_simplices(max_bead_dim),
        RigidMode::NormalForms => (1..=max_bead_dim.min(x.dim()))
            .flat_map(|k| (0..x.count(k)).map(move |id| SimplexRef::nondegenerate(k, id)))
            .collect(),
    }
    .into_iter()
    .map(|s| {
        let vs = x.vertices(&s);
        (s, vs[0], *vs.last().expect("nonempty"))
    })
    .collect();
    let mut out = Vec::new();
    if mode == RigidMode::NormalForms && a == b && max_beads >= 1 {
        out.push(NecklaceMap::new(x, vec![SimplexRef::nondegenerate(0, a)]).expect("vertex"));
    }
    let mut stack = Vec::new();
    extend(x, &candidates, a, b, max_beads, &mut stack, &mut out);
    return out;

    fn extend(
        x: &FinSSet,
        candidates: &[(SimplexRef, usize, usize)],
        at: usize,
        b: usize,
        max_beads: usize,
        stack: &mut Vec<SimplexRef>,
        out: &mut Vec<NecklaceMap>,
    ) {
        if stack.len() == max_beads {
            return;
        }
        for (s, from, to) in candidates {
            if *from != at {
                continue;
            }
            stack.push(s.clone());
            if *to == b {
                out.push(NecklaceMap::new(x, stack.clone()).expect("consecutive beads meet"));
            }
            extend(x, candidates, *to, b, max_beads, stack, out);
            stack.pop();
        }
    }
}

/// Brings a pair to its normal form along bipointed maps carrying the flag:
/// vertices outside `Uᵖ` are dropped (face inclusion), beads are split at the
/// interior vertices of `U⁰` (spine inclusion), degenerate beads are replaced
/// by their nondegenerate base (codegeneracy) and point beads are merged away.
pub fn normalize(x: &FinSSet, pair: &NecklaceFlagPair) -> Result<NecklaceFlagPair, RigidError> {
    let p = pair.flag.p();
    let parts = split_flag(&pair.map.necklace, &pair.flag)?;
    let mut beads: Vec<(SimplexRef, Vec<usize>)> = Vec::new();
    for (s, f) in pair.map.simplices.iter().zip(&parts) {
        let kept: Vec<usize> = (0..=s.dim)
            .filter(|&v| f.first_level(v).is_some())
            .collect();
        let levels: Vec<usize> = kept
            .iter()
            .map(|&v| f.first_level(v).expect("kept"))
            .collect();
        let mut lo = 0;
        for hi in 1..kept.len() {
            if levels[hi] == 0 {
                let seg = x.pull(s, &kept[lo..=hi]);
                let sigma = seg.surjection();
                let mut base_levels = vec![usize::MAX; seg.base_dim + 1];
                for (v, &w) in sigma.iter().enumerate() {
                    base_levels[w] = base_levels[w].min(levels[lo + v]);
                }
                if seg.base_dim > 0 {
                    beads.push((
                        SimplexRef::nondegenerate(seg.base_dim, seg.base),
                        base_levels,
                    ));
                }
                lo = hi;
            }
        }
    }
    if beads.is_empty() {
        if pair.map.a != pair.map.b {
            return Err(RigidError::Mismatch(
                "a closed-up necklace between distinct vertices".into(),
            ));
        }
        let map = NecklaceMap::new(x, vec![SimplexRef::nondegenerate(0, pair.map.a)])?;
        return NecklaceFlagPair::new(map, Flag::identity(0, p));
    }
    let map = NecklaceMap::new(x, beads.iter().map(|(s, _)| s.clone()).collect())?;
    let parts: Vec<Flag> = beads
        .iter()
        .map(|(_, lv)| Flag::from_levels(0, p, &lv.iter().map(|&l| Some(l)).collect::<Vec<_>>()))
        .collect();
    let flag = merge_flags(&map.necklace, &parts)?;
    NecklaceFlagPair::new(map, flag)
}

/// The enumerated pairs from `a` to `b`, partitioned by the equivalence
/// generated by bead-respecting bipointed maps over `X` carrying flags onto flags.
#[derive(Clone, Debug)]
pub struct RigidWindow {
    pub a: usize,
    pub b: usize,
    pub p: usize,
    pub bounds: RigidBounds,
    maps: Vec<NecklaceMap>,
    map_index: HashMap<NecklaceMap, usize>,
    spaces: Vec<FlagSpace>,
    offsets: Vec<usize>,
    label: Vec<u32>,
    class_rep: Vec<usize>,
    class_size: Vec<usize>,
}

impl RigidWindow {
    pub fn build(
        x: &FinSSet,
        a: usize,
        b: usize,
        p: usize,
        bounds: RigidBounds,
    ) -> Result<Self, RigidError> {
        if a >= x.count(0) || b >= x.count(0) {
            return Err(RigidError::Shape(format!(
                "vertices {a}, {b} of {}",
                x.name
            )));
        }
        let maps = necklace_maps(x, a, b, bounds.max_beads, bounds.max_bead_dim, bounds.mode);
        let spaces: Vec<FlagSpace> = maps
            .iter()
            .map(|m| FlagSpace::new(&m.necklace, p, bounds.mode))
            .collect();
        let mut offsets = Vec::with_capacity(maps.len() + 1);
        let mut total = 0usize;
        for s in &spaces {
            offsets.push(total);
            total = total.saturating_add(s.count);
            bounds.budget.check(total, "necklace/flag pairs")?;
        }
        offsets.push(total);
        let map_index: HashMap<NecklaceMap, usize> = maps
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let vertex_of: Vec<Vec<usize>> = maps.iter().map(|m| m.vertices(x)).collect();

        // Bead-respecting maps between every ordered pair of necklace maps.
        let edges: Vec<Vec<(u32, u32)>> = par::map_range(maps.len(), |s| {
            let src = &maps[s];
            let mut out = Vec::new();
            for (t, tgt) in maps.iter().enumerate() {
                if tgt.necklace.num_beads() > src.necklace.num_beads()
                    || vertex_of[t][0] != vertex_of[s][0]
                {
                    continue;
                }
                let mut fs: Vec<Vec<usize>> = Vec::new();
                for_each_bead_map(
                    &src.necklace,
                    &tgt.necklace,
                    true,
                    |i, j, comp| x.pull(&tgt.simplices[j], comp) == src.simplices[i],
                    |phi| fs.push(phi.vertex_map()),
                );
                if s == t {
                    fs.retain(|f| f.iter().enumerate().any(|(i, &v)| i != v));
                }
                for f in &fs {
                    for u in 0..spaces[s].count {
                        let flag = spaces[s].flag(&src.necklace, p, u);
                        if let Some(v) = spaces[t].index(&tgt.necklace, &flag.image(f)) {
                            out.push(((offsets[s] + u) as u32, (offsets[t] + v) as u32));
                        }
                    }
                }
            }
            out
        });
        let mut uf = UnionFind::new(total);
        for list in &edges {
            for &(u, v) in list {
                uf.union(u as usize, v as usize);
            }
        }
        let mut w = RigidWindow {
            a,
            b,
            p,
            bounds,
            maps,
            map_index,
            spaces,
            offsets,
            label: Vec::new(),
            class_rep: Vec::new(),
            class_size: Vec::new(),
        };
        // Classes are numbered by their least member in the canonical order.
        let mut order: Vec<usize> = (0..total).collect();
        let pairs: Vec<NecklaceFlagPair> = (0..total).map(|i| w.item(i)).collect();
        order.sort_by(|&i, &j| pairs[i].sort_key().cmp(&pairs[j].sort_key()));
        let mut root_label: HashMap<usize, u32> = HashMap::new();
        let mut label = vec![0u32; total];
        for &i in &order {
            let r = uf.find(i);
            let next = root_label.len() as u32;
            let l = *root_label.entry(r).or_insert_with(|| {
                w.class_rep.push(i);
                w.class_size.push(0);
                next
            });
            label[i] = l;
            w.class_size[l as usize] += 1;
        }
        w.label = label;
        Ok(w)
    }

    pub fn num_items(&self) -> usize {
        self.label.len()
    }

    pub fn num_classes(&self) -> usize {
        self.class_rep.len()
    }

    pub fn item(&self, i: usize) -> NecklaceFlagPair {
        let m = self.offsets.partition_point(|&o| o <= i) - 1;
        let map = self.maps[m].clone();
        let flag = self.spaces[m].flag(&map.necklace, self.p, i - self.offsets[m]);
        NecklaceFlagPair { map, flag }
    }

    pub fn representative(&self, class: usize) -> NecklaceFlagPair {
        self.item(self.class_rep[class])
    }

    /// Class of a pair that was enumerated.
    pub fn lookup(&self, pair: &NecklaceFlagPair) -> Option<usize> {
        let m = *self.map_index.get(&pair.map)?;
        let u = self.spaces[m].index(&pair.map.necklace, &pair.flag)?;
        Some(self.label[self.offsets[m] + u] as usize)
    }

    /// Class of any pair from `a` to `b`, through its normal form when it was not enumerated.
    pub fn classify(&self, x: &FinSSet, pair: &NecklaceFlagPair) -> Result<usize, RigidError> {
        if let Some(c) = self.lookup(pair) {
            return Ok(c);
        }
        let nf = normalize(x, pair)?;
        self.lookup(&nf)
            .ok_or_else(|| RigidError::OutsideWindow(nf.render(x)))
    }

    /// Classes stay distinct in `big`, and every class of `big` meets this window.
    pub fn saturated_in(&self, big: &RigidWindow) -> bool {
        let mut hit = vec![false; big.num_classes()];
        let mut seen = vec![None; self.num_classes()];
        for i in 0..self.num_items() {
            let Some(c) = big.lookup(&self.item(i)) else {
                return false;
            };
            let own = self.label[i] as usize;
            match seen[own] {
                None => {
                    if hit[c] {
                        return false;
                    }
                    seen[own] = Some(c);
                    hit[c] = true;
                }
                Some(prev) if prev != c => return false,
                Some(_) => {}
            }
        }
        hit.iter().all(|&h| h)
    }

    pub fn table(&self, saturated: bool) -> RigidHomTable {
        RigidHomTable {
            a: self.a,
            b: self.b,
            p: self.p,
            max_beads: self.bounds.max_beads,
            max_bead_dim: self.bounds.max_bead_dim,
            classes: (0..self.num_classes())
                .map(|c| RigidClass {
                    id: c,
                    representative: self.representative(c),
                    size: self.class_size[c],
                })
                .collect(),
            items: self.num_items(),
            saturated,
        }
    }
}

/// Classes of `ℭ(X)_p(a, b)` represented by necklace/flag pairs within bounds.
pub fn rigid_hom(
    x: &FinSSet,
    a: usize,
    b: usize,
    p: usize,
    bounds: RigidBounds,
) -> Result<RigidHomTable, RigidError> {
    let w = RigidWindow::build(x, a, b, p, bounds)?;
    let saturated = bounds.certify
        && match RigidWindow::build(x, a, b, p, bounds.larger()) {
            Ok(big) => w.saturated_in(&big),
            Err(RigidError::Budget(_)) => false,
            Err(e) => return Err(e),
        };
    Ok(w.table(saturated))
}
