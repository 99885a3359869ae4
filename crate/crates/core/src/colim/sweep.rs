//! Exhaustive and seeded-random families of small diagrams.

use std::collections::HashSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fincat::{validate_fincat, Diagram, FinCat, FinCatBuilder, Functor, MorId, ObjId};

const NONE: usize = usize::MAX;

/// Raw table: identities are morphisms `0..n`, the rest follow.
#[derive(Clone, Debug)]
struct Table {
    n: usize,
    ends: Vec<(usize, usize)>,
    /// `compose[g][f]`, `NONE` when not composable.
    compose: Vec<Vec<usize>>,
}

impl Table {
    fn size(&self) -> usize {
        self.ends.len()
    }

    fn associative(&self) -> bool {
        let m = self.size();
        for f in 0..m {
            for g in 0..m {
                let gf = self.compose[g][f];
                if gf == NONE {
                    continue;
                }
                for h in 0..m {
                    let hg = self.compose[h][g];
                    if hg == NONE {
                        continue;
                    }
                    if self.compose[hg][f] != self.compose[h][gf] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Encoding under a relabelling of objects and non-identity morphisms.
    fn encode(&self, obj: &[usize], mor: &[usize]) -> Vec<usize> {
        let n = self.n;
        let m = self.size();
        let map = |x: usize| if x < n { obj[x] } else { n + mor[x - n] };
        let mut inv = vec![0; m];
        for x in 0..m {
            inv[map(x)] = x;
        }
        let mut key = vec![n, m];
        for y in 0..m {
            let (s, t) = self.ends[inv[y]];
            key.push(obj[s]);
            key.push(obj[t]);
        }
        for g2 in 0..m {
            for f2 in 0..m {
                let h = self.compose[inv[g2]][inv[f2]];
                key.push(if h == NONE { NONE } else { map(h) });
            }
        }
        key
    }

    fn canonical(&self) -> Vec<usize> {
        let n = self.n;
        let k = self.size() - n;
        let mut best: Option<Vec<usize>> = None;
        for obj in permutations(n) {
            for mor in permutations(k) {
                let key = self.encode(&obj, &mor);
                if best.as_ref().is_none_or(|b| key < *b) {
                    best = Some(key);
                }
            }
        }
        best.expect("at least the identity permutation")
    }

    fn to_fincat(&self, name: String) -> FinCat {
        let mut b = FinCatBuilder::new(name);
        let objs: Vec<ObjId> = (0..self.n).map(|i| b.object(i.to_string())).collect();
        for (x, &(s, t)) in self.ends.iter().enumerate() {
            let label = if x < self.n {
                format!("id_{x}")
            } else {
                format!("m{}", x - self.n)
            };
            b.morphism(label, objs[s], objs[t]);
        }
        for (i, &o) in objs.iter().enumerate() {
            b.set_identity(o, MorId::from(i));
        }
        for g in 0..self.size() {
            for f in 0..self.size() {
                let h = self.compose[g][f];
                if h != NONE {
                    b.compose(MorId::from(g), MorId::from(f), MorId::from(h));
                }
            }
        }
        b.build()
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                go(cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn fill_tables(t: &mut Table, pairs: &[(usize, usize)], at: usize, out: &mut Vec<Table>) {
    if at == pairs.len() {
        if t.associative() {
            out.push(t.clone());
        }
        return;
    }
    let (g, f) = pairs[at];
    let (s, _) = t.ends[f];
    let (_, e) = t.ends[g];
    for h in 0..t.size() {
        if t.ends[h] == (s, e) {
            t.compose[g][f] = h;
            fill_tables(t, pairs, at + 1, out);
        }
    }
    t.compose[g][f] = NONE;
}

/// Every category with at most `max_objects` objects and `max_morphisms`
/// morphisms (identities included), one per isomorphism class.
pub fn small_categories(max_objects: usize, max_morphisms: usize) -> Vec<FinCat> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for n in 0..=max_objects {
        if n > max_morphisms {
            break;
        }
        for k in 0..=(max_morphisms - n) {
            // Non-identity endpoints as a nondecreasing list of (src, tgt) codes.
            let mut codes = vec![0usize; k];
            loop {
                if n > 0 || k == 0 {
                    let mut ends: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
                    ends.extend(codes.iter().map(|&c| (c / n.max(1), c % n.max(1))));
                    let m = n + k;
                    let mut compose = vec![vec![NONE; m]; m];
                    for x in 0..m {
                        let (s, t) = ends[x];
                        compose[x][s] = x;
                        compose[t][x] = x;
                    }
                    let mut pairs = Vec::new();
                    for f in n..m {
                        for g in n..m {
                            if ends[f].1 == ends[g].0 {
                                pairs.push((g, f));
                            }
                        }
                    }
                    let mut t = Table { n, ends, compose };
                    let mut found = Vec::new();
                    fill_tables(&mut t, &pairs, 0, &mut found);
                    for t in found {
                        if seen.insert(t.canonical()) {
                            out.push(t);
                        }
                    }
                }
                // Next nondecreasing code list.
                let base = n * n;
                if base == 0 || k == 0 {
                    break;
                }
                let mut pos = k;
                while pos > 0 && codes[pos - 1] == base - 1 {
                    pos -= 1;
                }
                if pos == 0 {
                    break;
                }
                let v = codes[pos - 1] + 1;
                for c in codes.iter_mut().skip(pos - 1) {
                    *c = v;
                }
            }
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(i, t)| t.to_fincat(format!("K{i}")))
        .collect()
}

/// Every functor `a → b`.
pub fn all_functors(a: &FinCat, b: &FinCat) -> Vec<Functor> {
    let mut out = Vec::new();
    let n = a.num_objects();
    let mut obj = vec![ObjId(0); n];
    fn objs(i: usize, a: &FinCat, b: &FinCat, obj: &mut Vec<ObjId>, out: &mut Vec<Functor>) {
        if i == obj.len() {
            let mut mor: Vec<MorId> = a
                .morphisms()
                .map(|f| {
                    if a.is_identity(f) {
                        b.identity(obj[a.src(f).idx()])
                    } else {
                        MorId(u32::MAX)
                    }
                })
                .collect();
            let free: Vec<MorId> = a.morphisms().filter(|&f| !a.is_identity(f)).collect();
            mors(0, &free, a, b, obj, &mut mor, out);
            return;
        }
        for o in b.objects() {
            obj[i] = o;
            objs(i + 1, a, b, obj, out);
        }
    }
    fn mors(
        k: usize,
        free: &[MorId],
        a: &FinCat,
        b: &FinCat,
        obj: &[ObjId],
        mor: &mut Vec<MorId>,
        out: &mut Vec<Functor>,
    ) {
        if k == free.len() {
            let f = Functor {
                obj_map: obj.to_vec(),
                mor_map: mor.clone(),
            };
            let ok = a.morphisms().all(|x| {
                a.out_of(a.tgt(x)).iter().all(|&y| {
                    let yx = a.compose(y, x).expect("valid");
                    b.compose(f.mor(y), f.mor(x)) == Some(f.mor(yx))
                })
            });
            if ok {
                out.push(f);
            }
            return;
        }
        let x = free[k];
        let (s, t) = (obj[a.src(x).idx()], obj[a.tgt(x).idx()]);
        for &y in b.hom(s, t) {
            mor[x.idx()] = y;
            mors(k + 1, free, a, b, obj, mor, out);
        }
    }
    if n == 0 {
        out.push(Functor {
            obj_map: Vec::new(),
            mor_map: Vec::new(),
        });
        return out;
    }
    if b.num_objects() == 0 {
        return out;
    }
    objs(0, a, b, &mut obj, &mut out);
    out
}

/// Functors `c → c` that are bijective on objects and morphisms.
pub fn automorphisms(c: &FinCat) -> Vec<Functor> {
    all_functors(c, c)
        .into_iter()
        .filter(|f| {
            let mut seen = vec![false; c.num_morphisms()];
            f.mor_map
                .iter()
                .all(|m| !std::mem::replace(&mut seen[m.idx()], true))
        })
        .collect()
}

/// A diagram given by node choices (indices into the node list) and edges.
struct Shape<'a> {
    choice: &'a [usize],
    edges: &'a [Arc<Functor>],
}

/// Whether `shape` has the least encoding in its orbit under automorphisms of
/// the index and of every node.
fn is_canonical(
    j: &FinCat,
    j_autos: &[Functor],
    node_autos: &[Vec<Functor>],
    shape: &Shape<'_>,
) -> bool {
    let encode = |choice: &[usize], edges: &dyn Fn(usize) -> (Vec<u32>, Vec<u32>)| {
        let mut key: Vec<u32> = choice.iter().map(|&c| c as u32).collect();
        for u in 0..j.num_morphisms() {
            let (o, m) = edges(u);
            key.extend(o);
            key.extend(m);
        }
        key
    };
    let own = encode(shape.choice, &|u| {
        let e = &shape.edges[u];
        (
            e.obj_map.iter().map(|o| o.0).collect(),
            e.mor_map.iter().map(|m| m.0).collect(),
        )
    });
    let n = j.num_objects();
    for pi in j_autos {
        // Node at pi(i) is the node at i.
        let mut choice = vec![0; n];
        for i in 0..n {
            choice[pi.obj_map[i].idx()] = shape.choice[i];
        }
        let mut inv_u = vec![0; j.num_morphisms()];
        for (u, v) in pi.mor_map.iter().enumerate() {
            inv_u[v.idx()] = u;
        }
        let mut alpha = vec![0usize; n];
        loop {
            // alpha[i] picks an automorphism of the node now at i.
            let auto = |i: usize| &node_autos[choice[i]][alpha[i]];
            let inverse = |i: usize| -> (Vec<usize>, Vec<usize>) {
                let a = auto(i);
                let mut io = vec![0; a.obj_map.len()];
                for (x, y) in a.obj_map.iter().enumerate() {
                    io[y.idx()] = x;
                }
                let mut im = vec![0; a.mor_map.len()];
                for (x, y) in a.mor_map.iter().enumerate() {
                    im[y.idx()] = x;
                }
                (io, im)
            };
            let key = encode(&choice, &|v| {
                let u = inv_u[v];
                let e = &shape.edges[u];
                let (s, t) = (j.src(MorId::from(v)).idx(), j.tgt(MorId::from(v)).idx());
                let (io, im) = inverse(s);
                let at = auto(t);
                (
                    io.iter()
                        .map(|&x| at.obj_map[e.obj_map[x].idx()].0)
                        .collect(),
                    im.iter()
                        .map(|&x| at.mor_map[e.mor_map[x].idx()].0)
                        .collect(),
                )
            });
            if key < own {
                return false;
            }
            let mut k = 0;
            while k < n {
                alpha[k] += 1;
                if alpha[k] < node_autos[choice[k]].len() {
                    break;
                }
                alpha[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
    }
    true
}

/// Calls `visit` on every diagram whose index is in `indices` and whose nodes
/// are in `nodes`. With `up_to_iso`, only the least member of each orbit under
/// automorphisms of the index and of the nodes is visited.
pub fn for_each_diagram(
    indices: &[FinCat],
    nodes: &[FinCat],
    up_to_iso: bool,
    mut visit: impl FnMut(Diagram),
) {
    let node_autos: Vec<Vec<Functor>> = if up_to_iso {
        nodes.iter().map(automorphisms).collect()
    } else {
        Vec::new()
    };
    let nodes: Vec<Arc<FinCat>> = nodes.iter().cloned().map(Arc::new).collect();
    let mut functor_cache: std::collections::HashMap<(usize, usize), Arc<Vec<Arc<Functor>>>> =
        Default::default();
    for j in indices {
        let j_autos = if up_to_iso {
            automorphisms(j)
        } else {
            Vec::new()
        };
        let mut choice = vec![0usize; j.num_objects()];
        loop {
            let free: Vec<MorId> = j.morphisms().filter(|&u| !j.is_identity(u)).collect();
            let options: Vec<Arc<Vec<Arc<Functor>>>> = free
                .iter()
                .map(|&u| {
                    let key = (choice[j.src(u).idx()], choice[j.tgt(u).idx()]);
                    functor_cache
                        .entry(key)
                        .or_insert_with(|| {
                            Arc::new(
                                all_functors(&nodes[key.0], &nodes[key.1])
                                    .into_iter()
                                    .map(Arc::new)
                                    .collect(),
                            )
                        })
                        .clone()
                })
                .collect();
            let mut pick = vec![0usize; free.len()];
            if options.iter().all(|o| !o.is_empty()) {
                loop {
                    let mut edges: Vec<Arc<Functor>> = j
                        .morphisms()
                        .map(|u| Arc::new(Functor::identity(&nodes[choice[j.src(u).idx()]])))
                        .collect();
                    for (k, &u) in free.iter().enumerate() {
                        edges[u.idx()] = options[k][pick[k]].clone();
                    }
                    let d = Diagram {
                        index: j.clone(),
                        nodes: choice.iter().map(|&c| nodes[c].clone()).collect(),
                        edges,
                    };
                    let keep = functorial(&d)
                        && (!up_to_iso
                            || is_canonical(
                                j,
                                &j_autos,
                                &node_autos,
                                &Shape {
                                    choice: &choice,
                                    edges: &d.edges,
                                },
                            ));
                    if keep {
                        visit(d);
                    }
                    let mut k = 0;
                    while k < pick.len() {
                        pick[k] += 1;
                        if pick[k] < options[k].len() {
                            break;
                        }
                        pick[k] = 0;
                        k += 1;
                    }
                    if k == pick.len() {
                        break;
                    }
                }
            }
            let mut k = 0;
            while k < choice.len() {
                choice[k] += 1;
                if choice[k] < nodes.len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == choice.len() {
                break;
            }
        }
    }
}

fn functorial(d: &Diagram) -> bool {
    let j = &d.index;
    j.morphisms().all(|u| {
        j.out_of(j.tgt(u)).iter().all(|&v| {
            let vu = j.compose(v, u).expect("valid index");
            d.edge(v).after(d.edge(u)) == *d.edge(vu)
        })
    })
}

/// The exhaustive family: indices with `≤ 2` objects and `≤ 4` morphisms,
/// nodes with `≤ 2` objects and `≤ 4` morphisms, one per isomorphism class
/// when `up_to_iso`.
pub fn exhaustive_small(up_to_iso: bool, visit: impl FnMut(Diagram)) {
    let cats = small_categories(2, 4);
    let indices: Vec<FinCat> = cats
        .iter()
        .filter(|c| c.num_objects() > 0)
        .cloned()
        .collect();
    for_each_diagram(&indices, &cats, up_to_iso, visit);
}

/// A random category of functions between small sets, closed under composition.
pub fn random_concrete_category(
    rng: &mut impl Rng,
    max_objects: usize,
    max_morphisms: usize,
    name: String,
) -> FinCat {
    loop {
        let n = rng.gen_range(1..=max_objects);
        let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
        // Morphisms are (src, tgt, function as vector).
        let mut mors: Vec<(usize, usize, Vec<usize>)> =
            (0..n).map(|i| (i, i, (0..sizes[i]).collect())).collect();
        let extra = rng.gen_range(0..=(max_morphisms.saturating_sub(n)));
        for _ in 0..extra {
            let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let f: Vec<usize> = (0..sizes[s]).map(|_| rng.gen_range(0..sizes[t])).collect();
            if !mors.contains(&(s, t, f.clone())) {
                mors.push((s, t, f));
            }
        }
        // Close under composition.
        let mut changed = true;
        while changed && mors.len() <= max_morphisms {
            changed = false;
            let snapshot = mors.clone();
            for (fs, ft, f) in &snapshot {
                for (gs, gt, g) in &snapshot {
                    if ft == gs {
                        let h: Vec<usize> = f.iter().map(|&x| g[x]).collect();
                        let m = (*fs, *gt, h);
                        if !mors.contains(&m) {
                            mors.push(m);
                            changed = true;
                        }
                    }
                }
            }
        }
        if mors.len() > max_morphisms {
            continue;
        }
        let mut b = FinCatBuilder::new(name.clone());
        let objs: Vec<ObjId> = (0..n).map(|i| b.object(format!("o{i}"))).collect();
        let ids: Vec<MorId> = mors
            .iter()
            .enumerate()
            .map(|(x, (s, t, _))| {
                let label = if x < n {
                    format!("id_o{x}")
                } else {
                    format!("m{}", x - n)
                };
                b.morphism(label, objs[*s], objs[*t])
            })
            .collect();
        for i in 0..n {
            b.set_identity(objs[i], ids[i]);
        }
        for (fi, (_, ft, f)) in mors.iter().enumerate() {
            for (gi, (gs, gt, g)) in mors.iter().enumerate() {
                if ft == gs {
                    let h: Vec<usize> = f.iter().map(|&x| g[x]).collect();
                    let hi = mors
                        .iter()
                        .position(|m| m.0 == mors[fi].0 && m.1 == *gt && m.2 == h)
                        .expect("closed");
                    b.compose(ids[gi], ids[fi], ids[hi]);
                }
            }
        }
        let c = b.build();
        debug_assert!(validate_fincat(&c).is_empty());
        return c;
    }
}

/// `count` seeded random diagrams: indices and nodes with `≤ 3` objects and `≤ 5` morphisms.
pub fn random_diagrams(seed: u64, count: usize) -> Vec<Diagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let j = random_concrete_category(&mut rng, 3, 5, format!("J{}", out.len()));
        let nodes: Vec<Arc<FinCat>> = (0..j.num_objects())
            .map(|i| {
                Arc::new(random_concrete_category(
                    &mut rng,
                    3,
                    5,
                    format!("C{}_{i}", out.len()),
                ))
            })
            .collect();
        // Assign edges in morphism order, retrying a bounded number of times.
        let free: Vec<MorId> = j.morphisms().filter(|&u| !j.is_identity(u)).collect();
        let mut attempt = 0;
        let found = loop {
            attempt += 1;
            if attempt > 50 {
                break None;
            }
            let mut edges: Vec<Arc<Functor>> = j
                .morphisms()
                .map(|u| Arc::new(Functor::identity(&nodes[j.src(u).idx()])))
                .collect();
            let mut ok = true;
            for &u in &free {
                let fs = all_functors(&nodes[j.src(u).idx()], &nodes[j.tgt(u).idx()]);
                match fs.choose(&mut rng) {
                    Some(f) => edges[u.idx()] = Arc::new(f.clone()),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            let d = Diagram {
                index: j.clone(),
                nodes: nodes.clone(),
                edges,
            };
            if functorial(&d) {
                break Some(d);
            }
        };
        if let Some(d) = found {
            out.push(d);
        }
    }
    out
}
