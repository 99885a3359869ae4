//! The colimit of a diagram of finite categories, computed from decorated zig-zags.
//!
//! Objects are classes of elements `(i, a)`. Morphisms are decorated zig-zags
//! up to the equivalence generated by 2-cells; the engine enumerates every
//! decorated zig-zag up to a length bound and merges along cells. Every cell
//! is a vertical composite of three elementary moves (move one foot, move one
//! apex, collapse a roof with equal legs), and none of them lengthens a
//! zig-zag, so merging along the moves inside the window computes the same
//! partition as merging along all cells inside the window. The partition is
//! then closed under extension by single roofs on either side, so that it is
//! a congruence for composition.

mod check;
mod compare;
mod moves;
pub mod sweep;

use std::collections::{BTreeMap, VecDeque};
use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::decor::{compose_decorated, identity_decoration, DecoratedZigZag, ElementArrow};
use crate::fincat::{Diagram, FinCat, ObjId};
use crate::unionfind::UnionFind;
use crate::zigzag::Orientation;
use crate::{par, Budget, BudgetExceeded};

pub use check::{check_diagram, check_window, Property, PropertyReport, PROPERTIES};
pub use compare::{compare_window, compare_with_oracle, CompareStatus, ComparisonReport};
pub use moves::{atom_extensions, cells_from, exhaustive_neighbours, move_neighbours, Atom};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ColimError {
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error("class {0} is not in the table")]
    UnknownClass(usize),
    #[error("classes are not composable")]
    NotComposable,
    #[error("the item could not be reduced into the enumerated window")]
    OutsideWindow,
}

/// A diagram of finite sets over a finite index.
#[derive(Clone, Debug)]
pub struct SetDiagram {
    pub index: FinCat,
    pub sizes: Vec<usize>,
    /// `maps[u][x]` is the image of `x` under index morphism `u`.
    pub maps: Vec<Vec<usize>>,
}

impl SetDiagram {
    /// `Ob ∘ F`.
    pub fn objects_of(d: &Diagram) -> Self {
        SetDiagram {
            index: d.index.clone(),
            sizes: d.nodes.iter().map(|c| c.num_objects()).collect(),
            maps: d
                .edges
                .iter()
                .map(|e| e.obj_map.iter().map(|o| o.idx()).collect())
                .collect(),
        }
    }
}

/// Classes of the colimit set, as a label per element and the class count.
/// Labels are numbered by first occurrence in index order.
pub fn colim_set(d: &SetDiagram) -> (Vec<Vec<usize>>, usize) {
    let mut offset = Vec::with_capacity(d.sizes.len());
    let mut total = 0;
    for &s in &d.sizes {
        offset.push(total);
        total += s;
    }
    let mut uf = UnionFind::new(total);
    for u in d.index.morphisms() {
        let (s, t) = (d.index.src(u).idx(), d.index.tgt(u).idx());
        for (x, &y) in d.maps[u.idx()].iter().enumerate() {
            uf.union(offset[s] + x, offset[t] + y);
        }
    }
    let (labels, count) = uf.labels();
    let out = (0..d.sizes.len())
        .map(|i| (0..d.sizes[i]).map(|x| labels[offset[i] + x]).collect())
        .collect();
    (out, count)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectClass {
    pub id: usize,
    pub representative: (ObjId, ObjId),
    pub members: Vec<(ObjId, ObjId)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectClasses {
    pub classes: Vec<ObjectClass>,
    class_of: Vec<Vec<usize>>,
}

impl ObjectClasses {
    pub fn of(&self, (i, a): (ObjId, ObjId)) -> usize {
        self.class_of[i.idx()][a.idx()]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// `Ob(colim F) = colim Ob(F(i))`.
pub fn colim_objects(d: &Diagram) -> ObjectClasses {
    let (class_of, count) = colim_set(&SetDiagram::objects_of(d));
    let mut members = vec![Vec::new(); count];
    for (i, row) in class_of.iter().enumerate() {
        for (a, &c) in row.iter().enumerate() {
            members[c].push((ObjId::from(i), ObjId::from(a)));
        }
    }
    let classes = members
        .into_iter()
        .enumerate()
        .map(|(id, members)| ObjectClass {
            id,
            representative: members[0],
            members,
        })
        .collect();
    ObjectClasses { classes, class_of }
}

/// How merges are discovered.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum CellSearch {
    /// Elementary moves only.
    #[default]
    Moves,
    /// Every cell out of each item's base.
    Exhaustive,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct HomBounds {
    pub max_zz_len: usize,
    pub budget: Budget,
    pub search: CellSearch,
    /// Rerun at `max_zz_len + 1` to decide the saturation certificate.
    pub certify: bool,
}

impl HomBounds {
    pub fn new(max_zz_len: usize) -> Self {
        HomBounds {
            max_zz_len,
            budget: Budget::from_env(),
            search: CellSearch::Moves,
            certify: true,
        }
    }
}

/// Every decorated zig-zag of length `≤ max_zz_len` between the selected
/// object classes, partitioned into classes.
#[derive(Clone, Debug)]
pub struct Window<'d> {
    d: &'d Diagram,
    objects: ObjectClasses,
    pub max_zz_len: usize,
    pair: Option<(usize, usize)>,
    items: Vec<Vec<u32>>,
    label: Vec<u32>,
    num_classes: usize,
    /// Least item of each class.
    class_rep: Vec<u32>,
    class_size: Vec<u32>,
    class_ends: Vec<(usize, usize)>,
}

struct Enumerator<'a, F> {
    d: &'a Diagram,
    end_ok: &'a F,
    max_len: usize,
    limit: usize,
    i0: ObjId,
    roofs: Vec<[u32; 3]>,
    chain: Vec<u32>,
    out: Vec<Vec<u32>>,
}

impl<F: Fn(ObjId, ObjId) -> bool> Enumerator<'_, F> {
    fn emit(&mut self) -> Result<(), BudgetExceeded> {
        let mut key = Vec::with_capacity(2 + 3 * self.roofs.len() + self.chain.len());
        key.push(self.roofs.len() as u32);
        key.push(self.i0.0);
        for r in &self.roofs {
            key.extend_from_slice(r);
        }
        key.extend_from_slice(&self.chain);
        self.out.push(key);
        Budget(self.limit).check(self.out.len(), "decorated zig-zags")
    }

    fn go(&mut self, i: ObjId, x: ObjId) -> Result<(), BudgetExceeded> {
        let d = self.d;
        let j = &d.index;
        let c = d.node(i);
        for &f in c.out_of(x) {
            if (self.end_ok)(i, c.tgt(f)) {
                self.chain.push(f.0);
                let r = self.emit();
                self.chain.pop();
                r?;
            }
        }
        if self.roofs.len() == self.max_len {
            return Ok(());
        }
        for &l in j.into(i) {
            let apex = j.src(l);
            for a in d.node(apex).objects() {
                let y = d.push_obj(l, a);
                for &f in c.hom(x, y) {
                    for &r in j.out_of(apex) {
                        self.roofs.push([l.0, r.0, a.0]);
                        self.chain.push(f.0);
                        let res = self.go(j.tgt(r), d.push_obj(r, a));
                        self.roofs.pop();
                        self.chain.pop();
                        res?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<'d> Window<'d> {
    /// Enumerates and partitions. `pair = Some((s, t))` restricts to items
    /// from class `s` to class `t`; `None` takes every pair.
    pub fn build(
        d: &'d Diagram,
        pair: Option<(usize, usize)>,
        max_zz_len: usize,
        budget: Budget,
        search: CellSearch,
    ) -> Result<Self, ColimError> {
        let objects = colim_objects(d);
        let (from_s, to_t) = match pair {
            Some((s, t)) => (
                class_reach(d, &objects, s, false),
                class_reach(d, &objects, t, true),
            ),
            None => (vec![true; objects.len()], vec![true; objects.len()]),
        };
        let starts: Vec<(ObjId, ObjId)> = d
            .elements()
            .into_iter()
            .filter(|&e| from_s[objects.of(e)])
            .collect();
        let end_ok = |i: ObjId, b: ObjId| to_t[objects.of((i, b))];
        let batches = par::map(&starts, |&(i, a)| {
            let mut e = Enumerator {
                d,
                end_ok: &end_ok,
                max_len: max_zz_len,
                limit: budget.0,
                i0: i,
                roofs: Vec::new(),
                chain: Vec::new(),
                out: Vec::new(),
            };
            e.go(i, a).map(|_| e.out)
        });
        let mut items = Vec::new();
        for b in batches {
            items.extend(b?);
            budget.check(items.len(), "decorated zig-zags")?;
        }
        items.sort_unstable();
        let mut w = Window {
            d,
            objects,
            max_zz_len,
            pair,
            items,
            label: Vec::new(),
            num_classes: 0,
            class_rep: Vec::new(),
            class_size: Vec::new(),
            class_ends: Vec::new(),
        };
        w.partition(search);
        Ok(w)
    }

    fn partition(&mut self, search: CellSearch) {
        let d = self.d;
        let items = &self.items;
        let edges: Vec<Vec<u32>> = par::map_range(items.len(), |x| {
            let item = DecoratedZigZag::decode(&d.index, &items[x]);
            let nbrs = match search {
                CellSearch::Moves => move_neighbours(d, &item),
                CellSearch::Exhaustive => exhaustive_neighbours(d, &item),
            };
            let mut out: Vec<u32> = nbrs
                .iter()
                .filter_map(|k| items.binary_search(k).ok().map(|y| y as u32))
                .collect();
            out.sort_unstable();
            out.dedup();
            out
        });
        let mut uf = UnionFind::new(items.len());
        for (x, ys) in edges.iter().enumerate() {
            for &y in ys {
                uf.union(x, y as usize);
            }
        }
        drop(edges);
        let max_len = self.max_zz_len;
        let extensions: Vec<Vec<(Atom, u32)>> = par::map_range(items.len(), |x| {
            let item = DecoratedZigZag::decode(&d.index, &items[x]);
            atom_extensions(d, &item, max_len)
                .into_iter()
                .filter_map(|(atom, k)| items.binary_search(&k).ok().map(|y| (atom, y as u32)))
                .collect()
        });
        congruence_closure(&mut uf, &extensions);
        let (labels, count) = uf.labels();
        self.label = labels.iter().map(|&l| l as u32).collect();
        self.num_classes = count;
        self.class_rep = vec![u32::MAX; count];
        self.class_size = vec![0; count];
        self.class_ends = vec![(0, 0); count];
        for (x, &l) in labels.iter().enumerate() {
            if self.class_rep[l] == u32::MAX {
                self.class_rep[l] = x as u32;
                let item = DecoratedZigZag::decode(&d.index, &items[x]);
                self.class_ends[l] = (self.objects.of(item.start(d)), self.objects.of(item.end(d)));
            }
            self.class_size[l] += 1;
        }
    }

    pub fn diagram(&self) -> &'d Diagram {
        self.d
    }

    pub fn objects(&self) -> &ObjectClasses {
        &self.objects
    }

    pub fn num_items(&self) -> usize {
        self.items.len()
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn item(&self, x: usize) -> DecoratedZigZag {
        DecoratedZigZag::decode(&self.d.index, &self.items[x])
    }

    pub fn representative(&self, class: usize) -> DecoratedZigZag {
        self.item(self.class_rep[class] as usize)
    }

    pub fn class_ends(&self, class: usize) -> (usize, usize) {
        self.class_ends[class]
    }

    /// Class of an item that lies in the window.
    pub fn lookup(&self, z: &DecoratedZigZag) -> Option<usize> {
        self.items
            .binary_search(&z.encode())
            .ok()
            .map(|x| self.label[x] as usize)
    }

    fn in_scope(&self, z: &DecoratedZigZag) -> bool {
        let ends = (
            self.objects.of(z.start(self.d)),
            self.objects.of(z.end(self.d)),
        );
        self.pair.is_none_or(|p| p == ends)
    }

    /// Class of any item, reducing it along moves into the window when it is
    /// longer than the bound. Gives up after `budget` visited items.
    pub fn classify(&self, z: &DecoratedZigZag, budget: Budget) -> Result<usize, ColimError> {
        if !self.in_scope(z) {
            return Err(ColimError::OutsideWindow);
        }
        if let Some(c) = self.lookup(z) {
            return Ok(c);
        }
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(z.encode());
        queue.push_back(z.clone());
        while let Some(x) = queue.pop_front() {
            for key in move_neighbours(self.d, &x) {
                if let Ok(y) = self.items.binary_search(&key) {
                    return Ok(self.label[y] as usize);
                }
                if seen.insert(key.clone()) {
                    budget.check(seen.len(), "reduction search")?;
                    queue.push_back(DecoratedZigZag::decode(&self.d.index, &key));
                }
            }
        }
        Err(ColimError::OutsideWindow)
    }

    /// Classes from `s` to `t`, ordered by representative.
    pub fn classes_between(&self, s: usize, t: usize) -> Vec<usize> {
        (0..self.num_classes)
            .filter(|&c| self.class_ends[c] == (s, t))
            .collect()
    }

    /// The classes from `s` to `t` of `self` stay distinct in `big`, and every
    /// class of `big` from `s` to `t` meets `self`'s window. `big` must be the
    /// same enumeration at a larger bound.
    pub fn saturated_in(&self, big: &Window<'_>, s: usize, t: usize) -> bool {
        debug_assert!(big.items.len() >= self.items.len());
        let mut seen = HashSet::new();
        for c in self.classes_between(s, t) {
            if !seen.insert(big.label[self.class_rep[c] as usize]) {
                return false;
            }
        }
        big.classes_between(s, t)
            .into_iter()
            .all(|c| (big.class_rep[c] as usize) < self.items.len())
    }

    pub fn table(&self, s: usize, t: usize, saturated: bool) -> HomClassTable {
        let classes = self
            .classes_between(s, t)
            .into_iter()
            .map(|c| HomClass {
                id: c,
                representative: self.representative(c),
                size: self.class_size[c] as usize,
            })
            .collect();
        let items = (0..self.items.len())
            .filter(|&x| self.class_ends[self.label[x] as usize] == (s, t))
            .count();
        HomClassTable {
            source: s,
            target: t,
            max_zz_len: self.max_zz_len,
            classes,
            items,
            saturated,
        }
    }

    /// Composite of two classes: representatives joined by the least
    /// connecting element zig-zag, then reduced into the window.
    pub fn compose_classes(
        &self,
        c1: usize,
        c2: usize,
        budget: Budget,
    ) -> Result<usize, ColimError> {
        for c in [c1, c2] {
            if c >= self.num_classes {
                return Err(ColimError::UnknownClass(c));
            }
        }
        let (x, y) = (self.representative(c1), self.representative(c2));
        let composite = join(self.d, &x, &y).ok_or(ColimError::NotComposable)?;
        self.classify(&composite, budget)
    }
}

/// Merges until items of one class extended by the same atom land in one
/// class. Unions are applied in item order, so the result is deterministic.
fn congruence_closure(uf: &mut UnionFind, extensions: &[Vec<(Atom, u32)>]) {
    loop {
        let mut changed = false;
        let mut seen: HashMap<(Atom, usize), usize> = HashMap::new();
        for (x, ext) in extensions.iter().enumerate() {
            for &(atom, y) in ext {
                let key = (atom, uf.find(x));
                match seen.get(&key) {
                    Some(&z) => changed |= uf.union(z, y as usize),
                    None => {
                        seen.insert(key, y as usize);
                    }
                }
            }
        }
        if !changed {
            return;
        }
    }
}

/// Object classes reachable from `c` along morphisms of the nodes (or
/// reaching `c` when `backward`).
fn class_reach(d: &Diagram, objects: &ObjectClasses, c: usize, backward: bool) -> Vec<bool> {
    let mut adj = vec![Vec::new(); objects.len()];
    for (i, cat) in d.nodes.iter().enumerate() {
        let i = ObjId::from(i);
        for f in cat.morphisms() {
            let (a, b) = (objects.of((i, cat.src(f))), objects.of((i, cat.tgt(f))));
            if backward {
                adj[b].push(a);
            } else {
                adj[a].push(b);
            }
        }
    }
    let mut seen = vec![false; objects.len()];
    seen[c] = true;
    let mut stack = vec![c];
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen
}

/// `x ⋄ e ⋄ y` for the least element zig-zag `e` from the end of `x` to the start of `y`.
pub fn join(d: &Diagram, x: &DecoratedZigZag, y: &DecoratedZigZag) -> Option<DecoratedZigZag> {
    let path = connecting_path(d, x.end(d), y.start(d))?;
    let e = identity_decoration(d, x.end(d), &path).ok()?;
    let xe = compose_decorated(d, x, &e).ok()?;
    compose_decorated(d, &xe, y).ok()
}

/// Shortest element zig-zag between two elements, least in the fixed order of
/// neighbour exploration (forward arrows first, then backward, by id).
pub fn connecting_path(
    d: &Diagram,
    from: (ObjId, ObjId),
    to: (ObjId, ObjId),
) -> Option<Vec<(ElementArrow, Orientation)>> {
    let j = &d.index;
    let mut parent: BTreeMap<(ObjId, ObjId), Option<((ObjId, ObjId), ElementArrow, Orientation)>> =
        BTreeMap::new();
    parent.insert(from, None);
    let mut queue = VecDeque::from([from]);
    while let Some(e) = queue.pop_front() {
        if e == to {
            let mut path = Vec::new();
            let mut cur = e;
            while let Some(Some((prev, arrow, o))) = parent.get(&cur) {
                path.push((*arrow, *o));
                cur = *prev;
            }
            path.reverse();
            return Some(path);
        }
        let (i, a) = e;
        let mut next = Vec::new();
        for &u in j.out_of(i) {
            if !j.is_identity(u) {
                next.push((
                    (j.tgt(u), d.push_obj(u, a)),
                    ElementArrow { u, a },
                    Orientation::Forward,
                ));
            }
        }
        for &u in j.into(i) {
            if j.is_identity(u) {
                continue;
            }
            let s = j.src(u);
            for a2 in d.node(s).objects() {
                if d.push_obj(u, a2) == a {
                    next.push(((s, a2), ElementArrow { u, a: a2 }, Orientation::Backward));
                }
            }
        }
        for (n, arrow, o) in next {
            if let std::collections::btree_map::Entry::Vacant(v) = parent.entry(n) {
                v.insert(Some((e, arrow, o)));
                queue.push_back(n);
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomClass {
    /// Class id inside the window it came from.
    pub id: usize,
    pub representative: DecoratedZigZag,
    pub size: usize,
}

/// Hom classes between two object classes, with the bound used and the certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomClassTable {
    pub source: usize,
    pub target: usize,
    pub max_zz_len: usize,
    pub classes: Vec<HomClass>,
    /// Number of enumerated items from `source` to `target`.
    pub items: usize,
    pub saturated: bool,
}

impl HomClassTable {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Hom classes from object class `s` to `t` with the saturation certificate.
pub fn hom_classes(
    d: &Diagram,
    s: usize,
    t: usize,
    bounds: HomBounds,
) -> Result<HomClassTable, ColimError> {
    let w = Window::build(
        d,
        Some((s, t)),
        bounds.max_zz_len,
        bounds.budget,
        bounds.search,
    )?;
    let saturated = bounds.certify
        && match Window::build(
            d,
            Some((s, t)),
            bounds.max_zz_len + 1,
            bounds.budget,
            bounds.search,
        ) {
            Ok(big) => w.saturated_in(&big, s, t),
            Err(ColimError::Budget(_)) => false,
            Err(e) => return Err(e),
        };
    Ok(w.table(s, t, saturated))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pushout_of_sets() {
        // {a, b} ← {x} → {c}, x ↦ a, x ↦ c.
        let mut b = crate::fincat::FinCatBuilder::new("span");
        let k = b.object_with_identity("k");
        let i = b.object_with_identity("i");
        let j = b.object_with_identity("j");
        b.morphism("l", k, i);
        b.morphism("r", k, j);
        let index = b.build();
        let mut maps = vec![Vec::new(); index.num_morphisms()];
        maps[index.identity(k).idx()] = vec![0];
        maps[index.identity(i).idx()] = vec![0, 1];
        maps[index.identity(j).idx()] = vec![0];
        maps[index.find_morphism("l").unwrap().idx()] = vec![0];
        maps[index.find_morphism("r").unwrap().idx()] = vec![0];
        let d = SetDiagram {
            index,
            sizes: vec![1, 2, 1],
            maps,
        };
        let (_, count) = colim_set(&d);
        assert_eq!(count, 2);
    }
}
