//! Finitely presented categories and the presentation of a colimit of categories.

use std::fmt;

use super::{Diagram, FinCat, MorId, ObjId};
use crate::unionfind::UnionFind;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenId(pub u32);

impl GenId {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A composable sequence of generators, first-applied first. Empty paths carry their object.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub src: usize,
    pub gens: Vec<GenId>,
}

impl Path {
    pub fn empty(obj: usize) -> Self {
        Path {
            src: obj,
            gens: Vec::new(),
        }
    }

    pub fn single(p: &FinPresCat, g: GenId) -> Self {
        Path {
            src: p.generators[g.idx()].src,
            gens: vec![g],
        }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn tgt(&self, p: &FinPresCat) -> usize {
        self.gens
            .last()
            .map_or(self.src, |g| p.generators[g.idx()].tgt)
    }

    pub fn is_composable(&self, p: &FinPresCat) -> bool {
        let mut at = self.src;
        for g in &self.gens {
            let gen = &p.generators[g.idx()];
            if gen.src != at {
                return false;
            }
            at = gen.tgt;
        }
        true
    }

    pub fn render(&self, p: &FinPresCat) -> String {
        if self.gens.is_empty() {
            return format!("id_{}", p.objects[self.src]);
        }
        self.gens
            .iter()
            .rev()
            .map(|g| p.generators[g.idx()].name.as_str())
            .collect::<Vec<_>>()
            .join("∘")
    }
}

pub type Relation = (Path, Path);

/// A category presented by a generating graph and relations between parallel paths.
#[derive(Clone, Debug, Default)]
pub struct FinPresCat {
    pub objects: Vec<String>,
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresentationViolation {
    UnknownObject(usize),
    BrokenPath(usize),
    NotParallel(usize),
    DuplicateGenerator(String),
}

impl fmt::Display for PresentationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresentationViolation::UnknownObject(g) => {
                write!(f, "generator {g} has an unknown endpoint")
            }
            PresentationViolation::BrokenPath(r) => {
                write!(f, "relation {r} contains a non-composable path")
            }
            PresentationViolation::NotParallel(r) => {
                write!(f, "relation {r} is not between parallel paths")
            }
            PresentationViolation::DuplicateGenerator(n) => write!(f, "duplicate generator {n}"),
        }
    }
}

impl FinPresCat {
    pub fn out_of(&self, obj: usize) -> Vec<GenId> {
        (0..self.generators.len())
            .filter(|&g| self.generators[g].src == obj)
            .map(|g| GenId(g as u32))
            .collect()
    }

    pub fn find_object(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn find_generator(&self, name: &str) -> Option<GenId> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .map(|g| GenId(g as u32))
    }

    pub fn validate(&self) -> Vec<PresentationViolation> {
        let mut out = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (i, g) in self.generators.iter().enumerate() {
            if g.src >= self.objects.len() || g.tgt >= self.objects.len() {
                out.push(PresentationViolation::UnknownObject(i));
            }
            if !seen.insert(g.name.as_str()) {
                out.push(PresentationViolation::DuplicateGenerator(g.name.clone()));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for (r, (s, t)) in self.relations.iter().enumerate() {
            if !s.is_composable(self) || !t.is_composable(self) {
                out.push(PresentationViolation::BrokenPath(r));
            } else if s.src != t.src || s.tgt(self) != t.tgt(self) {
                out.push(PresentationViolation::NotParallel(r));
            }
        }
        out
    }

    /// The presentation with every non-identity morphism a generator and every
    /// composite a relation.
    pub fn tautological(c: &FinCat) -> Self {
        let d = Diagram::constant(c.clone());
        present_colimit(&d).presentation
    }
}

/// A presentation of `colim F` together with where each element and morphism went.
#[derive(Clone, Debug)]
pub struct ColimitPresentation {
    pub presentation: FinPresCat,
    /// `object_class[i][a]` is the object of the presentation for `(i, a)`.
    pub object_class: Vec<Vec<usize>>,
    /// `generator[i][f]` is the generator for `f ∈ C_i`, or `None` for identities.
    pub generator: Vec<Vec<Option<GenId>>>,
}

impl ColimitPresentation {
    /// The path presenting `f ∈ C_i`: a single generator, or empty for an identity.
    pub fn path_of(&self, d: &Diagram, i: ObjId, f: MorId) -> Path {
        match self.generator[i.idx()][f.idx()] {
            Some(g) => Path {
                src: self.presentation.generators[g.idx()].src,
                gens: vec![g],
            },
            None => Path::empty(self.object_class[i.idx()][d.node(i).src(f).idx()]),
        }
    }

    /// Merges generators that a relation equates with a single generator and
    /// drops those equated with an identity; relations are rewritten and the
    /// ones that become trivial are removed. Presents the same category.
    pub fn simplified(&self) -> Self {
        let p = &self.presentation;
        let n = p.generators.len();
        // Slot `n` stands for "identity".
        let mut uf = UnionFind::new(n + 1);
        for (s, t) in &p.relations {
            let one = |w: &Path| match w.gens.len() {
                0 => Some(n),
                1 => Some(w.gens[0].idx()),
                _ => None,
            };
            if let (Some(a), Some(b)) = (one(s), one(t)) {
                uf.union(a, b);
            }
        }
        let dead = uf.find(n);
        let mut new_id: Vec<Option<GenId>> = vec![None; n];
        let mut first: Vec<Option<GenId>> = vec![None; n + 1];
        let mut generators = Vec::new();
        for g in 0..n {
            let r = uf.find(g);
            if r == dead {
                continue;
            }
            let id = *first[r].get_or_insert_with(|| {
                generators.push(p.generators[g].clone());
                GenId(generators.len() as u32 - 1)
            });
            new_id[g] = Some(id);
        }
        let rewrite = |w: &Path| Path {
            src: w.src,
            gens: w.gens.iter().filter_map(|g| new_id[g.idx()]).collect(),
        };
        let mut relations = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (s, t) in &p.relations {
            let (s, t) = (rewrite(s), rewrite(t));
            if s != t && seen.insert((s.clone(), t.clone())) {
                relations.push((s, t));
            }
        }
        ColimitPresentation {
            presentation: FinPresCat {
                objects: p.objects.clone(),
                generators,
                relations,
            },
            object_class: self.object_class.clone(),
            generator: self
                .generator
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|g| g.and_then(|g| new_id[g.idx()]))
                        .collect()
                })
                .collect(),
        }
    }
}

/// Presents `colim F`: objects are classes of the element relation, generators
/// are the non-identity morphisms of every node, relations are the composition
/// facts of each node and the identifications `f ≐ ũ(f)`.
pub fn present_colimit(d: &Diagram) -> ColimitPresentation {
    let j = &d.index;
    let mut offset = Vec::with_capacity(j.num_objects());
    let mut total = 0;
    for i in j.objects() {
        offset.push(total);
        total += d.node(i).num_objects();
    }
    let mut uf = UnionFind::new(total);
    for u in j.morphisms() {
        let (s, t) = (j.src(u), j.tgt(u));
        for a in d.node(s).objects() {
            uf.union(
                offset[s.idx()] + a.idx(),
                offset[t.idx()] + d.push_obj(u, a).idx(),
            );
        }
    }
    let (labels, count) = uf.labels();
    let mut objects = vec![String::new(); count];
    for i in j.objects() {
        for a in d.node(i).objects() {
            let l = labels[offset[i.idx()] + a.idx()];
            if objects[l].is_empty() {
                objects[l] = format!("{}:{}", j.object_name(i), d.node(i).object_name(a));
            }
        }
    }
    let object_class: Vec<Vec<usize>> = j
        .objects()
        .map(|i| {
            d.node(i)
                .objects()
                .map(|a| labels[offset[i.idx()] + a.idx()])
                .collect()
        })
        .collect();
    let mut generators = Vec::new();
    let mut generator: Vec<Vec<Option<GenId>>> = Vec::new();
    for i in j.objects() {
        let c = d.node(i);
        let mut row = Vec::with_capacity(c.num_morphisms());
        for f in c.morphisms() {
            if c.is_identity(f) {
                row.push(None);
            } else {
                row.push(Some(GenId(generators.len() as u32)));
                generators.push(Generator {
                    name: format!("{}:{}", j.object_name(i), c.morphism_name(f)),
                    src: object_class[i.idx()][c.src(f).idx()],
                    tgt: object_class[i.idx()][c.tgt(f).idx()],
                });
            }
        }
        generator.push(row);
    }
    let mut pres = ColimitPresentation {
        presentation: FinPresCat {
            objects,
            generators,
            relations: Vec::new(),
        },
        object_class,
        generator,
    };
    let mut relations = Vec::new();
    for i in j.objects() {
        let c = d.node(i);
        for f in c.morphisms().filter(|&f| !c.is_identity(f)) {
            for &g in c.out_of(c.tgt(f)) {
                if c.is_identity(g) {
                    continue;
                }
                let h = c.compose(g, f).expect("valid node category");
                let gf = &pres.generator[i.idx()];
                let lhs = Path {
                    src: pres.presentation.generators[gf[f.idx()].unwrap().idx()].src,
                    gens: vec![gf[f.idx()].unwrap(), gf[g.idx()].unwrap()],
                };
                relations.push((lhs, pres.path_of(d, i, h)));
            }
        }
    }
    for u in j.morphisms().filter(|&u| !j.is_identity(u)) {
        let (s, t) = (j.src(u), j.tgt(u));
        let c = d.node(s);
        for f in c.morphisms().filter(|&f| !c.is_identity(f)) {
            let lhs = pres.path_of(d, s, f);
            let rhs = pres.path_of(d, t, d.push_mor(u, f));
            if lhs != rhs {
                relations.push((lhs, rhs));
            }
        }
    }
    pres.presentation.relations = relations;
    pres
}
