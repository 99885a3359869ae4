use std::collections::HashMap;
use std::sync::Arc;

use crate::colim::{colim_objects, ObjectClasses};
use crate::fincat::{Diagram, Functor, MorId, ObjId};
use crate::sset::{
    nondegenerate_simplex_category, simplex_category, FinSSet, SimplexCategory, SimplexRef,
};

use super::flags::{Flag, FlagCategory};

/// `χ_p : 𝒮(X) → Cat`, `x ∈ X_n ↦ ℭΔⁿ_p`, with the bookkeeping needed to
/// move between flags and diagram elements.
#[derive(Clone, Debug)]
pub struct ChiDiagram {
    pub x: FinSSet,
    pub p: usize,
    pub simplices: SimplexCategory,
    pub diagram: Diagram,
    pub objects: ObjectClasses,
    flag_cats: HashMap<usize, Arc<FlagCategory>>,
}

/// `χ_p` over the nondegenerate simplices when their faces are nondegenerate,
/// otherwise over all simplices up to the dimension of `X`.
pub fn chi_diagram(x: &FinSSet, p: usize) -> ChiDiagram {
    let simplices = if x.has_nondegenerate_faces() {
        nondegenerate_simplex_category(x)
    } else {
        simplex_category(x, x.dim())
    };
    chi_over(x, p, simplices)
}

/// `χ_p` over a given category of simplices of `X`.
pub fn chi_over(x: &FinSSet, p: usize, simplices: SimplexCategory) -> ChiDiagram {
    let mut flag_cats: HashMap<usize, Arc<FlagCategory>> = HashMap::new();
    for s in &simplices.simplices {
        flag_cats
            .entry(s.dim)
            .or_insert_with(|| Arc::new(FlagCategory::new(s.dim, p)));
    }
    let nodes: Vec<_> = simplices
        .simplices
        .iter()
        .map(|s| Arc::new(flag_cats[&s.dim].cat.clone()))
        .collect();
    let mut cache: HashMap<(usize, usize, Vec<usize>), Arc<Functor>> = HashMap::new();
    let edges = simplices
        .arrows
        .iter()
        .map(|a| {
            let key = (a.source.dim, a.target.dim, a.theta.clone());
            cache
                .entry(key)
                .or_insert_with(|| {
                    Arc::new(image_functor(
                        &flag_cats[&a.source.dim],
                        &flag_cats[&a.target.dim],
                        &a.theta,
                    ))
                })
                .clone()
        })
        .collect();
    let diagram = Diagram {
        index: simplices.cat.clone().with_name(format!("χ{p}({})", x.name)),
        nodes,
        edges,
    };
    let objects = colim_objects(&diagram);
    ChiDiagram {
        x: x.clone(),
        p,
        simplices,
        diagram,
        objects,
        flag_cats,
    }
}

/// `ℭΔᵐ_p → ℭΔⁿ_p` induced by `θ : [m] → [n]`: vertices renamed along `θ`.
fn image_functor(src: &FlagCategory, tgt: &FlagCategory, theta: &[usize]) -> Functor {
    Functor {
        obj_map: theta.iter().map(|&v| ObjId::from(v)).collect(),
        mor_map: src
            .flags
            .iter()
            .map(|f| tgt.morphism(&f.image(theta)).expect("image is a flag"))
            .collect(),
    }
}

impl ChiDiagram {
    pub fn flag_category(&self, dim: usize) -> Option<&FlagCategory> {
        self.flag_cats.get(&dim).map(|c| c.as_ref())
    }

    pub fn object_of(&self, s: &SimplexRef) -> Option<ObjId> {
        self.simplices.object_of(s)
    }

    pub fn simplex(&self, i: ObjId) -> &SimplexRef {
        &self.simplices.simplices[i.idx()]
    }

    /// The flag behind the morphism `f` of the node at `i`.
    pub fn flag(&self, i: ObjId, f: MorId) -> &Flag {
        self.flag_cats[&self.simplex(i).dim].flag(f)
    }

    /// The morphism of the node at `i` carrying the flag `f`.
    pub fn morphism(&self, i: ObjId, f: &Flag) -> Option<MorId> {
        self.flag_cats.get(&self.simplex(i).dim)?.morphism(f)
    }

    /// The element `(⟨v⟩, 0)` of a vertex.
    pub fn vertex_element(&self, v: usize) -> Option<(ObjId, ObjId)> {
        Some((self.object_of(&SimplexRef::nondegenerate(0, v))?, ObjId(0)))
    }

    /// The object class of `ℭ(X)_p` at a vertex.
    pub fn vertex_class(&self, v: usize) -> Option<usize> {
        self.vertex_element(v).map(|e| self.objects.of(e))
    }
}
