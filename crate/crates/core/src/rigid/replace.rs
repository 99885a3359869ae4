use crate::decor::{validate_decorated_cell, DecoratedCell, DecoratedZigZag};
use crate::fincat::ObjId;
use crate::sset::SimplexRef;
use crate::zigzag::{EndpointSurjection, ZigZag, ZigZagCell};

use super::chi::ChiDiagram;
use super::flags::Flag;
use super::necklace::{merge_flags, split_flag, NecklaceFlagPair, NecklaceMap};
use super::RigidError;

fn object(chi: &ChiDiagram, s: &SimplexRef) -> Result<ObjId, RigidError> {
    chi.object_of(s)
        .ok_or_else(|| RigidError::NotInIndex(chi.x.name_of(s)))
}

/// The properly decorated necklace zig-zag `[n₀] ← [0] → … → [n_k]` over `χ_p`
/// with per-bead flags `parts`.
fn decorate(
    chi: &ChiDiagram,
    map: &NecklaceMap,
    parts: &[Flag],
) -> Result<DecoratedZigZag, RigidError> {
    let x = &chi.x;
    let mut feet = Vec::with_capacity(map.simplices.len());
    let mut chain = Vec::with_capacity(map.simplices.len());
    for (s, f) in map.simplices.iter().zip(parts) {
        let o = object(chi, s)?;
        feet.push(o);
        chain.push(
            chi.morphism(o, f)
                .ok_or(RigidError::Shape(format!("flag {f} on {}", x.name_of(s))))?,
        );
    }
    let mut base = ZigZag::trivial(feet[0]);
    let mut apex_objects = Vec::new();
    for k in 1..feet.len() {
        let prev = &map.simplices[k - 1];
        let v = object(chi, &x.pull(prev, &[prev.dim]))?;
        let l = chi
            .simplices
            .arrow(feet[k - 1], &[prev.dim])
            .ok_or(RigidError::NotInIndex("ω".into()))?;
        let r = chi
            .simplices
            .arrow(feet[k], &[0])
            .ok_or(RigidError::NotInIndex("α".into()))?;
        debug_assert_eq!(chi.simplices.cat.src(l), v);
        base.feet.push(feet[k]);
        base.apexes.push(v);
        base.lefts.push(l);
        base.rights.push(r);
        apex_objects.push(ObjId(0));
    }
    Ok(DecoratedZigZag {
        base,
        apex_objects,
        chain,
    })
}

impl NecklaceFlagPair {
    /// The pair as a properly decorated necklace over `χ_p`.
    pub fn to_decorated(&self, chi: &ChiDiagram) -> Result<DecoratedZigZag, RigidError> {
        let parts = split_flag(&self.map.necklace, &self.flag)?;
        decorate(chi, &self.map, &parts)
    }
}

/// Replaces a `χ_p`-decorated zig-zag by the properly decorated necklace cut
/// out of its feet by the decoration endpoints, together with the inclusion
/// cell `ε` from the necklace to the input.
pub fn necklace_replace(
    chi: &ChiDiagram,
    d: &DecoratedZigZag,
) -> Result<(NecklaceFlagPair, DecoratedCell), RigidError> {
    let bad = d.validate(&chi.diagram);
    if let Some(e) = bad.first() {
        return Err(RigidError::Shape(e.clone()));
    }
    let x = &chi.x;
    let z = &d.base;
    let mut beads = Vec::with_capacity(z.feet.len());
    let mut parts = Vec::with_capacity(z.feet.len());
    let mut windows = Vec::with_capacity(z.feet.len());
    for (k, &foot) in z.feet.iter().enumerate() {
        let u = chi.flag(foot, d.chain[k]);
        let bead = x.between_subsimplex(chi.simplex(foot), u.from, u.to)?;
        parts.push(u.shifted_down(u.from));
        windows.push((u.from, u.to));
        beads.push(bead);
    }
    let map = NecklaceMap::new(x, beads)?;
    let flag = merge_flags(&map.necklace, &parts)?;
    let source = decorate(chi, &map, &parts)?;
    let cat = &chi.simplices;
    let mut foot_components = Vec::with_capacity(z.feet.len());
    for (k, &(lo, hi)) in windows.iter().enumerate() {
        let theta: Vec<usize> = (lo..=hi).collect();
        foot_components.push(
            cat.arrow(z.feet[k], &theta)
                .ok_or(RigidError::NotInIndex("bead inclusion".into()))?,
        );
    }
    let mut apex_components = Vec::with_capacity(z.apexes.len());
    for (k, &apex) in z.apexes.iter().enumerate() {
        let a = d.apex_objects[k].idx();
        apex_components.push(
            cat.arrow(apex, &[a])
                .ok_or(RigidError::NotInIndex("apex vertex".into()))?,
        );
    }
    let rho = ZigZagCell {
        source: source.base.clone(),
        target: z.clone(),
        theta: EndpointSurjection::identity(z.len()),
        foot_components,
        apex_components,
    };
    let eps = DecoratedCell {
        rho,
        source,
        target: d.clone(),
    };
    let bad = validate_decorated_cell(&chi.diagram, &eps);
    if let Some(e) = bad.first() {
        return Err(RigidError::Mismatch(e.clone()));
    }
    Ok((NecklaceFlagPair::new(map, flag)?, eps))
}
