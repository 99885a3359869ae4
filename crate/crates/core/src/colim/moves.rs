use crate::decor::{apply_cell_unchecked, DecoratedZigZag};
use crate::fincat::{Diagram, FinCat, MorId, ObjId};
use crate::zigzag::{enumerate_surjections, ZigZag, ZigZagCell};

/// Keys of every item reachable from `x` by one elementary move.
pub fn move_neighbours(d: &Diagram, x: &DecoratedZigZag) -> Vec<Vec<u32>> {
    let j = &d.index;
    let n = x.len();
    let z = &x.base;
    let mut out = Vec::new();
    // Move foot k along u.
    for k in 0..=n {
        for &u in j.out_of(z.feet[k]) {
            if j.is_identity(u) {
                continue;
            }
            let mut y = x.clone();
            y.base.feet[k] = j.tgt(u);
            if k > 0 {
                y.base.rights[k - 1] = j.compose(u, z.rights[k - 1]).expect("composable");
            }
            if k < n {
                y.base.lefts[k] = j.compose(u, z.lefts[k]).expect("composable");
            }
            y.chain[k] = d.push_mor(u, x.chain[k]);
            out.push(y.encode());
        }
    }
    // Move apex k along w, refactoring both legs through it.
    for k in 0..n {
        for &w in j.out_of(z.apexes[k]) {
            if j.is_identity(w) {
                continue;
            }
            let apex = j.tgt(w);
            for &l in j.hom(apex, z.feet[k]) {
                if j.compose(l, w) != Some(z.lefts[k]) {
                    continue;
                }
                for &r in j.hom(apex, z.feet[k + 1]) {
                    if j.compose(r, w) != Some(z.rights[k]) {
                        continue;
                    }
                    let mut y = x.clone();
                    y.base.apexes[k] = apex;
                    y.base.lefts[k] = l;
                    y.base.rights[k] = r;
                    y.apex_objects[k] = d.push_obj(w, x.apex_objects[k]);
                    out.push(y.encode());
                }
            }
        }
    }
    // Collapse a roof whose legs agree.
    for k in 0..n {
        if z.lefts[k] != z.rights[k] {
            continue;
        }
        let mut y = x.clone();
        y.base.feet.remove(k + 1);
        y.base.apexes.remove(k);
        y.base.lefts.remove(k);
        y.base.rights.remove(k);
        y.apex_objects.remove(k);
        let fused = d
            .node(z.feet[k])
            .compose(x.chain[k + 1], x.chain[k])
            .expect("equal legs make the chain composable");
        y.chain[k] = fused;
        y.chain.remove(k + 1);
        out.push(y.encode());
    }
    out
}

/// Every valid cell with source `z`.
pub fn cells_from(j: &FinCat, z: &ZigZag) -> Vec<ZigZagCell> {
    let n = z.len();
    let mut out = Vec::new();
    for m in 0..=n {
        for theta in enumerate_surjections(n, m) {
            let mut feet = Vec::with_capacity(n + 1);
            let mut tfeet = vec![ObjId(u32::MAX); m + 1];
            choose_feet(
                j,
                z,
                &theta.0,
                0,
                &mut feet,
                &mut tfeet,
                &mut |feet, tfeet| {
                    let mut apexes = Vec::with_capacity(n);
                    let mut roofs = vec![None; m];
                    choose_apexes(
                        j,
                        z,
                        &theta.0,
                        feet,
                        tfeet,
                        1,
                        &mut apexes,
                        &mut roofs,
                        &mut |apexes, roofs| {
                            let target = ZigZag {
                                feet: tfeet.to_vec(),
                                apexes: roofs
                                    .iter()
                                    .map(|r: &Option<(MorId, MorId)>| j.src(r.unwrap().0))
                                    .collect(),
                                lefts: roofs.iter().map(|r| r.unwrap().0).collect(),
                                rights: roofs.iter().map(|r| r.unwrap().1).collect(),
                            };
                            out.push(ZigZagCell {
                                source: z.clone(),
                                target,
                                theta: theta.clone(),
                                foot_components: feet.to_vec(),
                                apex_components: apexes.to_vec(),
                            });
                        },
                    );
                },
            );
        }
    }
    out
}

fn choose_feet(
    j: &FinCat,
    z: &ZigZag,
    theta: &[usize],
    k: usize,
    feet: &mut Vec<MorId>,
    tfeet: &mut Vec<ObjId>,
    emit: &mut dyn FnMut(&[MorId], &[ObjId]),
) {
    if k == theta.len() {
        emit(feet, tfeet);
        return;
    }
    let t = theta[k];
    let fixed = k > 0 && theta[k - 1] == t;
    for &rho in j.out_of(z.feet[k]) {
        if fixed && j.tgt(rho) != tfeet[t] {
            continue;
        }
        let saved = tfeet[t];
        tfeet[t] = j.tgt(rho);
        feet.push(rho);
        choose_feet(j, z, theta, k + 1, feet, tfeet, emit);
        feet.pop();
        tfeet[t] = saved;
    }
}

#[allow(clippy::too_many_arguments)]
fn choose_apexes(
    j: &FinCat,
    z: &ZigZag,
    theta: &[usize],
    feet: &[MorId],
    tfeet: &[ObjId],
    k: usize,
    apexes: &mut Vec<MorId>,
    roofs: &mut Vec<Option<(MorId, MorId)>>,
    emit: &mut dyn FnMut(&[MorId], &[Option<(MorId, MorId)>]),
) {
    if k == theta.len() {
        emit(apexes, roofs);
        return;
    }
    let left = j.compose(feet[k - 1], z.lefts[k - 1]).expect("composable");
    let right = j.compose(feet[k], z.rights[k - 1]).expect("composable");
    let t = theta[k];
    if theta[k - 1] == t {
        if left == right {
            apexes.push(left);
            choose_apexes(j, z, theta, feet, tfeet, k + 1, apexes, roofs, emit);
            apexes.pop();
        }
        return;
    }
    for &w in j.out_of(z.apexes[k - 1]) {
        let apex = j.tgt(w);
        for &l in j.hom(apex, tfeet[t - 1]) {
            if j.compose(l, w) != Some(left) {
                continue;
            }
            for &r in j.hom(apex, tfeet[t]) {
                if j.compose(r, w) != Some(right) {
                    continue;
                }
                roofs[t - 1] = Some((l, r));
                apexes.push(w);
                choose_apexes(j, z, theta, feet, tfeet, k + 1, apexes, roofs, emit);
                apexes.pop();
                roofs[t - 1] = None;
            }
        }
    }
}

/// Keys of `ρ*x` for every cell `ρ` out of the base of `x`.
pub fn exhaustive_neighbours(d: &Diagram, x: &DecoratedZigZag) -> Vec<Vec<u32>> {
    cells_from(&d.index, &x.base)
        .iter()
        .map(|c| apply_cell_unchecked(d, c, x).encode())
        .collect()
}

/// Tag of a one-step extension; items in one class extended by the same atom
/// must stay in one class.
pub type Atom = [u32; 4];

const RIGHT_MOR: u32 = 0;
const RIGHT_ROOF: u32 = 1;
const LEFT_MOR: u32 = 2;
const LEFT_ROOF: u32 = 3;

/// `x ⋄ e` and `e ⋄ x` for every generating decorated zig-zag `e` (a single
/// non-identity morphism, or one identity-decorated roof) with length at most
/// `max_len` after concatenation.
pub fn atom_extensions(d: &Diagram, x: &DecoratedZigZag, max_len: usize) -> Vec<(Atom, Vec<u32>)> {
    let j = &d.index;
    let n = x.len();
    let mut out = Vec::new();
    let (i, b) = x.end(d);
    let c = d.node(i);
    for &g in c.out_of(b) {
        if c.is_identity(g) {
            continue;
        }
        let mut y = x.clone();
        let last = y.chain.last_mut().expect("nonempty chain");
        *last = c.compose(g, *last).expect("composable");
        out.push(([RIGHT_MOR, i.0, g.0, 0], y.encode()));
    }
    let (i0, a0) = x.start(d);
    let c0 = d.node(i0);
    for &g in c0.into(a0) {
        if c0.is_identity(g) {
            continue;
        }
        let mut y = x.clone();
        y.chain[0] = c0.compose(x.chain[0], g).expect("composable");
        out.push(([LEFT_MOR, i0.0, g.0, 0], y.encode()));
    }
    if n >= max_len {
        return out;
    }
    for &l in j.into(i) {
        let k = j.src(l);
        for a in d.node(k).objects() {
            if d.push_obj(l, a) != b {
                continue;
            }
            for &r in j.out_of(k) {
                let mut y = x.clone();
                y.base.apexes.push(k);
                y.base.lefts.push(l);
                y.base.rights.push(r);
                y.base.feet.push(j.tgt(r));
                y.apex_objects.push(a);
                y.chain.push(d.node(j.tgt(r)).identity(d.push_obj(r, a)));
                out.push(([RIGHT_ROOF, l.0, r.0, a.0], y.encode()));
            }
        }
    }
    for &r in j.into(i0) {
        let k = j.src(r);
        for a in d.node(k).objects() {
            if d.push_obj(r, a) != a0 {
                continue;
            }
            for &l in j.out_of(k) {
                let mut y = x.clone();
                y.base.apexes.insert(0, k);
                y.base.lefts.insert(0, l);
                y.base.rights.insert(0, r);
                y.base.feet.insert(0, j.tgt(l));
                y.apex_objects.insert(0, a);
                y.chain
                    .insert(0, d.node(j.tgt(l)).identity(d.push_obj(l, a)));
                out.push(([LEFT_ROOF, l.0, r.0, a.0], y.encode()));
            }
        }
    }
    out
}
