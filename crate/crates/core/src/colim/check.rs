//! Well-definedness of composition on hom classes, checked on a window.

use std::collections::HashMap;
use std::fmt;

use crate::decor::{
    apply_cell_unchecked, compose_decorated, identity_decoration, DecoratedZigZag, ElementArrow,
};
use crate::fincat::{Diagram, ObjId};
use crate::zigzag::{transpose_cell, unital_cell, Orientation, Side, ZigZag, ZigZagCell};
use crate::Budget;

use super::{connecting_path, Window};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    /// All identity-decorated elements of one object class share a class.
    IdentityClass,
    /// A zig-zag decorated by identities represents the identity of its object class.
    ObjectDecorated,
    /// Composing with a zig-zag decorated by identities keeps the class.
    ComposeWithObject,
    /// Composites of representatives meeting at an element depend only on their classes.
    Pasting,
    /// Composites through connecting element zig-zags depend only on the classes.
    Composition,
    /// Unital cells validate and preserve classes.
    Unital,
    /// Transposition cells validate and preserve classes.
    Transposition,
}

pub const PROPERTIES: [Property; 7] = [
    Property::IdentityClass,
    Property::ObjectDecorated,
    Property::ComposeWithObject,
    Property::Pasting,
    Property::Composition,
    Property::Unital,
    Property::Transposition,
];

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Property::IdentityClass => "identity-class",
            Property::ObjectDecorated => "object-decorated",
            Property::ComposeWithObject => "compose-with-object",
            Property::Pasting => "pasting",
            Property::Composition => "composition",
            Property::Unital => "unital",
            Property::Transposition => "transposition",
        };
        f.write_str(s)
    }
}

/// Instances checked and failures found per property.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PropertyReport {
    pub checked: [usize; 7],
    /// Composites that fell outside the window and could not be reduced into it.
    pub undetermined: usize,
    pub failures: Vec<(Property, String)>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: &PropertyReport) {
        for (a, b) in self.checked.iter_mut().zip(other.checked) {
            *a += b;
        }
        self.undetermined += other.undetermined;
        self.failures.extend(other.failures.iter().cloned());
    }

    fn hit(&mut self, p: Property) {
        self.checked[p as usize] += 1;
    }

    fn fail(&mut self, p: Property, detail: String) {
        self.failures.push((p, detail));
    }
}

/// Runs every property on a window built with no pair restriction.
/// Composites longer than the window are reduced along moves with `reduce`
/// as the search budget, or skipped when `reduce` is `None`. With `reduce`,
/// composition is sampled on three members per class.
pub fn check_window(w: &Window<'_>, reduce: Option<Budget>) -> PropertyReport {
    let d = w.diagram();
    let objects = w.objects();
    let mut report = PropertyReport::default();
    let items: Vec<DecoratedZigZag> = (0..w.num_items()).map(|x| w.item(x)).collect();
    let labels: Vec<usize> = (0..w.num_items()).map(|x| w.label[x] as usize).collect();
    let class_of = |z: &DecoratedZigZag, report: &mut PropertyReport| -> Option<usize> {
        if let Some(c) = w.lookup(z) {
            return Some(c);
        }
        let found = reduce.and_then(|b| w.classify(z, b).ok());
        if found.is_none() {
            report.undetermined += 1;
        }
        found
    };

    // Identity classes per object class.
    let mut id_class: Vec<Option<usize>> = vec![None; objects.len()];
    for (i, a) in d.elements() {
        let z = DecoratedZigZag::identity(d, i, a);
        let Some(c) = w.lookup(&z) else { continue };
        report.hit(Property::IdentityClass);
        let o = objects.of((i, a));
        match id_class[o] {
            None => id_class[o] = Some(c),
            Some(prev) if prev != c => report.fail(Property::IdentityClass, z.render(d)),
            Some(_) => {}
        }
    }

    for (x, z) in items.iter().enumerate() {
        let all_ids = z
            .chain
            .iter()
            .zip(&z.base.feet)
            .all(|(&f, &i)| d.node(i).is_identity(f));
        if all_ids {
            report.hit(Property::ObjectDecorated);
            if id_class[objects.of(z.start(d))] != Some(labels[x]) {
                report.fail(Property::ObjectDecorated, z.render(d));
            }
        }
    }

    // One-roof identity decorations out of and into every element.
    let mut steps_from: HashMap<(ObjId, ObjId), Vec<DecoratedZigZag>> = HashMap::new();
    let mut steps_into: HashMap<(ObjId, ObjId), Vec<DecoratedZigZag>> = HashMap::new();
    for u in d.index.morphisms() {
        for a in d.node(d.index.src(u)).objects() {
            let arrow = ElementArrow { u, a };
            let (s, t) = (arrow.source(d), arrow.target(d));
            for (from, o) in [(s, Orientation::Forward), (t, Orientation::Backward)] {
                let e =
                    identity_decoration(d, from, &[(arrow, o)]).expect("path starts at its source");
                let to = e.end(d);
                steps_into.entry(to).or_default().push(e.clone());
                steps_from.entry(from).or_default().push(e);
            }
        }
    }
    for (x, z) in items.iter().enumerate() {
        if reduce.is_none() && z.len() >= w.max_zz_len {
            continue;
        }
        let after = steps_from
            .get(&z.end(d))
            .into_iter()
            .flatten()
            .filter_map(|e| compose_decorated(d, z, e).ok());
        let before = steps_into
            .get(&z.start(d))
            .into_iter()
            .flatten()
            .filter_map(|e| compose_decorated(d, e, z).ok());
        for c in after.chain(before).collect::<Vec<_>>() {
            if let Some(k) = class_of(&c, &mut report) {
                report.hit(Property::ComposeWithObject);
                if k != labels[x] {
                    report.fail(
                        Property::ComposeWithObject,
                        format!("{} vs {}", z.render(d), c.render(d)),
                    );
                }
            }
        }
    }

    // Composition of classes.
    let members: Vec<usize> = if reduce.is_some() {
        let mut per_class: Vec<Vec<usize>> = vec![Vec::new(); w.num_classes()];
        for (x, &c) in labels.iter().enumerate() {
            per_class[c].push(x);
        }
        per_class
            .iter()
            .flat_map(|m| {
                let mut pick = vec![m[0], m[m.len() / 2], m[m.len() - 1]];
                pick.dedup();
                pick
            })
            .collect()
    } else {
        (0..items.len()).collect()
    };
    let mut starting: Vec<Vec<usize>> = vec![Vec::new(); objects.len()];
    for &y in &members {
        starting[objects.of(items[y].start(d))].push(y);
    }
    let mut table: HashMap<(usize, usize), usize> = HashMap::new();
    let mut connecting: HashMap<_, Option<DecoratedZigZag>> = HashMap::new();
    for &x in &members {
        for &y in &starting[objects.of(items[x].end(d))] {
            let (zx, zy) = (&items[x], &items[y]);
            if reduce.is_none() && zx.len() + zy.len() > w.max_zz_len {
                continue;
            }
            let direct = zx.end(d) == zy.start(d);
            if reduce.is_none() {
                let len = zx.len() + zy.len() + usize::from(!direct);
                if len > w.max_zz_len {
                    continue;
                }
            }
            let composite = if direct {
                compose_decorated(d, zx, zy).ok()
            } else {
                let (from, to) = (zx.end(d), zy.start(d));
                let Some(e) = connecting
                    .entry((from, to))
                    .or_insert_with(|| {
                        connecting_path(d, from, to)
                            .and_then(|p| identity_decoration(d, from, &p).ok())
                    })
                    .as_ref()
                else {
                    continue;
                };
                if reduce.is_none() && zx.len() + e.len() + zy.len() > w.max_zz_len {
                    continue;
                }
                compose_decorated(d, zx, e)
                    .and_then(|xe| compose_decorated(d, &xe, zy))
                    .ok()
            };
            let Some(composite) = composite else { continue };
            let Some(k) = class_of(&composite, &mut report) else {
                continue;
            };
            let property = if direct {
                Property::Pasting
            } else {
                Property::Composition
            };
            report.hit(property);
            match table.get(&(labels[x], labels[y])) {
                None => {
                    table.insert((labels[x], labels[y]), k);
                }
                Some(&prev) if prev != k => {
                    report.fail(property, format!("{} then {}", zx.render(d), zy.render(d)));
                }
                Some(_) => {}
            }
        }
    }

    // Unital and transposition cells acting on every decoration in the window.
    let mut over: HashMap<&ZigZag, Vec<usize>> = HashMap::new();
    for (x, z) in items.iter().enumerate() {
        over.entry(&z.base).or_default().push(x);
    }
    let j = &d.index;
    let act = |cell: &ZigZagCell, property: Property, report: &mut PropertyReport| {
        // The cell has been validated with its vertical zig-zag.
        for &x in over.get(&cell.source).into_iter().flatten() {
            let t = apply_cell_unchecked(d, cell, &items[x]);
            if let Some(k) = class_of(&t, report) {
                report.hit(property);
                if k != labels[x] {
                    report.fail(property, format!("{} moves class", items[x].render(d)));
                }
            }
        }
    };
    for i in j.objects() {
        for n in 1..=w.max_zz_len {
            for o in [Orientation::Forward, Orientation::Backward] {
                let v = unital_cell(j, i, n, o);
                report.hit(Property::Unital);
                let bad = v.validate(j);
                let valid = bad.is_empty();
                for e in bad {
                    report.fail(Property::Unital, e);
                }
                for (cell, _) in v.steps.iter().filter(|_| valid) {
                    act(cell, Property::Unital, &mut report);
                }
            }
        }
    }
    let mut bases: Vec<&ZigZag> = over.keys().copied().filter(|z| !z.is_trivial()).collect();
    bases.sort();
    for z in bases {
        for side in [Side::Left, Side::Right] {
            let v = transpose_cell(j, z, side);
            report.hit(Property::Transposition);
            let bad = v.validate(j);
            let valid = bad.is_empty();
            for e in bad {
                report.fail(Property::Transposition, e);
            }
            for (cell, _) in v.steps.iter().filter(|_| valid) {
                act(cell, Property::Transposition, &mut report);
            }
        }
    }
    report
}

/// Builds the window at `max_zz_len` over all pairs and checks it.
pub fn check_diagram(
    d: &Diagram,
    max_zz_len: usize,
    budget: Budget,
    reduce: Option<Budget>,
) -> Result<PropertyReport, super::ColimError> {
    let w = Window::build(d, None, max_zz_len, budget, super::CellSearch::Moves)?;
    Ok(check_window(&w, reduce))
}
