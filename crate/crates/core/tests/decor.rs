use proptest::prelude::*;
use zzc_core::colim::sweep::random_diagrams;
use zzc_core::colim::{CellSearch, Window};
use zzc_core::decor::{
    apply_cell, compose_decorated, identity_decoration, DecoratedDoc, DecoratedZigZag, ElementArrow,
};
use zzc_core::fincat::Diagram;
use zzc_core::fixtures;
use zzc_core::zigzag::{Orientation, ZigZagCell};
use zzc_core::Budget;

fn items(d: &Diagram, len: usize) -> Vec<DecoratedZigZag> {
    let w = Window::build(d, None, len, Budget(1_000_000), CellSearch::Moves).unwrap();
    (0..w.num_items()).map(|x| w.item(x)).collect()
}

fn diagrams(seed: u64) -> Vec<Diagram> {
    let mut out = vec![fixtures::roof(), fixtures::arrow_pushout()];
    out.extend(random_diagrams(seed, 2));
    out
}

fn check_items(d: &Diagram) -> Result<(), TestCaseError> {
    let all = items(d, 1);
    for z in &all {
        prop_assert!(z.validate(d).is_empty(), "{}", z.render(d));
        prop_assert_eq!(&DecoratedZigZag::decode(&d.index, &z.encode()), z);
        let text = serde_json::to_string(&DecoratedDoc::from_decorated(d, z)).unwrap();
        let doc: DecoratedDoc = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&doc.to_decorated(d).unwrap(), z);
        let id = ZigZagCell::identity(&d.index, &z.base);
        prop_assert_eq!(&apply_cell(d, &id, z).unwrap(), z);
        let (i, a) = z.start(d);
        let unit = DecoratedZigZag::identity(d, i, a);
        prop_assert_eq!(&compose_decorated(d, &unit, z).unwrap(), z);
        let (i, a) = z.end(d);
        let unit = DecoratedZigZag::identity(d, i, a);
        prop_assert_eq!(&compose_decorated(d, z, &unit).unwrap(), z);
    }
    let short: Vec<&DecoratedZigZag> = all.iter().filter(|z| z.is_empty()).collect();
    for x in &short {
        for y in short.iter().filter(|y| y.start(d) == x.end(d)) {
            for z in short.iter().filter(|z| z.start(d) == y.end(d)) {
                let left = compose_decorated(d, &compose_decorated(d, x, y).unwrap(), z).unwrap();
                let right = compose_decorated(d, x, &compose_decorated(d, y, z).unwrap()).unwrap();
                prop_assert_eq!(left, right);
            }
        }
    }
    for x in &all {
        for y in all.iter().filter(|y| y.start(d) == x.end(d)).take(8) {
            let xy = compose_decorated(d, x, y).unwrap();
            prop_assert_eq!(xy.len(), x.len() + y.len());
            prop_assert!(xy.validate(d).is_empty());
        }
    }
    Ok(())
}

fn check_identity_paths(d: &Diagram) -> Result<(), TestCaseError> {
    let j = &d.index;
    for u in j.morphisms() {
        for a in d.node(j.src(u)).objects() {
            let arrow = ElementArrow { u, a };
            for (o, start) in [
                (Orientation::Forward, arrow.source(d)),
                (Orientation::Backward, arrow.target(d)),
            ] {
                let z = identity_decoration(d, start, &[(arrow, o)]).unwrap();
                prop_assert!(z.validate(d).is_empty(), "{}", z.render(d));
                prop_assert_eq!(z.len(), 1);
                let back = match o {
                    Orientation::Forward => Orientation::Backward,
                    Orientation::Backward => Orientation::Forward,
                };
                let round = identity_decoration(d, start, &[(arrow, o), (arrow, back)]).unwrap();
                prop_assert!(round.validate(d).is_empty());
                prop_assert_eq!(round.end(d), start);
            }
        }
    }
    Ok(())
}

#[test]
fn fixture_decorations_round_trip() {
    for d in [
        fixtures::roof(),
        fixtures::arrow_pushout(),
        fixtures::loop_coequalizer(),
    ] {
        check_items(&d).unwrap();
        check_identity_paths(&d).unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn random_decorations_round_trip(seed in any::<u64>()) {
        for d in diagrams(seed) {
            check_items(&d)?;
            check_identity_paths(&d)?;
        }
    }
}
