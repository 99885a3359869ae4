use zzc_core::colim::{
    check_diagram, colim_objects, compare_with_oracle, hom_classes, sweep, CompareStatus,
    HomBounds, Property, PROPERTIES,
};
use zzc_core::fincat::{oracle_hom, present_colimit};
use zzc_core::{fixtures, Budget};

fn budget() -> Budget {
    Budget(2_000_000)
}

#[test]
fn roof_classes() {
    let d = fixtures::roof();
    let objs = colim_objects(&d);
    assert_eq!(objs.len(), 3);
    let a = objs.of(fixtures::element(&d, "i", "a"));
    let b = objs.of(fixtures::element(&d, "j", "b"));
    let t = hom_classes(&d, a, b, HomBounds::new(2)).unwrap();
    assert_eq!(t.len(), 1);
    assert!(t.saturated);
    let r = compare_with_oracle(&d, 2, budget()).unwrap();
    assert_eq!(r.status, CompareStatus::Bijection, "{r:#?}");
}

#[test]
fn loop_classes() {
    let d = fixtures::loop_coequalizer();
    let objs = colim_objects(&d);
    assert_eq!(objs.len(), 1);
    // Zig-zags of length 2 carry chains of three morphisms: words up to x³.
    let t = hom_classes(&d, 0, 0, HomBounds::new(2)).unwrap();
    assert_eq!(t.len(), 4);
    assert!(!t.saturated);
    let pres = present_colimit(&d).presentation;
    let o = oracle_hom(&pres, 0, 0, 3, budget()).unwrap();
    assert_eq!(o.len(), 4);
    assert!(!o.saturated);
    // The hom set is infinite, so neither side certifies and agreement stays flagged.
    let r = compare_with_oracle(&d, 2, budget()).unwrap();
    assert_eq!(r.status, CompareStatus::Flagged, "{r:#?}");
    for pair in &r.pairs {
        assert_eq!((pair.split, pair.fusion, pair.missing), (0, 0, 0));
        assert_eq!(pair.engine_classes, pair.oracle_classes);
    }
}

#[test]
fn pushout_classes() {
    let d = fixtures::arrow_pushout();
    let objs = colim_objects(&d);
    let a = objs.of(fixtures::element(&d, "i", "0"));
    let b = objs.of(fixtures::element(&d, "j", "2"));
    let pres = present_colimit(&d).presentation;
    let o = oracle_hom(&pres, a, b, 4, budget()).unwrap();
    assert_eq!(o.len(), 1);
    let r = compare_with_oracle(&d, 2, budget()).unwrap();
    assert_eq!(r.status, CompareStatus::Bijection, "{r:#?}");
}

fn assert_checks(d: &zzc_core::fincat::Diagram, len: usize) {
    for reduce in [None, Some(budget())] {
        let r = check_diagram(d, len, budget(), reduce).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        for p in PROPERTIES {
            if p != Property::Composition {
                assert!(r.checked[p as usize] > 0, "{p} never checked");
            }
        }
    }
}

#[test]
fn fixtures_are_well_defined() {
    assert_checks(&fixtures::roof(), 2);
    assert_checks(&fixtures::loop_coequalizer(), 2);
    assert_checks(&fixtures::arrow_pushout(), 2);
}

#[test]
fn random_diagrams_are_well_defined() {
    for d in sweep::random_diagrams(7, 10) {
        let r = check_diagram(&d, 1, budget(), Some(Budget(20_000))).unwrap();
        assert!(r.passed(), "{}: {:?}", d.index.name(), r.failures);
    }
}
