use std::collections::BTreeSet;

use proptest::prelude::*;
use zzc_core::colim::{cells_from, hom_classes, HomBounds, Window};
use zzc_core::fincat::validate_fincat;
use zzc_core::rigid::{
    cell_from_map, chi_diagram, flag_category, for_each_bead_map, map_from_cell, merge_flags,
    necklace_replace, normalize, rigid_hom, split_flag, theta_star, DeltaCategory, Flag,
    FlagCategory, Necklace, NecklaceFlagPair, RigidBounds, RigidMode, RigidWindow,
};
use zzc_core::sset::{corpus, monotone_maps, standard_simplex, SimplexRef};
use zzc_core::zigzag::validate_cell;
use zzc_core::Budget;

/// Nested chains `U⁰ ⊆ … ⊆ Uᵖ` of subsets of `{i..j}` containing `i` and `j`,
/// counted by listing subsets directly.
fn brute_flags(i: usize, j: usize, p: usize) -> usize {
    let subsets: Vec<BTreeSet<usize>> = (0u32..1 << (j - i + 1))
        .map(|m| {
            (i..=j)
                .filter(|v| m & (1 << (v - i)) != 0)
                .collect::<BTreeSet<_>>()
        })
        .filter(|s| s.contains(&i) && s.contains(&j))
        .collect();
    fn chains(subsets: &[BTreeSet<usize>], prev: Option<&BTreeSet<usize>>, left: usize) -> usize {
        if left == 0 {
            return 1;
        }
        subsets
            .iter()
            .filter(|s| prev.is_none_or(|q| q.is_subset(s)))
            .map(|s| chains(subsets, Some(s), left - 1))
            .sum()
    }
    chains(&subsets, None, p + 1)
}

#[test]
fn flag_counts_match_subset_enumeration() {
    for n in 0..=4 {
        for p in 0..=3 {
            let c = flag_category(n, p);
            for i in 0..=n {
                for j in i..=n {
                    let hom = c.hom(i.into(), j.into()).len();
                    assert_eq!(hom, brute_flags(i, j, p), "n={n} p={p} {i}->{j}");
                }
            }
        }
    }
}

#[test]
fn flag_categories_are_categories() {
    for n in 0..=3 {
        for p in 0..=2 {
            assert!(
                validate_fincat(&flag_category(n, p)).is_empty(),
                "n={n} p={p}"
            );
        }
    }
}

#[test]
fn composition_is_union() {
    let c = FlagCategory::new(2, 0);
    let f = c
        .morphism(&Flag::from_levels(0, 0, &[Some(0), Some(0)]))
        .unwrap();
    let g = c
        .morphism(&Flag::from_levels(1, 0, &[Some(0), Some(0)]))
        .unwrap();
    let h = c.cat.compose(g, f).unwrap();
    assert_eq!(c.flag(h).to_string(), "{0,1,2}");
    let id = c.cat.identity(1.into());
    assert_eq!(*c.flag(id), Flag::identity(1, 0));
}

#[test]
fn theta_star_deletes_and_repeats() {
    let f = Flag::from_levels(0, 1, &[Some(0), Some(1), Some(0)]);
    assert_eq!(theta_star(&[0, 1], &f), f);
    assert_eq!(theta_star(&[0], &f).levels, vec![0b101]);
    assert_eq!(theta_star(&[1, 1, 0], &f).levels, vec![0b111, 0b111, 0b101]);
}

#[test]
fn theta_star_is_functorial_and_respects_composition() {
    for p in 0..=3 {
        for q in 0..=3 {
            for r in 0..=2 {
                for psi in monotone_maps(q, p) {
                    for theta in monotone_maps(r, q) {
                        let composite: Vec<usize> = theta.iter().map(|&t| psi[t]).collect();
                        for n in 1..=3 {
                            let c = FlagCategory::new(n, p);
                            for f in &c.flags {
                                assert_eq!(
                                    theta_star(&composite, f),
                                    theta_star(&theta, &theta_star(&psi, f))
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    let c = FlagCategory::new(3, 2);
    for u in &c.flags {
        for v in c.flags.iter().filter(|v| v.from == u.to) {
            for theta in monotone_maps(1, 2) {
                let lhs = theta_star(&theta, &u.then(v).unwrap());
                let rhs = theta_star(&theta, u).then(&theta_star(&theta, v)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn chi_diagrams_validate() {
    for name in [
        "delta:0",
        "delta:1",
        "delta:2",
        "boundary:2",
        "horn:2:1",
        "circle",
        "spine:2",
    ] {
        let x = corpus(name).unwrap();
        for p in 0..=1 {
            let chi = chi_diagram(&x, p);
            assert!(chi.diagram.validate().is_empty(), "{name} p={p}");
            assert_eq!(
                chi.objects.len(),
                x.count(0),
                "{name}: one object class per vertex"
            );
        }
    }
    let chi = chi_diagram(&standard_simplex(0), 3);
    assert!(chi.diagram.nodes.iter().all(|c| c.num_morphisms() == 1));
}

#[test]
fn face_edges_rename_vertices() {
    let x = standard_simplex(2);
    let chi = chi_diagram(&x, 0);
    let edge = chi.object_of(&SimplexRef::nondegenerate(1, 1)).unwrap();
    let top = chi.object_of(&SimplexRef::nondegenerate(2, 0)).unwrap();
    let u = chi.simplices.arrow(top, &[0, 2]).unwrap();
    assert_eq!(chi.simplices.cat.src(u), edge);
    let f = chi
        .morphism(edge, &Flag::from_levels(0, 0, &[Some(0), Some(0)]))
        .unwrap();
    let g = chi.diagram.push_mor(u, f);
    assert_eq!(chi.flag(top, g).to_string(), "{0,2}");
}

#[test]
fn split_examples() {
    let n = Necklace::new(vec![1, 1]).unwrap();
    let u = Flag::from_levels(0, 0, &[Some(0), Some(0), Some(0)]);
    let parts = split_flag(&n, &u).unwrap();
    assert_eq!(
        parts.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        ["{0,1}", "{0,1}"]
    );
    assert_eq!(merge_flags(&n, &parts).unwrap(), u);
    let bad = Flag::from_levels(0, 0, &[Some(0), None, Some(0)]);
    assert!(split_flag(&n, &bad).is_err());
    let single = Necklace::new(vec![2]).unwrap();
    assert_eq!(split_flag(&single, &bad).unwrap(), vec![bad.clone()]);
}

fn necklaces(max_beads: usize, max_dim: usize) -> Vec<Necklace> {
    let mut out = Vec::new();
    for k in 1..=max_beads {
        let mut digits = vec![0; k];
        loop {
            out.push(Necklace::new(digits.clone()).unwrap());
            let mut i = k;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] <= max_dim {
                    break;
                }
                digits[i] = 0;
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
            }
            if i == usize::MAX {
                break;
            }
        }
    }
    out
}

#[test]
fn split_merge_round_trip_exhaustive() {
    for n in necklaces(3, 2) {
        for p in 0..=2 {
            let v = n.num_vertices();
            let mut digits = vec![0usize; v];
            loop {
                let first: Vec<Option<usize>> =
                    digits.iter().map(|&d| (d <= p).then_some(d)).collect();
                let u = Flag::from_levels(0, p, &first);
                let joins_in = n.joins().iter().all(|&j| first[j] == Some(0));
                match split_flag(&n, &u) {
                    Ok(parts) => {
                        assert!(joins_in);
                        assert_eq!(merge_flags(&n, &parts).unwrap(), u);
                        assert_eq!(
                            split_flag(&n, &merge_flags(&n, &parts).unwrap()).unwrap(),
                            parts
                        );
                    }
                    Err(_) => assert!(!joins_in),
                }
                let mut i = v;
                while i > 0 {
                    i -= 1;
                    digits[i] += 1;
                    if digits[i] <= p + 1 {
                        break;
                    }
                    digits[i] = 0;
                }
                if digits.iter().all(|&d| d == 0) {
                    break;
                }
            }
        }
    }
}

#[test]
fn cells_and_bead_maps_correspond() {
    let delta = DeltaCategory::new(2);
    let all = necklaces(3, 2);
    let mut total = 0;
    for s in &all {
        let z = s.zigzag(&delta).unwrap();
        let targets: Vec<_> = all.iter().map(|t| t.zigzag(&delta).unwrap()).collect();
        let cells: Vec<_> = cells_from(&delta.simplices.cat, &z)
            .into_iter()
            .filter(|c| targets.contains(&c.target))
            .collect();
        let mut from_cells = Vec::new();
        for c in &cells {
            let phi = map_from_cell(c, &delta).unwrap_or_else(|e| {
                panic!(
                    "{e}: {:?} {:?} {:?}",
                    c.theta,
                    c.foot_components
                        .iter()
                        .map(|&m| delta.theta(m).clone())
                        .collect::<Vec<_>>(),
                    c.apex_components
                        .iter()
                        .map(|&m| delta.theta(m).clone())
                        .collect::<Vec<_>>()
                )
            });
            assert_eq!(&cell_from_map(&phi, &delta).unwrap(), c);
            from_cells.push(phi);
        }
        let mut from_maps = Vec::new();
        for t in &all {
            for_each_bead_map(
                s,
                t,
                false,
                |_, _, _| true,
                |phi| from_maps.push(phi.clone()),
            );
        }
        for phi in &from_maps {
            assert!(phi.is_valid());
            let c = cell_from_map(phi, &delta).unwrap();
            assert!(validate_cell(&delta.simplices.cat, &c).is_empty());
            assert_eq!(&map_from_cell(&c, &delta).unwrap(), phi);
        }
        assert_eq!(from_cells.len(), from_maps.len(), "{s}");
        total += from_maps.len();
    }
    assert!(total > 1000);
}

fn bounds(max_beads: usize, max_bead_dim: usize, mode: RigidMode) -> RigidBounds {
    RigidBounds {
        max_beads,
        max_bead_dim,
        mode,
        budget: Budget(2_000_000),
        certify: true,
    }
}

#[test]
fn rigid_examples() {
    let x = corpus("delta:2").unwrap();
    let t = rigid_hom(&x, 0, 2, 0, bounds(2, 2, RigidMode::NormalForms)).unwrap();
    assert_eq!(t.len(), 2);
    assert!(t.saturated);
    let flags: Vec<String> = t
        .classes
        .iter()
        .map(|c| c.representative.flag.to_string())
        .collect();
    assert_eq!(flags, ["{0,1}", "{0,1,2}"]);
    let horn = corpus("horn:2:1").unwrap();
    for p in 0..=2 {
        assert_eq!(
            rigid_hom(&horn, 0, 2, p, bounds(3, 2, RigidMode::NormalForms))
                .unwrap()
                .len(),
            1
        );
    }
    let circle = corpus("circle").unwrap();
    let t = rigid_hom(&circle, 0, 0, 0, bounds(3, 1, RigidMode::NormalForms)).unwrap();
    assert_eq!(t.len(), 4);
    assert!(!t.saturated);
}

#[test]
fn triangle_search_agrees_with_normal_forms() {
    let cases: &[(&str, usize, usize, usize, usize)] = &[
        ("delta:1", 0, 1, 2, 2),
        ("delta:2", 0, 2, 2, 2),
        ("delta:2", 0, 0, 2, 2),
        ("boundary:2", 0, 2, 2, 1),
        ("horn:2:1", 0, 2, 2, 2),
        ("circle", 0, 0, 2, 2),
    ];
    for &(name, a, b, beads, dim) in cases {
        let x = corpus(name).unwrap();
        for p in 0..=1 {
            let full =
                RigidWindow::build(&x, a, b, p, bounds(beads, dim, RigidMode::Triangles)).unwrap();
            let nf = RigidWindow::build(&x, a, b, p, bounds(beads, dim, RigidMode::NormalForms))
                .unwrap();
            assert_eq!(
                full.num_classes(),
                nf.num_classes(),
                "{name} {a}->{b} p={p}"
            );
            for i in 0..full.num_items() {
                let pair = full.item(i);
                let n = normalize(&x, &pair).unwrap();
                assert!(nf.lookup(&n).is_some(), "{}", pair.render(&x));
                assert_eq!(full.lookup(&n), full.lookup(&pair), "{}", pair.render(&x));
            }
        }
    }
}

#[test]
fn necklace_replacement_fixes_proper_necklaces() {
    let x = corpus("delta:2").unwrap();
    let chi = chi_diagram(&x, 1);
    let (s, t) = (chi.vertex_class(0).unwrap(), chi.vertex_class(2).unwrap());
    let w = RigidWindow::build(&x, 0, 2, 1, bounds(3, 2, RigidMode::NormalForms)).unwrap();
    for k in 0..w.num_items() {
        let pair: NecklaceFlagPair = w.item(k);
        let z = pair.to_decorated(&chi).unwrap();
        let (back, eps) = necklace_replace(&chi, &z).unwrap();
        assert_eq!(back, pair);
        assert_eq!(eps.source, z);
        assert_eq!(eps.target, z);
    }
    let engine = hom_classes(&chi.diagram, s, t, HomBounds::new(1)).unwrap();
    assert_eq!(engine.len(), w.num_classes());
    let window =
        Window::build(&chi.diagram, None, 1, Budget(2_000_000), Default::default()).unwrap();
    assert_eq!(window.classes_between(s, t).len(), 3);
}

proptest! {
    #[test]
    fn merge_inverts_split(
        beads in prop::collection::vec(0usize..4, 1..5),
        p in 0usize..4,
        seed in prop::collection::vec(0usize..5, 16),
    ) {
        let n = Necklace::new(beads).unwrap();
        let joins = n.joins();
        let first: Vec<Option<usize>> = (0..n.num_vertices())
            .map(|v| {
                if v == 0 || v == n.last() || joins.contains(&v) {
                    Some(0)
                } else {
                    let d = seed[v % seed.len()] % (p + 2);
                    (d <= p).then_some(d)
                }
            })
            .collect();
        let u = Flag::from_levels(0, p, &first);
        let parts = split_flag(&n, &u).unwrap();
        prop_assert_eq!(parts.len(), n.num_beads());
        prop_assert_eq!(merge_flags(&n, &parts).unwrap(), u);
    }
}
