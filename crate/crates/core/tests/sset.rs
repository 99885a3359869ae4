use proptest::prelude::*;
use zzc_core::fincat::validate_fincat;
use zzc_core::sset::*;

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Vertex sequence of a simplex of `Δⁿ`, read off the labels of its base.
fn vertex_seq(x: &FinSSet, s: &SimplexRef) -> Vec<usize> {
    let base: Vec<usize> = x.simplices[s.base_dim][s.base]
        .name
        .trim_start_matches('⟨')
        .trim_end_matches('⟩')
        .chars()
        .map(|c| c.to_digit(10).unwrap() as usize)
        .collect();
    s.surjection().iter().map(|&v| base[v]).collect()
}

#[test]
fn simplex_counts_are_binomial() {
    for n in 0..=6 {
        let x = standard_simplex(n);
        for k in 0..=n {
            assert_eq!(x.count(k), binomial(n + 1, k + 1));
        }
        assert!(x.validate().is_empty(), "{:?}", x.validate());
    }
    assert_eq!(standard_simplex(2).counts(), vec![3, 3, 1]);
}

#[test]
fn boundary_horn_circle_spine() {
    let b = boundary(2).unwrap();
    assert_eq!((b.count(0), b.count(1), b.count(2)), (3, 3, 0));
    assert_eq!(horn(2, 1).unwrap().counts(), vec![3, 2]);
    assert_eq!(horn(3, 0).unwrap().counts(), vec![4, 6, 3]);
    let c = circle();
    assert_eq!(c.counts(), vec![1, 1]);
    assert_eq!(c.vertices(&SimplexRef::nondegenerate(1, 0)), vec![0, 0]);
    assert_eq!(spine(3).counts(), vec![4, 3]);
    assert!(boundary(0).is_err());
    assert!(horn(2, 3).is_err());
    for name in ["delta:3", "boundary:3", "horn:3:1", "circle", "spine:3"] {
        let x = corpus(name).unwrap();
        assert!(x.validate().is_empty(), "{name}");
        assert!(x.has_nondegenerate_faces(), "{name}");
    }
    assert!(corpus("torus").is_err());
}

#[test]
fn between_subsimplex_examples() {
    let x = standard_simplex(3);
    let top = SimplexRef::nondegenerate(3, 0);
    let f = x.between_subsimplex(&top, 1, 3).unwrap();
    assert_eq!(x.name_of(&f), "⟨123⟩");
    let v = x.between_subsimplex(&top, 2, 2).unwrap();
    assert_eq!((v.dim, x.name_of(&v).as_str()), (0, "⟨2⟩"));
    let e = standard_simplex(1);
    let d = e.degeneracy(&SimplexRef::nondegenerate(1, 0), 0);
    assert_eq!(e.vertices(&d), vec![0, 0, 1]);
    let front = e.between_subsimplex(&d, 0, 1).unwrap();
    assert_eq!(e.name_of(&front), "s0⟨0⟩");
    assert!(x.between_subsimplex(&top, 2, 1).is_err());
}

#[test]
fn simplex_category_sizes() {
    let p = simplex_category(&standard_simplex(0), 1);
    assert_eq!(p.cat.num_objects(), 2);
    assert_eq!(p.cat.num_morphisms(), 7);
    assert!(validate_fincat(&p.cat).is_empty());
    let e = simplex_category(&standard_simplex(1), 1);
    assert_eq!(e.cat.num_objects(), 5);
    assert!(validate_fincat(&e.cat).is_empty());
    for o in e.cat.objects() {
        assert!(e.cat.try_identity(o).is_some());
    }
    let nd = nondegenerate_simplex_category(&standard_simplex(2));
    assert_eq!(nd.cat.num_objects(), 7);
    // Face inclusions: pairs of nonempty subsets S ⊆ T of a 3-set.
    assert_eq!(nd.cat.num_morphisms(), 27 - 8);
    assert!(validate_fincat(&nd.cat).is_empty());
    let c = nondegenerate_simplex_category(&circle());
    assert_eq!(c.cat.num_morphisms(), 4);
}

#[test]
fn realizations() {
    assert_eq!(
        realize_zigzag(&DeltaZigZag::trivial(3)).unwrap().counts(),
        vec![4, 6, 4, 1]
    );
    let n = realize_zigzag(&DeltaZigZag::necklace(&[2, 1, 3])).unwrap();
    assert_eq!(n.counts(), vec![3 + 2 + 4 - 2, 3 + 1 + 6, 1 + 4, 1]);
    // Two triangles sharing an edge.
    let roof = DeltaZigZag {
        feet: vec![2, 2],
        apexes: vec![1],
        lefts: vec![vec![1, 2]],
        rights: vec![vec![0, 1]],
    };
    let r = realize_zigzag(&roof).unwrap();
    assert_eq!(r.counts(), vec![4, 5, 2]);
    assert!(r.validate().is_empty());
    let bad = DeltaZigZag {
        feet: vec![1, 0],
        apexes: vec![1],
        lefts: vec![vec![0, 1]],
        rights: vec![vec![0, 0]],
    };
    assert_eq!(realize_zigzag(&bad), Err(SSetError::NonInjective));
}

#[test]
fn json_round_trip() {
    for name in ["delta:2", "circle", "spine:2", "horn:3:2"] {
        let x = corpus(name).unwrap();
        let text = serde_json::to_string(&SSetDoc::from_sset(&x)).unwrap();
        assert_eq!(SSetDoc::parse(&text).unwrap(), x);
    }
    let broken = r#"{"schema":"sset/v1","name":"b","simplices":[[{"name":"a"}],[{"name":"e","faces":[{"of":"a"},{"of":"z"}]}]]}"#;
    assert!(SSetDoc::parse(broken).is_err());
}

proptest! {
    #[test]
    fn pull_matches_vertex_composition(n in 0usize..5, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let x = standard_simplex(n);
        let all = x.all_simplices(n + 1);
        let s = &all[rng.gen_range(0..all.len())];
        let m = rng.gen_range(0..=n + 1);
        let mut theta: Vec<usize> = (0..=m).map(|_| rng.gen_range(0..=s.dim)).collect();
        theta.sort_unstable();
        let got = x.pull(s, &theta);
        let seq = vertex_seq(&x, s);
        let want: Vec<usize> = theta.iter().map(|&t| seq[t]).collect();
        prop_assert_eq!(vertex_seq(&x, &got), want);
        // Normal form is idempotent: re-normalizing through the identity is a no-op.
        let id: Vec<usize> = (0..=got.dim).collect();
        prop_assert_eq!(x.pull(&got, &id), got);
    }

    #[test]
    fn concatenation_realizes_as_pushout(a in proptest::collection::vec(0usize..3, 1..4), b in proptest::collection::vec(0usize..3, 1..4)) {
        let mut b = b;
        b[0] = *a.last().unwrap();
        let ta = DeltaZigZag::necklace(&a);
        let tb = DeltaZigZag::necklace(&b);
        let whole = realize_zigzag(&ta.concat(&tb).unwrap()).unwrap();
        let (ra, rb) = (realize_zigzag(&ta).unwrap(), realize_zigzag(&tb).unwrap());
        // The pushout identifies one copy of the shared foot.
        let shared = standard_simplex(b[0]);
        for k in 0..=3 {
            prop_assert_eq!(whole.count(k), ra.count(k) + rb.count(k) - shared.count(k));
        }
    }
}
