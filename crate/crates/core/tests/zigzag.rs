use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zzc_core::colim::cells_from;
use zzc_core::colim::sweep::random_concrete_category;
use zzc_core::fincat::FinCat;
use zzc_core::zigzag::{
    compose_factors, concat, enumerate_surjections, factor_cell, transpose_cell, unital_cell,
    validate_cell, vcompose_cells, Orientation, Side, ZigZag, ZigZagCell, ZigZagDoc,
};

/// Every zig-zag of length `≤ max_len` in `j`.
fn zigzags(j: &FinCat, max_len: usize) -> Vec<ZigZag> {
    let mut out: Vec<ZigZag> = j.objects().map(ZigZag::trivial).collect();
    let mut frontier = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for z in &frontier {
            for &l in j.into(z.last()) {
                let apex = j.src(l);
                for &r in j.out_of(apex) {
                    let mut w = z.clone();
                    w.apexes.push(apex);
                    w.lefts.push(l);
                    w.rights.push(r);
                    w.feet.push(j.tgt(r));
                    next.push(w);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn random_index(seed: u64) -> FinCat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_concrete_category(&mut rng, 3, 5, format!("J{seed}"))
}

/// Order preserving surjections `[n] → [m]` keeping both ends, counted as
/// subsets of the `n` steps that advance.
fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn surjections_are_counted_by_advancing_steps() {
    for n in 0..6 {
        for m in 0..=n {
            let all = enumerate_surjections(n, m);
            assert_eq!(all.len(), binomial(n, m), "[{n}] → [{m}]");
            assert!(all.iter().all(|t| t.is_valid()));
        }
    }
}

#[test]
fn concatenation_is_associative() {
    let j = random_index(3);
    let zs = zigzags(&j, 1);
    for a in &zs {
        for b in zs.iter().filter(|b| b.first() == a.last()) {
            for c in zs.iter().filter(|c| c.first() == b.last()) {
                let left = concat(&concat(a, b).unwrap(), c).unwrap();
                let right = concat(a, &concat(b, c).unwrap()).unwrap();
                assert_eq!(left, right);
                assert_eq!(left.len(), a.len() + b.len() + c.len());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn unital_and_transposition_cells_validate(seed in any::<u64>()) {
        let j = random_index(seed);
        for i in j.objects() {
            for n in 0..=3 {
                for o in [Orientation::Forward, Orientation::Backward] {
                    let v = unital_cell(&j, i, n, o);
                    prop_assert!(v.validate(&j).is_empty());
                }
            }
        }
        for z in zigzags(&j, 2).iter().filter(|z| !z.is_trivial()) {
            for side in [Side::Left, Side::Right] {
                let v = transpose_cell(&j, z, side);
                prop_assert!(v.validate(&j).is_empty());
                prop_assert_eq!(v.steps.len(), 2 * z.len());
                let rows = v.rows().unwrap();
                prop_assert_eq!(&rows[0], z);
                let far = match side {
                    Side::Left => z.last(),
                    Side::Right => z.first(),
                };
                prop_assert_eq!(rows.last().unwrap(), &ZigZag::constant(&j, far, z.len()));
            }
        }
    }

    #[test]
    fn cells_factor_and_compose(seed in any::<u64>()) {
        let j = random_index(seed);
        for z in zigzags(&j, 2) {
            let id = ZigZagCell::identity(&j, &z);
            prop_assert!(validate_cell(&j, &id).is_empty());
            for c in cells_from(&j, &z) {
                prop_assert!(validate_cell(&j, &c).is_empty());
                let factors = factor_cell(&c);
                for f in &factors {
                    prop_assert!(validate_cell(&j, f).is_empty());
                }
                prop_assert_eq!(compose_factors(&factors).unwrap(), c.clone());
                prop_assert_eq!(vcompose_cells(&j, &id, &c).unwrap(), c.clone());
                let out = ZigZagCell::identity(&j, &c.target);
                prop_assert_eq!(vcompose_cells(&j, &c, &out).unwrap(), c);
            }
        }
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>()) {
        let j = random_index(seed);
        for z in zigzags(&j, 2) {
            let text = serde_json::to_string(&ZigZagDoc::from_zigzag(&j, &z)).unwrap();
            let doc: ZigZagDoc = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(doc.to_zigzag(&j).unwrap(), z);
        }
    }
}
