use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zzc_core::colim::sweep::{random_concrete_category, small_categories};
use zzc_core::fincat::{validate_fincat, validate_functor, FinCat, FinCatDoc, Functor};

/// Monoids on `{0..k}` with unit 0, up to isomorphism, by brute force over
/// multiplication tables and relabellings fixing the unit.
#[allow(clippy::needless_range_loop)]
fn monoids_up_to_iso(k: usize) -> usize {
    let free = (k - 1) * (k - 1);
    let perms = permutations(k - 1);
    let mut seen = BTreeSet::new();
    for code in 0..k.pow(free as u32) {
        let mut t = vec![vec![0; k]; k];
        for a in 0..k {
            t[0][a] = a;
            t[a][0] = a;
        }
        let mut c = code;
        for a in 1..k {
            for b in 1..k {
                t[a][b] = c % k;
                c /= k;
            }
        }
        let assoc = (0..k).all(|a| (0..k).all(|b| (0..k).all(|c| t[t[a][b]][c] == t[a][t[b][c]])));
        if !assoc {
            continue;
        }
        let canonical = perms
            .iter()
            .map(|p| {
                let s = |x: usize| if x == 0 { 0 } else { p[x - 1] + 1 };
                let mut u = vec![vec![0; k]; k];
                for a in 0..k {
                    for b in 0..k {
                        u[s(a)][s(b)] = s(t[a][b]);
                    }
                }
                u
            })
            .min()
            .unwrap();
        seen.insert(canonical);
    }
    seen.len()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn one_object_small_categories_are_the_monoids() {
    let cats = small_categories(2, 4);
    for c in &cats {
        assert!(validate_fincat(c).is_empty(), "{}", c.name());
    }
    for k in 1..=4 {
        let found = cats
            .iter()
            .filter(|c| c.num_objects() == 1 && c.num_morphisms() == k)
            .count();
        assert_eq!(found, monoids_up_to_iso(k), "monoids of order {k}");
    }
}

#[test]
fn ordinals_have_one_arrow_per_ordered_pair() {
    for n in 0..5 {
        let c = FinCat::ordinal(n);
        assert!(validate_fincat(&c).is_empty());
        assert_eq!(c.num_objects(), n + 1);
        assert_eq!(c.num_morphisms(), (n + 1) * (n + 2) / 2);
    }
}

fn random_category(seed: u64) -> FinCat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_concrete_category(&mut rng, 3, 6, format!("R{seed}"))
}

proptest! {
    #[test]
    fn random_categories_are_associative_and_unital(seed in any::<u64>()) {
        let c = random_category(seed);
        prop_assert!(validate_fincat(&c).is_empty());
        for f in c.morphisms() {
            prop_assert_eq!(c.compose(f, c.identity(c.src(f))), Some(f));
            prop_assert_eq!(c.compose(c.identity(c.tgt(f)), f), Some(f));
            for &g in c.out_of(c.tgt(f)) {
                for &h in c.out_of(c.tgt(g)) {
                    let left = c.compose(h, c.compose(g, f).unwrap());
                    let right = c.compose(c.compose(h, g).unwrap(), f);
                    prop_assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>()) {
        let c = random_category(seed);
        let text = serde_json::to_string(&FinCatDoc::from_fincat(&c)).unwrap();
        let back = FinCatDoc::parse(&text).unwrap();
        prop_assert_eq!(back.num_objects(), c.num_objects());
        prop_assert_eq!(back.num_morphisms(), c.num_morphisms());
        for f in c.morphisms() {
            for &g in c.out_of(c.tgt(f)) {
                let h = c.compose(g, f).unwrap();
                let find = |m| back.find_morphism(c.morphism_name(m)).unwrap();
                prop_assert_eq!(back.compose(find(g), find(f)), Some(find(h)));
            }
        }
    }

    #[test]
    fn identity_functors_compose(seed in any::<u64>()) {
        let c = random_category(seed);
        let id = Functor::identity(&c);
        prop_assert!(validate_functor(&id, &c, &c).is_empty());
        prop_assert_eq!(id.after(&id), id);
    }
}
