use crate::colim::cells_from;
use crate::zigzag::validate_cell;

use super::flags::Flag;
use super::necklace::{
    cell_from_map, for_each_bead_map, map_from_cell, merge_flags, split_flag, DeltaCategory,
    Necklace,
};

/// Every necklace with `1..=max_beads` beads of dimension `≤ max_dim`, by bead count then lexicographically.
pub fn necklaces_up_to(max_beads: usize, max_dim: usize) -> Vec<Necklace> {
    let mut out = Vec::new();
    for k in 1..=max_beads {
        let mut digits = vec![0; k];
        'odometer: loop {
            out.push(Necklace::new(digits.clone()).expect("bead list is nonempty"));
            for i in (0..k).rev() {
                digits[i] += 1;
                if digits[i] <= max_dim {
                    continue 'odometer;
                }
                digits[i] = 0;
            }
            break;
        }
    }
    out
}

/// Outcome of the exhaustive round trips.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RoundTripReport {
    /// Flags on a necklace, split and merged.
    pub flags: usize,
    /// Cells between necklace zig-zags, sent to maps and back.
    pub cells: usize,
    /// Bead-respecting maps, sent to cells and back.
    pub maps: usize,
    pub failures: Vec<String>,
}

impl RoundTripReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `split_flag`/`merge_flags` on every flag with `p ≤ max_p`, and
/// `cell_from_map`/`map_from_cell` on every cell and every bead-respecting map
/// between necklaces with `≤ max_beads` beads of dimension `≤ max_dim`.
pub fn check_round_trips(max_beads: usize, max_dim: usize, max_p: usize) -> RoundTripReport {
    let mut r = RoundTripReport::default();
    let all = necklaces_up_to(max_beads, max_dim);
    for n in &all {
        for p in 0..=max_p {
            split_merge(n, p, &mut r);
        }
    }
    let delta = DeltaCategory::new(max_dim);
    let zigzags: Vec<_> = all
        .iter()
        .map(|n| n.zigzag(&delta).expect("bead dimensions are in range"))
        .collect();
    for (s, z) in all.iter().zip(&zigzags) {
        let mut cells = 0;
        for c in cells_from(&delta.simplices.cat, z) {
            if !zigzags.contains(&c.target) {
                continue;
            }
            cells += 1;
            r.cells += 1;
            match map_from_cell(&c, &delta) {
                Ok(phi) => match cell_from_map(&phi, &delta) {
                    Ok(back) if back == c => {}
                    _ => r
                        .failures
                        .push(format!("cell out of {s} does not come back")),
                },
                Err(e) => r.failures.push(format!("cell out of {s}: {e}")),
            }
        }
        let mut maps = 0;
        for t in &all {
            for_each_bead_map(
                s,
                t,
                false,
                |_, _, _| true,
                |phi| {
                    maps += 1;
                    r.maps += 1;
                    let ok = phi.is_valid()
                        && cell_from_map(phi, &delta).is_ok_and(|c| {
                            validate_cell(&delta.simplices.cat, &c).is_empty()
                                && map_from_cell(&c, &delta).as_ref() == Ok(phi)
                        });
                    if !ok {
                        r.failures.push(format!("map {s} → {t} does not come back"));
                    }
                },
            );
        }
        if cells != maps {
            r.failures.push(format!(
                "{s}: {cells} cells against {maps} bead-respecting maps"
            ));
        }
    }
    r
}

fn split_merge(n: &Necklace, p: usize, r: &mut RoundTripReport) {
    let v = n.num_vertices();
    let mut digits = vec![0usize; v];
    loop {
        let first: Vec<Option<usize>> = digits.iter().map(|&d| (d <= p).then_some(d)).collect();
        let u = Flag::from_levels(0, p, &first);
        let joins_in = n.joins().iter().all(|&j| first[j] == Some(0));
        let ends_in = first[0] == Some(0) && first[v - 1] == Some(0);
        r.flags += 1;
        match split_flag(n, &u) {
            Ok(parts) => {
                let merged = merge_flags(n, &parts);
                let again = merged.as_ref().ok().map(|m| split_flag(n, m));
                if !joins_in || merged.as_ref() != Ok(&u) || again != Some(Ok(parts)) {
                    r.failures.push(format!("{u} on {n}"));
                }
            }
            Err(_) if joins_in && ends_in => r.failures.push(format!("{u} on {n} is rejected")),
            Err(_) => {}
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
            return;
        }
    }
}
