use std::collections::HashMap;
use std::fmt;

use crate::fincat::{FinCat, FinCatBuilder, MorId, ObjId};

/// A flag `U⁰ ⊆ … ⊆ Uᵖ` of vertex sets from `from` to `to`, each level a bitmask.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flag {
    pub from: usize,
    pub to: usize,
    pub levels: Vec<u64>,
}

/// Highest vertex a flag can mention.
pub const MAX_VERTICES: usize = 64;

impl Flag {
    /// The constant flag `({i}, …, {i})`.
    pub fn identity(i: usize, p: usize) -> Self {
        Flag {
            from: i,
            to: i,
            levels: vec![1 << i; p + 1],
        }
    }

    /// The flag whose vertex `v` first appears at level `first[v - from]`;
    /// `None` leaves it out.
    pub fn from_levels(from: usize, p: usize, first: &[Option<usize>]) -> Self {
        let mut levels = vec![0u64; p + 1];
        for (k, lv) in first.iter().enumerate() {
            if let Some(lv) = *lv {
                for level in &mut levels[lv..] {
                    *level |= 1 << (from + k);
                }
            }
        }
        Flag {
            from,
            to: from + first.len() - 1,
            levels,
        }
    }

    pub fn p(&self) -> usize {
        self.levels.len() - 1
    }

    /// First level containing `v`.
    pub fn first_level(&self, v: usize) -> Option<usize> {
        self.levels.iter().position(|l| l & (1 << v) != 0)
    }

    /// Nested, endpoints in `U⁰`, everything inside `from..=to < ambient`.
    pub fn is_valid(&self, ambient: usize) -> bool {
        if self.levels.is_empty() || self.from > self.to || self.to >= ambient.min(MAX_VERTICES) {
            return false;
        }
        let range = span(self.from, self.to);
        let ends = (1u64 << self.from) | (1u64 << self.to);
        self.levels[0] & ends == ends
            && self.levels.windows(2).all(|w| w[0] & !w[1] == 0)
            && self.levels.iter().all(|&l| l & !range == 0)
    }

    /// `other ∘ self`: levelwise union. Requires `self.to == other.from`.
    pub fn then(&self, other: &Flag) -> Option<Flag> {
        if self.to != other.from || self.levels.len() != other.levels.len() {
            return None;
        }
        Some(Flag {
            from: self.from,
            to: other.to,
            levels: self
                .levels
                .iter()
                .zip(&other.levels)
                .map(|(a, b)| a | b)
                .collect(),
        })
    }

    /// Image under a monotone vertex map `v ↦ f[v]`.
    pub fn image(&self, f: &[usize]) -> Flag {
        Flag {
            from: f[self.from],
            to: f[self.to],
            levels: self.levels.iter().map(|&l| image_mask(l, f)).collect(),
        }
    }

    /// Vertices shifted down by `offset`.
    pub fn shifted_down(&self, offset: usize) -> Flag {
        Flag {
            from: self.from - offset,
            to: self.to - offset,
            levels: self.levels.iter().map(|l| l >> offset).collect(),
        }
    }

    pub fn shifted_up(&self, offset: usize) -> Flag {
        Flag {
            from: self.from + offset,
            to: self.to + offset,
            levels: self.levels.iter().map(|l| l << offset).collect(),
        }
    }

    /// The part of the flag inside `lo..=hi`, as a flag from `lo` to `hi`.
    pub fn restrict(&self, lo: usize, hi: usize) -> Flag {
        let range = span(lo, hi);
        Flag {
            from: lo,
            to: hi,
            levels: self.levels.iter().map(|l| l & range).collect(),
        }
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &l) in self.levels.iter().enumerate() {
            if k > 0 {
                write!(f, "⊆")?;
            }
            let members: Vec<String> = (0..MAX_VERTICES)
                .filter(|v| l & (1 << v) != 0)
                .map(|v| v.to_string())
                .collect();
            write!(f, "{{{}}}", members.join(","))?;
        }
        Ok(())
    }
}

/// Bits `lo..=hi`.
pub fn span(lo: usize, hi: usize) -> u64 {
    let upper = if hi + 1 >= 64 {
        u64::MAX
    } else {
        (1u64 << (hi + 1)) - 1
    };
    upper & !((1u64 << lo) - 1)
}

pub(crate) fn image_mask(mask: u64, f: &[usize]) -> u64 {
    let mut out = 0;
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        out |= 1 << f[v];
        m &= m - 1;
    }
    out
}

/// `θ*(U⃗) = (U^{θ(0)} ⊆ … ⊆ U^{θ(q)})` for monotone `θ : [q] → [p]`.
pub fn theta_star(theta: &[usize], f: &Flag) -> Flag {
    Flag {
        from: f.from,
        to: f.to,
        levels: theta.iter().map(|&t| f.levels[t]).collect(),
    }
}

/// Every flag from `i` to `j` at level `p`, identity first, then by the
/// first-level assignment of the interior vertices in odometer order.
pub fn flags_between(i: usize, j: usize, p: usize) -> Vec<Flag> {
    if i == j {
        return vec![Flag::identity(i, p)];
    }
    let interior = j - i - 1;
    let mut out = Vec::new();
    let mut digits = vec![0usize; interior];
    loop {
        let mut first = Vec::with_capacity(interior + 2);
        first.push(Some(0));
        first.extend(digits.iter().map(|&d| (d <= p).then_some(d)));
        first.push(Some(0));
        out.push(Flag::from_levels(i, p, &first));
        let mut k = interior;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] <= p + 1 {
                break;
            }
            digits[k] = 0;
        }
    }
}

/// `ℭΔⁿ_p` with the flag behind every morphism.
#[derive(Clone, Debug)]
pub struct FlagCategory {
    pub n: usize,
    pub p: usize,
    pub cat: FinCat,
    pub flags: Vec<Flag>,
    index: HashMap<Flag, MorId>,
}

impl FlagCategory {
    pub fn new(n: usize, p: usize) -> Self {
        let mut b = FinCatBuilder::new(format!("C[Δ{n}]_{p}"));
        for i in 0..=n {
            b.object(i.to_string());
        }
        let mut flags = Vec::new();
        let mut index = HashMap::new();
        for i in 0..=n {
            for j in i..=n {
                for f in flags_between(i, j, p) {
                    let m = b.morphism(f.to_string(), ObjId::from(i), ObjId::from(j));
                    if i == j {
                        b.set_identity(ObjId::from(i), m);
                    }
                    index.insert(f.clone(), m);
                    flags.push(f);
                }
            }
        }
        let mut out_of = vec![Vec::new(); n + 1];
        for (m, f) in flags.iter().enumerate() {
            out_of[f.from].push(m);
        }
        for (m, f) in flags.iter().enumerate() {
            for &g in &out_of[f.to] {
                let h = f.then(&flags[g]).expect("composable");
                b.compose(MorId::from(g), MorId::from(m), index[&h]);
            }
        }
        FlagCategory {
            n,
            p,
            cat: b.build(),
            flags,
            index,
        }
    }

    pub fn flag(&self, m: MorId) -> &Flag {
        &self.flags[m.idx()]
    }

    pub fn morphism(&self, f: &Flag) -> Option<MorId> {
        self.index.get(f).copied()
    }
}

/// The category `ℭΔⁿ_p`: objects `0..=n`, flags as morphisms, union as composition.
pub fn flag_category(n: usize, p: usize) -> FinCat {
    FlagCategory::new(n, p).cat
}
