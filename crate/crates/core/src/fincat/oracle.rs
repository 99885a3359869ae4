//! Bounded congruence closure on a finitely presented category.
//!
//! All words of length at most `L` are enumerated, relation instances are
//! merged, and the partition is closed under one-letter extension on either
//! side while both extended words stay inside the window.

use std::collections::HashMap;

use thiserror::Error;

use super::present::{FinPresCat, GenId, Path};
use crate::unionfind::UnionFind;
use crate::{par, Budget, BudgetExceeded};

pub type Word = Path;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error("unknown object {0}")]
    UnknownObject(usize),
}

/// All words of length `≤ max_len` with their congruence classes.
#[derive(Clone, Debug)]
pub struct OracleRun {
    pub max_len: usize,
    words: Vec<Word>,
    class: Vec<usize>,
    num_classes: usize,
}

impl OracleRun {
    pub fn compute(p: &FinPresCat, max_len: usize, budget: Budget) -> Result<Self, OracleError> {
        let outs: Vec<Vec<GenId>> = (0..p.objects.len()).map(|o| p.out_of(o)).collect();
        let mut words: Vec<Word> = (0..p.objects.len()).map(Path::empty).collect();
        let mut level = 0..words.len();
        for _ in 0..max_len {
            let next: Vec<Vec<Word>> = par::map(&words[level.clone()], |w| {
                outs[w.tgt(p)]
                    .iter()
                    .map(|&g| {
                        let mut gens = w.gens.clone();
                        gens.push(g);
                        Path { src: w.src, gens }
                    })
                    .collect()
            });
            let start = words.len();
            for batch in next {
                words.extend(batch);
                budget.check(words.len(), "oracle words")?;
            }
            level = start..words.len();
        }
        let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut uf = UnionFind::new(words.len());
        for (s, t) in &p.relations {
            if let (Some(&a), Some(&b)) = (index.get(s), index.get(t)) {
                uf.union(a, b);
            }
        }
        // One-letter extensions (w, g, wg) and (g, w, gw), listed once.
        let ext: Vec<Vec<(usize, u32, usize, bool)>> = par::map_range(words.len(), |w| {
            let word = &words[w];
            if word.len() >= max_len {
                return Vec::new();
            }
            let mut out = Vec::new();
            for &g in &outs[word.tgt(p)] {
                let mut gens = word.gens.clone();
                gens.push(g);
                if let Some(&wg) = index.get(&Path {
                    src: word.src,
                    gens,
                }) {
                    out.push((w, g.0, wg, true));
                }
            }
            for (gi, gen) in p.generators.iter().enumerate() {
                if gen.tgt != word.src {
                    continue;
                }
                let mut gens = Vec::with_capacity(word.len() + 1);
                gens.push(GenId(gi as u32));
                gens.extend_from_slice(&word.gens);
                if let Some(&gw) = index.get(&Path { src: gen.src, gens }) {
                    out.push((w, gi as u32, gw, false));
                }
            }
            out
        });
        drop(index);
        loop {
            let mut changed = false;
            let mut sig: HashMap<(usize, u32, bool), usize> = HashMap::new();
            for &(w, g, e, right) in ext.iter().flatten() {
                let key = (uf.find(w), g, right);
                match sig.get(&key) {
                    Some(&other) => changed |= uf.union(other, e),
                    None => {
                        sig.insert(key, e);
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let (class, num_classes) = uf.labels();
        Ok(OracleRun {
            max_len,
            words,
            class,
            num_classes,
        })
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn class_of_index(&self, w: usize) -> usize {
        self.class[w]
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    /// Classes of words `a → b` of length `≤ len`, each as sorted word indices.
    /// Classes are ordered by their least (length-lexicographic) member.
    pub fn hom_classes(&self, p: &FinPresCat, a: usize, b: usize, len: usize) -> Vec<Vec<usize>> {
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        let mut order = Vec::new();
        for (i, w) in self.words.iter().enumerate() {
            if w.src == a && w.tgt(p) == b && w.len() <= len {
                let c = self.class[i];
                groups
                    .entry(c)
                    .or_insert_with(|| {
                        order.push(c);
                        Vec::new()
                    })
                    .push(i);
            }
        }
        order
            .into_iter()
            .map(|c| groups.remove(&c).unwrap())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleClass {
    pub representative: Word,
    pub members: Vec<Word>,
}

/// Equivalence classes of words `a → b` of length `≤ max_len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleTable {
    pub src: usize,
    pub tgt: usize,
    pub max_len: usize,
    pub classes: Vec<OracleClass>,
    /// True when rerunning at `max_len + 1` merges no two of these classes and
    /// every word of length `max_len + 1` falls into one of them.
    pub saturated: bool,
}

impl OracleTable {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

fn table_from(run: &OracleRun, p: &FinPresCat, a: usize, b: usize, len: usize) -> Vec<OracleClass> {
    run.hom_classes(p, a, b, len)
        .into_iter()
        .map(|members| OracleClass {
            representative: run.words[members[0]].clone(),
            members: members.into_iter().map(|i| run.words[i].clone()).collect(),
        })
        .collect()
}

/// Saturation check of the classes of `a → b` at `len` against a run at a larger bound.
pub fn saturated_against(
    small: &OracleRun,
    big: &OracleRun,
    p: &FinPresCat,
    a: usize,
    b: usize,
    len: usize,
) -> bool {
    let small_classes = small.hom_classes(p, a, b, len);
    let big_classes = big.hom_classes(p, a, b, len + 1);
    // Word lists are generated in the same order, so indices of words up to `len` agree.
    let mut seen = std::collections::HashSet::new();
    for c in &small_classes {
        if !seen.insert(big.class[c[0]]) {
            return false;
        }
    }
    big_classes
        .iter()
        .all(|c| c.iter().any(|&w| big.words[w].len() <= len))
}

pub fn oracle_hom(
    p: &FinPresCat,
    a: usize,
    b: usize,
    max_len: usize,
    budget: Budget,
) -> Result<OracleTable, OracleError> {
    for o in [a, b] {
        if o >= p.objects.len() {
            return Err(OracleError::UnknownObject(o));
        }
    }
    let run = OracleRun::compute(p, max_len, budget)?;
    let classes = table_from(&run, p, a, b, max_len);
    let saturated = match OracleRun::compute(p, max_len + 1, budget) {
        Ok(big) => saturated_against(&run, &big, p, a, b, max_len),
        Err(_) => false,
    };
    Ok(OracleTable {
        src: a,
        tgt: b,
        max_len,
        classes,
        saturated,
    })
}
