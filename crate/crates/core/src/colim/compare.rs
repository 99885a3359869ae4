//! Cross-check of the engine against congruence closure on the presentation.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{ColimError, Window};
use crate::decor::DecoratedZigZag;
use crate::fincat::oracle::{saturated_against, OracleError, OracleRun};
use crate::fincat::{present_colimit, ColimitPresentation, Diagram, Path};
use crate::{Budget, BudgetExceeded};

/// Extra word length given to the oracle beyond the longest chain in the window.
pub const ORACLE_SLACK: usize = 2;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CompareStatus {
    Bijection,
    /// Differences that the side at fault does not certify as final.
    Flagged,
    Mismatch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairComparison {
    pub source: usize,
    pub target: usize,
    pub engine_classes: usize,
    pub oracle_classes: usize,
    /// Oracle classes hit by more than one engine class.
    pub split: usize,
    /// Engine classes whose members fall into more than one oracle class.
    pub fusion: usize,
    /// Oracle classes (words of length `≤ max_zz_len + 1`) hit by no engine class.
    pub missing: usize,
    /// Engine certificate; only computed when the verdict depends on it.
    pub engine_saturated: Option<bool>,
    pub oracle_saturated: bool,
    pub status: CompareStatus,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    pub max_zz_len: usize,
    pub oracle_len: usize,
    pub pairs: Vec<PairComparison>,
    pub status: CompareStatus,
}

/// The word of generators read off a decorated zig-zag's chain; identities vanish.
pub fn word_of(d: &Diagram, pres: &ColimitPresentation, x: &DecoratedZigZag) -> Path {
    let (i0, a) = x.start(d);
    let gens = x
        .chain
        .iter()
        .zip(&x.base.feet)
        .filter_map(|(&f, &i)| pres.generator[i.idx()][f.idx()])
        .collect();
    Path {
        src: pres.object_class[i0.idx()][a.idx()],
        gens,
    }
}

fn oracle_err(e: OracleError) -> ColimError {
    match e {
        OracleError::Budget(b) => ColimError::Budget(b),
        OracleError::UnknownObject(_) => ColimError::Budget(BudgetExceeded {
            limit: 0,
            what: "oracle",
        }),
    }
}

/// Maps every engine class to the oracle class of its chain word and checks
/// that the induced map is a bijection on each pair of object classes.
pub fn compare_with_oracle(
    d: &Diagram,
    max_zz_len: usize,
    budget: Budget,
) -> Result<ComparisonReport, ColimError> {
    let small = Window::build(d, None, max_zz_len, budget, super::CellSearch::Moves)?;
    compare_window(&small, budget)
}

/// `compare_with_oracle` on an already built window over all pairs.
pub fn compare_window(small: &Window<'_>, budget: Budget) -> Result<ComparisonReport, ColimError> {
    let d = small.diagram();
    let max_zz_len = small.max_zz_len;
    let pres = present_colimit(d).simplified();
    let p = &pres.presentation;
    let mut big: Option<Option<Window<'_>>> = None;
    let word_len = max_zz_len + 1;
    let oracle_len = word_len + ORACLE_SLACK;
    let run = OracleRun::compute(p, oracle_len, budget).map_err(oracle_err)?;
    let run_big = OracleRun::compute(p, oracle_len + 1, budget).ok();
    let index: HashMap<&Path, usize> = run
        .words()
        .iter()
        .enumerate()
        .map(|(i, w)| (w, i))
        .collect();

    // Engine class -> oracle classes of its members.
    let mut hits: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); small.num_classes()];
    for x in 0..small.num_items() {
        let item = small.item(x);
        let w = word_of(d, &pres, &item);
        let c = small.label[x] as usize;
        hits[c].insert(run.class_of_index(index[&w]));
    }

    let mut pairs: BTreeSet<(usize, usize)> = (0..small.num_classes())
        .map(|c| small.class_ends(c))
        .collect();
    for w in run.words().iter().filter(|w| w.len() <= word_len) {
        pairs.insert((w.src, w.tgt(p)));
    }

    let mut out = Vec::new();
    for &(s, t) in &pairs {
        let engine = small.classes_between(s, t);
        let oracle_groups = run.hom_classes(p, s, t, word_len);
        let oracle_ids: BTreeSet<usize> = oracle_groups
            .iter()
            .map(|g| run.class_of_index(g[0]))
            .collect();
        let mut image: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut fusion = 0;
        let mut counterexample = None;
        for &c in &engine {
            if hits[c].len() > 1 {
                fusion += 1;
                counterexample.get_or_insert_with(|| {
                    format!(
                        "engine class of {} spans several oracle classes",
                        small.representative(c).render(d)
                    )
                });
            }
            for &o in &hits[c] {
                image.entry(o).or_default().push(c);
            }
        }
        let split = image.values().filter(|cs| cs.len() > 1).count();
        if split > 0 && counterexample.is_none() {
            let cs = image.values().find(|cs| cs.len() > 1).unwrap();
            counterexample = Some(format!(
                "{} and {} are distinct engine classes with equal words",
                small.representative(cs[0]).render(d),
                small.representative(cs[1]).render(d)
            ));
        }
        let missing_ids: Vec<usize> = oracle_ids
            .iter()
            .copied()
            .filter(|o| !image.contains_key(o))
            .collect();
        if let (Some(&o), None) = (missing_ids.first(), &counterexample) {
            let g = oracle_groups
                .iter()
                .find(|g| run.class_of_index(g[0]) == o)
                .unwrap();
            counterexample = Some(format!(
                "word {} has no engine class",
                run.words()[g[0]].render(p)
            ));
        }
        let oracle_saturated = run_big
            .as_ref()
            .is_some_and(|b| saturated_against(&run, b, p, s, t, word_len));
        let engine_fault = split > 0 || !missing_ids.is_empty();
        let oracle_fault = fusion > 0;
        let mut engine_saturated = None;
        let mut engine_certificate = || {
            let b = big.get_or_insert_with(|| {
                Window::build(d, None, max_zz_len + 1, budget, super::CellSearch::Moves).ok()
            });
            b.as_ref().is_some_and(|b| small.saturated_in(b, s, t))
        };
        let status = if !engine_fault && !oracle_fault {
            // Agreement is final once either side is certified.
            if oracle_saturated || *engine_saturated.insert(engine_certificate()) {
                CompareStatus::Bijection
            } else {
                counterexample = Some("neither side is certified saturated".to_string());
                CompareStatus::Flagged
            }
        } else if (engine_fault && *engine_saturated.insert(engine_certificate()))
            || (oracle_fault && oracle_saturated)
        {
            CompareStatus::Mismatch
        } else {
            CompareStatus::Flagged
        };
        out.push(PairComparison {
            source: s,
            target: t,
            engine_classes: engine.len(),
            oracle_classes: oracle_ids.len(),
            split,
            fusion,
            missing: missing_ids.len(),
            engine_saturated,
            oracle_saturated,
            status,
            counterexample: if status == CompareStatus::Bijection {
                None
            } else {
                counterexample
            },
        });
    }
    let status = out
        .iter()
        .map(|p| p.status)
        .max()
        .unwrap_or(CompareStatus::Bijection);
    Ok(ComparisonReport {
        max_zz_len,
        oracle_len,
        pairs: out,
        status,
    })
}
