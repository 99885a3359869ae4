use crate::colim::{CellSearch, ColimError, Window};
use crate::decor::validate_decorated_cell;
use crate::sset::FinSSet;

use super::chi::chi_diagram;
use super::hom::{RigidBounds, RigidWindow};
use super::replace::necklace_replace;
use super::RigidError;

/// Necklace classes against colimit classes for one pair of vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NecklaceComparison {
    pub a: usize,
    pub b: usize,
    pub p: usize,
    pub rigid_classes: usize,
    pub engine_classes: usize,
    pub rigid_saturated: bool,
    pub engine_saturated: bool,
    /// Necklace replacement and the decorated-necklace embedding are inverse on classes.
    pub bijection: bool,
    pub failures: Vec<String>,
}

/// For every pair of vertices, rigid_hom classes against the classes of
/// `χ_p(X)` with zig-zags of length `≤ max_zz_len`, matched through necklace
/// replacement one way and the decorated-necklace embedding the other.
pub fn compare_with_chi(
    x: &FinSSet,
    p: usize,
    bounds: RigidBounds,
    max_zz_len: usize,
    certify: bool,
) -> Result<Vec<NecklaceComparison>, RigidError> {
    let chi = chi_diagram(x, p);
    let d = &chi.diagram;
    let budget = bounds.budget;
    let w = Window::build(d, None, max_zz_len, budget, CellSearch::Moves)?;
    let big = if certify {
        match Window::build(d, None, max_zz_len + 1, budget, CellSearch::Moves) {
            Ok(big) => Some(big),
            Err(ColimError::Budget(_)) => None,
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    let vertices = x.count(0);
    let mut out = Vec::with_capacity(vertices * vertices);
    for a in 0..vertices {
        for b in 0..vertices {
            let (s, t) = (
                chi.vertex_class(a).expect("vertex"),
                chi.vertex_class(b).expect("vertex"),
            );
            let rigid = RigidWindow::build(
                x,
                a,
                b,
                p,
                RigidBounds {
                    certify: false,
                    ..bounds
                },
            )?;
            let rigid_saturated = certify && {
                let larger = RigidBounds {
                    max_beads: bounds.max_beads + 1,
                    max_bead_dim: bounds.max_bead_dim + 1,
                    ..bounds
                };
                match RigidWindow::build(x, a, b, p, larger) {
                    Ok(rb) => rigid.saturated_in(&rb),
                    Err(RigidError::Budget(_)) => false,
                    Err(e) => return Err(e),
                }
            };
            let engine = w.classes_between(s, t);
            let engine_saturated = big.as_ref().is_some_and(|big| w.saturated_in(big, s, t));
            let mut failures = Vec::new();
            let to_rigid: Vec<Option<usize>> = engine
                .iter()
                .map(|&c| {
                    let rep = w.representative(c);
                    let result = necklace_replace(&chi, &rep).and_then(|(pair, eps)| {
                        if !validate_decorated_cell(d, &eps).is_empty() {
                            return Err(RigidError::Mismatch("ε does not validate".into()));
                        }
                        if w.classify(&eps.source, budget)? != c {
                            return Err(RigidError::Mismatch("ε changes the class".into()));
                        }
                        rigid.classify(x, &pair)
                    });
                    result
                        .map_err(|e| failures.push(format!("{}: {e}", rep.render(d))))
                        .ok()
                })
                .collect();
            let to_engine: Vec<Option<usize>> = (0..rigid.num_classes())
                .map(|r| {
                    let rep = rigid.representative(r);
                    let result = rep
                        .to_decorated(&chi)
                        .and_then(|z| w.classify(&z, budget).map_err(RigidError::from));
                    result
                        .map_err(|e| failures.push(format!("{}: {e}", rep.render(x))))
                        .ok()
                })
                .collect();
            let mut bijection = engine.len() == rigid.num_classes() && failures.is_empty();
            for (k, &c) in engine.iter().enumerate() {
                if let Some(r) = to_rigid[k] {
                    if to_engine[r] != Some(c) {
                        bijection = false;
                    }
                }
            }
            out.push(NecklaceComparison {
                a,
                b,
                p,
                rigid_classes: rigid.num_classes(),
                engine_classes: engine.len(),
                rigid_saturated,
                engine_saturated,
                bijection,
                failures,
            });
        }
    }
    Ok(out)
}
