//! Flag categories `ℭΔⁿ_p`, the diagram `χ_p` of flag categories over the
//! simplices of `X`, necklaces with flags, and the mapping spaces of `ℭX`
//! enumerated as necklace/flag pairs up to bipointed maps.

mod chi;
mod compare;
mod flags;
mod hom;
mod necklace;
mod replace;
mod roundtrip;

use thiserror::Error;

use crate::colim::ColimError;
use crate::sset::SSetError;
use crate::BudgetExceeded;

pub use chi::{chi_diagram, chi_over, ChiDiagram};
pub use compare::{compare_with_chi, NecklaceComparison};
pub use flags::{flag_category, flags_between, span, theta_star, Flag, FlagCategory, MAX_VERTICES};
pub use hom::{
    necklace_maps, normalize, rigid_hom, RigidBounds, RigidClass, RigidHomTable, RigidMode,
    RigidWindow,
};
pub use necklace::{
    cell_from_map, for_each_bead_map, map_from_cell, merge_flags, split_flag, DeltaCategory,
    Necklace, NecklaceFlagPair, NecklaceMap, NecklaceMorphism,
};
pub use replace::necklace_replace;
pub use roundtrip::{check_round_trips, necklaces_up_to, RoundTripReport};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum RigidError {
    #[error("malformed input: {0}")]
    Shape(String),
    #[error("the joins of the necklace are not all in U⁰")]
    JoinsNotInFlag,
    #[error("the map is not bead-respecting")]
    NotBeadRespecting,
    #[error("{0} is not an object of the index")]
    NotInIndex(String),
    #[error("construction failed validation: {0}")]
    Mismatch(String),
    #[error("{0} lies outside the enumerated window")]
    OutsideWindow(String),
    #[error(transparent)]
    SSet(#[from] SSetError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error(transparent)]
    Colim(#[from] ColimError),
}
