//! Constructors for the structured graph families: layered trees, grids,
//! certified tall grids, tree-aliased grids, spine-aliased grids, and the
//! composed two-sided instances used by the hard distribution.

mod ag;
mod edgeacc;
mod family;
mod gadget;
mod grid;
mod sag;
mod tree;

pub use ag::AliasedGrid;
pub use family::{pi_ag_instance, FamilyG, FamilyParams};
pub use gadget::{attach_gadgets, gadget_edge_label};
pub use grid::{Grid, VGrid};
pub use sag::{NodeKey, Sag};
pub use tree::TreeLike;

pub(crate) use edgeacc::EdgeAcc;
