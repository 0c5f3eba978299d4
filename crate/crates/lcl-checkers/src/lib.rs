//! Local constraint checkers.
//!
//! Every checker in this crate evaluates a locally checkable condition: the
//! verdict for a node depends only on the labels within a fixed radius of it
//! (radius 3 covers everything here). Checkers return a [`CheckReport`] with
//! per-node violations rather than a bare bool so tests and the CLI can point
//! at the offending node and rule.

mod bad;
mod grid_rules;
mod pi;
mod proj;
mod report;
mod structural;
mod tm_rules;
mod tree_rules;
mod vert_rules;

pub use bad::{
    ag_obligation, agg_gadget_broken, agg_obligation, check_bad_ag, check_bad_agg, check_bad_sag,
    check_bad_satm, check_bad_tree, satm_obligation, tree_obligation,
};
pub use pi::{check_pi, check_pi2, classify_pi, split_pi, PiParts, Possibility};
pub use proj::Roled;
pub use report::{CheckReport, Violation};
pub use structural::{
    check_ag, check_grid, check_sag, check_satm, check_tm_grid, check_tree, check_vgrid,
};
