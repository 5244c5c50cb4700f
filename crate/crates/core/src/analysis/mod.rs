//! Analyses built on the cut lattice: predicate detection and checkpoints.

pub mod checkpoint;
pub mod predicate;

pub use checkpoint::{
    find_useless_checkpoints, induced_checkpoint_model, CheckpointMarking, CheckpointReport,
    Engine,
};
pub use predicate::{detect_width_predicate, Cmp, CutPredicate, WidthPredicate};
