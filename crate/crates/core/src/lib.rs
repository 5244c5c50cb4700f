//! Partial-order models of concurrent computations.
//!
//! Two views of one execution are supported. The event view
//! ([`event::EventModel`]) is a happened-before poset of events labelled
//! with the processes that execute them. The state view
//! ([`state::StateModel`]) is a poset of local states covered by one chain
//! per process. [`transform`] converts between them, [`lattice`] enumerates
//! consistent global states of either view, and [`analysis`] builds
//! predicate detection and checkpoint analysis on top.

pub mod analysis;
pub mod error;
pub mod event;
pub mod generate;
pub mod lattice;
mod matching;
pub mod oracle;
pub mod poset;
mod scc;
pub mod state;
pub mod trace;
pub mod transform;

pub use error::{Error, Result};
pub use event::{EventModel, Slot};
pub use poset::{Antichain, ChainPartition, Comparison, Interval, Poset};
pub use state::{StateModel, Verdict, Witness};
