//! Detectability and opacity verification for labeled Petri nets.
//!
//! The crate decides strong detectability, weak detectability and
//! current-state opacity exactly on bounded nets, searches for
//! non-detectability witnesses on unbounded nets, and builds the reduction
//! gadgets that relate these properties to coverability and language
//! inclusion.

pub mod analyze;
pub mod explore;
pub mod fixtures;
pub mod gadgets;
pub mod io;
pub mod net;
pub mod twin;

pub use explore::{Budget, Outcome, Verdict, Witness};
pub use net::{FiringSequence, LabeledPetriNet, Marking, NetBuilder, NetError, ObservationWord, TransitionId};
pub use twin::TwinNet;
