pub mod lp;
pub mod mis;
mod simplex;

pub use lp::{Certificate, Constraint, LpOutcome, LpStatus, RationalLp, Relation};
pub use mis::{BlpOutcome, ConflictBlp, ConflictGraph};
