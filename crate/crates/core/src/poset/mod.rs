//! Interval subquivers of the commutative grid, kept in staircase form, and
//! the poset they form under inclusion.

mod index;
mod interval;
mod ops;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::grid::Vertex;

pub use index::IntervalPoset;
pub use interval::Interval;
pub(crate) use ops::join_covers_unchecked;
pub use ops::{
    cc_essential, convex_closure, count_intervals_two_rows, covers, enumerate_intervals, intersection_components,
    interval_contains_rectangle, join_covers, meet_over, rectangle_from, ss_essential, CornerCovers,
};

/// A set of grid vertices, ordered bottom row first.
pub type VertexSet = BTreeSet<Vertex>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("not a staircase interval: {0}")]
    NotAnInterval(String),
    #[error("cannot parse interval {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error("vertex set is empty")]
    EmptySet,
    #[error("vertex set is disconnected, so no unique smallest interval contains it")]
    Disconnected,
    #[error("{0} lies outside the grid")]
    OutOfGrid(Vertex),
    #[error("{0} is not a cover of the base interval")]
    NotACover(String),
    #[error("{0} does not contain the base interval")]
    NotAbove(String),
    #[error("{0} and {1} are not comparable")]
    Incomparable(Vertex, Vertex),
    #[error("cover set must be nonempty")]
    EmptyCoverSet,
}
