//! Temporal network analysis with temporal quantities.
//!
//! Every changing value (a link weight, a node degree, a class label) is a
//! [`TemporalQuantity`]: a sorted list of half-open `[start, finish)` intervals
//! with a value attached to each. Quantities are added and multiplied over a
//! [`SemiringSpec`] with linear merge scans, and the network measures in
//! [`analysis`] are written directly in terms of those operations, so results
//! come out as temporal quantities without ever building per-instant slices.

pub mod analysis;
pub mod error;
pub mod io;
pub mod semiring;
pub mod tmatrix;
pub mod tq;

pub use error::{Error, Result};
pub use semiring::{Geodesic, Hops, SemiringKind, SemiringSpec, Value};
pub use tmatrix::{Side, TemporalMatrix, TemporalPartition, TemporalVector};
pub use tq::{TemporalQuantity, Time, TimeHorizon, Triple, FOREVER};
