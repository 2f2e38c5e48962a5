//! Temporal network measures.
//!
//! Every function takes a network matrix and returns temporal results; the
//! value at an instant `t` is always the classical static measure of the
//! slice of the network active at `t`.

mod attraction;
mod centrality;
mod clustering;
mod connectivity;
mod cooccur;
mod degrees;
mod pathfinder;

pub use attraction::attraction;
pub use centrality::{betweenness, closeness, ClosenessType};
pub use clustering::{clus_coef, ClusteringType};
pub use connectivity::{
    eq_mat_to_part, renumber_partition, strong_connectivity, weak_connectivity, DEFAULT_SEED,
};
pub use cooccur::{co_occurrence, CoOccurrenceMode, Event, EventTable};
pub use degrees::{activity, degrees, reach_degrees, Direction};
pub use pathfinder::path_finder;

use crate::error::{Error, Result};
use crate::semiring::{SemiringKind, SemiringSpec, Value};
use crate::tmatrix::TemporalMatrix;

fn require_kind(a: &TemporalMatrix, kind: SemiringKind) -> Result<()> {
    if a.spec().kind() != kind {
        return Err(Error::SemiringMismatch {
            expected: kind,
            found: a.spec().kind(),
        });
    }
    Ok(())
}

fn require_square(a: &TemporalMatrix) -> Result<usize> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "network matrix must be square, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    Ok(a.rows())
}

/// Link weights re-expressed over a real-valued `spec`. Booleans count as
/// unit weights; `valid` decides which reals are admissible.
fn real_weights(
    a: &TemporalMatrix,
    spec: SemiringSpec,
    what: &str,
    valid: impl Fn(f64) -> bool,
) -> Result<TemporalMatrix> {
    a.map_into(spec, |v| match *v {
        Value::Real(x) if valid(x) => Ok(Value::Real(x)),
        Value::Real(x) => Err(Error::InvalidInput(format!(
            "{what} needs {} link values, found {x}",
            if what == "attraction" { "positive" } else { "nonnegative" }
        ))),
        Value::Bool(true) => Ok(Value::Real(1.0)),
        other => Err(Error::Unsupported(format!(
            "{what} needs real link values, found {other}"
        ))),
    })
}
