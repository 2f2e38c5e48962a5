use super::{real_weights, require_square};
use crate::error::Result;
use crate::semiring::{approx_eq, SemiringSpec, Value};
use crate::tmatrix::TemporalMatrix;
use crate::tq::{merge_overlaps_with, TemporalQuantity};

/// Pathfinder skeleton of the dissimilarity matrix `w`: a link survives on
/// the sub-intervals where no walk of at most `q` steps (`None` for any
/// length) has a smaller r-norm value. The result is over the Pathfinder
/// semiring with the original link values.
pub fn path_finder(w: &TemporalMatrix, r: f64, q: Option<u64>) -> Result<TemporalMatrix> {
    let n = require_square(w)?;
    let spec = SemiringSpec::pathfinder(r, q)?;
    let w = real_weights(w, spec, "pathfinder", |x| x >= 0.0)?;
    let z = match q {
        Some(q) if q <= n as u64 => w.set_diag(&w.horizon().full(spec.one()))?.power(q)?,
        _ => w.closure(false)?,
    };
    let mut out = TemporalMatrix::square(n, spec, *w.horizon());
    for u in 0..n {
        for v in 0..n {
            let kept = pf_check(w.get(u, v), z.get(u, v))?;
            out.set(u, v, kept)?;
        }
    }
    Ok(out)
}

/// The parts of `a` where `b` has the same value.
fn pf_check(a: &TemporalQuantity, b: &TemporalQuantity) -> Result<TemporalQuantity> {
    if a.is_empty() || b.is_empty() {
        return Ok(a.clone());
    }
    merge_overlaps_with(a, b, |x, y| match (x, y) {
        (Value::Real(x), Value::Real(y)) if approx_eq(*x, *y) => Ok(Some(Value::Real(*x))),
        _ => Ok(None),
    })
}
