use super::clustering::{max_value, skeleton_degrees};
use super::{real_weights, require_square};
use crate::error::Result;
use crate::semiring::{SemiringSpec, Value};
use crate::tmatrix::{TemporalMatrix, TemporalVector};
use crate::tq::TemporalQuantity;

/// `att(u) = (1 / Delta) sum_{v != u} a_vu / act(v)`, where `act(v)` is the
/// total outgoing activity of `v` and `Delta` the largest skeleton degree over
/// the whole window. Values lie in `[0, 1]`.
pub fn attraction(a: &TemporalMatrix) -> Result<TemporalVector> {
    let n = require_square(a)?;
    let comb = SemiringSpec::combinatorial();
    let horizon = *a.horizon();
    let a = real_weights(a, comb, "attraction", |x| x > 0.0)?;
    let (_, _, _, delta) = skeleton_degrees(&a)?;
    let Some(delta) = max_value(&delta) else {
        return Ok(TemporalVector::constant(n, TemporalQuantity::empty(), comb, horizon));
    };
    let inf = Value::Real(f64::INFINITY);
    let inv_act = (0..n)
        .map(|v| {
            let mut act = TemporalQuantity::empty();
            for w in (0..n).filter(|&w| w != v) {
                act = act.sum(&comb, a.get(v, w))?;
            }
            act.fill_gaps(horizon.start(), horizon.finish(), inf)?.invert()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::with_capacity(n);
    for u in 0..n {
        let mut acc = TemporalQuantity::empty();
        for v in (0..n).filter(|&v| v != u) {
            acc = acc.sum(&comb, &a.get(v, u).prod(&comb, &inv_act[v])?)?;
        }
        out.push(acc.map_values(|x| Ok(Value::Real(x.as_real().unwrap_or(0.0) / delta)))?);
    }
    Ok(TemporalVector::new(out, comb, horizon))
}
