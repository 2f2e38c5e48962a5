use super::{real_weights, require_square};
use crate::error::{Error, Result};
use crate::semiring::{Geodesic, SemiringSpec, Value};
use crate::tmatrix::{TemporalMatrix, TemporalVector};
use crate::tq::{merge_overlaps_with, TemporalQuantity};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosenessType {
    Output = 1,
    All = 2,
    Input = 3,
}

impl TryFrom<u8> for ClosenessType {
    type Error = Error;

    fn try_from(k: u8) -> Result<Self> {
        match k {
            1 => Ok(ClosenessType::Output),
            2 => Ok(ClosenessType::All),
            3 => Ok(ClosenessType::Input),
            _ => Err(Error::InvalidInput(format!("closeness type must be 1, 2 or 3, got {k}"))),
        }
    }
}

/// Temporal closeness `k / sum d`, with `k = (2 - |type - 2|)(n - 1)`.
/// Unreachable pairs count as infinitely far, so a node that misses anyone
/// at an instant has closeness 0 there.
pub fn closeness(a: &TemporalMatrix, kind: ClosenessType) -> Result<TemporalVector> {
    let n = require_square(a)?;
    let horizon = *a.horizon();
    let d = real_weights(a, SemiringSpec::shortest_path(), "closeness", |x| x >= 0.0)?.closure(true)?;
    let comb = SemiringSpec::combinatorial();
    let ty = kind as i64;
    let k = (2 - (ty - 2).abs()) * (n as i64 - 1);
    let fac = horizon.full(Value::Real(k as f64));
    let inf = Value::Real(f64::INFINITY);
    let (s, f) = (horizon.start(), horizon.finish());
    let mut out = Vec::with_capacity(n);
    for v in 0..n {
        let mut sum = TemporalQuantity::empty();
        for u in (0..n).filter(|&u| u != v) {
            if kind != ClosenessType::Input {
                sum = sum.sum(&comb, &d.get(v, u).fill_gaps(s, f, inf)?)?;
            }
            if kind != ClosenessType::Output {
                sum = sum.sum(&comb, &d.get(u, v).fill_gaps(s, f, inf)?)?;
            }
        }
        out.push(fac.prod(&comb, &sum.invert()?)?);
    }
    Ok(TemporalVector::new(out, comb, horizon))
}

/// Temporal betweenness from the strict geodetic closure: the share of
/// geodesics between every other ordered pair that pass through the node,
/// normalised by `(n - 1)(n - 2)`.
pub fn betweenness(a: &TemporalMatrix) -> Result<TemporalVector> {
    let n = require_square(a)?;
    let comb = SemiringSpec::combinatorial();
    let horizon = *a.horizon();
    if n < 3 {
        return Ok(TemporalVector::constant(n, TemporalQuantity::empty(), comb, horizon));
    }
    let geo = SemiringSpec::geodetic();
    let c = a
        .map_into(geo, |_| Ok(Value::Geo(Geodesic::new(1, 1))))?
        .closure(true)?;
    let norm = ((n - 1) * (n - 2)) as f64;
    let mut out = Vec::with_capacity(n);
    for v in 0..n {
        let mut r = TemporalQuantity::empty();
        for u in (0..n).filter(|&u| u != v) {
            if c.get(u, v).is_empty() {
                continue;
            }
            for w in (0..n).filter(|&w| w != v && w != u) {
                let via = c.get(u, v).prod(&geo, c.get(v, w))?;
                let share = between(&via, c.get(u, w))?;
                r = r.sum(&comb, &share)?;
            }
        }
        out.push(r.map_values(|x| Ok(Value::Real(x.as_real().unwrap_or(0.0) / norm)))?);
    }
    Ok(TemporalVector::new(out, comb, horizon))
}

/// `n_uv n_vw / n_uw` wherever the walk through `v` is a geodesic.
fn between(via: &TemporalQuantity, direct: &TemporalQuantity) -> Result<TemporalQuantity> {
    merge_overlaps_with(via, direct, |x, y| match (x, y) {
        (Value::Geo(x), Value::Geo(y)) if x.dist == y.dist && y.count > 0 => {
            Ok(Some(Value::Real(x.count as f64 / y.count as f64)))
        }
        _ => Ok(None),
    })
}
