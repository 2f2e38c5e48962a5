use super::require_square;
use crate::error::{Error, Result};
use crate::semiring::{SemiringSpec, Value};
use crate::tmatrix::{Side, TemporalMatrix, TemporalVector};
use crate::tq::TemporalQuantity;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClusteringType {
    /// `tri / (k (k - 1))`
    Standard = 1,
    /// `tri / (delta(t) (k - 1))` with the maximum degree at each instant.
    TemporalMax = 2,
    /// `tri / (Delta (k - 1))` with the maximum degree over the whole window.
    OverallMax = 3,
}

impl TryFrom<u8> for ClusteringType {
    type Error = Error;

    fn try_from(k: u8) -> Result<Self> {
        match k {
            1 => Ok(ClusteringType::Standard),
            2 => Ok(ClusteringType::TemporalMax),
            3 => Ok(ClusteringType::OverallMax),
            _ => Err(Error::InvalidInput(format!("clustering type must be 1, 2 or 3, got {k}"))),
        }
    }
}

/// Largest value of a real quantity, `None` when empty.
pub(super) fn max_value(a: &TemporalQuantity) -> Option<f64> {
    a.iter().filter_map(|t| t.value.as_real()).reduce(f64::max)
}

/// Degrees in the undirected skeleton (loops ignored) and the maxmin sum of
/// them, i.e. the maximum degree at each instant.
pub(super) fn skeleton_degrees(a: &TemporalMatrix) -> Result<(TemporalMatrix, TemporalMatrix, TemporalVector, TemporalQuantity)> {
    let n = require_square(a)?;
    let comb = SemiringSpec::combinatorial();
    let b = a.binary_in(comb).set_diag(&TemporalQuantity::empty())?;
    let s = b.symmetrize()?.binary();
    let deg = s.vec_mul(&s.unit_vector(n), Side::Right)?;
    let maxmin = SemiringSpec::maxmin();
    let mut delta = TemporalQuantity::empty();
    for d in deg.iter() {
        delta = delta.sum(&maxmin, d)?;
    }
    Ok((b, s, deg, delta))
}

/// Temporal clustering coefficients of every node. Nodes with fewer than two
/// neighbours have coefficient 0, represented by the absence of a triple.
pub fn clus_coef(a: &TemporalMatrix, kind: ClusteringType) -> Result<TemporalVector> {
    let comb = SemiringSpec::combinatorial();
    let horizon = *a.horizon();
    let (b, s, deg, delta) = skeleton_degrees(a)?;
    let minus_one = horizon.full(Value::Real(-1.0));
    let degm = deg
        .iter()
        .map(|d| d.sum(&comb, &minus_one))
        .collect::<Result<Vec<_>>>()?;
    let delta = match kind {
        ClusteringType::Standard => None,
        ClusteringType::TemporalMax => Some(delta),
        ClusteringType::OverallMax => Some(match max_value(&delta) {
            Some(m) => horizon.full(Value::Real(m)),
            None => TemporalQuantity::empty(),
        }),
    };
    let fac = deg
        .iter()
        .zip(&degm)
        .map(|(d, dm)| {
            let f = match &delta {
                None => d.prod(&comb, dm)?,
                Some(delta) => delta.prod(&comb, dm)?,
            };
            Ok(f.filter(|v| *v != Value::Real(0.0)))
        })
        .collect::<Result<Vec<_>>>()?;
    let fac = TemporalVector::new(fac, comb, horizon);
    let tri = s.prod(&b)?.prod_diag(&s)?;
    fac.invert()?.prod(&tri)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tq::TimeHorizon;

    fn q(s: &str) -> TemporalQuantity {
        s.parse().unwrap()
    }

    fn net(n: usize, arcs: &[(usize, usize, &str)]) -> TemporalMatrix {
        let spec = SemiringSpec::combinatorial();
        let mut m = TemporalMatrix::square(n, spec, TimeHorizon::new(0, 10).unwrap());
        for &(u, v, a) in arcs {
            m.set(u - 1, v - 1, q(a)).unwrap();
        }
        m
    }

    #[test]
    fn directed_triangle() {
        let a = net(3, &[(1, 2, "[(0, 9, 1)]"), (2, 3, "[(0, 9, 1)]"), (3, 1, "[(0, 9, 1)]")]);
        let c = clus_coef(&a, ClusteringType::Standard).unwrap();
        assert!(c.iter().all(|x| x == &q("[(0, 9, 0.5)]")));
    }

    #[test]
    fn complete_triad() {
        let mut arcs = Vec::new();
        for u in 1..=3 {
            for v in 1..=3 {
                if u != v {
                    arcs.push((u, v, "[(0, 9, 1)]"));
                }
            }
        }
        let a = net(3, &arcs);
        for kind in [ClusteringType::Standard, ClusteringType::TemporalMax, ClusteringType::OverallMax] {
            let c = clus_coef(&a, kind).unwrap();
            assert!(c.iter().all(|x| x == &q("[(0, 9, 1)]")));
        }
    }

    #[test]
    fn star_has_zero_coefficients() {
        let a = net(4, &[(1, 2, "[(0, 9, 1)]"), (1, 3, "[(0, 9, 1)]"), (4, 1, "[(2, 5, 1)]")]);
        let c = clus_coef(&a, ClusteringType::Standard).unwrap();
        assert!(c.iter().all(TemporalQuantity::is_empty));
    }

    #[test]
    fn corrected_coefficients_use_maximum_degree() {
        // triangle 1-2-3 plus pendant 4 on node 1 during [0, 4)
        let mut arcs = vec![(1, 2, "[(0, 9, 1)]"), (2, 3, "[(0, 9, 1)]"), (3, 1, "[(0, 9, 1)]")];
        arcs.push((1, 4, "[(0, 4, 1)]"));
        let a = net(4, &arcs);
        let t2 = clus_coef(&a, ClusteringType::TemporalMax).unwrap();
        // node 2: 2 neighbours, 1 arc between them; delta is 3 then 2
        assert_eq!(t2.get(1), &q("[(0, 4, 0.3333333333333333), (4, 9, 0.5)]"));
        let t3 = clus_coef(&a, ClusteringType::OverallMax).unwrap();
        assert_eq!(t3.get(1), &q("[(0, 9, 0.3333333333333333)]"));
        let t1 = clus_coef(&a, ClusteringType::Standard).unwrap();
        assert_eq!(t1.get(0), &q("[(0, 4, 0.16666666666666666), (4, 9, 0.5)]"));
    }
}
