use std::fmt;
use std::str::FromStr;

use super::{require_kind, require_square};
use crate::error::{Error, Result};
use crate::semiring::{SemiringKind, SemiringSpec};
use crate::tmatrix::{Side, TemporalMatrix, TemporalVector};
use crate::tq::TemporalQuantity;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    In,
    Out,
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "in" => Ok(Direction::In),
            "out" => Ok(Direction::Out),
            other => Err(Error::InvalidInput(format!(
                "direction must be 'in' or 'out', got '{other}'"
            ))),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::In => "in",
            Direction::Out => "out",
        })
    }
}

/// Weighted in- or outdegrees: `e . A` or `A . e` over the combinatorial
/// semiring. On a binary matrix these are the plain temporal degrees.
pub fn degrees(a: &TemporalMatrix, direction: Direction) -> Result<TemporalVector> {
    require_kind(a, SemiringKind::Combinatorial)?;
    let n = require_square(a)?;
    let e = a.unit_vector(n);
    match direction {
        Direction::In => a.vec_mul(&e, Side::Left),
        Direction::Out => a.vec_mul(&e, Side::Right),
    }
}

/// Total activity of the group `from` on the group `to` (0-based indices).
pub fn activity(a: &TemporalMatrix, from: &[usize], to: &[usize]) -> Result<TemporalQuantity> {
    require_kind(a, SemiringKind::Combinatorial)?;
    let n = require_square(a)?;
    if let Some(&bad) = from.iter().chain(to).find(|&&u| u >= n) {
        return Err(Error::InvalidInput(format!(
            "node index {} out of range 1..{n}",
            bad + 1
        )));
    }
    let mut acc = TemporalQuantity::empty();
    for &u in from {
        for &v in to {
            acc = acc.sum(a.spec(), a.get(u, v))?;
        }
    }
    Ok(acc)
}

/// Number of nodes reachable from (`Out`) or reaching (`In`) each node by a
/// nonempty walk inside the slice.
pub fn reach_degrees(a: &TemporalMatrix, direction: Direction) -> Result<TemporalVector> {
    require_square(a)?;
    let r = a.binary_in(SemiringSpec::reachability()).closure(true)?;
    degrees(&r.binary_in(SemiringSpec::combinatorial()), direction)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tq::TimeHorizon;

    fn q(s: &str) -> TemporalQuantity {
        s.parse().unwrap()
    }

    fn net(spec: SemiringSpec, n: usize, arcs: &[(usize, usize, &str)]) -> TemporalMatrix {
        let mut m = TemporalMatrix::square(n, spec, TimeHorizon::new(0, 10).unwrap());
        for &(u, v, a) in arcs {
            m.set(u - 1, v - 1, q(a)).unwrap();
        }
        m
    }

    #[test]
    fn degree_examples() {
        let c = SemiringSpec::combinatorial();
        let empty = net(c, 3, &[]);
        assert!(degrees(&empty, Direction::In).unwrap().iter().all(TemporalQuantity::is_empty));

        let one = net(c, 2, &[(1, 2, "[(1, 5, 1)]")]);
        assert_eq!(degrees(&one, Direction::Out).unwrap().get(0), &q("[(1, 5, 1)]"));
        assert_eq!(degrees(&one, Direction::In).unwrap().get(1), &q("[(1, 5, 1)]"));

        let two = net(c, 3, &[(1, 2, "[(1, 5, 1)]"), (1, 3, "[(1, 3, 1)]")]);
        assert_eq!(
            degrees(&two, Direction::Out).unwrap().get(0),
            &q("[(1, 3, 2), (3, 5, 1)]")
        );
        assert!(degrees(&two.binary_in(SemiringSpec::reachability()), Direction::Out).is_err());
    }

    #[test]
    fn activity_examples() {
        let c = SemiringSpec::combinatorial();
        let a = net(c, 2, &[(1, 2, "[(1, 3, 2)]"), (2, 1, "[(2, 4, 1)]")]);
        assert!(activity(&a, &[], &[0, 1]).unwrap().is_empty());
        assert_eq!(activity(&a, &[0], &[1]).unwrap(), q("[(1, 3, 2)]"));
        assert_eq!(
            activity(&a, &[0, 1], &[0, 1]).unwrap(),
            q("[(1, 2, 2), (2, 3, 3), (3, 4, 1)]")
        );
        assert!(activity(&a, &[2], &[0]).is_err());
    }

    #[test]
    fn reach_degree_examples() {
        let r = SemiringSpec::reachability();
        let chain = net(r, 3, &[(1, 2, "[(0, 9, true)]"), (2, 3, "[(0, 9, true)]")]);
        let out = reach_degrees(&chain, Direction::Out).unwrap();
        assert_eq!(out.get(0), &q("[(0, 9, 2)]"));
        assert!(out.get(2).is_empty());

        let empty = net(r, 3, &[]);
        assert!(reach_degrees(&empty, Direction::In).unwrap().iter().all(TemporalQuantity::is_empty));

        let cycle = net(r, 2, &[(1, 2, "[(0, 9, true)]"), (2, 1, "[(0, 9, true)]")]);
        for d in [Direction::In, Direction::Out] {
            let v = reach_degrees(&cycle, d).unwrap();
            assert!(v.iter().all(|x| x == &q("[(0, 9, 2)]")));
        }
    }
}
