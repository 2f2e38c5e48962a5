//! Value domains and the semiring operations over them.
//!
//! A [`SemiringSpec`] selects one of six fixed semirings. All of them share the
//! dynamically typed [`Value`]; every operation checks that its operands belong
//! to the active domain, so mixing e.g. a boolean into a shortest-path
//! computation is reported instead of silently coerced.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Relative tolerance used when comparing floating-point path values.
pub const REAL_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SemiringKind {
    /// `(R, +, *, 0, 1)`
    Combinatorial,
    /// `({0,1}, or, and, 0, 1)`
    Reachability,
    /// `(R+ u {inf}, min, +, inf, 0)`
    ShortestPath,
    /// `(R u {-inf, inf}, max, min, -inf, inf)`
    MaxMin,
    /// Pairs (geodesic length, geodesic count).
    Geodetic,
    /// `(R+ u {inf}, min, r-norm, inf, 0)`
    Pathfinder,
}

impl SemiringKind {
    pub const ALL: [SemiringKind; 6] = [
        SemiringKind::Combinatorial,
        SemiringKind::Reachability,
        SemiringKind::ShortestPath,
        SemiringKind::MaxMin,
        SemiringKind::Geodetic,
        SemiringKind::Pathfinder,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SemiringKind::Combinatorial => "combinatorial",
            SemiringKind::Reachability => "reachability",
            SemiringKind::ShortestPath => "shortest_path",
            SemiringKind::MaxMin => "maxmin",
            SemiringKind::Geodetic => "geodetic",
            SemiringKind::Pathfinder => "pathfinder",
        }
    }
}

impl fmt::Display for SemiringKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SemiringKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "combinatorial" => Ok(SemiringKind::Combinatorial),
            "reachability" => Ok(SemiringKind::Reachability),
            "shortest_path" | "path" => Ok(SemiringKind::ShortestPath),
            "maxmin" => Ok(SemiringKind::MaxMin),
            "geodetic" => Ok(SemiringKind::Geodetic),
            "pathfinder" => Ok(SemiringKind::Pathfinder),
            other => Err(Error::InvalidInput(format!("unknown semiring '{other}'"))),
        }
    }
}

/// Length component of a geodetic value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Hops {
    Finite(u64),
    Unreachable,
}

impl fmt::Display for Hops {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hops::Finite(d) => write!(f, "{d}"),
            Hops::Unreachable => f.write_str("inf"),
        }
    }
}

/// Geodesic length together with the number of geodesics of that length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Geodesic {
    pub dist: Hops,
    pub count: u64,
}

impl Geodesic {
    pub const fn new(dist: u64, count: u64) -> Self {
        Geodesic {
            dist: Hops::Finite(dist),
            count,
        }
    }

    pub const UNREACHABLE: Geodesic = Geodesic {
        dist: Hops::Unreachable,
        count: 0,
    };
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Real(f64),
    Bool(bool),
    Geo(Geodesic),
}

impl Value {
    pub fn as_real(&self) -> Option<f64> {
        match self {
            Value::Real(x) => Some(*x),
            _ => None,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Value::Bool(b) => Some(*b),
            _ => None,
        }
    }

    pub fn as_geo(&self) -> Option<Geodesic> {
        match self {
            Value::Geo(g) => Some(*g),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Real(x) => f.write_str(&format_number(*x)),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Geo(g) => write!(f, "({}, {})", g.dist, g.count),
        }
    }
}

/// Renders a real the way the listings print it: integral values without a
/// fractional part, infinities as `inf`, everything else in shortest form.
pub fn format_number(x: f64) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x.fract() == 0.0 && x.abs() < 9.0e15 {
        return format!("{}", x as i64);
    }
    format!("{x}")
}

/// `true` when `a` and `b` agree within [`REAL_TOLERANCE`] (relative for
/// large magnitudes, absolute near zero). Infinities compare exactly.
pub fn approx_eq(a: f64, b: f64) -> bool {
    if a == b {
        return true;
    }
    if !a.is_finite() || !b.is_finite() {
        return false;
    }
    (a - b).abs() <= REAL_TOLERANCE * a.abs().max(b.abs()).max(1.0)
}

/// The active semiring. Immutable once built.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemiringSpec {
    kind: SemiringKind,
    r: f64,
    q: Option<u64>,
}

impl SemiringSpec {
    /// Any kind except [`SemiringKind::Pathfinder`], which needs parameters.
    pub fn new(kind: SemiringKind) -> Self {
        match kind {
            SemiringKind::Pathfinder => SemiringSpec::pathfinder(1.0, None)
                .expect("default pathfinder parameters are valid"),
            _ => SemiringSpec { kind, r: 1.0, q: None },
        }
    }

    pub fn combinatorial() -> Self {
        Self::new(SemiringKind::Combinatorial)
    }

    pub fn reachability() -> Self {
        Self::new(SemiringKind::Reachability)
    }

    pub fn shortest_path() -> Self {
        Self::new(SemiringKind::ShortestPath)
    }

    pub fn maxmin() -> Self {
        Self::new(SemiringKind::MaxMin)
    }

    pub fn geodetic() -> Self {
        Self::new(SemiringKind::Geodetic)
    }

    /// Pathfinder semiring with Minkowski parameter `r` (`f64::INFINITY`
    /// allowed) and walk-length cap `q` (`None` for unbounded).
    pub fn pathfinder(r: f64, q: Option<u64>) -> Result<Self> {
        if r.is_nan() || r <= 0.0 {
            return Err(Error::InvalidInput(format!("pathfinder r must be positive, got {r}")));
        }
        if q == Some(0) {
            return Err(Error::InvalidInput("pathfinder q must be at least 1".into()));
        }
        Ok(SemiringSpec {
            kind: SemiringKind::Pathfinder,
            r,
            q,
        })
    }

    pub fn kind(&self) -> SemiringKind {
        self.kind
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn q(&self) -> Option<u64> {
        self.q
    }

    pub fn zero(&self) -> Value {
        match self.kind {
            SemiringKind::Combinatorial => Value::Real(0.0),
            SemiringKind::Reachability => Value::Bool(false),
            SemiringKind::ShortestPath | SemiringKind::Pathfinder => Value::Real(f64::INFINITY),
            SemiringKind::MaxMin => Value::Real(f64::NEG_INFINITY),
            SemiringKind::Geodetic => Value::Geo(Geodesic::UNREACHABLE),
        }
    }

    pub fn one(&self) -> Value {
        match self.kind {
            SemiringKind::Combinatorial => Value::Real(1.0),
            SemiringKind::Reachability => Value::Bool(true),
            SemiringKind::ShortestPath | SemiringKind::Pathfinder => Value::Real(0.0),
            SemiringKind::MaxMin => Value::Real(f64::INFINITY),
            SemiringKind::Geodetic => Value::Geo(Geodesic::new(0, 1)),
        }
    }

    /// `1 + a = 1` for every `a`; everything except the combinatorial kind.
    pub fn is_absorptive(&self) -> bool {
        self.kind != SemiringKind::Combinatorial
    }

    /// A closure operation is available (only the absorptive kinds here).
    pub fn is_closed(&self) -> bool {
        self.is_absorptive()
    }

    pub fn is_zero(&self, x: &Value) -> bool {
        *x == self.zero()
    }

    /// Checks that `x` belongs to this semiring's value domain.
    pub fn check(&self, x: &Value) -> Result<()> {
        let ok = match (self.kind, x) {
            (SemiringKind::Combinatorial | SemiringKind::MaxMin, Value::Real(v)) => !v.is_nan(),
            (SemiringKind::ShortestPath | SemiringKind::Pathfinder, Value::Real(v)) => *v >= 0.0,
            (SemiringKind::Reachability, Value::Bool(_)) => true,
            (SemiringKind::Geodetic, Value::Geo(g)) => {
                g.dist != Hops::Unreachable || g.count == 0
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(self.invalid(x))
        }
    }

    fn invalid(&self, x: &Value) -> Error {
        Error::InvalidValue {
            kind: self.kind,
            value: x.to_string(),
        }
    }

    /// Parallel composition `x (+) y`.
    pub fn add(&self, x: &Value, y: &Value) -> Result<Value> {
        self.check(x)?;
        self.check(y)?;
        Ok(match (self.kind, *x, *y) {
            (SemiringKind::Combinatorial, Value::Real(a), Value::Real(b)) => Value::Real(a + b),
            (SemiringKind::Reachability, Value::Bool(a), Value::Bool(b)) => Value::Bool(a || b),
            (SemiringKind::ShortestPath | SemiringKind::Pathfinder, Value::Real(a), Value::Real(b)) => {
                Value::Real(a.min(b))
            }
            (SemiringKind::MaxMin, Value::Real(a), Value::Real(b)) => Value::Real(a.max(b)),
            (SemiringKind::Geodetic, Value::Geo(a), Value::Geo(b)) => Value::Geo(geo_add(a, b)?),
            _ => unreachable!("operands were checked against the domain"),
        })
    }

    /// Sequential composition `x (*) y`.
    pub fn mul(&self, x: &Value, y: &Value) -> Result<Value> {
        self.check(x)?;
        self.check(y)?;
        Ok(match (self.kind, *x, *y) {
            (SemiringKind::Combinatorial, Value::Real(a), Value::Real(b)) => {
                // zero annihilates even an infinite gap marker
                if a == 0.0 || b == 0.0 {
                    Value::Real(0.0)
                } else {
                    Value::Real(a * b)
                }
            }
            (SemiringKind::Reachability, Value::Bool(a), Value::Bool(b)) => Value::Bool(a && b),
            (SemiringKind::ShortestPath, Value::Real(a), Value::Real(b)) => Value::Real(a + b),
            (SemiringKind::MaxMin, Value::Real(a), Value::Real(b)) => Value::Real(a.min(b)),
            (SemiringKind::Geodetic, Value::Geo(a), Value::Geo(b)) => Value::Geo(geo_mul(a, b)?),
            (SemiringKind::Pathfinder, Value::Real(a), Value::Real(b)) => {
                Value::Real(minkowski(a, b, self.r))
            }
            _ => unreachable!("operands were checked against the domain"),
        })
    }

    /// Closure `x*`; for absorptive semirings this is always `one`.
    pub fn star(&self, x: &Value) -> Result<Value> {
        if !self.is_absorptive() {
            return Err(Error::UnsupportedClosure(self.kind));
        }
        self.check(x)?;
        Ok(self.one())
    }

    /// Equality used when comparing computed path values: exact for discrete
    /// domains, within [`REAL_TOLERANCE`] for reals.
    pub fn values_match(&self, x: &Value, y: &Value) -> bool {
        match (x, y) {
            (Value::Real(a), Value::Real(b)) => approx_eq(*a, *b),
            _ => x == y,
        }
    }
}

impl fmt::Display for SemiringSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SemiringKind::Pathfinder => {
                let q = self.q.map_or("inf".to_string(), |q| q.to_string());
                write!(f, "pathfinder(r={}, q={})", format_number(self.r), q)
            }
            k => write!(f, "{k}"),
        }
    }
}

fn geo_add(a: Geodesic, b: Geodesic) -> Result<Geodesic> {
    Ok(match a.dist.cmp(&b.dist) {
        Ordering::Less => a,
        Ordering::Greater => b,
        Ordering::Equal => Geodesic {
            dist: a.dist,
            count: a.count.checked_add(b.count).ok_or(Error::Overflow)?,
        },
    })
}

fn geo_mul(a: Geodesic, b: Geodesic) -> Result<Geodesic> {
    match (a.dist, b.dist) {
        (Hops::Finite(x), Hops::Finite(y)) => Ok(Geodesic {
            dist: Hops::Finite(x.checked_add(y).ok_or(Error::Overflow)?),
            count: a.count.checked_mul(b.count).ok_or(Error::Overflow)?,
        }),
        _ => Ok(Geodesic::UNREACHABLE),
    }
}

/// `(a^r + b^r)^(1/r)`, with `r = 1` giving `a + b` and `r = inf` giving `max`.
fn minkowski(a: f64, b: f64, r: f64) -> f64 {
    if r == 1.0 {
        return a + b;
    }
    if r.is_infinite() {
        return a.max(b);
    }
    let m = a.max(b);
    if m.is_infinite() {
        return f64::INFINITY;
    }
    if a == 0.0 || b == 0.0 {
        return m;
    }
    // scale by the larger operand so large r does not overflow
    m * ((a / m).powf(r) + (b / m).powf(r)).powf(1.0 / r)
}
