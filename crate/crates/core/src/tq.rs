//! Temporal quantities: sorted, non-overlapping `[start, finish)` intervals
//! carrying semiring values, and the merge-scan arithmetic over them.
//!
//! A quantity is undefined outside its intervals. The empty quantity is the
//! additive identity and annihilates multiplication. Sums and products are
//! computed with a single ordered merge of both interval lists, so both run in
//! `O(len(a) + len(b))`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::semiring::{Geodesic, Hops, SemiringSpec, Value};

pub type Time = i64;

/// Finish time of an open-ended interval; compares greater than every
/// finite time.
pub const FOREVER: Time = Time::MAX;

/// Start/finish of the scan sentinel returned once a list is exhausted.
const SENTINEL: Time = Time::MAX;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triple {
    pub start: Time,
    pub finish: Time,
    pub value: Value,
}

impl Triple {
    pub fn new(start: Time, finish: Time, value: Value) -> Self {
        Triple { start, finish, value }
    }

    pub fn duration(&self) -> Time {
        self.finish.saturating_sub(self.start)
    }
}

/// The observation window `[t_min, t_max)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TimeHorizon {
    t_min: Time,
    t_max: Time,
}

impl TimeHorizon {
    pub fn new(t_min: Time, t_max: Time) -> Result<Self> {
        if t_min >= t_max {
            return Err(Error::InvalidInput(format!(
                "time horizon needs t_min < t_max, got [{t_min}, {t_max})"
            )));
        }
        Ok(TimeHorizon { t_min, t_max })
    }

    pub fn start(&self) -> Time {
        self.t_min
    }

    pub fn finish(&self) -> Time {
        self.t_max
    }

    /// Number of instants in the window.
    pub fn duration(&self) -> Time {
        self.t_max.saturating_sub(self.t_min)
    }

    /// The constant quantity `value` over the whole window.
    pub fn full(&self, value: Value) -> TemporalQuantity {
        TemporalQuantity::constant(self.t_min, self.t_max, value)
    }

    /// Whether every triple lies inside the window (an open-ended finish is
    /// accepted).
    pub fn contains(&self, a: &TemporalQuantity) -> bool {
        a.triples
            .iter()
            .all(|t| t.start >= self.t_min && (t.finish <= self.t_max || t.finish == FOREVER))
    }

    /// Restricts `a` to the window.
    pub fn clip(&self, a: &TemporalQuantity) -> TemporalQuantity {
        a.clip(self.t_min, self.t_max)
    }

    pub fn instants(&self) -> impl Iterator<Item = Time> {
        self.t_min..self.t_max
    }
}

/// A value that changes through time; absent intervals mean "undefined".
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TemporalQuantity {
    triples: Vec<Triple>,
}

/// Accumulates triples in order and keeps the result in standard form.
struct Standard {
    out: Vec<Triple>,
    drop: Option<Value>,
}

impl Standard {
    fn new(drop: Option<Value>) -> Self {
        Standard {
            out: Vec::new(),
            drop,
        }
    }

    fn for_spec(spec: &SemiringSpec) -> Self {
        Self::new(spec.is_absorptive().then(|| spec.zero()))
    }

    fn push(&mut self, t: Triple) {
        if t.start >= t.finish || self.drop == Some(t.value) {
            return;
        }
        if let Some(last) = self.out.last_mut() {
            if last.finish == t.start && last.value == t.value {
                last.finish = t.finish;
                return;
            }
        }
        self.out.push(t);
    }

    fn finish(self) -> TemporalQuantity {
        TemporalQuantity { triples: self.out }
    }
}

/// Sequential reader with the `get` semantics of the merge algorithms: yields
/// the next triple, or `(inf, inf, zero)` once the list is exhausted.
struct Scan<'a> {
    items: std::slice::Iter<'a, Triple>,
    zero: Value,
}

impl<'a> Scan<'a> {
    fn new(items: &'a [Triple], zero: Value) -> Self {
        Scan {
            items: items.iter(),
            zero,
        }
    }

    fn get(&mut self) -> (Time, Time, Value) {
        match self.items.next() {
            Some(t) => (t.start, t.finish, t.value),
            None => (SENTINEL, SENTINEL, self.zero),
        }
    }
}

/// Joins adjacent triples with equal values. Input must be sorted and
/// non-overlapping with non-empty intervals.
pub fn standardize(triples: Vec<Triple>) -> Result<TemporalQuantity> {
    validate(&triples)?;
    let mut std = Standard::new(None);
    for t in triples {
        std.push(t);
    }
    Ok(std.finish())
}

/// [`standardize`], additionally dropping triples that carry the zero of an
/// absorptive semiring (there a zero carries no information).
pub fn standardize_in(spec: &SemiringSpec, triples: Vec<Triple>) -> Result<TemporalQuantity> {
    validate(&triples)?;
    for t in &triples {
        spec.check(&t.value)?;
    }
    let mut std = Standard::for_spec(spec);
    for t in triples {
        std.push(t);
    }
    Ok(std.finish())
}

fn validate(triples: &[Triple]) -> Result<()> {
    for (i, t) in triples.iter().enumerate() {
        if t.start >= t.finish {
            return Err(Error::MalformedQuantity(format!(
                "empty or reversed interval [{}, {}) at position {}",
                t.start, t.finish, i
            )));
        }
        if let Some(prev) = i.checked_sub(1).map(|j| &triples[j]) {
            if prev.finish > t.start {
                return Err(Error::MalformedQuantity(format!(
                    "triple [{}, {}) at position {} is unsorted or overlaps [{}, {})",
                    t.start, t.finish, i, prev.start, prev.finish
                )));
            }
        }
        if let Value::Real(v) = t.value {
            if v.is_nan() {
                return Err(Error::MalformedQuantity(format!("NaN value at position {i}")));
            }
        }
    }
    Ok(())
}

impl TemporalQuantity {
    /// The empty quantity, undefined everywhere.
    pub fn empty() -> Self {
        TemporalQuantity::default()
    }

    /// Builds a quantity from sorted, non-overlapping triples, merging
    /// adjacent equal values.
    pub fn new(triples: Vec<Triple>) -> Result<Self> {
        standardize(triples)
    }

    /// Convenience constructor for real-valued quantities.
    pub fn reals(triples: &[(Time, Time, f64)]) -> Result<Self> {
        standardize(
            triples
                .iter()
                .map(|&(s, f, v)| Triple::new(s, f, Value::Real(v)))
                .collect(),
        )
    }

    pub fn constant(start: Time, finish: Time, value: Value) -> Self {
        if start >= finish {
            return Self::empty();
        }
        TemporalQuantity {
            triples: vec![Triple::new(start, finish, value)],
        }
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn into_triples(self) -> Vec<Triple> {
        self.triples
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Triple> {
        self.triples.iter()
    }

    /// Value at instant `t`, or `None` where undefined.
    pub fn value_at(&self, t: Time) -> Option<&Value> {
        let i = self.triples.partition_point(|tr| tr.finish <= t);
        self.triples
            .get(i)
            .filter(|tr| tr.start <= t)
            .map(|tr| &tr.value)
    }

    /// Start of the first and finish of the last interval.
    pub fn span(&self) -> Option<(Time, Time)> {
        Some((self.triples.first()?.start, self.triples.last()?.finish))
    }

    /// Checks every value against `spec`'s domain.
    pub fn check(&self, spec: &SemiringSpec) -> Result<()> {
        self.triples.iter().try_for_each(|t| spec.check(&t.value))
    }

    /// Pointwise `a (+) b`: combined where both are defined, passed through
    /// where only one is.
    pub fn sum(&self, spec: &SemiringSpec, other: &Self) -> Result<Self> {
        if self.is_empty() {
            return Ok(other.clone());
        }
        if other.is_empty() {
            return Ok(self.clone());
        }
        let zero = spec.zero();
        let mut a = Scan::new(&self.triples, zero);
        let mut b = Scan::new(&other.triples, zero);
        let mut out = Standard::for_spec(spec);
        let (mut sa, mut fa, mut va) = a.get();
        let (mut sb, mut fb, mut vb) = b.get();
        while sa < SENTINEL || sb < SENTINEL {
            let (sc, fc, vc);
            if sa < sb {
                sc = sa;
                vc = va;
                if sb < fa {
                    fc = sb;
                    sa = sb;
                } else {
                    fc = fa;
                    (sa, fa, va) = a.get();
                }
            } else if sa == sb {
                sc = sa;
                fc = fa.min(fb);
                vc = spec.add(&va, &vb)?;
                sa = fc;
                sb = fc;
                let fd = fa;
                if fd <= fb {
                    (sa, fa, va) = a.get();
                }
                if fb <= fd {
                    (sb, fb, vb) = b.get();
                }
            } else {
                sc = sb;
                vc = vb;
                if sa < fb {
                    fc = sa;
                    sb = sa;
                } else {
                    fc = fb;
                    (sb, fb, vb) = b.get();
                }
            }
            out.push(Triple::new(sc, fc, vc));
        }
        Ok(out.finish())
    }

    /// Pointwise `a (*) b` on the common activity set.
    pub fn prod(&self, spec: &SemiringSpec, other: &Self) -> Result<Self> {
        merge_overlaps(self, other, spec.zero(), Standard::for_spec(spec), |x, y| {
            spec.mul(x, y).map(Some)
        })
    }

    /// Duration-weighted sum of a real-valued quantity.
    pub fn total(&self) -> Result<f64> {
        self.triples.iter().try_fold(0.0, |acc, t| match t.value {
            Value::Real(v) => Ok(acc + (t.finish as f64 - t.start as f64) * v),
            other => Err(Error::Unsupported(format!(
                "aggregated value needs real values, found {other}"
            ))),
        })
    }

    /// Same activity set, every value replaced by `one`.
    pub fn binary(&self, one: Value) -> Self {
        let mut out = Standard::new(None);
        for t in &self.triples {
            out.push(Triple::new(t.start, t.finish, one));
        }
        out.finish()
    }

    /// Per-triple reciprocal of a real quantity; `1/inf = 0`.
    pub fn invert(&self) -> Result<Self> {
        let mut out = Standard::new(None);
        for t in &self.triples {
            let v = match t.value {
                Value::Real(v) if v == 0.0 => {
                    return Err(Error::DivisionByZero {
                        start: t.start,
                        finish: t.finish,
                    })
                }
                Value::Real(v) if v.is_infinite() => 0.0,
                Value::Real(v) => 1.0 / v,
                other => {
                    return Err(Error::Unsupported(format!("cannot invert {other}")));
                }
            };
            out.push(Triple::new(t.start, t.finish, Value::Real(v)));
        }
        Ok(out.finish())
    }

    /// Restricts to `[start, finish)` and fills every gap there with `fill`.
    pub fn fill_gaps(&self, start: Time, finish: Time, fill: Value) -> Result<Self> {
        if start >= finish {
            return Err(Error::InvalidInput(format!(
                "fill_gaps needs start < finish, got [{start}, {finish})"
            )));
        }
        let mut out = Standard::new(None);
        let mut cursor = start;
        for t in self.clip(start, finish).triples {
            out.push(Triple::new(cursor, t.start, fill));
            out.push(t);
            cursor = t.finish;
        }
        out.push(Triple::new(cursor, finish, fill));
        Ok(out.finish())
    }

    /// `self` masked to the activity set of the binary quantity `mask`.
    pub fn extract(&self, mask: &Self) -> Self {
        merge_overlaps(mask, self, Value::Bool(false), Standard::new(None), |_, v| {
            Ok(Some(*v))
        })
        .expect("masking cannot fail")
    }

    /// Restriction to `[start, finish)`.
    pub fn clip(&self, start: Time, finish: Time) -> Self {
        let mut out = Standard::new(None);
        for t in &self.triples {
            out.push(Triple::new(t.start.max(start), t.finish.min(finish), t.value));
        }
        out.finish()
    }

    /// Applies `f` to every value, re-standardizing the result.
    pub fn map_values<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(&Value) -> Result<Value>,
    {
        let mut out = Standard::new(None);
        for t in &self.triples {
            out.push(Triple::new(t.start, t.finish, f(&t.value)?));
        }
        Ok(out.finish())
    }

    /// Keeps the triples whose value satisfies `keep`.
    pub fn filter<F>(&self, mut keep: F) -> Self
    where
        F: FnMut(&Value) -> bool,
    {
        let mut out = Standard::new(None);
        for t in self.triples.iter().filter(|t| keep(&t.value)) {
            out.push(*t);
        }
        out.finish()
    }

    /// Intervals of this quantity's activity set not covered by `other`'s.
    pub fn uncovered_by(&self, other: &Self) -> Vec<(Time, Time)> {
        let mut gaps: Vec<(Time, Time)> = Vec::new();
        let mut push = |s: Time, f: Time| {
            if s >= f {
                return;
            }
            match gaps.last_mut() {
                Some(last) if last.1 == s => last.1 = f,
                _ => gaps.push((s, f)),
            }
        };
        let cover = &other.triples;
        let mut j = 0;
        for t in &self.triples {
            let mut cursor = t.start;
            while j < cover.len() && cover[j].finish <= cursor {
                j += 1;
            }
            let mut k = j;
            while cursor < t.finish {
                match cover.get(k) {
                    Some(c) if c.start < t.finish => {
                        push(cursor, c.start.min(t.finish));
                        cursor = cursor.max(c.finish);
                        k += 1;
                    }
                    _ => {
                        push(cursor, t.finish);
                        cursor = t.finish;
                    }
                }
            }
        }
        gaps
    }

    /// Parses the canonical rendering, e.g. `[(1, 5, 2), (6, 8, inf)]`.
    pub fn parse(text: &str) -> Result<Self> {
        text.parse()
    }
}

/// Linear merge scan: visits every overlap of an `a` triple with a
/// `b` triple in time order and emits `combine(va, vb)` on it when it yields a
/// value.
pub(crate) fn merge_overlaps_with<F>(
    a: &TemporalQuantity,
    b: &TemporalQuantity,
    mut combine: F,
) -> Result<TemporalQuantity>
where
    F: FnMut(&Value, &Value) -> Result<Option<Value>>,
{
    merge_overlaps(a, b, Value::Bool(false), Standard::new(None), &mut combine)
}

fn merge_overlaps<F>(
    a: &TemporalQuantity,
    b: &TemporalQuantity,
    zero: Value,
    mut out: Standard,
    mut combine: F,
) -> Result<TemporalQuantity>
where
    F: FnMut(&Value, &Value) -> Result<Option<Value>>,
{
    if a.is_empty() || b.is_empty() {
        return Ok(TemporalQuantity::empty());
    }
    let mut sa_scan = Scan::new(&a.triples, zero);
    let mut sb_scan = Scan::new(&b.triples, zero);
    let (mut sa, mut fa, mut va) = sa_scan.get();
    let (mut sb, mut fb, mut vb) = sb_scan.get();
    while sa < SENTINEL || sb < SENTINEL {
        if fa <= sb {
            (sa, fa, va) = sa_scan.get();
        } else if fb <= sa {
            (sb, fb, vb) = sb_scan.get();
        } else {
            let sc = sa.max(sb);
            let fc = fa.min(fb);
            if let Some(vc) = combine(&va, &vb)? {
                out.push(Triple::new(sc, fc, vc));
            }
            if fc == fa {
                (sa, fa, va) = sa_scan.get();
            }
            if fc == fb {
                (sb, fb, vb) = sb_scan.get();
            }
        }
    }
    Ok(out.finish())
}

fn format_time(t: Time) -> String {
    if t == FOREVER {
        "inf".into()
    } else {
        t.to_string()
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.start, format_time(self.finish), self.value)
    }
}

impl fmt::Display for TemporalQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, t) in self.triples.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str("]")
    }
}

impl<'a> IntoIterator for &'a TemporalQuantity {
    type Item = &'a Triple;
    type IntoIter = std::slice::Iter<'a, Triple>;

    fn into_iter(self) -> Self::IntoIter {
        self.triples.iter()
    }
}

impl FromStr for TemporalQuantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = TextParser {
            src: s.as_bytes(),
            pos: 0,
        };
        let mut triples = Vec::new();
        p.expect(b'[')?;
        if !p.eat(b']') {
            loop {
                p.expect(b'(')?;
                let start = p.time()?;
                p.expect(b',')?;
                let finish = p.time()?;
                p.expect(b',')?;
                let value = p.value()?;
                p.expect(b')')?;
                triples.push(Triple::new(start, finish, value));
                if p.eat(b']') {
                    break;
                }
                p.expect(b',')?;
            }
        }
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        standardize(triples)
    }
}

struct TextParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl TextParser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::MalformedQuantity(format!("{what} at byte {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn token(&mut self) -> &str {
        self.skip_ws();
        let start = self.pos;
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| !matches!(c, b',' | b')' | b'(' | b']' | b'[') && !c.is_ascii_whitespace())
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("")
    }

    fn time(&mut self) -> Result<Time> {
        let tok = self.token().to_string();
        if tok == "inf" {
            return Ok(FOREVER);
        }
        tok.parse().map_err(|_| self.error(&format!("bad time '{tok}'")))
    }

    fn value(&mut self) -> Result<Value> {
        if self.eat(b'(') {
            let d = self.token().to_string();
            self.expect(b',')?;
            let n = self.token().to_string();
            self.expect(b')')?;
            let dist = if d == "inf" {
                Hops::Unreachable
            } else {
                Hops::Finite(d.parse().map_err(|_| self.error("bad geodesic length"))?)
            };
            let count = n.parse().map_err(|_| self.error("bad geodesic count"))?;
            return Ok(Value::Geo(Geodesic { dist, count }));
        }
        let tok = self.token().to_string();
        match tok.as_str() {
            "true" => Ok(Value::Bool(true)),
            "false" => Ok(Value::Bool(false)),
            "inf" => Ok(Value::Real(f64::INFINITY)),
            "-inf" => Ok(Value::Real(f64::NEG_INFINITY)),
            _ => tok
                .parse()
                .map(Value::Real)
                .map_err(|_| self.error(&format!("bad value '{tok}'"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> TemporalQuantity {
        s.parse().unwrap()
    }

    fn comb() -> SemiringSpec {
        SemiringSpec::combinatorial()
    }

    fn golden_a() -> TemporalQuantity {
        q("[(1, 5, 2), (6, 8, 1), (11, 12, 3), (14, 16, 2), (17, 18, 5), (19, 20, 1)]")
    }

    fn golden_b() -> TemporalQuantity {
        q("[(2, 3, 4), (4, 7, 3), (9, 10, 2), (13, 15, 5), (16, 21, 1)]")
    }

    #[test]
    fn sum_of_listing_quantities() {
        let s = golden_a().sum(&comb(), &golden_b()).unwrap();
        assert_eq!(
            s.to_string(),
            "[(1, 2, 2), (2, 3, 6), (3, 4, 2), (4, 5, 5), (5, 6, 3), (6, 7, 4), (7, 8, 1), \
             (9, 10, 2), (11, 12, 3), (13, 14, 5), (14, 15, 7), (15, 16, 2), (16, 17, 1), \
             (17, 18, 6), (18, 19, 1), (19, 20, 2), (20, 21, 1)]"
        );
    }

    #[test]
    fn product_of_listing_quantities() {
        let p = golden_a().prod(&comb(), &golden_b()).unwrap();
        assert_eq!(
            p.to_string(),
            "[(2, 3, 8), (4, 5, 6), (6, 7, 3), (14, 15, 10), (17, 18, 5), (19, 20, 1)]"
        );
    }

    #[test]
    fn empty_is_additive_identity_and_annihilator() {
        let a = golden_a();
        assert_eq!(a.sum(&comb(), &TemporalQuantity::empty()).unwrap(), a);
        assert_eq!(TemporalQuantity::empty().sum(&comb(), &a).unwrap(), a);
        assert!(a.prod(&comb(), &TemporalQuantity::empty()).unwrap().is_empty());
    }

    #[test]
    fn reachability_sum_merges_overlap() {
        let reach = SemiringSpec::reachability();
        let s = q("[(1, 4, true)]").sum(&reach, &q("[(2, 6, true)]")).unwrap();
        assert_eq!(s, q("[(1, 6, true)]"));
    }

    #[test]
    fn shortest_path_product_adds_on_overlap() {
        let sp = SemiringSpec::shortest_path();
        let p = q("[(1, 5, 3)]").prod(&sp, &q("[(3, 9, 2)]")).unwrap();
        assert_eq!(p, q("[(3, 5, 5)]"));
    }

    #[test]
    fn standardize_examples() {
        let t = |s, f, v| Triple::new(s, f, Value::Real(v));
        assert_eq!(standardize(vec![t(1, 3, 2.0), t(3, 5, 2.0)]).unwrap(), q("[(1, 5, 2)]"));
        assert_eq!(standardize(vec![t(1, 3, 2.0), t(3, 5, 4.0)]).unwrap().len(), 2);
        assert_eq!(standardize(vec![t(1, 3, 2.0), t(4, 5, 2.0)]).unwrap().len(), 2);
        assert!(matches!(
            standardize(vec![t(3, 5, 2.0), t(1, 3, 2.0)]),
            Err(Error::MalformedQuantity(_))
        ));
        assert!(matches!(
            standardize(vec![t(1, 4, 2.0), t(3, 5, 1.0)]),
            Err(Error::MalformedQuantity(_))
        ));
        assert!(standardize(vec![t(3, 3, 2.0)]).is_err());
    }

    #[test]
    fn standardize_in_drops_absorptive_zero() {
        let sp = SemiringSpec::shortest_path();
        let t = |s, f, v| Triple::new(s, f, Value::Real(v));
        let a = standardize_in(&sp, vec![t(1, 3, f64::INFINITY), t(3, 5, 2.0)]).unwrap();
        assert_eq!(a, q("[(3, 5, 2)]"));
        let c = standardize_in(&comb(), vec![t(1, 3, 0.0)]).unwrap();
        assert_eq!(c, q("[(1, 3, 0)]"));
    }

    #[test]
    fn totals() {
        assert_eq!(golden_a().total().unwrap(), 23.0);
        assert_eq!(golden_b().total().unwrap(), 30.0);
        assert_eq!(TemporalQuantity::empty().total().unwrap(), 0.0);
        assert!(q("[(1, 2, true)]").total().is_err());
    }

    #[test]
    fn binary_examples() {
        let one = Value::Real(1.0);
        assert_eq!(q("[(1, 3, 7), (3, 5, 2)]").binary(one), q("[(1, 5, 1)]"));
        assert!(TemporalQuantity::empty().binary(one).is_empty());
        assert_eq!(q("[(2, 4, 0.5)]").binary(one), q("[(2, 4, 1)]"));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(q("[(1, 5, 4)]").invert().unwrap(), q("[(1, 5, 0.25)]"));
        assert_eq!(q("[(1, 5, inf)]").invert().unwrap(), q("[(1, 5, 0)]"));
        assert_eq!(q("[(1, 3, 2), (3, 5, 2)]").invert().unwrap(), q("[(1, 5, 0.5)]"));
        assert_eq!(
            q("[(1, 2, 1), (2, 5, 0)]").invert(),
            Err(Error::DivisionByZero { start: 2, finish: 5 })
        );
    }

    #[test]
    fn fill_gaps_examples() {
        let inf = Value::Real(f64::INFINITY);
        assert_eq!(
            q("[(2, 4, 3)]").fill_gaps(1, 6, inf).unwrap(),
            q("[(1, 2, inf), (2, 4, 3), (4, 6, inf)]")
        );
        assert_eq!(TemporalQuantity::empty().fill_gaps(1, 6, inf).unwrap(), q("[(1, 6, inf)]"));
        assert_eq!(q("[(1, 6, 5)]").fill_gaps(1, 6, inf).unwrap(), q("[(1, 6, 5)]"));
        assert_eq!(
            q("[(0, inf, 5)]").fill_gaps(1, 6, inf).unwrap(),
            q("[(1, 6, 5)]")
        );
        assert!(q("[(1, 6, 5)]").fill_gaps(6, 6, inf).is_err());
    }

    #[test]
    fn extract_examples() {
        assert_eq!(q("[(2, 6, 5)]").extract(&q("[(1, 4, 1)]")), q("[(2, 4, 5)]"));
        assert!(golden_a().extract(&TemporalQuantity::empty()).is_empty());
        assert_eq!(golden_a().extract(&q("[(0, 30, 1)]")), golden_a());
    }

    #[test]
    fn value_lookup() {
        let a = golden_a();
        assert_eq!(a.value_at(1), Some(&Value::Real(2.0)));
        assert_eq!(a.value_at(4), Some(&Value::Real(2.0)));
        assert_eq!(a.value_at(5), None);
        assert_eq!(a.value_at(0), None);
        assert_eq!(a.value_at(19), Some(&Value::Real(1.0)));
        assert_eq!(a.value_at(20), None);
    }

    #[test]
    fn uncovered_intervals() {
        let a = q("[(1, 5, 1), (6, 10, 1)]");
        let cover = q("[(2, 3, 1), (4, 7, 1)]");
        assert_eq!(a.uncovered_by(&cover), vec![(1, 2), (3, 4), (7, 10)]);
        assert!(a.uncovered_by(&q("[(0, 20, 1)]")).is_empty());
        assert_eq!(a.uncovered_by(&TemporalQuantity::empty()), vec![(1, 5), (6, 10)]);
    }

    #[test]
    fn forever_sentinel_in_merges() {
        let a = q("[(0, inf, 1)]");
        let b = q("[(3, 5, 2)]");
        assert_eq!(a.sum(&comb(), &b).unwrap(), q("[(0, 3, 1), (3, 5, 3), (5, inf, 1)]"));
        assert_eq!(a.prod(&comb(), &b).unwrap(), q("[(3, 5, 2)]"));
        assert_eq!(a.to_string(), "[(0, inf, 1)]");
    }

    #[test]
    fn geodetic_rendering_parses_back() {
        let c = q("[(1, 4, (1, 1)), (4, 6, (5, 3)), (6, 9, (1, 1))]");
        assert_eq!(c.len(), 3);
        assert_eq!(c.to_string(), "[(1, 4, (1, 1)), (4, 6, (5, 3)), (6, 9, (1, 1))]");
    }
}
