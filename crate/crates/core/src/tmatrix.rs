//! Dense matrices and vectors of temporal quantities.
//!
//! Entry `(u, v)` of a network matrix is the temporal weight of the link
//! `u -> v`, empty when there is no such link at any time. Products are the
//! usual semiring products with every scalar operation replaced by the
//! temporal one, so at each instant they only see links present at that
//! instant.

use crate::error::{Error, Result};
use crate::semiring::{SemiringSpec, Value};
use crate::tq::{TemporalQuantity, Time, TimeHorizon};

/// Which side a vector multiplies a matrix from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `u_j = (+)_i v_i (*) a_ij`
    Left,
    /// `v_i = (+)_j a_ij (*) u_j`
    Right,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TemporalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<TemporalQuantity>,
    spec: SemiringSpec,
    horizon: TimeHorizon,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TemporalVector {
    entries: Vec<TemporalQuantity>,
    spec: SemiringSpec,
    horizon: TimeHorizon,
}

/// Node-indexed class labels; `label = j` on `[s, f)` puts the node in class
/// `j` during that interval.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TemporalPartition {
    classes: Vec<TemporalQuantity>,
}

fn check_same_spec(a: &SemiringSpec, b: &SemiringSpec) -> Result<()> {
    if a != b {
        return Err(Error::SemiringMismatch {
            expected: a.kind(),
            found: b.kind(),
        });
    }
    Ok(())
}

fn check_same_horizon(a: &TimeHorizon, b: &TimeHorizon) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch(format!(
            "time horizons differ: [{}, {}) vs [{}, {})",
            a.start(),
            a.finish(),
            b.start(),
            b.finish()
        )));
    }
    Ok(())
}

impl TemporalMatrix {
    /// The zero matrix (all entries empty).
    pub fn new(rows: usize, cols: usize, spec: SemiringSpec, horizon: TimeHorizon) -> Self {
        TemporalMatrix {
            rows,
            cols,
            entries: vec![TemporalQuantity::empty(); rows * cols],
            spec,
            horizon,
        }
    }

    pub fn square(n: usize, spec: SemiringSpec, horizon: TimeHorizon) -> Self {
        Self::new(n, n, spec, horizon)
    }

    /// Builds a matrix from row-major entries, checking every value against
    /// `spec`.
    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: Vec<TemporalQuantity>,
        spec: SemiringSpec,
        horizon: TimeHorizon,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        for e in &entries {
            e.check(&spec)?;
        }
        Ok(TemporalMatrix {
            rows,
            cols,
            entries,
            spec,
            horizon,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Order of a square matrix.
    pub fn n(&self) -> usize {
        debug_assert_eq!(self.rows, self.cols);
        self.rows
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn spec(&self) -> &SemiringSpec {
        &self.spec
    }

    pub fn horizon(&self) -> &TimeHorizon {
        &self.horizon
    }

    pub fn get(&self, u: usize, v: usize) -> &TemporalQuantity {
        &self.entries[u * self.cols + v]
    }

    /// Overwrites entry `(u, v)`. Values are checked against the spec.
    pub fn set(&mut self, u: usize, v: usize, a: TemporalQuantity) -> Result<()> {
        a.check(&self.spec)?;
        self.entries[u * self.cols + v] = a;
        Ok(())
    }

    fn put(&mut self, u: usize, v: usize, a: TemporalQuantity) {
        self.entries[u * self.cols + v] = a;
    }

    /// Row-major iterator over `(u, v, entry)`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &TemporalQuantity)> {
        let cols = self.cols;
        self.entries
            .iter()
            .enumerate()
            .map(move |(i, a)| (i / cols, i % cols, a))
    }

    fn require_square(&self, op: &str) -> Result<usize> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "{op} needs a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(self.rows)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::new(self.cols, self.rows, self.spec, self.horizon);
        for (u, v, a) in self.iter() {
            t.put(v, u, a.clone());
        }
        t
    }

    /// Re-expresses the matrix over `spec`, mapping every value with `f`.
    pub fn map_into<F>(&self, spec: SemiringSpec, mut f: F) -> Result<Self>
    where
        F: FnMut(&Value) -> Result<Value>,
    {
        let entries = self
            .entries
            .iter()
            .map(|a| {
                let mapped = a.map_values(&mut f)?;
                crate::tq::standardize_in(&spec, mapped.into_triples())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TemporalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
            spec,
            horizon: self.horizon,
        })
    }

    /// Every value set to the semiring's one.
    pub fn binary(&self) -> Self {
        self.binary_in(self.spec)
    }

    /// Activity pattern of the matrix as a binary matrix over `spec`.
    pub fn binary_in(&self, spec: SemiringSpec) -> Self {
        let one = spec.one();
        TemporalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a.binary(one)).collect(),
            spec,
            horizon: self.horizon,
        }
    }

    /// Entrywise sum.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        check_same_spec(&self.spec, &other.spec)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.sum(&self.spec, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(TemporalMatrix {
            entries,
            ..self.clone_shape()
        })
    }

    fn clone_shape(&self) -> Self {
        TemporalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: Vec::new(),
            spec: self.spec,
            horizon: self.horizon,
        }
    }

    /// `A (+) A^T`.
    pub fn symmetrize(&self) -> Result<Self> {
        self.require_square("symmetrize")?;
        self.sum(&self.transpose())
    }

    /// Copy with every diagonal entry replaced by `c`.
    pub fn set_diag(&self, c: &TemporalQuantity) -> Result<Self> {
        let n = self.require_square("set_diag")?;
        c.check(&self.spec)?;
        let mut out = self.clone();
        for k in 0..n {
            out.put(k, k, c.clone());
        }
        Ok(out)
    }

    /// Entrywise intersection of two activity patterns, as a reachability
    /// matrix.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let reach = SemiringSpec::reachability();
        let a = self.binary_in(reach);
        let b = other.binary_in(reach);
        let entries = a
            .entries
            .iter()
            .zip(&b.entries)
            .map(|(x, y)| x.prod(&reach, y))
            .collect::<Result<Vec<_>>>()?;
        Ok(TemporalMatrix {
            entries,
            ..a.clone_shape()
        })
    }

    /// Sub-network induced by the binary node partition `q`: each link is kept
    /// only while both of its end nodes are active.
    pub fn extract(&self, q: &TemporalPartition) -> Result<Self> {
        let n = self.require_square("extract")?;
        if q.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "partition of {} nodes for a matrix of order {n}",
                q.len()
            )));
        }
        let reach = SemiringSpec::reachability();
        let masks: Vec<TemporalQuantity> =
            q.iter().map(|c| c.binary(Value::Bool(true))).collect();
        let mut out = self.clone();
        for u in 0..n {
            for v in 0..n {
                let a = self.get(u, v);
                if a.is_empty() {
                    continue;
                }
                let both = masks[u].prod(&reach, &masks[v])?;
                out.put(u, v, a.extract(&both));
            }
        }
        Ok(out)
    }

    /// Semiring matrix product `self (*) other`.
    pub fn prod(&self, other: &Self) -> Result<Self> {
        self.check_product(other)?;
        let mut out = Self::new(self.rows, other.cols, self.spec, self.horizon);
        for i in 0..self.rows {
            for j in 0..other.cols {
                out.put(i, j, self.dot(i, other, j)?);
            }
        }
        Ok(out)
    }

    /// Only the diagonal of `self (*) other`.
    pub fn prod_diag(&self, other: &Self) -> Result<TemporalVector> {
        self.check_product(other)?;
        if self.rows != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "diagonal of a {}x{} product",
                self.rows, other.cols
            )));
        }
        let entries = (0..self.rows)
            .map(|i| self.dot(i, other, i))
            .collect::<Result<Vec<_>>>()?;
        Ok(TemporalVector::new(entries, self.spec, self.horizon))
    }

    fn check_product(&self, other: &Self) -> Result<()> {
        check_same_spec(&self.spec, &other.spec)?;
        check_same_horizon(&self.horizon, &other.horizon)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    fn dot(&self, i: usize, other: &Self, j: usize) -> Result<TemporalQuantity> {
        let mut acc = TemporalQuantity::empty();
        for k in 0..self.cols {
            let a = self.get(i, k);
            let b = other.get(k, j);
            if a.is_empty() || b.is_empty() {
                continue;
            }
            acc = acc.sum(&self.spec, &a.prod(&self.spec, b)?)?;
        }
        Ok(acc)
    }

    /// `self^k` by repeated squaring, `k >= 1`.
    pub fn power(&self, k: u64) -> Result<Self> {
        self.require_square("power")?;
        if k == 0 {
            return Err(Error::InvalidInput(
                "matrix power needs k >= 1 (the identity depends on the semiring)".into(),
            ));
        }
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut k = k;
        loop {
            if k & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.prod(&base)?,
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.prod(&base)?;
        }
        Ok(result.expect("k >= 1 sets at least one bit"))
    }

    /// Closure over an absorptive semiring, computed in place with the
    /// simplified Fletcher scheme. With `strict` the empty walk is excluded
    /// (the result is `A (*) A*`); otherwise the unit is added on the
    /// diagonal after each pivot.
    pub fn closure(&self, strict: bool) -> Result<Self> {
        let n = self.require_square("closure")?;
        if !self.spec.is_absorptive() {
            return Err(Error::UnsupportedClosure(self.spec.kind()));
        }
        let spec = self.spec;
        let unit = self.horizon.full(spec.one());
        let mut c = self.clone();
        for k in 0..n {
            for u in 0..n {
                if c.get(u, k).is_empty() {
                    continue;
                }
                for v in 0..n {
                    let through = c.get(u, k).prod(&spec, c.get(k, v))?;
                    if through.is_empty() {
                        continue;
                    }
                    let updated = c.get(u, v).sum(&spec, &through)?;
                    c.put(u, v, updated);
                }
            }
            if !strict {
                let diag = unit.sum(&spec, c.get(k, k))?;
                c.put(k, k, diag);
            }
        }
        Ok(c)
    }

    /// Matrix-vector product, with the vector on the given side.
    pub fn vec_mul(&self, v: &TemporalVector, side: Side) -> Result<TemporalVector> {
        check_same_spec(&self.spec, &v.spec)?;
        let spec = self.spec;
        let entries = match side {
            Side::Left => {
                if v.len() != self.rows {
                    return Err(Error::DimensionMismatch(format!(
                        "vector of length {} times {}x{} matrix",
                        v.len(),
                        self.rows,
                        self.cols
                    )));
                }
                (0..self.cols)
                    .map(|j| {
                        (0..self.rows).try_fold(TemporalQuantity::empty(), |acc, i| {
                            acc.sum(&spec, &v.get(i).prod(&spec, self.get(i, j))?)
                        })
                    })
                    .collect::<Result<Vec<_>>>()?
            }
            Side::Right => {
                if v.len() != self.cols {
                    return Err(Error::DimensionMismatch(format!(
                        "{}x{} matrix times vector of length {}",
                        self.rows,
                        self.cols,
                        v.len()
                    )));
                }
                (0..self.rows)
                    .map(|i| {
                        (0..self.cols).try_fold(TemporalQuantity::empty(), |acc, j| {
                            acc.sum(&spec, &self.get(i, j).prod(&spec, v.get(j))?)
                        })
                    })
                    .collect::<Result<Vec<_>>>()?
            }
        };
        Ok(TemporalVector::new(entries, spec, self.horizon))
    }

    /// The all-unit vector `e` of length `len` over this matrix's semiring.
    pub fn unit_vector(&self, len: usize) -> TemporalVector {
        TemporalVector::constant(len, self.horizon.full(self.spec.one()), self.spec, self.horizon)
    }
}

/// Smallest node activity consistent with the links: node `u` is active
/// whenever some link incident to it is.
pub fn min_time(a: &TemporalMatrix) -> Result<TemporalPartition> {
    let n = a.require_square("min_time")?;
    let reach = SemiringSpec::reachability();
    let yes = Value::Bool(true);
    let mut out = Vec::with_capacity(n);
    for u in 0..n {
        let mut acc = TemporalQuantity::empty();
        for v in 0..n {
            acc = acc.sum(&reach, &a.get(u, v).binary(yes))?;
            acc = acc.sum(&reach, &a.get(v, u).binary(yes))?;
        }
        out.push(acc.binary(Value::Real(1.0)));
    }
    Ok(TemporalPartition::new(out))
}

impl TemporalVector {
    pub fn new(entries: Vec<TemporalQuantity>, spec: SemiringSpec, horizon: TimeHorizon) -> Self {
        TemporalVector {
            entries,
            spec,
            horizon,
        }
    }

    /// `n` copies of `value`.
    pub fn constant(n: usize, value: TemporalQuantity, spec: SemiringSpec, horizon: TimeHorizon) -> Self {
        Self::new(vec![value; n], spec, horizon)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> &TemporalQuantity {
        &self.entries[i]
    }

    pub fn spec(&self) -> &SemiringSpec {
        &self.spec
    }

    pub fn horizon(&self) -> &TimeHorizon {
        &self.horizon
    }

    pub fn iter(&self) -> std::slice::Iter<'_, TemporalQuantity> {
        self.entries.iter()
    }

    pub fn entries(&self) -> &[TemporalQuantity] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<TemporalQuantity> {
        self.entries
    }

    fn zip_with<F>(&self, other: &Self, mut f: F) -> Result<Self>
    where
        F: FnMut(&TemporalQuantity, &TemporalQuantity) -> Result<TemporalQuantity>,
    {
        check_same_spec(&self.spec, &other.spec)?;
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(format!(
                "vectors of length {} and {}",
                self.len(),
                other.len()
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| f(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(entries, self.spec, self.horizon))
    }

    /// Componentwise sum.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        let spec = self.spec;
        self.zip_with(other, |a, b| a.sum(&spec, b))
    }

    /// Componentwise product.
    pub fn prod(&self, other: &Self) -> Result<Self> {
        let spec = self.spec;
        self.zip_with(other, |a, b| a.prod(&spec, b))
    }

    /// Componentwise reciprocal.
    pub fn invert(&self) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(TemporalQuantity::invert)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(entries, self.spec, self.horizon))
    }

    /// Value of every component at instant `t`.
    pub fn slice(&self, t: Time) -> Vec<Option<Value>> {
        self.entries.iter().map(|a| a.value_at(t).copied()).collect()
    }
}

impl TemporalPartition {
    pub fn new(classes: Vec<TemporalQuantity>) -> Self {
        TemporalPartition { classes }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn get(&self, u: usize) -> &TemporalQuantity {
        &self.classes[u]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, TemporalQuantity> {
        self.classes.iter()
    }

    pub fn into_inner(self) -> Vec<TemporalQuantity> {
        self.classes
    }

    /// Class label of node `u` at instant `t`.
    pub fn label_at(&self, u: usize, t: Time) -> Option<u64> {
        match self.classes[u].value_at(t)? {
            Value::Real(x) => Some(*x as u64),
            _ => None,
        }
    }
}
