//! Sparse exact linear algebra: vectors, column-major matrices, and an
//! incremental echelon reducer that backs rank, kernel, solve and
//! coordinate computations.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Sparse vector: entries sorted by index, no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> SparseVec {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(index: usize, field: Field) -> SparseVec {
        SparseVec {
            entries: vec![(index, field.one())],
        }
    }

    pub fn single(index: usize, value: Scalar) -> SparseVec {
        if value.is_zero() {
            SparseVec::new()
        } else {
            SparseVec {
                entries: vec![(index, value)],
            }
        }
    }

    /// Builds from arbitrary `(index, value)` pairs, summing duplicates.
    pub fn from_pairs<I: IntoIterator<Item = (usize, Scalar)>>(pairs: I) -> SparseVec {
        let mut map: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, v) in pairs {
            match map.get_mut(&i) {
                Some(acc) => *acc += &v,
                None => {
                    map.insert(i, v);
                }
            }
        }
        SparseVec {
            entries: map.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn from_dense(values: &[Scalar]) -> SparseVec {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize, field: Field) -> Vec<Scalar> {
        let mut out = vec![field.zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn leading(&self) -> Option<usize> {
        self.entries.first().map(|(i, _)| *i)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn get(&self, index: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn scaled(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, -v)).collect(),
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Scalar, other: &SparseVec) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((ia, _)), Some((ib, _))) => {
                    if ia < ib {
                        out.push(a.next().unwrap());
                    } else if ib < ia {
                        let (i, v) = b.next().unwrap();
                        out.push((*i, v * c));
                    } else {
                        let (i, va) = a.next().unwrap();
                        let (_, vb) = b.next().unwrap();
                        let s = &va + &(vb * c);
                        if !s.is_zero() {
                            out.push((i, s));
                        }
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (i, v) = b.next().unwrap();
                    out.push((*i, v * c));
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn add(&self, other: &SparseVec, field: Field) -> SparseVec {
        let mut out = self.clone();
        out.add_scaled(&field.one(), other);
        out
    }

    pub fn sub(&self, other: &SparseVec, field: Field) -> SparseVec {
        let mut out = self.clone();
        out.add_scaled(&-field.one(), other);
        out
    }

    pub fn dot(&self, other: &SparseVec, field: Field) -> Scalar {
        let mut acc = field.zero();
        let (mut x, mut y) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        while let (Some((i, a)), Some((j, b))) = (x.peek(), y.peek()) {
            if i < j {
                x.next();
            } else if j < i {
                y.next();
            } else {
                acc += &(a * b);
                x.next();
                y.next();
            }
        }
        acc
    }

    /// Relabels indices through `f`, summing collisions.
    pub fn remap<F: Fn(usize) -> usize>(&self, f: F) -> SparseVec {
        SparseVec::from_pairs(self.entries.iter().map(|(i, v)| (f(*i), v.clone())))
    }

    pub fn shifted(&self, offset: usize) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (i + offset, v.clone())).collect(),
        }
    }

    /// Keeps entries with index in `[start, start + len)` and rebases them at 0.
    pub fn slice(&self, start: usize, len: usize) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| *i >= start && *i < start + len)
                .map(|(i, v)| (i - start, v.clone()))
                .collect(),
        }
    }

    pub fn field(&self) -> Option<Field> {
        self.entries.first().map(|(_, v)| v.field())
    }
}

impl fmt::Display for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        for (k, (i, v)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{v}·e{i}")?;
        }
        Ok(())
    }
}

/// Column-major sparse matrix over a single field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            columns: vec![SparseVec::new(); cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        Matrix {
            field,
            rows: n,
            cols: n,
            columns: (0..n).map(|i| SparseVec::unit(i, field)).collect(),
        }
    }

    pub fn from_columns(field: Field, rows: usize, columns: Vec<SparseVec>) -> Result<Matrix> {
        for (j, c) in columns.iter().enumerate() {
            if let Some(m) = c.max_index() {
                if m >= rows {
                    return Err(Error::DimensionMismatch(format!(
                        "column {j} has an entry in row {m} but the matrix has {rows} rows"
                    )));
                }
            }
            for (_, v) in c.iter() {
                if v.field() != field {
                    return Err(Error::FieldMismatch {
                        expected: field,
                        found: v.field(),
                    });
                }
            }
        }
        Ok(Matrix {
            field,
            rows,
            cols: columns.len(),
            columns,
        })
    }

    /// Row-major dense constructor; every entry must live in `field`.
    pub fn from_rows(field: Field, rows: &[Vec<Scalar>]) -> Result<Matrix> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut cols = vec![Vec::new(); ncols];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {ncols}",
                    row.len()
                )));
            }
            for (j, v) in row.iter().enumerate() {
                if v.field() != field {
                    return Err(Error::FieldMismatch {
                        expected: field,
                        found: v.field(),
                    });
                }
                if !v.is_zero() {
                    cols[j].push((i, v.clone()));
                }
            }
        }
        Ok(Matrix {
            field,
            rows: nrows,
            cols: ncols,
            columns: cols.into_iter().map(|e| SparseVec { entries: e }).collect(),
        })
    }

    pub fn from_i64_rows(field: Field, rows: &[&[i64]]) -> Matrix {
        let rows: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.int(v)).collect())
            .collect();
        Matrix::from_rows(field, &rows).expect("well-formed literal matrix")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.columns[j]
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        let col = &mut self.columns[j];
        let current = col.get(i).cloned().unwrap_or_else(|| self.field.zero());
        let delta = &v - &current;
        col.add_scaled(&delta, &SparseVec::unit(i, self.field));
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.nnz()).sum()
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, c) in v.iter() {
            out.add_scaled(c, &self.columns[j]);
        }
        out
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        if self.field != rhs.field {
            return Err(Error::FieldMismatch {
                expected: self.field,
                found: rhs.field,
            });
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: rhs.cols,
            columns: rhs.columns.iter().map(|c| self.apply(c)).collect(),
        })
    }

    pub fn transpose(&self) -> Matrix {
        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c.iter() {
                rows[i].push((j, v.clone()));
            }
        }
        Matrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            columns: rows.into_iter().map(|e| SparseVec { entries: e }).collect(),
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            columns: self.columns.iter().map(|col| col.scaled(c)).collect(),
        }
    }

    pub fn checked_add(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            columns: self
                .columns
                .iter()
                .zip(&rhs.columns)
                .map(|(a, b)| a.add(b, self.field))
                .collect(),
        })
    }

    pub fn checked_sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.checked_add(&rhs.scaled(&-self.field.one()))
    }

    /// Rows selected in order; used for restricting to a sub-basis.
    pub fn select_rows(&self, keep: &[usize]) -> Matrix {
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        Matrix {
            field: self.field,
            rows: keep.len(),
            cols: self.cols,
            columns: self
                .columns
                .iter()
                .map(|c| {
                    SparseVec::from_pairs(
                        c.iter()
                            .filter_map(|(i, v)| pos.get(&i).map(|k| (*k, v.clone()))),
                    )
                })
                .collect(),
        }
    }

    pub fn select_cols(&self, keep: &[usize]) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: keep.len(),
            columns: keep.iter().map(|&j| self.columns[j].clone()).collect(),
        }
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().map(|c| c.shifted(self.rows)));
        Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols + other.cols,
            columns,
        }
    }

    /// Stacks `self` above `other` (same column count).
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack {} columns over {}",
                self.cols, other.cols
            )));
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            columns: self
                .columns
                .iter()
                .zip(&other.columns)
                .map(|(a, b)| a.add(&b.shifted(self.rows), self.field))
                .collect(),
        })
    }

    /// Places `other`'s columns after `self`'s (same row count).
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot concatenate {} rows with {}",
                self.rows, other.rows
            )));
        }
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols + other.cols,
            columns,
        })
    }

    pub fn rank(&self) -> usize {
        let mut r = Reducer::new(self.field, self.rows);
        for c in &self.columns {
            r.insert(c.clone());
        }
        r.rank()
    }

    /// Basis of the null space; `len == cols - rank`.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        let mut r = Reducer::with_tracking(self.field, self.rows);
        let mut kernel = Vec::new();
        for (j, c) in self.columns.iter().enumerate() {
            if let Insert::Dependent(combo) = r.insert_tagged(c.clone(), j) {
                kernel.push(combo);
            }
        }
        kernel
    }

    /// Basis of the column space, taken from the reduced pivot rows.
    pub fn image_basis(&self) -> Vec<SparseVec> {
        let mut r = Reducer::new(self.field, self.rows);
        for c in &self.columns {
            r.insert(c.clone());
        }
        r.basis()
    }

    /// Some `x` with `self · x = b`, or `None` when `b` is outside the column space.
    pub fn solve(&self, b: &SparseVec) -> Result<Option<SparseVec>> {
        if let Some(m) = b.max_index() {
            if m >= self.rows {
                return Err(Error::DimensionMismatch(format!(
                    "right-hand side has an entry at {m} but the matrix has {} rows",
                    self.rows
                )));
            }
        }
        let mut r = Reducer::with_tracking(self.field, self.rows);
        for (j, c) in self.columns.iter().enumerate() {
            r.insert_tagged(c.clone(), j);
        }
        Ok(r.express(b))
    }

    pub fn solve_dense(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {} but the matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        Ok(self
            .solve(&SparseVec::from_dense(b))?
            .map(|x| x.to_dense(self.cols, self.field)))
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    /// Panics on a shape mismatch; use [`Matrix::checked_mul`] for fallible composition.
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix shapes compatible")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

pub enum Insert {
    Independent,
    /// The inserted vector was a combination of earlier ones; the payload is a
    /// kernel relation in generator coordinates (tracking mode only).
    Dependent(SparseVec),
}

#[derive(Debug, Clone)]
struct Row {
    vector: SparseVec,
    combo: SparseVec,
}

/// Incremental row-echelon basis keyed by leading index.
///
/// Pivot rows are normalised to a leading 1. With tracking enabled every
/// row also remembers how it was assembled from the tagged generators.
#[derive(Debug, Clone)]
pub struct Reducer {
    field: Field,
    ambient: usize,
    pivots: BTreeMap<usize, usize>,
    rows: Vec<Row>,
    tracking: bool,
}

impl Reducer {
    pub fn new(field: Field, ambient: usize) -> Reducer {
        Reducer {
            field,
            ambient,
            pivots: BTreeMap::new(),
            rows: Vec::new(),
            tracking: false,
        }
    }

    pub fn with_tracking(field: Field, ambient: usize) -> Reducer {
        Reducer {
            tracking: true,
            ..Reducer::new(field, ambient)
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> Vec<SparseVec> {
        self.rows.iter().map(|r| r.vector.clone()).collect()
    }

    pub fn pivot_indices(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// Reduces `v` against the pivots; returns the residual and the
    /// generator combination that was subtracted.
    fn reduce(&self, mut v: SparseVec) -> (SparseVec, SparseVec) {
        let mut subtracted = SparseVec::new();
        let mut start = 0usize;
        loop {
            let lead = v.iter().map(|(i, _)| i).find(|&i| i >= start && self.pivots.contains_key(&i));
            let Some(lead) = lead else { break };
            let row = &self.rows[self.pivots[&lead]];
            let c = v.get(lead).cloned().unwrap();
            v.add_scaled(&-&c, &row.vector);
            if self.tracking {
                subtracted.add_scaled(&c, &row.combo);
            }
            start = lead + 1;
        }
        (v, subtracted)
    }

    pub fn insert(&mut self, v: SparseVec) -> bool {
        let (res, _) = self.reduce(v);
        self.push(res, SparseVec::new())
    }

    pub fn insert_tagged(&mut self, v: SparseVec, tag: usize) -> Insert {
        let (res, sub) = self.reduce(v);
        if res.is_zero() {
            let mut combo = SparseVec::unit(tag, self.field);
            combo.add_scaled(&-self.field.one(), &sub);
            return Insert::Dependent(combo);
        }
        let mut combo = SparseVec::unit(tag, self.field);
        combo.add_scaled(&-self.field.one(), &sub);
        self.push(res, combo);
        Insert::Independent
    }

    fn push(&mut self, res: SparseVec, combo: SparseVec) -> bool {
        let Some(lead) = res.leading() else {
            return false;
        };
        let inv = res.get(lead).unwrap().inv().unwrap();
        let vector = res.scaled(&inv);
        let combo = combo.scaled(&inv);
        for row in self.rows.iter_mut() {
            if let Some(c) = row.vector.get(lead).cloned() {
                row.vector.add_scaled(&-&c, &vector);
                if self.tracking {
                    row.combo.add_scaled(&-&c, &combo);
                }
            }
        }
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(Row { vector, combo });
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).0.is_zero()
    }

    /// Canonical representative of `v` modulo the span.
    pub fn residual(&self, v: &SparseVec) -> SparseVec {
        self.reduce(v.clone()).0
    }

    /// Coordinates of `v` in generator tags, if `v` lies in the span.
    pub fn express(&self, v: &SparseVec) -> Option<SparseVec> {
        let (res, sub) = self.reduce(v.clone());
        res.is_zero().then_some(sub)
    }
}

/// Quotient `V / R` with a complement spanned by non-pivot standard vectors.
#[derive(Debug, Clone)]
pub struct Quotient {
    field: Field,
    reducer: Reducer,
    complement: Vec<usize>,
    position: BTreeMap<usize, usize>,
}

impl Quotient {
    pub fn new(field: Field, ambient: usize, relations: impl IntoIterator<Item = SparseVec>) -> Quotient {
        let mut reducer = Reducer::new(field, ambient);
        for r in relations {
            reducer.insert(r);
        }
        let pivots: std::collections::BTreeSet<usize> = reducer.pivot_indices().into_iter().collect();
        let complement: Vec<usize> = (0..ambient).filter(|i| !pivots.contains(i)).collect();
        let position = complement.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        Quotient {
            field,
            reducer,
            complement,
            position,
        }
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    /// Ambient indices of the standard vectors spanning the complement.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    pub fn project(&self, v: &SparseVec) -> SparseVec {
        let res = self.reducer.residual(v);
        SparseVec::from_pairs(res.iter().map(|(i, c)| (self.position[&i], c.clone())))
    }

    pub fn lift(&self, q: &SparseVec) -> SparseVec {
        q.remap(|k| self.complement[k])
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

/// Basis of a subspace together with coordinates relative to that basis.
#[derive(Debug, Clone)]
pub struct Subspace {
    basis: Vec<SparseVec>,
    ambient: usize,
    field: Field,
}

impl Subspace {
    pub fn new(field: Field, ambient: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Subspace {
        let mut r = Reducer::new(field, ambient);
        let mut basis = Vec::new();
        for v in vectors {
            if r.insert(v.clone()) {
                basis.push(v);
            }
        }
        Subspace { basis, ambient, field }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn reducer(&self) -> Reducer {
        let mut r = Reducer::with_tracking(self.field, self.ambient);
        for (k, v) in self.basis.iter().enumerate() {
            r.insert_tagged(v.clone(), k);
        }
        r
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        let mut r = Reducer::new(self.field, self.ambient);
        for b in &self.basis {
            r.insert(b.clone());
        }
        r.contains(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(q(), 2).rank(), 2);
        assert_eq!(Matrix::zeros(q(), 3, 4).rank(), 0);
        assert_eq!(Matrix::from_i64_rows(q(), &[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(q(), 2).kernel_basis().is_empty());
        assert_eq!(Matrix::zeros(q(), 2, 2).kernel_basis().len(), 2);
        let m = Matrix::from_i64_rows(q(), &[&[1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        let v = k[0].to_dense(2, q());
        assert_eq!(&v[0] + &v[1], q().zero());
        assert!(!v[0].is_zero());
        assert!(m.apply(&k[0]).is_zero());
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::identity(q(), 2);
        let x = id.solve_dense(&[q().int(3), q().int(5)]).unwrap().unwrap();
        assert_eq!(x, vec![q().int(3), q().int(5)]);

        let m = Matrix::from_i64_rows(q(), &[&[1, 1]]);
        let x = m.solve_dense(&[q().int(2)]).unwrap().unwrap();
        assert_eq!(&x[0] + &x[1], q().int(2));

        let z = Matrix::from_i64_rows(q(), &[&[0]]);
        assert_eq!(z.solve_dense(&[q().int(1)]).unwrap(), None);
        assert!(matches!(
            z.solve_dense(&[q().int(1), q().int(2)]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn field_mismatch_is_reported() {
        let rows = vec![vec![Field::Rational.one(), Field::Prime(3).one()]];
        assert!(matches!(
            Matrix::from_rows(Field::Rational, &rows),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn rank_over_prime_field_differs() {
        // det = 3: singular mod 3, invertible over Q.
        let rows: &[&[i64]] = &[&[1, 1], &[1, 4]];
        assert_eq!(Matrix::from_i64_rows(q(), rows).rank(), 2);
        assert_eq!(Matrix::from_i64_rows(Field::Prime(3), rows).rank(), 1);
    }

    #[test]
    fn quotient_projection() {
        let f = q();
        let rel = SparseVec::from_pairs([(0, f.one()), (1, -f.one())]);
        let quo = Quotient::new(f, 3, [rel]);
        assert_eq!(quo.dim(), 2);
        let e0 = quo.project(&SparseVec::unit(0, f));
        let e1 = quo.project(&SparseVec::unit(1, f));
        assert_eq!(e0, e1);
        let back = quo.project(&quo.lift(&e0));
        assert_eq!(back, e0);
    }
}
