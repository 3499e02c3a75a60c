//! Dense exact matrices and sparse row echelon forms over a [`Field`].

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::scalar::Field;

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            f.write_str("  ")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("\n")?;
        }
        f.write_str("]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { F::one() } else { F::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds from row vectors; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Reshapes a row-major vector.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(alloc::format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> F {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Entries in row-major order.
    pub fn data(&self) -> &[F] {
        &self.data
    }

    pub fn map<G: Field>(&self, mut f: impl FnMut(F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    fn check_mul(&self, o: &Self) -> Result<()> {
        if self.cols != o.rows {
            return Err(Error::Shape(alloc::format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows,
                self.cols,
                o.rows,
                o.cols
            )));
        }
        Ok(())
    }

    fn check_same(&self, o: &Self) -> Result<()> {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(Error::Shape(alloc::format!(
                "shape {}x{} differs from {}x{}",
                self.rows,
                self.cols,
                o.rows,
                o.cols
            )));
        }
        Ok(())
    }

    /// Product, skipping zero entries of `self` (the models are sparse).
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check_mul(o)?;
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let idx = i * o.cols + j;
                        out.data[idx] = out.data[idx] + a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, s: F) -> Self {
        self.map(|x| x * s)
    }

    /// Kronecker product `self ⊗ o`.
    pub fn kron(&self, o: &Self) -> Self {
        Self::from_fn(self.rows * o.rows, self.cols * o.cols, |i, j| {
            self.get(i / o.rows, j / o.cols) * o.get(i % o.rows, j % o.cols)
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        self.map(F::conj)
    }

    /// Conjugate transpose `M*`.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v == F::one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    /// `M·M* = I`.
    pub fn is_unitary(&self) -> bool {
        self.is_square() && self.mul(&self.adjoint()).is_ok_and(|p| p.is_identity())
    }

    /// Normalized Hilbert–Schmidt product `⟨self, o⟩ = tr(o*·self)/cols`, for
    /// maps whose source has dimension `cols`.
    pub fn hs_inner(&self, o: &Self) -> Result<F> {
        self.check_same(o)?;
        let mut acc = F::zero();
        for (a, b) in self.data.iter().zip(&o.data) {
            if !a.is_zero() && !b.is_zero() {
                acc = acc + *a * b.conj();
            }
        }
        let inv = F::from_int(self.cols as i64)
            .inv()
            .ok_or_else(|| Error::Shape("empty source space".into()))?;
        Ok(acc * inv)
    }

    /// Matrix–vector product.
    pub fn apply(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::Shape(alloc::format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + *a * *b)
            })
            .collect())
    }

    /// Indices of the non-zero entries of row `i`.
    pub fn row_support(&self, i: usize) -> impl Iterator<Item = (usize, F)> + '_ {
        self.row(i)
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, v)| (j, *v))
    }
}

/// A sparse row: `(column, value)` pairs sorted by column with no zeros.
pub type SparseRow<F> = Vec<(usize, F)>;

/// Reduced row echelon form built one row at a time.
///
/// Pivot rows are kept fully reduced: each has a leading one and zeros in
/// every other pivot column, so reducing a new row needs one pass.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    cols: usize,
    pivots: BTreeMap<usize, SparseRow<F>>,
}

fn axpy<F: Field>(row: &SparseRow<F>, coef: F, other: &SparseRow<F>) -> SparseRow<F> {
    // row − coef·other
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut a, mut b) = (row.iter().peekable(), other.iter().peekable());
    loop {
        match (a.peek(), b.peek()) {
            (Some(&&(ca, va)), Some(&&(cb, vb))) => {
                if ca < cb {
                    out.push((ca, va));
                    a.next();
                } else if cb < ca {
                    out.push((cb, -(coef * vb)));
                    b.next();
                } else {
                    let v = va - coef * vb;
                    if !v.is_zero() {
                        out.push((ca, v));
                    }
                    a.next();
                    b.next();
                }
            }
            (Some(&&(ca, va)), None) => {
                out.push((ca, va));
                a.next();
            }
            (None, Some(&&(cb, vb))) => {
                out.push((cb, -(coef * vb)));
                b.next();
            }
            (None, None) => break,
        }
    }
    out
}

fn lookup<F: Field>(row: &SparseRow<F>, col: usize) -> Option<F> {
    row.binary_search_by_key(&col, |e| e.0)
        .ok()
        .map(|k| row[k].1)
}

impl<F: Field> Echelon<F> {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds a constraint row; returns whether the rank grew.
    pub fn insert(&mut self, mut row: SparseRow<F>) -> bool {
        row.retain(|(_, v)| !v.is_zero());
        row.sort_by_key(|e| e.0);
        debug_assert!(row.iter().all(|(c, _)| *c < self.cols));
        // Reduce against existing pivots. Pivot rows hold no other pivot
        // columns, so each subtraction cannot reintroduce an earlier pivot.
        let hits: Vec<usize> = row
            .iter()
            .map(|e| e.0)
            .filter(|c| self.pivots.contains_key(c))
            .collect();
        for c in hits {
            if let Some(v) = lookup(&row, c) {
                row = axpy(&row, v, &self.pivots[&c]);
            }
        }
        let Some(&(lead, lv)) = row.first() else {
            return false;
        };
        let inv = lv.inv().expect("non-zero leading entry");
        for e in row.iter_mut() {
            e.1 = e.1 * inv;
        }
        for prow in self.pivots.values_mut() {
            if let Some(v) = lookup(prow, lead) {
                *prow = axpy(prow, v, &row);
            }
        }
        self.pivots.insert(lead, row);
        true
    }

    /// Adds a dense row.
    pub fn insert_dense(&mut self, row: &[F]) -> bool {
        self.insert(
            row.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| (j, *v))
                .collect(),
        )
    }

    /// Basis of `{x : R x = 0}`, one vector per free column in ascending
    /// order, with a one in that column.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        (0..self.cols)
            .filter(|c| !self.pivots.contains_key(c))
            .map(|free| {
                let mut x = vec![F::zero(); self.cols];
                x[free] = F::one();
                for (&p, prow) in &self.pivots {
                    if let Some(v) = lookup(prow, free) {
                        x[p] = -v;
                    }
                }
                x
            })
            .collect()
    }

    /// Whether `v` lies in the row space.
    pub fn contains(&self, v: &[F]) -> bool {
        let mut copy = self.clone();
        !copy.insert_dense(v)
    }
}

/// Nullspace of a dense matrix.
pub fn nullspace<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    let mut e = Echelon::new(m.cols());
    for i in 0..m.rows() {
        e.insert(m.row_support(i).collect());
    }
    e.nullspace()
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    let mut e = Echelon::new(m.cols());
    for i in 0..m.rows() {
        e.insert(m.row_support(i).collect());
    }
    e.rank()
}
