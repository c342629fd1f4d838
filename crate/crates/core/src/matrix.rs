//! Dense exact linear algebra over GF(p).
//!
//! Everything here funnels through [`Echelon`], an incremental row-echelon
//! builder. Rows are reduced in `u64` accumulators and only taken mod p
//! when the accumulated products could overflow, which for the default
//! 16-bit primes means essentially never inside a single row reduction.

use crate::error::{Error, Result};
use crate::field::PrimeField;

/// Default bound on `rows * cols` for any materialized matrix.
pub const DEFAULT_ENTRY_GUARD: usize = 5_000_000;

const NO_ROW: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Result<Self> {
        Self::zeros_with_guard(field, rows, cols, DEFAULT_ENTRY_GUARD)
    }

    pub fn zeros_with_guard(
        field: PrimeField,
        rows: usize,
        cols: usize,
        guard: usize,
    ) -> Result<Self> {
        check_guard(rows, cols, guard)?;
        Ok(Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        })
    }

    pub fn identity(field: PrimeField, n: usize) -> Result<Self> {
        let mut m = Self::zeros(field, n, n)?;
        for i in 0..n {
            m.set(i, i, 1);
        }
        Ok(m)
    }

    /// Builds a matrix from signed integer rows, reducing entries mod p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, rows.len(), cols)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, field.from_i64(x));
            }
        }
        Ok(m)
    }

    pub(crate) fn from_raw(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: u32) {
        self.data[i * self.cols + j] = value % self.field.modulus();
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u32]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = vec![0; self.data.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                data[j * self.rows + i] = self.get(i, j);
            }
        }
        Matrix::from_raw(self.field, self.cols, self.rows, data)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let p = self.field.modulus() as u64;
        Ok(self
            .row_iter()
            .map(|row| {
                let s = row
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p);
                s as u32
            })
            .collect())
    }
}

fn check_guard(rows: usize, cols: usize, guard: usize) -> Result<()> {
    match rows.checked_mul(cols) {
        Some(n) if n <= guard => Ok(()),
        _ => Err(Error::MatrixTooLarge { rows, cols, guard }),
    }
}

/// Reduces `acc` (entries `< p`) against pivot rows, scanning columns from
/// `from`. Pivot rows must carry a leading 1 at their pivot and zeros to the
/// left of it. Returns the first column whose residue is nonzero and has no
/// pivot; when `full` is false the scan stops there.
fn reduce_lazy<'a>(
    field: PrimeField,
    row_at: &[u32],
    row_of: impl Fn(usize) -> &'a [u32],
    acc: &mut [u64],
    from: usize,
    full: bool,
) -> Option<usize> {
    let p = field.modulus() as u64;
    let budget = field.lazy_budget();
    let mut pending = 0u64;
    let mut lead = None;
    for c in from..acc.len() {
        let v = acc[c] % p;
        acc[c] = v;
        if v == 0 {
            continue;
        }
        let r = row_at[c];
        if r == NO_ROW {
            if lead.is_none() {
                lead = Some(c);
                if !full {
                    break;
                }
            }
            continue;
        }
        if pending == budget {
            acc[c..].iter_mut().for_each(|x| *x %= p);
            pending = 0;
        }
        let m = p - v;
        let row = row_of(r as usize);
        for (a, &b) in acc[c..].iter_mut().zip(&row[c..]) {
            *a += m * b as u64;
        }
        pending += 1;
    }
    if pending > 0 {
        acc.iter_mut().for_each(|x| *x %= p);
    }
    lead
}

/// Incremental row-echelon form.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: PrimeField,
    cols: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    row_at: Vec<u32>,
}

impl Echelon {
    pub fn new(field: PrimeField, cols: usize) -> Self {
        Self {
            field,
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
            row_at: vec![NO_ROW; cols],
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Inserts a row of residues; returns whether it raised the rank.
    pub fn insert(&mut self, row: &[u32]) -> bool {
        assert_eq!(row.len(), self.cols, "row length");
        if self.is_full() {
            return false;
        }
        let p = self.field.modulus();
        let mut acc: Vec<u64> = row.iter().map(|&x| (x % p) as u64).collect();
        self.insert_acc(&mut acc)
    }

    /// Sparse variant of [`Echelon::insert`]; repeated columns are summed.
    pub fn insert_sparse(&mut self, entries: &[(usize, u32)]) -> bool {
        if self.is_full() {
            return false;
        }
        let p = self.field.modulus() as u64;
        let mut acc = vec![0u64; self.cols];
        for &(c, x) in entries {
            acc[c] = (acc[c] + x as u64) % p;
        }
        self.insert_acc(&mut acc)
    }

    fn insert_acc(&mut self, acc: &mut [u64]) -> bool {
        let rows = &self.rows;
        let lead = reduce_lazy(
            self.field,
            &self.row_at,
            |r| rows[r].as_slice(),
            acc,
            0,
            false,
        );
        let Some(lead) = lead else {
            return false;
        };
        let p = self.field.modulus() as u64;
        let inv = self.field.inv(acc[lead] as u32) as u64;
        let mut row = vec![0u32; self.cols];
        for c in lead..self.cols {
            row[c] = ((acc[c] % p) * inv % p) as u32;
        }
        self.row_at[lead] = self.rows.len() as u32;
        self.rows.push(row);
        self.pivots.push(lead);
        true
    }

    /// Remainder of `v` after full reduction by the current pivots.
    pub fn remainder(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "vector length");
        let mut acc: Vec<u64> = v.iter().map(|&x| x as u64).collect();
        let rows = &self.rows;
        reduce_lazy(
            self.field,
            &self.row_at,
            |r| rows[r].as_slice(),
            &mut acc,
            0,
            true,
        );
        acc.into_iter().map(|x| x as u32).collect()
    }

    /// Back-substitutes into reduced row echelon form.
    pub fn into_row_basis(self) -> RowBasis {
        let Echelon {
            field,
            cols,
            rows,
            pivots,
            row_at,
        } = self;
        let mut order: Vec<usize> = (0..rows.len()).collect();
        order.sort_by_key(|&r| pivots[r]);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for &r in &order {
            let mut acc: Vec<u64> = rows[r].iter().map(|&x| x as u64).collect();
            let start = pivots[r] + 1;
            reduce_lazy(
                field,
                &row_at,
                |q| rows[q].as_slice(),
                &mut acc,
                start,
                true,
            );
            data.extend(acc.into_iter().map(|x| x as u32));
        }
        let sorted_pivots: Vec<usize> = order.iter().map(|&r| pivots[r]).collect();
        let basis = Matrix::from_raw(field, sorted_pivots.len(), cols, data);
        RowBasis::from_parts(basis, sorted_pivots)
    }
}

/// A subspace of `F^ambient_dim` held as a reduced row echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowBasis {
    basis: Matrix,
    pivots: Vec<usize>,
    row_at: Vec<u32>,
}

impl RowBasis {
    fn from_parts(basis: Matrix, pivots: Vec<usize>) -> Self {
        let mut row_at = vec![NO_ROW; basis.cols()];
        for (i, &c) in pivots.iter().enumerate() {
            row_at[c] = i as u32;
        }
        Self {
            basis,
            pivots,
            row_at,
        }
    }

    pub fn zero(field: PrimeField, ambient_dim: usize) -> Self {
        Self::from_parts(
            Matrix::from_raw(field, 0, ambient_dim, Vec::new()),
            Vec::new(),
        )
    }

    pub fn full(field: PrimeField, ambient_dim: usize) -> Self {
        let mut data = vec![0; ambient_dim * ambient_dim];
        for i in 0..ambient_dim {
            data[i * ambient_dim + i] = 1;
        }
        Self::from_parts(
            Matrix::from_raw(field, ambient_dim, ambient_dim, data),
            (0..ambient_dim).collect(),
        )
    }

    /// Row span of arbitrary vectors.
    pub fn span<'a>(
        field: PrimeField,
        ambient_dim: usize,
        rows: impl IntoIterator<Item = &'a [u32]>,
    ) -> Result<Self> {
        let mut e = Echelon::new(field, ambient_dim);
        for row in rows {
            if row.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: row.len(),
                });
            }
            e.insert(row);
        }
        Ok(e.into_row_basis())
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim() - self.dim()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.row_at[col] != NO_ROW
    }

    /// Columns without a pivot, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ambient_dim())
            .filter(|&c| !self.is_pivot(c))
            .collect()
    }

    /// Basis row whose pivot sits in `col`, if any.
    pub fn row_for_pivot(&self, col: usize) -> Option<&[u32]> {
        match self.row_at[col] {
            NO_ROW => None,
            r => Some(self.basis.row(r as usize)),
        }
    }

    fn check_len(&self, v: &[u32]) -> Result<()> {
        if v.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Normal form of `v` modulo the subspace: supported on free columns.
    pub fn remainder(&self, v: &[u32]) -> Result<Vec<u32>> {
        self.check_len(v)?;
        let p = self.field().modulus();
        let mut acc: Vec<u64> = v.iter().map(|&x| (x % p) as u64).collect();
        reduce_lazy(
            self.field(),
            &self.row_at,
            |r| self.basis.row(r),
            &mut acc,
            0,
            true,
        );
        Ok(acc.into_iter().map(|x| x as u32).collect())
    }

    pub fn member(&self, v: &[u32]) -> Result<bool> {
        Ok(self.remainder(v)?.iter().all(|&x| x == 0))
    }

    pub fn contains_space(&self, other: &RowBasis) -> Result<bool> {
        for row in other.basis.row_iter() {
            if !self.member(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.basis.row_iter()
    }
}

/// Reduced row echelon form and rank.
pub fn rref(m: &Matrix) -> (Matrix, usize) {
    let mut e = Echelon::new(m.field(), m.cols());
    for row in m.row_iter() {
        e.insert(row);
    }
    let rank = e.rank();
    let basis = e.into_row_basis();
    let mut data = basis.basis.data;
    data.resize(m.rows() * m.cols(), 0);
    (Matrix::from_raw(m.field(), m.rows(), m.cols(), data), rank)
}

pub fn rank(m: &Matrix) -> usize {
    let mut e = Echelon::new(m.field(), m.cols());
    for row in m.row_iter() {
        if e.is_full() {
            break;
        }
        e.insert(row);
    }
    e.rank()
}

/// Basis of `{v : m v = 0}`.
pub fn kernel(m: &Matrix) -> RowBasis {
    let field = m.field();
    let cols = m.cols();
    let r = RowBasis::span(field, cols, m.row_iter()).expect("rows have matrix width");
    let mut e = Echelon::new(field, cols);
    let mut v = vec![0u32; cols];
    for f in r.free_columns() {
        v.iter_mut().for_each(|x| *x = 0);
        v[f] = 1;
        for (i, &c) in r.pivots.iter().enumerate() {
            let x = r.basis.get(i, f);
            if x != 0 {
                v[c] = field.neg(x);
            }
        }
        e.insert(&v);
    }
    e.into_row_basis()
}

pub fn span_sum(a: &RowBasis, b: &RowBasis) -> Result<RowBasis> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: a.ambient_dim(),
            found: b.ambient_dim(),
        });
    }
    RowBasis::span(a.field(), a.ambient_dim(), a.rows().chain(b.rows()))
}

/// `dim(a ∩ b)` from `dim a + dim b - dim(a + b)`.
pub fn intersection_dim(a: &RowBasis, b: &RowBasis) -> Result<usize> {
    Ok(a.dim() + b.dim() - span_sum(a, b)?.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_core::{RngCore, SeedableRng};
    use rand_xoshiro::SplitMix64;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn random_matrix(rng: &mut SplitMix64, field: PrimeField, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols).unwrap();
        // Sparse-ish entries so that rank deficiency actually occurs.
        for i in 0..rows {
            for j in 0..cols {
                if rng.next_u64().is_multiple_of(3) {
                    m.set(i, j, field.reduce_u64(rng.next_u64()));
                }
            }
        }
        m
    }

    fn is_rref(m: &Matrix) -> bool {
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero = false;
        for i in 0..m.rows() {
            let lead = m.row(i).iter().position(|&x| x != 0);
            match lead {
                None => seen_zero = true,
                Some(c) => {
                    if seen_zero || m.get(i, c) != 1 || last_pivot.is_some_and(|l| l >= c) {
                        return false;
                    }
                    if (0..m.rows()).any(|k| k != i && m.get(k, c) != 0) {
                        return false;
                    }
                    last_pivot = Some(c);
                }
            }
        }
        true
    }

    #[test]
    fn rref_examples() {
        let f7 = gf(7);
        let id = Matrix::identity(f7, 3).unwrap();
        assert_eq!(rref(&id), (id.clone(), 3));

        let z = Matrix::zeros(f7, 2, 2).unwrap();
        assert_eq!(rref(&z), (z.clone(), 0));

        let f5 = gf(5);
        let m = Matrix::from_rows(f5, &[vec![1, 2], vec![2, 4]]).unwrap();
        let expected = Matrix::from_rows(f5, &[vec![1, 2], vec![0, 0]]).unwrap();
        assert_eq!(rref(&m), (expected, 1));
    }

    #[test]
    fn kernel_examples() {
        let f5 = gf(5);
        assert_eq!(kernel(&Matrix::identity(f5, 4).unwrap()).dim(), 0);
        assert_eq!(kernel(&Matrix::zeros(f5, 2, 3).unwrap()).dim(), 3);
        let m = Matrix::from_rows(f5, &[vec![1, 1, 0]]).unwrap();
        let k = kernel(&m);
        assert_eq!(k.dim(), 2);
        assert_eq!(k.dim() + rank(&m), 3);
        for row in k.rows() {
            assert!(m.mul_vec(row).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn member_and_span_sum_examples() {
        let f = gf(7);
        let e = |i: usize| {
            let mut v = vec![0u32; 3];
            v[i] = 1;
            v
        };
        let b = RowBasis::span(f, 3, [e(1).as_slice()]).unwrap();
        assert!(b.member(&[0, 0, 0]).unwrap());
        assert!(b.member(&e(1)).unwrap());
        assert!(!b.member(&e(0)).unwrap());
        assert!(b.member(&[0, 0]).is_err());

        let a = RowBasis::span(f, 3, [e(0).as_slice()]).unwrap();
        let zero = RowBasis::zero(f, 3);
        assert_eq!(span_sum(&a, &zero).unwrap(), a);
        assert_eq!(span_sum(&a, &b).unwrap().dim(), 2);
        assert_eq!(span_sum(&a, &a).unwrap(), a);
        assert!(span_sum(&a, &RowBasis::zero(f, 4)).is_err());
    }

    #[test]
    fn rref_properties_on_random_matrices() {
        let mut rng = SplitMix64::seed_from_u64(2024);
        for case in 0..200 {
            let field = if case % 2 == 0 { gf(7) } else { gf(65521) };
            let rows = 1 + (rng.next_u64() % 9) as usize;
            let cols = 1 + (rng.next_u64() % 9) as usize;
            let m = random_matrix(&mut rng, field, rows, cols);
            let (r, rk) = rref(&m);
            assert!(is_rref(&r), "case {case}");
            assert_eq!(rref(&r), (r.clone(), rk));
            assert_eq!(rank(&m), rk);
            assert_eq!(rk + kernel(&m).dim(), cols);
            assert_eq!(RowBasis::span(field, cols, m.row_iter()).unwrap().dim(), rk);
        }
    }

    /// Brute force: enumerate every combination of the generating rows.
    fn member_brute(field: PrimeField, rows: &[Vec<u32>], v: &[u32]) -> bool {
        let p = field.modulus() as usize;
        let total = p.pow(rows.len() as u32);
        (0..total).any(|mut code| {
            let mut acc = vec![0u32; v.len()];
            for row in rows {
                let c = (code % p) as u32;
                code /= p;
                for (a, &x) in acc.iter_mut().zip(row) {
                    *a = field.add(*a, field.mul(c, x));
                }
            }
            acc == v
        })
    }

    #[test]
    fn member_agrees_with_brute_force() {
        let field = gf(3);
        let mut rng = SplitMix64::seed_from_u64(5);
        for _ in 0..150 {
            let ambient = 1 + (rng.next_u64() % 6) as usize;
            let nrows = (rng.next_u64() % 4) as usize;
            let rows: Vec<Vec<u32>> = (0..nrows)
                .map(|_| (0..ambient).map(|_| (rng.next_u64() % 3) as u32).collect())
                .collect();
            let b = RowBasis::span(field, ambient, rows.iter().map(Vec::as_slice)).unwrap();
            let v: Vec<u32> = (0..ambient).map(|_| (rng.next_u64() % 3) as u32).collect();
            assert_eq!(b.member(&v).unwrap(), member_brute(field, &rows, &v));
        }
    }

    #[test]
    fn lazy_reduction_survives_large_primes() {
        // With p near 2^31 only a handful of updates fit in a u64.
        let field = gf(2_147_483_647);
        let mut rng = SplitMix64::seed_from_u64(99);
        let m = random_matrix(&mut rng, field, 40, 30);
        let (r, rk) = rref(&m);
        assert!(is_rref(&r));
        let k = kernel(&m);
        assert_eq!(rk + k.dim(), 30);
        for row in k.rows() {
            assert!(m.mul_vec(row).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn guard_rejects_oversized_matrices() {
        let f = gf(7);
        assert!(matches!(
            Matrix::zeros_with_guard(f, 10, 10, 99),
            Err(Error::MatrixTooLarge { .. })
        ));
    }
}
