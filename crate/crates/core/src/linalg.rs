//! Dense exact linear algebra: matrices, reduced row echelon forms, kernels,
//! images and subspaces in RREF normal form.

use crate::error::{Error, Result};
use crate::field::Field;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn new(rows: usize, cols: usize, data: Vec<E>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::AmbientMismatch { left: data.len(), right: rows * cols });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vec<E>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend_from_slice(r);
        }
        Matrix { rows: rows.len(), cols, data }
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns<F: Field<Elem = E>>(field: &F, rows: usize, columns: &[Vec<E>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.data.iter().all(|e| field.is_zero(e))
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut out = vec![field.zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if field.is_zero(x) {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = &self.data[i * self.cols + j];
                if !field.is_zero(a) {
                    field.add_mul_assign(o, a, x);
                }
            }
        }
        out
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Matrix<E>) -> Matrix<E> {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Matrix::zeros(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !field.is_zero(b) {
                        let idx = i * out.cols + j;
                        field.add_mul_assign(&mut out.data[idx], a, b);
                    }
                }
            }
        }
        out
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Matrix<E>) -> Matrix<E> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| field.add(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, s: &E) -> Matrix<E> {
        let data = self.data.iter().map(|a| field.mul(a, s)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }
}

/// In-place Gauss-Jordan elimination on a list of rows. Returns the pivot
/// columns; the first `pivots.len()` rows are the nonzero RREF rows and the
/// remaining rows are dropped.
fn rref_rows<F: Field>(field: &F, rows: &mut Vec<Vec<F::Elem>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(&rows[r][c]).expect("nonzero pivot");
        if !field.is_one(&inv) {
            for x in rows[r][c..].iter_mut() {
                *x = field.mul(x, &inv);
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, tail) = tail.split_first_mut().unwrap();
        for other in head.iter_mut().chain(tail.iter_mut()) {
            if field.is_zero(&other[c]) {
                continue;
            }
            let factor = field.neg(&other[c]);
            for (x, y) in other[c..].iter_mut().zip(&pivot_row[c..]) {
                if !field.is_zero(y) {
                    field.add_mul_assign(x, &factor, y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Reduced row echelon form of `m` together with its pivot columns.
pub fn rref<F: Field>(field: &F, m: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let mut rows = m.row_vecs();
    let pivots = rref_rows(field, &mut rows, m.cols);
    let mut out = Matrix::zeros(field, m.rows, m.cols);
    for (i, r) in rows.iter().enumerate() {
        for (j, v) in r.iter().enumerate() {
            out.set(i, j, v.clone());
        }
    }
    (out, pivots)
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    let mut rows = m.row_vecs();
    rref_rows(field, &mut rows, m.cols).len()
}

/// Null space `{v : m v = 0}` as a subspace of `F^cols`.
pub fn kernel<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Subspace<F::Elem> {
    let mut rows = m.row_vecs();
    let pivots = rref_rows(field, &mut rows, m.cols);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for f in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); m.cols];
        v[f] = field.one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = field.neg(&rows[i][f]);
        }
        basis.push(v);
    }
    Subspace::span(field, m.cols, basis)
}

/// Column space of `m` as a subspace of `F^rows`.
pub fn image<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Subspace<F::Elem> {
    Subspace::span(field, m.rows, m.transpose().row_vecs())
}

pub fn kernel_image<F: Field>(
    field: &F,
    m: &Matrix<F::Elem>,
) -> (Subspace<F::Elem>, Subspace<F::Elem>) {
    (kernel(field, m), image(field, m))
}

/// Solves `m x = b`, returning one solution (free variables set to zero).
pub fn solve<F: Field>(field: &F, m: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    assert_eq!(b.len(), m.rows, "right-hand side length mismatch");
    let mut rows: Vec<Vec<F::Elem>> = (0..m.rows)
        .map(|r| {
            let mut row = m.row(r).to_vec();
            row.push(b[r].clone());
            row
        })
        .collect();
    let pivots = rref_rows(field, &mut rows, m.cols + 1);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![field.zero(); m.cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = rows[i][m.cols].clone();
    }
    Some(x)
}

/// A linear subspace of `F^ambient`, stored as the unique RREF basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<E> {
    ambient: usize,
    rows: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone + PartialEq> Subspace<E> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full<F: Field<Elem = E>>(field: &F, ambient: usize) -> Self {
        let rows = (0..ambient).map(|i| unit_vector(field, ambient, i)).collect();
        Subspace { ambient, rows, pivots: (0..ambient).collect() }
    }

    pub fn span<F: Field<Elem = E>, I: IntoIterator<Item = Vec<E>>>(
        field: &F,
        ambient: usize,
        vectors: I,
    ) -> Self {
        let mut rows: Vec<Vec<E>> = vectors
            .into_iter()
            .inspect(|v| assert_eq!(v.len(), ambient, "vector length mismatch"))
            .filter(|v| v.iter().any(|x| !field.is_zero(x)))
            .collect();
        let pivots = rref_rows(field, &mut rows, ambient);
        Subspace { ambient, rows, pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vec<E>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns that are not pivots; the standard vectors at these columns
    /// project to a basis of `F^ambient / self`.
    pub fn complement_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    pub fn as_matrix(&self) -> Matrix<E> {
        Matrix::from_rows(self.ambient, &self.rows)
    }

    /// Normal form of `v` modulo the subspace: pivot coordinates are cleared.
    pub fn reduce<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if field.is_zero(&out[p]) {
                continue;
            }
            let factor = field.neg(&out[p]);
            for (x, y) in out[p..].iter_mut().zip(&row[p..]) {
                if !field.is_zero(y) {
                    field.add_mul_assign(x, &factor, y);
                }
            }
        }
        out
    }

    pub fn contains_vector<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> bool {
        self.reduce(field, v).iter().all(|x| field.is_zero(x))
    }

    /// Coordinates of `v` in the RREF basis, if `v` lies in the subspace.
    pub fn coordinates<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Option<Vec<E>> {
        if !self.contains_vector(field, v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Coordinates without a membership check.
    pub fn coordinates_unchecked(&self, v: &[E]) -> Vec<E> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    /// Linear combination of the basis rows.
    pub fn combine<F: Field<Elem = E>>(&self, field: &F, coeffs: &[E]) -> Vec<E> {
        assert_eq!(coeffs.len(), self.dim(), "coefficient count mismatch");
        let mut out = vec![field.zero(); self.ambient];
        for (c, row) in coeffs.iter().zip(&self.rows) {
            if field.is_zero(c) {
                continue;
            }
            for (o, x) in out.iter_mut().zip(row) {
                if !field.is_zero(x) {
                    field.add_mul_assign(o, c, x);
                }
            }
        }
        out
    }

    /// Adds `v` to the subspace; returns false if it was already contained.
    pub fn insert<F: Field<Elem = E>>(&mut self, field: &F, v: &[E]) -> bool {
        let mut w = self.reduce(field, v);
        let Some(c) = w.iter().position(|x| !field.is_zero(x)) else {
            return false;
        };
        let inv = field.inv(&w[c]).unwrap();
        for x in w.iter_mut() {
            *x = field.mul(x, &inv);
        }
        for row in self.rows.iter_mut() {
            if field.is_zero(&row[c]) {
                continue;
            }
            let factor = field.neg(&row[c]);
            for (x, y) in row.iter_mut().zip(&w) {
                if !field.is_zero(y) {
                    field.add_mul_assign(x, &factor, y);
                }
            }
        }
        let pos = self.pivots.partition_point(|&p| p < c);
        self.rows.insert(pos, w);
        self.pivots.insert(pos, c);
        true
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch { left: self.ambient, right: other.ambient });
        }
        Ok(())
    }

    pub fn sum<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for v in &other.rows {
            out.insert(field, v);
        }
        Ok(out)
    }

    pub fn intersect<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        // (a, b) with sum a_i A_i - sum b_j B_j = 0
        let mut cols: Vec<Vec<E>> = self.rows.clone();
        cols.extend(other.rows.iter().map(|r| r.iter().map(|x| field.neg(x)).collect()));
        let m = Matrix::from_columns(field, self.ambient, &cols);
        let ker = kernel(field, &m);
        let vecs = ker.rows.iter().map(|c| self.combine(field, &c[..self.dim()])).collect::<Vec<_>>();
        Ok(Subspace::span(field, self.ambient, vecs))
    }

    /// Whether `other ⊆ self`.
    pub fn contains<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(other.rows.iter().all(|v| self.contains_vector(field, v)))
    }

    /// `dim self - dim sub` for `sub ⊆ self`.
    pub fn quotient_dim<F: Field<Elem = E>>(&self, field: &F, sub: &Self) -> Result<usize> {
        if !self.contains(field, sub)? {
            return Err(Error::NotContained);
        }
        Ok(self.dim() - sub.dim())
    }
}

pub fn unit_vector<F: Field>(field: &F, n: usize, i: usize) -> Vec<F::Elem> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

pub fn vec_add<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(x, y)| field.add(x, y)).collect()
}

pub fn vec_scale<F: Field>(field: &F, s: &F::Elem, a: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().map(|x| field.mul(s, x)).collect()
}

pub fn vec_is_zero<F: Field>(field: &F, a: &[F::Elem]) -> bool {
    a.iter().all(|x| field.is_zero(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, Rationals};
    use proptest::prelude::*;

    fn f2() -> FiniteField {
        FiniteField::prime(2).unwrap()
    }

    #[test]
    fn rref_identity_and_zero() {
        let f = FiniteField::prime(5).unwrap();
        let id = Matrix::identity(&f, 2);
        assert_eq!(rref(&f, &id), (id.clone(), vec![0, 1]));
        let z = Matrix::zeros(&f, 3, 3);
        assert_eq!(rref(&f, &z), (z.clone(), vec![]));
    }

    #[test]
    fn rref_over_f2() {
        let f = f2();
        let m = Matrix::new(2, 2, vec![1, 1, 1, 1]).unwrap();
        let (r, piv) = rref(&f, &m);
        assert_eq!(r, Matrix::new(2, 2, vec![1, 1, 0, 0]).unwrap());
        assert_eq!(piv, vec![0]);
    }

    #[test]
    fn kernel_image_over_rationals() {
        let q = Rationals;
        let m = Matrix::new(2, 2, [1, 2, 2, 4].iter().map(|&x| q.from_int(x)).collect()).unwrap();
        let (ker, im) = kernel_image(&q, &m);
        assert_eq!(ker, Subspace::span(&q, 2, vec![vec![q.from_int(-2), q.from_int(1)]]));
        assert_eq!(im, Subspace::span(&q, 2, vec![vec![q.from_int(1), q.from_int(2)]]));
        for v in ker.basis() {
            assert!(vec_is_zero(&q, &m.mul_vec(&q, v)));
        }
    }

    #[test]
    fn kernel_image_extremes() {
        let f = FiniteField::prime(3).unwrap();
        let (k, i) = kernel_image(&f, &Matrix::identity(&f, 4));
        assert_eq!((k.dim(), i.dim()), (0, 4));
        let (k, i) = kernel_image(&f, &Matrix::zeros(&f, 3, 4));
        assert_eq!((k.dim(), i.dim()), (4, 0));
    }

    #[test]
    fn subspace_trivial_ops() {
        let f = FiniteField::prime(3).unwrap();
        let v = Subspace::span(&f, 3, vec![vec![1, 2, 0], vec![0, 1, 1]]);
        assert_eq!(v.sum(&f, &Subspace::zero(3)).unwrap(), v);
        assert_eq!(v.intersect(&f, &v).unwrap(), v);
        assert!(v.contains(&f, &Subspace::zero(3)).unwrap());
        assert_eq!(v.quotient_dim(&f, &Subspace::zero(3)).unwrap(), 2);
        assert!(matches!(
            Subspace::zero(3).quotient_dim(&f, &v),
            Err(Error::NotContained)
        ));
        assert!(v.sum(&f, &Subspace::zero(4)).is_err());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let f = FiniteField::prime(7).unwrap();
        let m = Matrix::new(2, 3, vec![1, 2, 3, 0, 1, 4]).unwrap();
        let x = solve(&f, &m, &[5, 6]).unwrap();
        assert_eq!(m.mul_vec(&f, &x), vec![5, 6]);
        let m = Matrix::new(2, 2, vec![1, 1, 1, 1]).unwrap();
        assert!(solve(&f, &m, &[0, 1]).is_none());
    }

    /// Enumerates all vectors in the span over F_2 (brute-force oracle).
    fn enumerate_span(rows: &[Vec<u32>], n: usize) -> std::collections::BTreeSet<Vec<u32>> {
        let mut out = std::collections::BTreeSet::new();
        for mask in 0u32..(1 << rows.len()) {
            let mut v = vec![0u32; n];
            for (i, r) in rows.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    for (x, y) in v.iter_mut().zip(r) {
                        *x ^= y;
                    }
                }
            }
            out.insert(v);
        }
        out
    }

    fn vecs(n: usize, k: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
        proptest::collection::vec(proptest::collection::vec(0u32..2, n), 0..=k)
    }

    proptest! {
        #[test]
        fn modular_law_matches_enumeration(a in vecs(6, 5), b in vecs(6, 5)) {
            let f = f2();
            let sa = Subspace::span(&f, 6, a.clone());
            let sb = Subspace::span(&f, 6, b.clone());
            let sum = sa.sum(&f, &sb).unwrap();
            let cap = sa.intersect(&f, &sb).unwrap();
            prop_assert_eq!(sum.dim() + cap.dim(), sa.dim() + sb.dim());
            // oracle: count vectors by enumeration
            let ea = enumerate_span(&a, 6);
            let eb = enumerate_span(&b, 6);
            let both: Vec<_> = ea.intersection(&eb).collect();
            prop_assert_eq!(both.len(), 1usize << cap.dim());
            let mut all = a.clone();
            all.extend(b.clone());
            prop_assert_eq!(enumerate_span(&all, 6).len(), 1usize << sum.dim());
        }

        #[test]
        fn rref_idempotent_and_rank_nullity(rows in 1usize..6, cols in 1usize..7, seed in any::<u64>()) {
            let f = FiniteField::prime(3).unwrap();
            let mut s = seed;
            let data: Vec<u32> = (0..rows * cols).map(|_| { s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); ((s >> 33) % 3) as u32 }).collect();
            let m = Matrix::new(rows, cols, data).unwrap();
            let (r, piv) = rref(&f, &m);
            prop_assert!(piv.windows(2).all(|w| w[0] < w[1]));
            prop_assert_eq!(rref(&f, &r).0, r);
            let (k, i) = kernel_image(&f, &m);
            prop_assert_eq!(k.dim() + i.dim(), cols);
            for v in k.basis() {
                prop_assert!(vec_is_zero(&f, &m.mul_vec(&f, v)));
            }
        }

        #[test]
        fn insert_matches_span(a in vecs(5, 6)) {
            let f = f2();
            let mut s = Subspace::zero(5);
            for v in &a {
                s.insert(&f, v);
            }
            prop_assert_eq!(s, Subspace::span(&f, 5, a));
        }
    }
}
