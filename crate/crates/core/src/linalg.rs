//! Exact linear algebra over F_q.
//!
//! Subspaces are stored canonically: the basis vectors are the nonzero
//! rows of the reduced row echelon form of any spanning set, kept as the
//! columns of an `ambient x dim` matrix. Equal subspaces therefore compare
//! equal entry by entry.

use std::fmt;

use crate::error::{Error, Result};
use crate::galois::{Elem, Field};

#[derive(Clone, PartialEq, Eq)]
pub struct FqMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Output of [`FqMatrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: FqMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl FqMatrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Result<FqMatrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        for &e in &data {
            field.check(e as u64)?;
        }
        Ok(FqMatrix { field: field.clone(), rows, cols, data })
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> FqMatrix {
        FqMatrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> FqMatrix {
        let mut m = FqMatrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from rows; an empty list gives a `0 x 0` matrix.
    pub fn from_rows(field: &Field, rows: &[Vec<Elem>]) -> Result<FqMatrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        FqMatrix::new(field, rows.len(), cols, rows.concat())
    }

    /// Builds an `n x vectors.len()` matrix with the given vectors as columns.
    pub fn from_columns(field: &Field, n: usize, vectors: &[Vec<Elem>]) -> Result<FqMatrix> {
        if vectors.iter().any(|v| v.len() != n) {
            return Err(Error::DimensionMismatch(format!("columns must have length {n}")));
        }
        let mut m = FqMatrix::zeros(field, n, vectors.len());
        for (j, v) in vectors.iter().enumerate() {
            for (i, &e) in v.iter().enumerate() {
                m.data[i * vectors.len() + j] = field.check(e as u64)?;
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn column_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> FqMatrix {
        let mut t = FqMatrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    /// The first `n` columns.
    pub fn prefix(&self, n: usize) -> FqMatrix {
        self.select_columns(&(0..n.min(self.cols)).collect::<Vec<_>>())
    }

    pub fn select_columns(&self, idx: &[usize]) -> FqMatrix {
        let mut m = FqMatrix::zeros(&self.field, self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                m.data[i * idx.len() + k] = self.get(i, j);
            }
        }
        m
    }

    /// Horizontal concatenation. All parts must share the row count.
    pub fn hconcat(field: &Field, rows: usize, parts: &[FqMatrix]) -> Result<FqMatrix> {
        if parts.iter().any(|p| p.rows != rows) {
            return Err(Error::DimensionMismatch("row counts differ".into()));
        }
        if parts.iter().any(|p| &p.field != field) {
            return Err(Error::FieldMismatch);
        }
        let cols: usize = parts.iter().map(|p| p.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for p in parts {
                data.extend_from_slice(p.row(i));
            }
        }
        Ok(FqMatrix { field: field.clone(), rows, cols, data })
    }

    pub fn mul(&self, other: &FqMatrix) -> Result<FqMatrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = FqMatrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    /// `M v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        let f = &self.field;
        Ok((0..self.rows).map(|i| self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))).collect())
    }

    /// `v M` for a row vector `v`.
    pub fn vec_mul(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!("vector of length {} for {} rows", v.len(), self.rows)));
        }
        let f = &self.field;
        let mut out = vec![0; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(a, self.get(i, j)));
            }
        }
        Ok(out)
    }

    pub fn rref(&self) -> Rref {
        self.rref_limited(self.cols)
    }

    /// Row reduction that only pivots in the first `limit` columns. The
    /// remaining columns are carried along, which is how augmented systems
    /// track the applied row operations.
    pub fn rref_limited(&self, limit: usize) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit.min(self.cols) {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv_nonzero(m.get(r, c));
            for j in 0..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { reduced: m, rank: r, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        rank_of_rows(&self.field, self.row_vecs())
    }

    /// Right null space `{v : M v = 0}`.
    pub fn kernel_basis(&self) -> Subspace {
        let Rref { reduced, pivots, .. } = self.rref();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let vectors: Vec<Vec<Elem>> = free
            .iter()
            .map(|&fc| {
                let mut v = vec![0; self.cols];
                v[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(reduced.get(r, fc));
                }
                v
            })
            .collect();
        Subspace::span(f, self.cols, &vectors).expect("kernel vectors have the ambient length")
    }

    /// Left null space `{v : v M = 0}`.
    pub fn left_kernel_basis(&self) -> Subspace {
        self.transpose().kernel_basis()
    }

    pub fn inverse(&self) -> Result<FqMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare(format!("{}x{}", self.rows, self.cols)));
        }
        let n = self.rows;
        let aug = FqMatrix::hconcat(&self.field, n, &[self.clone(), FqMatrix::identity(&self.field, n)])?;
        let r = aug.rref_limited(n);
        if r.rank < n {
            return Err(Error::Singular);
        }
        let idx: Vec<usize> = (n..2 * n).collect();
        Ok(r.reduced.select_columns(&idx))
    }
}

/// Rank of a list of equal-length row vectors (consumed).
pub fn rank_of_rows(f: &Field, mut rows: Vec<Vec<Elem>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv_nonzero(rows[r][c]);
        let pivot_row: Vec<Elem> = rows[r].iter().map(|&x| f.mul(x, inv)).collect();
        for row in rows.iter_mut().skip(r + 1) {
            let factor = row[c];
            if factor != 0 {
                for (x, &pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *x = f.sub(*x, f.mul(factor, pv));
                }
            }
        }
        rows[r] = pivot_row;
        r += 1;
    }
    r
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FqMatrix[{}]{:?}", self.field, self.row_vecs())
    }
}

impl fmt::Display for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(u32::to_string).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// A subspace of F_q^K in canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: FqMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Span of arbitrary vectors of length `ambient`.
    pub fn span(field: &Field, ambient: usize, vectors: &[Vec<Elem>]) -> Result<Subspace> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::AmbientMismatch(v.len(), ambient));
        }
        let gens =
            if vectors.is_empty() { FqMatrix::zeros(field, 0, ambient) } else { FqMatrix::from_rows(field, vectors)? };
        let Rref { reduced, rank, pivots } = gens.rref();
        let rows: Vec<Vec<Elem>> = (0..rank).map(|i| reduced.row(i).to_vec()).collect();
        let basis = FqMatrix::from_columns(field, ambient, &rows)?;
        Ok(Subspace { ambient, basis, pivots })
    }

    /// Column space of `m`.
    pub fn column_space(m: &FqMatrix) -> Subspace {
        Subspace::span(m.field(), m.rows(), &m.column_vecs()).expect("columns have the row count")
    }

    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace::span(field, ambient, &[]).expect("empty span")
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        Subspace::column_space(&FqMatrix::identity(field, ambient))
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Basis matrix, one basis vector per column.
    pub fn basis(&self) -> &FqMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Elem>> {
        self.basis.column_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Reduces `v` against the canonical basis; the result is zero iff `v`
    /// lies in the subspace.
    fn reduce(&self, v: &[Elem]) -> Vec<Elem> {
        let f = self.field();
        let mut out = v.to_vec();
        for (k, &p) in self.pivots.iter().enumerate() {
            let c = out[p];
            if c != 0 {
                for (i, o) in out.iter_mut().enumerate() {
                    *o = f.sub(*o, f.mul(c, self.basis.get(i, k)));
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        v.len() == self.ambient && self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis_vectors().iter().all(|v| other.contains(v))
    }

    /// Span of the standard basis vectors at the non-pivot positions.
    pub fn complement(&self) -> Subspace {
        let vectors: Vec<Vec<Elem>> = self
            .non_pivots()
            .into_iter()
            .map(|j| {
                let mut e = vec![0; self.ambient];
                e[j] = 1;
                e
            })
            .collect();
        Subspace::span(self.field(), self.ambient, &vectors).expect("unit vectors")
    }

    fn non_pivots(&self) -> Vec<usize> {
        (0..self.ambient).filter(|j| !self.pivots.contains(j)).collect()
    }

    /// The map F_q^K -> F_q^(K - dim) with kernel exactly this subspace, as
    /// a `(K - dim) x K` matrix. It sends the complement's unit vectors to
    /// the standard basis in order.
    pub fn quotient_map(&self) -> FqMatrix {
        let f = self.field();
        let free = self.non_pivots();
        let mut q = FqMatrix::zeros(f, free.len(), self.ambient);
        for (t, &j) in free.iter().enumerate() {
            q.set(t, j, 1);
            for (k, &p) in self.pivots.iter().enumerate() {
                q.set(t, p, f.neg(self.basis.get(j, k)));
            }
        }
        q
    }

    pub fn sum(field: &Field, ambient: usize, parts: &[Subspace]) -> Result<Subspace> {
        let mut vectors = Vec::new();
        for s in parts {
            if s.ambient != ambient {
                return Err(Error::AmbientMismatch(s.ambient, ambient));
            }
            if s.field() != field {
                return Err(Error::FieldMismatch);
            }
            vectors.extend(s.basis_vectors());
        }
        Subspace::span(field, ambient, &vectors)
    }

    pub fn add(&self, other: &Subspace) -> Result<Subspace> {
        Subspace::sum(self.field(), self.ambient, &[self.clone(), other.clone()])
    }

    pub fn intersection_dim(&self, other: &Subspace) -> Result<usize> {
        Ok(self.dim() + other.dim() - self.add(other)?.dim())
    }

    /// Image under a linear map given as a matrix with `ambient` columns.
    pub fn image(&self, map: &FqMatrix) -> Result<Subspace> {
        if map.cols() != self.ambient {
            return Err(Error::AmbientMismatch(map.cols(), self.ambient));
        }
        let vectors = self.basis_vectors().iter().map(|v| map.mul_vec(v)).collect::<Result<Vec<_>>>()?;
        Subspace::span(self.field(), map.rows(), &vectors)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}: {:?})", self.dim(), self.ambient, self.basis_vectors())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::make_field;
    use proptest::prelude::*;

    fn f5() -> Field {
        make_field(5, 1).unwrap()
    }

    #[test]
    fn rref_examples() {
        let f = f5();
        let id = FqMatrix::identity(&f, 3).rref();
        assert_eq!((id.rank, id.pivots), (3, vec![0, 1, 2]));

        let m = FqMatrix::from_rows(&f, &[vec![1, 1, 1], vec![3, 2, 2], vec![1, 4, 4]]).unwrap();
        assert_eq!(m.rref().rank, 2);

        let z = FqMatrix::zeros(&f, 2, 4).rref();
        assert_eq!((z.rank, z.pivots), (0, vec![]));
    }

    #[test]
    fn kernel_examples() {
        let f = f5();
        assert_eq!(FqMatrix::identity(&f, 4).kernel_basis().dim(), 0);
        assert_eq!(FqMatrix::zeros(&f, 3, 3).kernel_basis().dim(), 3);

        let m = FqMatrix::from_rows(&f, &[vec![1, 4]]).unwrap();
        let k = m.kernel_basis();
        // all solutions of a + 4b = 0 by enumeration
        let sols: Vec<(u32, u32)> =
            (0..5).flat_map(|a| (0..5).map(move |b| (a, b))).filter(|&(a, b)| (a + 4 * b) % 5 == 0).collect();
        assert_eq!(sols.len(), 5);
        assert_eq!(k.dim(), 1);
        for (a, b) in sols {
            assert!(k.contains(&[a, b]));
        }
        assert!(k.contains(&[1, 1]));
    }

    #[test]
    fn complement_examples() {
        let f = f5();
        let b = Subspace::span(&f, 3, &[vec![1, 0, 0]]).unwrap();
        let w = b.complement();
        assert_eq!(w, Subspace::span(&f, 3, &[vec![0, 1, 0], vec![0, 0, 1]]).unwrap());

        let f2 = make_field(2, 1).unwrap();
        assert!(Subspace::zero(&f2, 4).complement().is_full());

        let b = Subspace::span(&f2, 2, &[vec![1, 1]]).unwrap();
        let w = b.complement();
        assert_eq!(w, Subspace::span(&f2, 2, &[vec![0, 1]]).unwrap());
        // exhaustive: the only vector in both is zero, and together they cover F_2^2
        let all: Vec<Vec<u32>> = (0..4).map(|n| vec![n & 1, n >> 1]).collect();
        let common = all.iter().filter(|v| b.contains(v) && w.contains(v)).count();
        assert_eq!(common, 1);
        assert!(b.add(&w).unwrap().is_full());
    }

    #[test]
    fn quotient_map_examples() {
        let f = f5();
        assert_eq!(Subspace::zero(&f, 3).quotient_map(), FqMatrix::identity(&f, 3));
        let q = Subspace::full(&f, 3).quotient_map();
        assert_eq!((q.rows(), q.cols()), (0, 3));

        let b = Subspace::span(&f, 3, &[vec![1, 0, 0]]).unwrap();
        let q = b.quotient_map();
        assert_eq!(q, FqMatrix::from_rows(&f, &[vec![0, 1, 0], vec![0, 0, 1]]).unwrap());
        assert_eq!(q.mul_vec(&[1, 0, 0]).unwrap(), vec![0, 0]);
    }

    #[test]
    fn sum_examples() {
        let f2 = make_field(2, 1).unwrap();
        let e1 = Subspace::span(&f2, 2, &[vec![1, 0]]).unwrap();
        let e2 = Subspace::span(&f2, 2, &[vec![0, 1]]).unwrap();
        assert!(Subspace::sum(&f2, 2, &[e1.clone(), e2]).unwrap().is_full());
        assert_eq!(Subspace::sum(&f2, 2, &[e1.clone(), e1.clone()]).unwrap(), e1);

        let parts: Vec<Subspace> = [vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 0]]
            .into_iter()
            .map(|v| Subspace::span(&f2, 3, &[v]).unwrap())
            .collect();
        assert_eq!(Subspace::sum(&f2, 3, &parts).unwrap().dim(), 2);

        let e3 = Subspace::zero(&f2, 3);
        assert_eq!(Subspace::sum(&f2, 2, &[e1, e3]), Err(Error::AmbientMismatch(3, 2)));
    }

    #[test]
    fn inverse_round_trip() {
        let f = f5();
        let m = FqMatrix::from_rows(&f, &[vec![1, 0, 0], vec![4, 1, 0], vec![4, 3, 1]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), FqMatrix::identity(&f, 3));
        assert_eq!(FqMatrix::zeros(&f, 2, 2).inverse(), Err(Error::Singular));
    }

    fn matrix_strategy() -> impl Strategy<Value = FqMatrix> {
        (prop::sample::select(vec![2u64, 3, 5]), 0usize..=6, 0usize..=6).prop_flat_map(|(p, r, c)| {
            prop::collection::vec(0..p as u32, r * c)
                .prop_map(move |data| FqMatrix::new(&make_field(p, 1).unwrap(), r, c, data).unwrap())
        })
    }

    proptest! {
        #[test]
        fn rank_is_transpose_invariant(m in matrix_strategy()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
            prop_assert_eq!(m.rank(), m.rref().rank);
        }

        #[test]
        fn rank_nullity(m in matrix_strategy()) {
            let k = m.kernel_basis();
            prop_assert_eq!(k.dim() + m.rank(), m.cols());
            for v in k.basis_vectors() {
                prop_assert!(m.mul_vec(&v).unwrap().iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn complement_and_quotient(m in matrix_strategy()) {
            let b = Subspace::column_space(&m);
            let w = b.complement();
            prop_assert_eq!(b.dim() + w.dim(), b.ambient_dim());
            prop_assert!(b.add(&w).unwrap().is_full());
            prop_assert_eq!(b.intersection_dim(&w).unwrap(), 0);

            let q = b.quotient_map();
            prop_assert_eq!(q.rows(), b.ambient_dim() - b.dim());
            for v in b.basis_vectors() {
                prop_assert!(q.mul_vec(&v).unwrap().iter().all(|&x| x == 0));
            }
            // Q restricted to W is invertible
            let restricted = q.mul(w.basis()).unwrap();
            prop_assert_eq!(restricted.rank(), w.dim());
            prop_assert_eq!(q.rank(), q.rows());
        }
    }
}
