use std::fmt;

use crate::config;
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::scalar::Scalar;

/// Sparse coordinate vector: strictly increasing indices, no zero values.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Sums duplicate indices and drops zeros. Input order is irrelevant.
pub fn normalize_vec(mut entries: Vec<(usize, Scalar)>) -> SparseVec {
    entries.sort_unstable_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(entries.len());
    for (i, v) in entries {
        if let Some((j, acc)) = out.last_mut() {
            if *j == i {
                *acc += &v;
                continue;
            }
        }
        out.push((i, v));
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// `a + c * b` for sorted sparse vectors.
pub fn axpy(a: &[(usize, Scalar)], c: &Scalar, b: &[(usize, Scalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + &(c * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale_vec(c: &Scalar, v: &[(usize, Scalar)]) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, c * x)).collect()
}

/// Exact sparse matrix, stored column by column.
///
/// Column `j` is the image of the `j`-th basis vector, which is how every
/// structure map in the crate is read.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseMat {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

pub(crate) fn checked_dim(what: &str, a: usize, b: usize) -> Result<usize> {
    let bound = config::index_bound();
    checked_dim_with(what, a, b, bound)
}

pub(crate) fn checked_dim_with(what: &str, a: usize, b: usize, bound: usize) -> Result<usize> {
    let size = a as u128 * b as u128;
    if size > bound as u128 {
        return Err(Error::IndexOverflow { what: what.to_string(), size, bound });
    }
    Ok(size as usize)
}

impl SparseMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMat { rows, cols, data: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal((0..n).map(|_| Scalar::one()).collect())
    }

    pub fn diagonal(diag: Vec<Scalar>) -> Self {
        let n = diag.len();
        let data =
            diag.into_iter().enumerate().map(|(i, v)| if v.is_zero() { Vec::new() } else { vec![(i, v)] }).collect();
        SparseMat { rows: n, cols: n, data }
    }

    /// Builds a matrix from `(row, col, value)` triples; duplicates are summed.
    pub fn from_triplets<I>(rows: usize, cols: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut buckets: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); cols];
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(Error::OutOfBounds { row: r, col: c, rows, cols });
            }
            buckets[c].push((r, v));
        }
        let data = buckets.into_iter().map(normalize_vec).collect();
        Ok(SparseMat { rows, cols, data })
    }

    /// Builds a matrix from already-normalized columns.
    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Result<Self> {
        for (c, col) in columns.iter().enumerate() {
            if let Some((r, _)) = col.last() {
                if *r >= rows {
                    return Err(Error::OutOfBounds { row: *r, col: c, rows, cols: columns.len() });
                }
            }
            debug_assert!(col.windows(2).all(|w| w[0].0 < w[1].0));
            debug_assert!(col.iter().all(|(_, v)| !v.is_zero()));
        }
        Ok(SparseMat { rows, cols: columns.len(), data: columns })
    }

    /// Dense row-major integer literal, mainly for tests and examples.
    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let entries = rows.iter().enumerate().flat_map(|(i, row)| {
            assert_eq!(row.len(), c, "ragged dense literal");
            row.iter().enumerate().map(move |(j, &v)| (i, j, Scalar::from_int(v)))
        });
        Self::from_triplets(r, c, entries).expect("dense literal in bounds")
    }

    pub fn from_dense_scalars(rows: &[Vec<Scalar>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let entries =
            rows.iter().enumerate().flat_map(|(i, row)| row.iter().enumerate().map(move |(j, v)| (i, j, v.clone())));
        Self::from_triplets(r, c, entries).expect("dense literal in bounds")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn col(&self, j: usize) -> &[(usize, Scalar)] {
        &self.data[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn into_columns(self) -> Vec<SparseVec> {
        self.data
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        match self.data[c].binary_search_by_key(&r, |e| e.0) {
            Ok(k) => self.data[c][k].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    /// Nonzero entries as `(row, col, value)`, column-major.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.data.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![Scalar::zero(); self.cols]; self.rows];
        for (r, c, v) in self.triplets() {
            out[r][c] = v.clone();
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut buckets: Vec<SparseVec> = vec![Vec::new(); self.rows];
        for (r, c, v) in self.triplets() {
            buckets[r].push((c, v.clone()));
        }
        SparseMat { rows: self.cols, cols: self.rows, data: buckets }
    }

    fn same_shape(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch { op, left: self.shape(), right: other.shape() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.axpy(&Scalar::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.axpy(&-Scalar::one(), other)
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &Scalar, other: &Self) -> Result<Self> {
        self.same_shape(other, "add")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| axpy(a, c, b)).collect();
        Ok(SparseMat { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let data = self.data.iter().map(|col| scale_vec(c, col)).collect();
        SparseMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[(usize, Scalar)]) -> Result<SparseVec> {
        if let Some((i, _)) = v.last() {
            if *i >= self.cols {
                return Err(Error::ShapeMismatch { op: "apply", left: self.shape(), right: (*i + 1, 1) });
            }
        }
        let mut acc = Vec::new();
        for (k, x) in v {
            acc.extend(self.data[*k].iter().map(|(r, y)| (*r, x * y)));
        }
        Ok(normalize_vec(acc))
    }

    /// The product `self * other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.compose_with(other, Exec::Sequential)
    }

    pub fn compose_with(&self, other: &Self, exec: Exec) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch { op: "compose", left: self.shape(), right: other.shape() });
        }
        let column = |j: usize| {
            let mut acc = Vec::new();
            for (k, x) in &other.data[j] {
                acc.extend(self.data[*k].iter().map(|(r, y)| (*r, y * x)));
            }
            normalize_vec(acc)
        };
        // small products are not worth a task per column
        let exec = if other.nnz() < 4096 { Exec::Sequential } else { exec };
        let data = exec.map_range(other.cols, column);
        Ok(SparseMat { rows: self.rows, cols: other.cols, data })
    }

    /// Kronecker product with the left factor as the most significant index digit.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        self.kron_bounded(other, config::index_bound())
    }

    pub fn kron_bounded(&self, other: &Self, bound: usize) -> Result<Self> {
        let rows = checked_dim_with("kron rows", self.rows, other.rows, bound)?;
        let cols = checked_dim_with("kron cols", self.cols, other.cols, bound)?;
        let mut data = Vec::with_capacity(cols);
        for a_col in &self.data {
            for b_col in &other.data {
                let mut col = Vec::with_capacity(a_col.len() * b_col.len());
                for (ia, x) in a_col {
                    for (ib, y) in b_col {
                        col.push((ia * other.rows + ib, x * y));
                    }
                }
                data.push(col);
            }
        }
        Ok(SparseMat { rows, cols, data })
    }

    /// Column-major flattening: entry `(r, c)` goes to index `c * rows + r`.
    pub fn vectorize(&self) -> SparseVec {
        self.triplets().map(|(r, c, v)| (c * self.rows + r, v.clone())).collect()
    }

    /// Inverse of [`SparseMat::vectorize`].
    pub fn unvectorize(rows: usize, cols: usize, v: &[(usize, Scalar)]) -> Result<Self> {
        let len = rows * cols;
        let entries = v.iter().map(|(i, x)| {
            if *i >= len {
                Err(Error::OutOfBounds { row: *i, col: 0, rows: len, cols: 1 })
            } else {
                Ok((i % rows.max(1), i / rows.max(1), x.clone()))
            }
        });
        let entries = entries.collect::<Result<Vec<_>>>()?;
        Self::from_triplets(rows, cols, entries)
    }

    /// Places `blocks[i][j]` in a grid; every block in a grid row shares a
    /// row count and every block in a grid column shares a column count.
    pub fn block(blocks: &[Vec<&SparseMat>]) -> Result<Self> {
        let row_heights: Vec<usize> = blocks.iter().map(|r| r[0].rows).collect();
        let col_widths: Vec<usize> = blocks[0].iter().map(|b| b.cols).collect();
        let rows: usize = row_heights.iter().sum();
        let cols: usize = col_widths.iter().sum();
        let mut data: Vec<SparseVec> = vec![Vec::new(); cols];
        let mut col_off = 0;
        for (bj, &w) in col_widths.iter().enumerate() {
            let mut row_off = 0;
            for (bi, &h) in row_heights.iter().enumerate() {
                let b = blocks[bi][bj];
                if b.shape() != (h, w) {
                    return Err(Error::ShapeMismatch { op: "block", left: (h, w), right: b.shape() });
                }
                for (c, col) in b.data.iter().enumerate() {
                    data[col_off + c].extend(col.iter().map(|(r, v)| (r + row_off, v.clone())));
                }
                row_off += h;
            }
            col_off += w;
        }
        Ok(SparseMat { rows, cols, data })
    }

    /// Rows `[start, start + len)` as a new matrix.
    pub fn row_slice(&self, start: usize, len: usize) -> Self {
        let data = self
            .data
            .iter()
            .map(|col| {
                col.iter()
                    .filter(|(r, _)| *r >= start && *r < start + len)
                    .map(|(r, v)| (r - start, v.clone()))
                    .collect()
            })
            .collect();
        SparseMat { rows: len, cols: self.cols, data }
    }

    /// Columns `[start, start + len)` as a new matrix.
    pub fn col_slice(&self, start: usize, len: usize) -> Self {
        SparseMat { rows: self.rows, cols: len, data: self.data[start..start + len].to_vec() }
    }
}

impl fmt::Debug for SparseMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMat {}x{} [", self.rows, self.cols)?;
        for (i, (r, c, v)) in self.triplets().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({r},{c}):{v}")?;
        }
        write!(f, "]")
    }
}

/// Dense schoolbook product, used as an oracle in tests.
pub fn dense_mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![Scalar::zero(); m]; n];
    for i in 0..n {
        for j in 0..m {
            let mut acc = Scalar::zero();
            for t in 0..k {
                acc += &(&a[i][t] * &b[t][j]);
            }
            out[i][j] = acc;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_mat(rows: usize, cols: usize) -> impl Strategy<Value = SparseMat> {
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, cols), rows)
            .prop_map(|d| SparseMat::from_dense(&d))
    }

    #[test]
    fn kron_identities() {
        let i2 = SparseMat::identity(2);
        assert_eq!(i2.kron(&i2).unwrap(), SparseMat::identity(4));
        let n = SparseMat::from_dense(&[vec![0, 1], vec![0, 0]]);
        let k = n.kron(&i2).unwrap();
        let expected = SparseMat::from_triplets(4, 4, [(0, 2, Scalar::one()), (1, 3, Scalar::one())]).unwrap();
        assert_eq!(k, expected);
    }

    #[test]
    fn kron_overflow_is_reported() {
        let a = SparseMat::identity(100);
        let err = a.kron_bounded(&a, 5000).unwrap_err();
        assert!(matches!(err, Error::IndexOverflow { size: 10000, bound: 5000, .. }));
    }

    #[test]
    fn compose_identity_and_inverse() {
        let a = SparseMat::from_dense(&[vec![1, 2, 0], vec![0, -1, 3], vec![4, 0, 5]]);
        assert_eq!(SparseMat::identity(3).compose(&a).unwrap(), a);
        assert!(a.add(&a.scale(&Scalar::from_int(-1))).unwrap().is_zero());
        assert!(matches!(a.compose(&SparseMat::identity(2)), Err(Error::ShapeMismatch { op: "compose", .. })));
        assert!(a.add(&SparseMat::identity(2)).is_err());
    }

    #[test]
    fn vectorize_round_trip() {
        let a = SparseMat::from_dense(&[vec![1, 0], vec![0, 2], vec![3, 0]]);
        let v = a.vectorize();
        assert_eq!(v, vec![(0, Scalar::from_int(1)), (2, Scalar::from_int(3)), (4, Scalar::from_int(2))]);
        assert_eq!(SparseMat::unvectorize(3, 2, &v).unwrap(), a);
    }

    #[test]
    fn normalize_cancels() {
        let v = normalize_vec(vec![
            (3, Scalar::one()),
            (1, Scalar::from_int(2)),
            (3, -Scalar::one()),
            (1, Scalar::from_int(-1)),
        ]);
        assert_eq!(v, vec![(1, Scalar::one())]);
    }

    proptest! {
        #[test]
        fn mixed_product_law(a in small_mat(2, 2), b in small_mat(2, 2), c in small_mat(2, 2), d in small_mat(2, 2)) {
            let lhs = a.kron(&b).unwrap().compose(&c.kron(&d).unwrap()).unwrap();
            let rhs = a.compose(&c).unwrap().kron(&b.compose(&d).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn compose_matches_dense(a in small_mat(3, 3), b in small_mat(3, 3), c in small_mat(3, 2)) {
            let ab = a.compose(&b).unwrap();
            prop_assert_eq!(ab.to_dense(), dense_mul(&a.to_dense(), &b.to_dense()));
            let left = ab.compose(&c).unwrap();
            let right = a.compose(&b.compose(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn kron_associative(a in small_mat(2, 1), b in small_mat(1, 2), c in small_mat(2, 2)) {
            let l = a.kron(&b).unwrap().kron(&c).unwrap();
            let r = a.kron(&b.kron(&c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn transpose_involutive(a in small_mat(3, 4)) {
            prop_assert_eq!(a.transpose().transpose(), a.clone());
            let at = a.transpose();
            for (r, c, v) in a.triplets() {
                prop_assert_eq!(&at.get(c, r), v);
            }
        }
    }
}
