//! Tensor-power bookkeeping under the big-endian flattening
//! `e_{j1} ⊗ … ⊗ e_{jn} ↦ Σ j_t d^{n-t}`.

use super::sparse::{checked_dim, SparseMat};
use crate::error::Result;

/// `d^n`, checked against the index bound.
pub fn tensor_dim(d: usize, n: usize) -> Result<usize> {
    let mut acc = 1usize;
    for _ in 0..n {
        acc = checked_dim("tensor power", acc, d)?;
    }
    Ok(acc)
}

/// `Id^{⊗left} ⊗ op ⊗ Id^{⊗right}` on tensor powers of a `d`-dimensional space.
pub fn insert_leg(d: usize, left: usize, op: &SparseMat, right: usize) -> Result<SparseMat> {
    let l = SparseMat::identity(tensor_dim(d, left)?);
    let r = SparseMat::identity(tensor_dim(d, right)?);
    l.kron(op)?.kron(&r)
}

/// Flat index of a multi-index.
pub fn flatten(d: usize, digits: &[usize]) -> usize {
    digits.iter().fold(0, |acc, &j| {
        debug_assert!(j < d);
        acc * d + j
    })
}

/// Multi-index of a flat index with `n` legs.
pub fn unflatten(d: usize, n: usize, mut index: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for slot in out.iter_mut().rev() {
        *slot = index % d;
        index /= d;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn flatten_is_big_endian() {
        assert_eq!(flatten(3, &[1, 2]), 5);
        assert_eq!(unflatten(3, 2, 5), vec![1, 2]);
        assert_eq!(flatten(2, &[]), 0);
        for i in 0..27 {
            assert_eq!(flatten(3, &unflatten(3, 3, i)), i);
        }
    }

    #[test]
    fn leg_insertion_acts_on_one_slot() {
        // swap-free check: op sends e_0 to e_1 in the middle leg of C^{⊗3}, d = 2
        let op = SparseMat::from_dense(&[vec![0, 0], vec![1, 0]]);
        let m = insert_leg(2, 1, &op, 1).unwrap();
        let col = m.col(flatten(2, &[1, 0, 1]));
        assert_eq!(col, &[(flatten(2, &[1, 1, 1]), Scalar::one())]);
        assert!(m.col(flatten(2, &[0, 1, 0])).is_empty());
    }
}
