//! Coalgebras, coderivations and Coder pairs.
//!
//! A coalgebra of dimension `d` is stored as its coproduct matrix of shape
//! `d² × d`: column `i` holds `Δ(e_i)` in the big-endian basis of `C ⊗ C`.
//! No counit is stored; nothing downstream uses one.

use crate::error::{Error, Result};
use crate::exactlin::{flatten, tensor_dim, SparseMat};
use crate::report::ValidationReport;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coalgebra {
    dim: usize,
    delta: SparseMat,
}

impl Coalgebra {
    /// Checks the shape only; coassociativity is checked by
    /// [`check_coassoc`] and enforced by [`new_coder_pair`].
    pub fn new(dim: usize, delta: SparseMat) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Invalid("coalgebras must have positive dimension".into()));
        }
        let expected = (tensor_dim(dim, 2)?, dim);
        if delta.shape() != expected {
            return Err(Error::ShapeMismatch { op: "coalgebra", left: expected, right: delta.shape() });
        }
        Ok(Coalgebra { dim, delta })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn delta(&self) -> &SparseMat {
        &self.delta
    }

    pub fn identity(&self) -> SparseMat {
        SparseMat::identity(self.dim)
    }
}

/// A linear endomorphism of a `d`-dimensional space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Endo(SparseMat);

impl Endo {
    pub fn new(mat: SparseMat) -> Result<Self> {
        if mat.rows() != mat.cols() {
            return Err(Error::ShapeMismatch {
                op: "endomorphism",
                left: (mat.cols(), mat.cols()),
                right: mat.shape(),
            });
        }
        Ok(Endo(mat))
    }

    pub fn zero(dim: usize) -> Self {
        Endo(SparseMat::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Endo(SparseMat::identity(dim))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn mat(&self) -> &SparseMat {
        &self.0
    }

    pub fn into_mat(self) -> SparseMat {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoderPair {
    coalgebra: Coalgebra,
    psi: Endo,
}

impl CoderPair {
    pub fn coalgebra(&self) -> &Coalgebra {
        &self.coalgebra
    }

    pub fn psi(&self) -> &Endo {
        &self.psi
    }

    pub fn dim(&self) -> usize {
        self.coalgebra.dim
    }

    pub fn delta(&self) -> &SparseMat {
        &self.coalgebra.delta
    }
}

/// `(Id ⊗ Δ)Δ = (Δ ⊗ Id)Δ`.
pub fn check_coassoc(c: &Coalgebra) -> Result<ValidationReport> {
    let id = c.identity();
    let lhs = id.kron(&c.delta)?.compose(&c.delta)?;
    let rhs = c.delta.kron(&id)?.compose(&c.delta)?;
    let mut report = ValidationReport::default();
    report.record("coassociativity (Id⊗Δ)Δ = (Δ⊗Id)Δ", lhs.sub(&rhs)?);
    Ok(report)
}

/// Residual `Δψ − (ψ⊗Id)Δ − (Id⊗ψ)Δ` of the coderivation law.
pub fn coderivation_residual(c: &Coalgebra, psi: &Endo) -> Result<SparseMat> {
    if psi.dim() != c.dim {
        return Err(Error::ShapeMismatch { op: "coderivation", left: (c.dim, c.dim), right: psi.0.shape() });
    }
    let id = c.identity();
    let lhs = c.delta.compose(&psi.0)?;
    let left_leg = psi.0.kron(&id)?.compose(&c.delta)?;
    let right_leg = id.kron(&psi.0)?.compose(&c.delta)?;
    lhs.sub(&left_leg)?.sub(&right_leg)
}

pub fn check_coderivation(c: &Coalgebra, psi: &Endo) -> Result<ValidationReport> {
    let mut report = ValidationReport::default();
    report.record("coderivation Δψ = (ψ⊗Id)Δ + (Id⊗ψ)Δ", coderivation_residual(c, psi)?);
    Ok(report)
}

/// Validates both axioms and builds the pair.
pub fn new_coder_pair(c: Coalgebra, psi: Endo) -> Result<CoderPair> {
    let mut report = check_coassoc(&c)?;
    report.merge(check_coderivation(&c, &psi)?);
    if !report.passed() {
        return Err(Error::Axiom(report));
    }
    Ok(CoderPair { coalgebra: c, psi })
}

fn binomials(n: usize) -> Vec<Scalar> {
    let mut row = vec![Scalar::one()];
    for _ in 0..n {
        let mut next = vec![Scalar::one(); row.len() + 1];
        for k in 1..row.len() {
            next[k] = &row[k - 1] + &row[k];
        }
        row = next;
    }
    row
}

/// Span of `v_0..v_N` with `Δ(v_m) = Σ_i C(m,i) v_{m−i} ⊗ v_i`.
pub fn divided_power(n: usize) -> Coalgebra {
    let d = n + 1;
    let mut entries = Vec::new();
    for m in 0..=n {
        for (i, c) in binomials(m).into_iter().enumerate() {
            entries.push((flatten(d, &[m - i, i]), m, c));
        }
    }
    Coalgebra::new(d, SparseMat::from_triplets(d * d, d, entries).expect("in bounds")).expect("valid shape")
}

/// Span of `1, x, …, x^N` with `Δ(x^n) = Σ_i C(n,i) x^i ⊗ x^{n−i}`.
pub fn binomial_bialgebra(n: usize) -> Coalgebra {
    let d = n + 1;
    let mut entries = Vec::new();
    for m in 0..=n {
        for (i, c) in binomials(m).into_iter().enumerate() {
            entries.push((flatten(d, &[i, m - i]), m, c));
        }
    }
    Coalgebra::new(d, SparseMat::from_triplets(d * d, d, entries).expect("in bounds")).expect("valid shape")
}

/// Diagonal endomorphism with the given weights.
pub fn grading_coderivation(weights: &[Scalar], dim: usize) -> Result<Endo> {
    if weights.len() != dim {
        return Err(Error::Invalid(format!("{} weights for a {dim}-dimensional space", weights.len())));
    }
    Endo::new(SparseMat::diagonal(weights.to_vec()))
}

/// Weights `0, 1, …, d−1`.
pub fn degree_weights(dim: usize) -> Vec<Scalar> {
    (0..dim as i64).map(Scalar::from_int).collect()
}

/// Comatrix coalgebra on `e_{ij}` (index `i n + j`): `Δ(e_{ij}) = Σ_k e_{ik} ⊗ e_{kj}`.
pub fn comatrix(n: usize) -> Result<Coalgebra> {
    if n == 0 {
        return Err(Error::Invalid("comatrix size must be positive".into()));
    }
    let d = tensor_dim(n, 2)?;
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                entries.push((flatten(d, &[i * n + k, k * n + j]), i * n + j, Scalar::one()));
            }
        }
    }
    Coalgebra::new(d, SparseMat::from_triplets(tensor_dim(d, 2)?, d, entries)?)
}

/// The one-dimensional coalgebra `Δ(g) = g ⊗ g`.
pub fn grouplike() -> Coalgebra {
    Coalgebra::new(1, SparseMat::identity(1)).expect("valid shape")
}

/// `Δ = 0` on a `dim`-dimensional space.
pub fn zero_coproduct(dim: usize) -> Result<Coalgebra> {
    Coalgebra::new(dim, SparseMat::zeros(tensor_dim(dim, 2)?, dim))
}

/// Basis of words of length `≤ N` over `v` letters: shorter words first,
/// then lexicographic. Returns `(offsets, dimension)` where words of length
/// `k` start at `offsets[k]`.
fn word_offsets(v: usize, n: usize) -> Result<(Vec<usize>, usize)> {
    let mut offsets = Vec::with_capacity(n + 1);
    let mut total = 0usize;
    for k in 0..=n {
        offsets.push(total);
        total = total.checked_add(tensor_dim(v, k)?).ok_or_else(|| Error::IndexOverflow {
            what: "tensor coalgebra".into(),
            size: u128::MAX,
            bound: crate::config::index_bound(),
        })?;
    }
    if total > crate::config::index_bound() {
        return Err(Error::IndexOverflow {
            what: "tensor coalgebra".into(),
            size: total as u128,
            bound: crate::config::index_bound(),
        });
    }
    Ok((offsets, total))
}

/// Index of a word in the basis of [`truncated_tensor_coalgebra`].
pub fn word_index(v: usize, n: usize, word: &[usize]) -> Result<usize> {
    let (offsets, _) = word_offsets(v, n)?;
    Ok(offsets[word.len()] + flatten(v, word))
}

/// Deconcatenation coproduct on words of length `≤ N` over `v` letters.
pub fn truncated_tensor_coalgebra(v: usize, n: usize) -> Result<Coalgebra> {
    if v == 0 {
        return Err(Error::Invalid("alphabet must be nonempty".into()));
    }
    let (offsets, d) = word_offsets(v, n)?;
    let mut entries = Vec::new();
    for len in 0..=n {
        for flat in 0..tensor_dim(v, len)? {
            let word = crate::exactlin::unflatten(v, len, flat);
            let col = offsets[len] + flat;
            for cut in 0..=len {
                let (a, b) = word.split_at(cut);
                let ia = offsets[a.len()] + flatten(v, a);
                let ib = offsets[b.len()] + flatten(v, b);
                entries.push((ia * d + ib, col, Scalar::one()));
            }
        }
    }
    Coalgebra::new(d, SparseMat::from_triplets(tensor_dim(d, 2)?, d, entries)?)
}

/// Word-length weights for [`truncated_tensor_coalgebra`].
pub fn word_length_weights(v: usize, n: usize) -> Result<Vec<Scalar>> {
    let mut out = Vec::new();
    for len in 0..=n {
        out.extend(std::iter::repeat_n(Scalar::from_int(len as i64), tensor_dim(v, len)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grading(c: &Coalgebra) -> Endo {
        grading_coderivation(&degree_weights(c.dim()), c.dim()).unwrap()
    }

    #[test]
    fn divided_power_low_orders() {
        let c = divided_power(2);
        let d = c.delta();
        assert_eq!(d.col(1), &[(flatten(3, &[0, 1]), Scalar::one()), (flatten(3, &[1, 0]), Scalar::one())]);
        let v2: Vec<_> = d.col(2).to_vec();
        assert_eq!(
            v2,
            vec![
                (flatten(3, &[0, 2]), Scalar::one()),
                (flatten(3, &[1, 1]), Scalar::from_int(2)),
                (flatten(3, &[2, 0]), Scalar::one()),
            ]
        );
        for n in 0..=6 {
            assert!(check_coassoc(&divided_power(n)).unwrap().passed(), "N = {n}");
        }
    }

    #[test]
    fn coassoc_negative_case() {
        let delta = SparseMat::from_triplets(4, 2, [(flatten(2, &[0, 1]), 0, Scalar::one())]).unwrap();
        let c = Coalgebra::new(2, delta).unwrap();
        let report = check_coassoc(&c).unwrap();
        assert!(!report.passed());
        let m = &report.first().unwrap().matrix;
        // (Id⊗Δ)Δ(e0) = 0, (Δ⊗Id)Δ(e0) = e0⊗e1⊗e1
        let entries: Vec<_> = m.triplets().map(|(r, c, v)| (r, c, v.clone())).collect();
        assert_eq!(entries, vec![(flatten(2, &[0, 1, 1]), 0, -Scalar::one())]);
    }

    #[test]
    fn grouplike_is_coassociative_but_id_is_no_coderivation() {
        let g = grouplike();
        assert!(check_coassoc(&g).unwrap().passed());
        let report = check_coderivation(&g, &Endo::identity(1)).unwrap();
        assert_eq!(report.first().unwrap().matrix.get(0, 0), -Scalar::one());
        assert!(matches!(new_coder_pair(g, Endo::identity(1)), Err(Error::Axiom(_))));
    }

    #[test]
    fn grading_is_a_coderivation() {
        for n in 0..=6 {
            let c = divided_power(n);
            assert!(check_coderivation(&c, &grading(&c)).unwrap().passed());
            let b = binomial_bialgebra(n);
            assert!(check_coderivation(&b, &grading(&b)).unwrap().passed());
            assert!(check_coassoc(&b).unwrap().passed());
        }
        let c = divided_power(3);
        assert!(new_coder_pair(c.clone(), grading(&c)).is_ok());
        assert!(check_coderivation(&c, &Endo::zero(4)).unwrap().passed());
    }

    #[test]
    fn weights_on_grouplike_sum_fail() {
        let delta = SparseMat::from_triplets(4, 2, [(0, 0, Scalar::one()), (3, 1, Scalar::one())]).unwrap();
        let c = Coalgebra::new(2, delta).unwrap();
        assert!(check_coassoc(&c).unwrap().passed());
        let psi = grading_coderivation(&degree_weights(2), 2).unwrap();
        let report = check_coderivation(&c, &psi).unwrap();
        // Δψ(e1) = e1⊗e1 against 2 e1⊗e1
        assert_eq!(report.first().unwrap().matrix.get(3, 1), -Scalar::one());
        assert!(grading_coderivation(&degree_weights(3), 2).is_err());
    }

    #[test]
    fn truncated_shift_is_not_a_coderivation() {
        // v_m ↦ v_{m+1} with v_{N+1} projected away
        for n in 1..=4 {
            let c = divided_power(n);
            let shift = SparseMat::from_triplets(n + 1, n + 1, (0..n).map(|m| (m + 1, m, Scalar::one()))).unwrap();
            let report = check_coderivation(&c, &Endo::new(shift).unwrap()).unwrap();
            assert!(!report.passed(), "N = {n}");
        }
    }

    #[test]
    fn comatrix_examples() {
        let c = comatrix(2).unwrap();
        assert_eq!(c.dim(), 4);
        // Δ(e11) = e11⊗e11 + e12⊗e21, with 0-based e00, e01, e10
        let expected = vec![(flatten(4, &[0, 0]), Scalar::one()), (flatten(4, &[1, 2]), Scalar::one())];
        assert_eq!(c.delta().col(0), expected.as_slice());
        assert_eq!(comatrix(1).unwrap(), grouplike());
        for n in 1..=3 {
            assert!(check_coassoc(&comatrix(n).unwrap()).unwrap().passed());
        }
        assert!(new_coder_pair(comatrix(2).unwrap(), Endo::zero(4)).is_ok());
    }

    #[test]
    fn tensor_coalgebra_examples() {
        let c = truncated_tensor_coalgebra(1, 2).unwrap();
        let xx = word_index(1, 2, &[0, 0]).unwrap();
        let x = word_index(1, 2, &[0]).unwrap();
        let one = word_index(1, 2, &[]).unwrap();
        let d = c.dim();
        let expected = SparseMat::from_triplets(
            d * d,
            1,
            [(xx * d + one, 0, Scalar::one()), (x * d + x, 0, Scalar::one()), (one * d + xx, 0, Scalar::one())],
        )
        .unwrap();
        assert_eq!(c.delta().col(xx), expected.col(0));

        let c = truncated_tensor_coalgebra(2, 1).unwrap();
        let a = word_index(2, 1, &[0]).unwrap();
        assert_eq!(c.delta().col(a), &[(a, Scalar::one()), (a * c.dim(), Scalar::one())]);

        for v in 1..=2 {
            for n in 0..=3 {
                let c = truncated_tensor_coalgebra(v, n).unwrap();
                assert!(check_coassoc(&c).unwrap().passed());
                let w = grading_coderivation(&word_length_weights(v, n).unwrap(), c.dim()).unwrap();
                assert!(check_coderivation(&c, &w).unwrap().passed());
            }
        }
    }

    #[test]
    fn binomial_examples() {
        let b = binomial_bialgebra(2);
        assert_eq!(
            b.delta().col(2),
            &[
                (flatten(3, &[0, 2]), Scalar::one()),
                (flatten(3, &[1, 1]), Scalar::from_int(2)),
                (flatten(3, &[2, 0]), Scalar::one()),
            ]
        );
        assert_eq!(binomial_bialgebra(0), grouplike());
    }

    #[test]
    fn factorial_rescaling_relates_the_two_presentations() {
        // The coproduct Σ_i w_i ⊗ w_{m−i} becomes binomial_bialgebra under w_m ↦ x^m / m!
        for n in 0..=6 {
            let d = n + 1;
            let plain = SparseMat::from_triplets(
                d * d,
                d,
                (0..=n).flat_map(|m| (0..=m).map(move |i| (flatten(d, &[i, m - i]), m, Scalar::one()))),
            )
            .unwrap();
            let mut fact = Scalar::one();
            let mut diag = Vec::new();
            for m in 0..d {
                if m > 0 {
                    fact = &fact * &Scalar::from_int(m as i64);
                }
                diag.push(fact.recip().unwrap());
            }
            let t = SparseMat::diagonal(diag);
            let lhs = binomial_bialgebra(n).delta().compose(&t).unwrap();
            let rhs = t.kron(&t).unwrap().compose(&plain).unwrap();
            assert_eq!(lhs, rhs, "N = {n}");
            assert_eq!(binomial_bialgebra(n).delta(), divided_power(n).delta());
        }
    }

    #[test]
    fn zero_dimension_rejected() {
        assert!(Coalgebra::new(0, SparseMat::zeros(0, 0)).is_err());
        assert!(Coalgebra::new(2, SparseMat::zeros(3, 2)).is_err());
        assert!(comatrix(0).is_err());
    }
}
