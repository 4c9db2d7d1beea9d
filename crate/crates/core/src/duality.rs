//! Algebras with a derivation and the transpose dictionary with Coder pairs
//! in finite dimension.

use crate::coalg::{new_coder_pair, Coalgebra, CoderPair, Endo};
use crate::error::{Error, Result};
use crate::exactlin::{tensor_dim, SparseMat};
use crate::report::ValidationReport;

/// Multiplication `u: A ⊗ A → A` as a `d × d²` matrix (column `j d + k` is
/// `e_j · e_k`) together with an endomorphism `φ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerPair {
    dim: usize,
    mult: SparseMat,
    phi: Endo,
}

impl DerPair {
    /// Shape checks only; see [`new_der_pair`] for the validated constructor.
    pub fn new(dim: usize, mult: SparseMat, phi: Endo) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Invalid("algebras must have positive dimension".into()));
        }
        let expected = (dim, tensor_dim(dim, 2)?);
        if mult.shape() != expected {
            return Err(Error::ShapeMismatch { op: "multiplication", left: expected, right: mult.shape() });
        }
        if phi.dim() != dim {
            return Err(Error::ShapeMismatch { op: "derivation", left: (dim, dim), right: phi.mat().shape() });
        }
        Ok(DerPair { dim, mult, phi })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mult(&self) -> &SparseMat {
        &self.mult
    }

    pub fn phi(&self) -> &Endo {
        &self.phi
    }
}

pub fn check_der_pair(a: &DerPair) -> Result<ValidationReport> {
    let id = SparseMat::identity(a.dim);
    let u = &a.mult;
    let phi = a.phi.mat();
    let mut report = ValidationReport::default();
    let lhs = u.compose(&u.kron(&id)?)?;
    let rhs = u.compose(&id.kron(u)?)?;
    report.record("associativity u(u⊗Id) = u(Id⊗u)", lhs.sub(&rhs)?);
    let lhs = phi.compose(u)?;
    let rhs = u.compose(&phi.kron(&id)?)?.add(&u.compose(&id.kron(phi)?)?)?;
    report.record("Leibniz φu = u(φ⊗Id) + u(Id⊗φ)", lhs.sub(&rhs)?);
    Ok(report)
}

pub fn new_der_pair(dim: usize, mult: SparseMat, phi: Endo) -> Result<DerPair> {
    let a = DerPair::new(dim, mult, phi)?;
    let report = check_der_pair(&a)?;
    if !report.passed() {
        return Err(Error::Axiom(report));
    }
    Ok(a)
}

/// `(C*, ψ*)`: the convolution algebra with the transposed coderivation.
pub fn dual_der_pair(cp: &CoderPair) -> Result<DerPair> {
    let a = DerPair::new(cp.dim(), cp.delta().transpose(), Endo::new(cp.psi().mat().transpose())?)?;
    let report = check_der_pair(&a)?;
    if !report.passed() {
        return Err(Error::Internal(format!("dual of a Coder pair failed validation:\n{report}")));
    }
    Ok(a)
}

/// `(A*, φ*)` for a finite-dimensional Der pair.
pub fn dual_coder_pair(a: &DerPair) -> Result<CoderPair> {
    let c = Coalgebra::new(a.dim, a.mult.transpose())?;
    match new_coder_pair(c, Endo::new(a.phi.mat().transpose())?) {
        Err(Error::Axiom(report)) => Err(Error::Internal(format!("dual of a Der pair failed validation:\n{report}"))),
        other => other,
    }
}

/// Compares the double dual with the original entrywise.
pub fn double_dual_check(cp: &CoderPair) -> Result<ValidationReport> {
    let back = dual_coder_pair(&dual_der_pair(cp)?)?;
    let mut report = ValidationReport::default();
    report.record("double dual coproduct", back.delta().sub(cp.delta())?);
    report.record("double dual coderivation", back.psi().mat().sub(cp.psi().mat())?);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalg::{comatrix, degree_weights, divided_power, grading_coderivation, grouplike};
    use crate::exactlin::flatten;
    use crate::scalar::Scalar;

    fn graded(n: usize) -> CoderPair {
        new_coder_pair(divided_power(n), grading_coderivation(&degree_weights(n + 1), n + 1).unwrap()).unwrap()
    }

    #[test]
    fn grouplike_dual() {
        let cp = new_coder_pair(grouplike(), Endo::zero(1)).unwrap();
        let a = dual_der_pair(&cp).unwrap();
        assert_eq!(a.mult(), &SparseMat::identity(1));
        assert!(a.phi().mat().is_zero());
        assert_eq!(dual_coder_pair(&a).unwrap(), cp);
        assert!(double_dual_check(&cp).unwrap().passed());
    }

    #[test]
    fn divided_power_dual_product() {
        let a = dual_der_pair(&graded(2)).unwrap();
        // v1*·v1* = 2 v2*
        assert_eq!(a.mult().col(flatten(3, &[1, 1])), &[(2, Scalar::from_int(2))]);
        assert!(check_der_pair(&dual_der_pair(&graded(3)).unwrap()).unwrap().passed());
        assert!(double_dual_check(&graded(3)).unwrap().passed());
        let cm = new_coder_pair(comatrix(2).unwrap(), Endo::zero(4)).unwrap();
        assert!(double_dual_check(&cm).unwrap().passed());
    }

    #[test]
    fn leibniz_failures_and_zero_product() {
        let a = DerPair::new(1, SparseMat::identity(1), Endo::identity(1)).unwrap();
        let report = check_der_pair(&a).unwrap();
        assert!(report.failed("Leibniz φu = u(φ⊗Id) + u(Id⊗φ)"));
        assert!(new_der_pair(1, SparseMat::identity(1), Endo::identity(1)).is_err());

        let z = new_der_pair(
            2,
            SparseMat::zeros(2, 4),
            Endo::new(SparseMat::from_dense(&[vec![1, 2], vec![3, 4]])).unwrap(),
        )
        .unwrap();
        let cp = dual_coder_pair(&z).unwrap();
        assert!(cp.delta().is_zero());
        let x = new_der_pair(1, SparseMat::zeros(1, 1), Endo::zero(1)).unwrap();
        assert!(dual_coder_pair(&x).unwrap().delta().is_zero());
    }
}
