//! Bicomodules over a coalgebra, their Coder-pair refinement, the coadjoint
//! bicomodule and the semi-direct product.

use crate::coalg::{new_coder_pair, Coalgebra, CoderPair, Endo};
use crate::error::{Error, Result};
use crate::exactlin::{tensor_dim, SparseMat};
use crate::report::ValidationReport;

/// Coactions of a `C`-bicomodule `M`.
///
/// `rho_l` has shape `(d m) × m` in the basis `e_j ⊗ u_k` (index `j m + k`),
/// `rho_r` has shape `(m d) × m` in the basis `u_j ⊗ e_k` (index `j d + k`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bicomodule {
    dim_c: usize,
    dim_m: usize,
    rho_l: SparseMat,
    rho_r: SparseMat,
}

impl Bicomodule {
    pub fn new(dim_c: usize, dim_m: usize, rho_l: SparseMat, rho_r: SparseMat) -> Result<Self> {
        if dim_m == 0 || dim_c == 0 {
            return Err(Error::Invalid("bicomodules must have positive dimension".into()));
        }
        let expected = (dim_c.checked_mul(dim_m).ok_or_else(|| Error::Invalid("dimension overflow".into()))?, dim_m);
        if rho_l.shape() != expected {
            return Err(Error::ShapeMismatch { op: "left coaction", left: expected, right: rho_l.shape() });
        }
        if rho_r.shape() != expected {
            return Err(Error::ShapeMismatch { op: "right coaction", left: expected, right: rho_r.shape() });
        }
        Ok(Bicomodule { dim_c, dim_m, rho_l, rho_r })
    }

    pub fn dim_c(&self) -> usize {
        self.dim_c
    }

    pub fn dim_m(&self) -> usize {
        self.dim_m
    }

    pub fn rho_l(&self) -> &SparseMat {
        &self.rho_l
    }

    pub fn rho_r(&self) -> &SparseMat {
        &self.rho_r
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BicomodulePair {
    bicomodule: Bicomodule,
    psi_m: Endo,
}

impl BicomodulePair {
    pub fn bicomodule(&self) -> &Bicomodule {
        &self.bicomodule
    }

    pub fn psi_m(&self) -> &Endo {
        &self.psi_m
    }

    pub fn dim_m(&self) -> usize {
        self.bicomodule.dim_m
    }
}

fn check_dims(c: &Coalgebra, m: &Bicomodule) -> Result<()> {
    if c.dim() != m.dim_c {
        return Err(Error::ShapeMismatch { op: "bicomodule", left: (c.dim(), c.dim()), right: (m.dim_c, m.dim_c) });
    }
    tensor_dim(c.dim(), 2)?;
    Ok(())
}

pub fn check_bicomodule(c: &Coalgebra, m: &Bicomodule) -> Result<ValidationReport> {
    check_dims(c, m)?;
    let ic = c.identity();
    let im = SparseMat::identity(m.dim_m);
    let mut report = ValidationReport::default();

    let lhs = c.delta().kron(&im)?.compose(&m.rho_l)?;
    let rhs = ic.kron(&m.rho_l)?.compose(&m.rho_l)?;
    report.record("left coassociativity (Δ⊗Id)ρ_l = (Id⊗ρ_l)ρ_l", lhs.sub(&rhs)?);

    let lhs = im.kron(c.delta())?.compose(&m.rho_r)?;
    let rhs = m.rho_r.kron(&ic)?.compose(&m.rho_r)?;
    report.record("right coassociativity (Id⊗Δ)ρ_r = (ρ_r⊗Id)ρ_r", lhs.sub(&rhs)?);

    let lhs = ic.kron(&m.rho_r)?.compose(&m.rho_l)?;
    let rhs = m.rho_l.kron(&ic)?.compose(&m.rho_r)?;
    report.record("compatibility (Id⊗ρ_r)ρ_l = (ρ_l⊗Id)ρ_r", lhs.sub(&rhs)?);
    Ok(report)
}

/// The two pair laws relating `ψ_M` to `ψ_C`.
pub fn check_comodule_pair_parts(cp: &CoderPair, m: &Bicomodule, psi_m: &Endo) -> Result<ValidationReport> {
    check_dims(cp.coalgebra(), m)?;
    if psi_m.dim() != m.dim_m {
        return Err(Error::ShapeMismatch { op: "psi_m", left: (m.dim_m, m.dim_m), right: psi_m.mat().shape() });
    }
    let ic = cp.coalgebra().identity();
    let im = SparseMat::identity(m.dim_m);
    let psi_c = cp.psi().mat();
    let psi_m = psi_m.mat();
    let mut report = ValidationReport::default();

    let lhs = m.rho_l.compose(psi_m)?;
    let rhs = ic.kron(psi_m)?.compose(&m.rho_l)?.add(&psi_c.kron(&im)?.compose(&m.rho_l)?)?;
    report.record("left pair law ρ_lψ_M = (Id⊗ψ_M)ρ_l + (ψ_C⊗Id)ρ_l", lhs.sub(&rhs)?);

    let lhs = m.rho_r.compose(psi_m)?;
    let rhs = psi_m.kron(&ic)?.compose(&m.rho_r)?.add(&im.kron(psi_c)?.compose(&m.rho_r)?)?;
    report.record("right pair law ρ_rψ_M = (ψ_M⊗Id)ρ_r + (Id⊗ψ_C)ρ_r", lhs.sub(&rhs)?);
    Ok(report)
}

pub fn check_comodule_pair(cp: &CoderPair, mp: &BicomodulePair) -> Result<ValidationReport> {
    check_comodule_pair_parts(cp, &mp.bicomodule, &mp.psi_m)
}

/// Runs all bicomodule and pair checks.
pub fn new_bicomodule_pair(cp: &CoderPair, m: Bicomodule, psi_m: Endo) -> Result<BicomodulePair> {
    let mut report = check_bicomodule(cp.coalgebra(), &m)?;
    report.merge(check_comodule_pair_parts(cp, &m, &psi_m)?);
    if !report.passed() {
        return Err(Error::Axiom(report));
    }
    Ok(BicomodulePair { bicomodule: m, psi_m })
}

pub fn coadjoint(cp: &CoderPair) -> BicomodulePair {
    let d = cp.dim();
    let m = Bicomodule { dim_c: d, dim_m: d, rho_l: cp.delta().clone(), rho_r: cp.delta().clone() };
    BicomodulePair { bicomodule: m, psi_m: cp.psi().clone() }
}

/// Coder pair on `C ⊕ M`, basis of `C` first.
pub fn semidirect(cp: &CoderPair, mp: &BicomodulePair) -> Result<CoderPair> {
    let d = cp.dim();
    let m = mp.dim_m();
    let total = d + m;
    let big = tensor_dim(total, 2)?;
    let mut entries = Vec::new();
    for (r, c, v) in cp.delta().triplets() {
        entries.push(((r / d) * total + r % d, c, v.clone()));
    }
    for (r, c, v) in mp.bicomodule.rho_l.triplets() {
        entries.push(((r / m) * total + d + r % m, d + c, v.clone()));
    }
    for (r, c, v) in mp.bicomodule.rho_r.triplets() {
        entries.push(((d + r / d) * total + r % d, d + c, v.clone()));
    }
    let delta = SparseMat::from_triplets(big, total, entries)?;
    let psi = SparseMat::block(&[
        vec![cp.psi().mat(), &SparseMat::zeros(d, m)],
        vec![&SparseMat::zeros(m, d), mp.psi_m.mat()],
    ])?;
    match new_coder_pair(Coalgebra::new(total, delta)?, Endo::new(psi)?) {
        Err(Error::Axiom(report)) => Err(Error::Internal(format!("semi-direct product failed validation:\n{report}"))),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalg::{comatrix, degree_weights, divided_power, grading_coderivation, grouplike};
    use crate::exactlin::flatten;
    use crate::scalar::Scalar;

    fn graded(n: usize) -> CoderPair {
        let c = divided_power(n);
        let psi = grading_coderivation(&degree_weights(n + 1), n + 1).unwrap();
        new_coder_pair(c, psi).unwrap()
    }

    fn assert_valid(cp: &CoderPair, mp: &BicomodulePair) {
        assert!(check_bicomodule(cp.coalgebra(), mp.bicomodule()).unwrap().passed());
        assert!(check_comodule_pair(cp, mp).unwrap().passed());
    }

    #[test]
    fn coadjoint_examples() {
        let g = new_coder_pair(grouplike(), Endo::zero(1)).unwrap();
        let mp = coadjoint(&g);
        assert_eq!(mp.dim_m(), 1);
        assert_valid(&g, &mp);
        let cp = graded(3);
        assert_valid(&cp, &coadjoint(&cp));
        let cm = new_coder_pair(comatrix(2).unwrap(), Endo::zero(4)).unwrap();
        assert_valid(&cm, &coadjoint(&cm));
    }

    #[test]
    fn c_tensor_c_over_grouplike() {
        // M = C⊗C, ρ_l = Δ⊗Id, ρ_r = Id⊗Δ
        let c = grouplike();
        let m = Bicomodule::new(1, 1, SparseMat::identity(1), SparseMat::identity(1)).unwrap();
        assert!(check_bicomodule(&c, &m).unwrap().passed());
    }

    #[test]
    fn zero_right_coaction_is_compatible_without_counit() {
        let c = divided_power(1);
        let m = Bicomodule::new(2, 2, c.delta().clone(), SparseMat::zeros(4, 2)).unwrap();
        assert!(check_bicomodule(&c, &m).unwrap().passed());
    }

    #[test]
    fn non_commuting_idempotents_break_compatibility() {
        // ρ_l(u) = g⊗A u, ρ_r(u) = B u⊗g is compatible iff AB = BA
        let a = SparseMat::from_dense(&[vec![1, 0], vec![0, 0]]);
        let b = SparseMat::from_dense(&[vec![1, 1], vec![0, 0]]);
        let m = Bicomodule::new(1, 2, a.clone(), b.clone()).unwrap();
        let report = check_bicomodule(&grouplike(), &m).unwrap();
        assert_eq!(report.failures.len(), 1);
        assert!(report.failed("compatibility (Id⊗ρ_r)ρ_l = (ρ_l⊗Id)ρ_r"));
        assert_eq!(report.first().unwrap().matrix, b.compose(&a).unwrap().sub(&a.compose(&b).unwrap()).unwrap());
    }

    #[test]
    fn pair_law_needs_psi_m() {
        let cp = graded(2);
        let m = coadjoint(&cp).bicomodule().clone();
        let report = check_comodule_pair_parts(&cp, &m, &Endo::zero(3)).unwrap();
        assert!(report.failed("left pair law ρ_lψ_M = (Id⊗ψ_M)ρ_l + (ψ_C⊗Id)ρ_l"));
        assert!(new_bicomodule_pair(&cp, m, Endo::zero(3)).is_err());

        let flat = new_coder_pair(divided_power(2), Endo::zero(3)).unwrap();
        let m = coadjoint(&flat).bicomodule().clone();
        assert!(new_bicomodule_pair(&flat, m, Endo::zero(3)).is_ok());
    }

    #[test]
    fn semidirect_examples() {
        let g = new_coder_pair(grouplike(), Endo::zero(1)).unwrap();
        let s = semidirect(&g, &coadjoint(&g)).unwrap();
        assert_eq!(s.dim(), 2);
        // Δ(0,u) = g⊗u + u⊗g
        assert_eq!(s.delta().col(1), &[(flatten(2, &[0, 1]), Scalar::one()), (flatten(2, &[1, 0]), Scalar::one())]);

        let zero = Bicomodule::new(1, 1, SparseMat::zeros(1, 1), SparseMat::zeros(1, 1)).unwrap();
        let mp = new_bicomodule_pair(&g, zero, Endo::zero(1)).unwrap();
        let s = semidirect(&g, &mp).unwrap();
        assert!(s.delta().col(1).is_empty());

        let cp = graded(2);
        let s = semidirect(&cp, &coadjoint(&cp)).unwrap();
        assert_eq!(s.dim(), 6);
        // restriction to C is the original pair
        for i in 0..3 {
            let restricted: Vec<_> = s.delta().col(i).iter().map(|(r, v)| ((r / 6) * 3 + r % 6, v.clone())).collect();
            assert_eq!(restricted.as_slice(), cp.delta().col(i));
        }
        assert_eq!(s.psi().mat().row_slice(0, 3).col_slice(0, 3), *cp.psi().mat());
    }
}
