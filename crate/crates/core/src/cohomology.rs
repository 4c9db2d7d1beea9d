//! Cocycles, coboundaries and cohomology of the Hochschild and Coder
//! complexes, the direct description of `H¹_Coder`, and the long exact
//! sequence check for the mapping cone of `ω`.

use std::time::{Duration, Instant};

use crate::coalg::Coalgebra;
use crate::coalg::CoderPair;
use crate::cochain::{
    coder_cochain_dim, d_coder_matrix_with, delta_c, delta_matrix_with, omega_matrix, probe_matrix, Cochain,
};
use crate::comodule::{Bicomodule, BicomodulePair};
use crate::error::{Error, Result};
use crate::exactlin::{kernel_basis, normalize_leading, quotient_dim, rank, Echelon, Solver, SparseMat, SparseVec};
use crate::par::Exec;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComplexKind {
    Hochschild,
    Coder,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReport {
    pub degree: usize,
    pub dim_cochains: usize,
    /// Rank of the outgoing differential, i.e. the dimension of the next
    /// coboundary space.
    pub rank_out: usize,
    pub dim_z: usize,
    pub dim_b: usize,
    pub dim_h: usize,
    /// Coset representatives of a basis of `Hⁿ`, first nonzero coordinate one.
    pub representatives: Vec<SparseVec>,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyReport {
    pub kind: ComplexKind,
    pub dim_c: usize,
    pub dim_m: usize,
    pub degrees: Vec<DegreeReport>,
}

impl CohomologyReport {
    pub fn degree(&self, n: usize) -> Option<&DegreeReport> {
        self.degrees.iter().find(|d| d.degree == n)
    }

    pub fn dim_h(&self, n: usize) -> Option<usize> {
        self.degree(n).map(|d| d.dim_h)
    }

    /// Checks `dim Z + rank = dim C`, `dim B^{n+1} = rank dⁿ` and `dim H = dim Z − dim B`.
    pub fn consistent(&self) -> bool {
        let local = self.degrees.iter().all(|d| {
            d.dim_z + d.rank_out == d.dim_cochains && d.dim_h + d.dim_b == d.dim_z && d.representatives.len() == d.dim_h
        });
        let chained = self.degrees.windows(2).all(|w| w[1].dim_b == w[0].rank_out);
        local && chained
    }
}

/// Cohomology in one degree from the incoming and outgoing differentials.
pub fn degree_report(degree: usize, incoming: Option<&SparseMat>, outgoing: &SparseMat) -> Result<DegreeReport> {
    let start = Instant::now();
    let dim = outgoing.cols();
    if let Some(inc) = incoming {
        if inc.rows() != dim {
            return Err(Error::ShapeMismatch { op: "cohomology", left: inc.shape(), right: outgoing.shape() });
        }
    }
    let z = kernel_basis(outgoing);
    let rank_out = dim - z.len();
    let b_gens: &[SparseVec] = incoming.map_or(&[], |m| m.columns());
    let q = quotient_dim(dim, &z, b_gens)?;
    let representatives = q.representatives.iter().map(|&i| normalize_leading(z[i].clone())).collect();
    Ok(DegreeReport {
        degree,
        dim_cochains: dim,
        rank_out,
        dim_z: z.len(),
        dim_b: z.len() - q.dim,
        dim_h: q.dim,
        representatives,
        elapsed: start.elapsed(),
    })
}

fn assemble(first: usize, mats: Vec<SparseMat>, exec: Exec) -> Result<Vec<DegreeReport>> {
    let mats = &mats;
    exec.map_range(mats.len(), |k| {
        let incoming = if k == 0 { None } else { Some(&mats[k - 1]) };
        degree_report(first + k, incoming, &mats[k])
    })
    .into_iter()
    .collect()
}

fn collect<T>(items: Vec<Result<T>>) -> Result<Vec<T>> {
    items.into_iter().collect()
}

pub fn hochschild_cohomology(c: &Coalgebra, m: &Bicomodule, nmax: usize) -> Result<CohomologyReport> {
    hochschild_cohomology_with(c, m, nmax, Exec::default())
}

/// `Hⁿ(M, C)` for `n = 0..=nmax`.
pub fn hochschild_cohomology_with(c: &Coalgebra, m: &Bicomodule, nmax: usize, exec: Exec) -> Result<CohomologyReport> {
    let mats = collect(exec.map_range(nmax + 1, |n| delta_matrix_with(c, m, n, Exec::Sequential)))?;
    Ok(CohomologyReport {
        kind: ComplexKind::Hochschild,
        dim_c: c.dim(),
        dim_m: m.dim_m(),
        degrees: assemble(0, mats, exec)?,
    })
}

pub fn coder_cohomology(cp: &CoderPair, mp: &BicomodulePair, nmax: usize) -> Result<CohomologyReport> {
    coder_cohomology_with(cp, mp, nmax, Exec::default())
}

/// `Hⁿ_Coder(M, C)` for `n = 1..=nmax`; `B¹ = 0` since the complex starts in degree 1.
pub fn coder_cohomology_with(cp: &CoderPair, mp: &BicomodulePair, nmax: usize, exec: Exec) -> Result<CohomologyReport> {
    if nmax == 0 {
        return Err(Error::Invalid("Coder cohomology starts in degree 1".into()));
    }
    let mats = collect(exec.map_range(nmax, |k| d_coder_matrix_with(cp, mp, k + 1, Exec::Sequential)))?;
    Ok(CohomologyReport {
        kind: ComplexKind::Coder,
        dim_c: cp.dim(),
        dim_m: mp.dim_m(),
        degrees: assemble(1, mats, exec)?,
    })
}

/// A single degree of the Coder complex.
pub fn coder_degree(cp: &CoderPair, mp: &BicomodulePair, n: usize) -> Result<DegreeReport> {
    if n == 0 {
        return Err(Error::Invalid("Coder cohomology starts in degree 1".into()));
    }
    let out = d_coder_matrix_with(cp, mp, n, Exec::default())?;
    let inc = if n >= 2 { Some(d_coder_matrix_with(cp, mp, n - 1, Exec::default())?) } else { None };
    degree_report(n, inc.as_ref(), &out)
}

/// Coordinates of the class of the cocycle `v` with respect to the
/// representatives, modulo the span of `b_gens`. `None` if `v` is not in
/// `span(b_gens) + span(representatives)`.
pub fn class_coordinates(
    dim: usize,
    b_gens: &[SparseVec],
    representatives: &[SparseVec],
    v: &[(usize, Scalar)],
) -> Option<Vec<Scalar>> {
    let mut e = Echelon::new(dim, true, b_gens.len() + representatives.len());
    for g in b_gens.iter().chain(representatives) {
        e.insert(g);
    }
    let combo = e.express(v)?;
    let mut out = vec![Scalar::zero(); representatives.len()];
    for (i, x) in combo {
        if i >= b_gens.len() {
            out[i - b_gens.len()] = x;
        }
    }
    Some(out)
}

/// Basis of `{f ∈ Z¹(M, C) : ψ_C f = f ψ_M}`, built from the operational
/// coboundary and a Kronecker commutator rather than the Coder matrix.
pub fn h1_coder_direct(cp: &CoderPair, mp: &BicomodulePair) -> Result<Vec<SparseVec>> {
    let d = cp.dim();
    let m = mp.dim_m();
    let size = d * m;
    let (c, bm) = (cp.coalgebra(), mp.bicomodule());
    let delta1 = probe_matrix(size, d * d * m, |v| Ok(delta_c(c, bm, &Cochain::from_vec(1, d, m, v)?)?.to_vec()))?;
    let comm = SparseMat::identity(m)
        .kron(cp.psi().mat())?
        .sub(&mp.psi_m().mat().transpose().kron(&SparseMat::identity(d))?)?;
    let stacked = SparseMat::block(&[vec![&delta1], vec![&comm]])?;
    Ok(kernel_basis(&stacked).into_iter().map(normalize_leading).collect())
}

/// Whether every vector of `vs` solves against the columns of `basis`.
pub fn spans_contain(dim: usize, basis: &[SparseVec], vs: &[SparseVec]) -> Result<bool> {
    let mut solver = Solver::new(&SparseMat::from_columns(dim, basis.to_vec())?);
    for v in vs {
        if solver.solve(v)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LesDegree {
    pub degree: usize,
    pub dim_h_coder: usize,
    /// Dimension of `Hⁿ` of the Hochschild complex truncated below degree 1.
    pub dim_h: usize,
    pub rank_omega: usize,
    pub dim_ker: usize,
    pub dim_coker_prev: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LesReport {
    pub degrees: Vec<LesDegree>,
}

impl LesReport {
    pub fn holds(&self) -> bool {
        self.degrees.iter().all(|d| d.holds)
    }
}

/// Matrix of `ω_*` on a cohomology space with the given coboundary
/// generators and representatives.
fn induced_omega(omega: &SparseMat, b_gens: &[SparseVec], reps: &[SparseVec]) -> Result<SparseMat> {
    let dim = omega.cols();
    let mut columns = Vec::with_capacity(reps.len());
    for r in reps {
        let image = omega.apply(r)?;
        let coords = class_coordinates(dim, b_gens, reps, &image)
            .ok_or_else(|| Error::Internal("ω does not preserve cocycles".into()))?;
        columns.push(crate::exactlin::elim::to_sparse(&coords));
    }
    SparseMat::from_columns(reps.len(), columns)
}

/// Compares `dim Hⁿ_Coder` with `dim ker ω_*|Hⁿ + dim coker ω_*|Hⁿ⁻¹`.
///
/// The Coder complex has no degree-0 part, so it is the cone of `ω` on the
/// Hochschild complex truncated below degree 1. There `H¹` becomes all of
/// `Z¹` and `H⁰` vanishes; higher degrees are unchanged.
pub fn les_check(cp: &CoderPair, mp: &BicomodulePair, nmax: usize) -> Result<LesReport> {
    if nmax == 0 {
        return Err(Error::Invalid("the sequence is checked from degree 1".into()));
    }
    let (c, m) = (cp.coalgebra(), mp.bicomodule());
    let coder = coder_cohomology(cp, mp, nmax)?;
    let deltas = collect(Exec::default().map_range(nmax + 1, |n| delta_matrix_with(c, m, n, Exec::Sequential)))?;
    // (dim H̃ⁿ, rank ω_*ⁿ) for n = 0..=nmax
    let mut spaces = vec![(0usize, 0usize)];
    for n in 1..=nmax {
        let z = kernel_basis(&deltas[n]);
        let (b_gens, reps): (Vec<SparseVec>, Vec<SparseVec>) = if n == 1 {
            (Vec::new(), z)
        } else {
            let b = deltas[n - 1].columns().to_vec();
            let q = quotient_dim(deltas[n].cols(), &z, &b)?;
            let reps = q.representatives.iter().map(|&i| z[i].clone()).collect();
            (b, reps)
        };
        let w = induced_omega(&omega_matrix(cp, mp, n)?, &b_gens, &reps)?;
        spaces.push((reps.len(), rank(&w)));
    }
    let mut degrees = Vec::new();
    for n in 1..=nmax {
        let (h, r) = spaces[n];
        let (h_prev, r_prev) = spaces[n - 1];
        let dim_h_coder = coder.dim_h(n).expect("degree computed");
        let (dim_ker, dim_coker_prev) = (h - r, h_prev - r_prev);
        degrees.push(LesDegree {
            degree: n,
            dim_h_coder,
            dim_h: h,
            rank_omega: r,
            dim_ker,
            dim_coker_prev,
            holds: dim_h_coder == dim_ker + dim_coker_prev,
        });
    }
    Ok(LesReport { degrees })
}

/// Dimension of the Coder cochain space in each degree `1..=nmax`.
pub fn coder_dims(d: usize, m: usize, nmax: usize) -> Result<Vec<usize>> {
    (1..=nmax).map(|n| coder_cochain_dim(d, m, n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalg::{
        comatrix, degree_weights, divided_power, grading_coderivation, grouplike, new_coder_pair, zero_coproduct, Endo,
    };
    use crate::comodule::coadjoint;

    fn pair(c: Coalgebra, psi: SparseMat) -> CoderPair {
        new_coder_pair(c, Endo::new(psi).unwrap()).unwrap()
    }

    fn diag01() -> CoderPair {
        pair(zero_coproduct(2).unwrap(), SparseMat::diagonal(vec![Scalar::zero(), Scalar::one()]))
    }

    fn graded(n: usize) -> CoderPair {
        pair(divided_power(n), grading_coderivation(&degree_weights(n + 1), n + 1).unwrap().into_mat())
    }

    #[test]
    fn grouplike_values() {
        let cp = pair(grouplike(), SparseMat::zeros(1, 1));
        let mp = coadjoint(&cp);
        let h = hochschild_cohomology(cp.coalgebra(), mp.bicomodule(), 3).unwrap();
        assert!(h.consistent());
        assert_eq!((0..=3).map(|n| h.dim_h(n).unwrap()).collect::<Vec<_>>(), vec![1, 0, 0, 0]);
        let hc = coder_cohomology(&cp, &mp, 3).unwrap();
        assert!(hc.consistent());
        assert_eq!(hc.dim_h(1), Some(0));
        assert_eq!(hc.dim_h(2), Some(0));
        assert_eq!(hc.degree(2).unwrap().dim_z, 1);
    }

    #[test]
    fn zero_coproduct_values() {
        let cp = diag01();
        let mp = coadjoint(&cp);
        let h = hochschild_cohomology(cp.coalgebra(), mp.bicomodule(), 2).unwrap();
        for n in 0..=2 {
            assert_eq!(h.dim_h(n), Some(2 * 2usize.pow(n as u32)));
        }
        let hc = coder_cohomology(&cp, &mp, 2).unwrap();
        assert_eq!(hc.dim_h(1), Some(2));
        let direct = h1_coder_direct(&cp, &mp).unwrap();
        assert_eq!(direct.len(), 2);
        // the commutant of diag(0, 1) is the diagonal matrices
        assert_eq!(direct, vec![vec![(0, Scalar::one())], vec![(3, Scalar::one())]]);
    }

    #[test]
    fn comatrix_vanishing() {
        let cp = pair(comatrix(2).unwrap(), SparseMat::zeros(4, 4));
        let mp = coadjoint(&cp);
        let h = hochschild_cohomology(cp.coalgebra(), mp.bicomodule(), 2).unwrap();
        assert_eq!(h.dim_h(1), Some(0));
        assert_eq!(h.dim_h(2), Some(0));
        assert_eq!(h.dim_h(0), Some(1));
    }

    #[test]
    fn zero_psi_splits_into_shifted_sum() {
        // with ψ = 0 the truncated cone is C ⊕ C[-1] of the truncated complex
        let cp = pair(divided_power(2), SparseMat::zeros(3, 3));
        let mp = coadjoint(&cp);
        let h = hochschild_cohomology(cp.coalgebra(), mp.bicomodule(), 3).unwrap();
        let hc = coder_cohomology(&cp, &mp, 3).unwrap();
        let z1 = h.degree(1).unwrap().dim_z;
        assert_eq!(hc.dim_h(1), Some(z1));
        assert_eq!(hc.dim_h(2), Some(h.dim_h(2).unwrap() + z1));
        assert_eq!(hc.dim_h(3), Some(h.dim_h(3).unwrap() + h.dim_h(2).unwrap()));
        assert!(les_check(&cp, &mp, 3).unwrap().holds());
    }

    #[test]
    fn prop_3_2_on_samples() {
        for cp in [graded(2), graded(3), diag01(), pair(comatrix(2).unwrap(), SparseMat::zeros(4, 4))] {
            let mp = coadjoint(&cp);
            let direct = h1_coder_direct(&cp, &mp).unwrap();
            let z1 = kernel_basis(&crate::cochain::d_coder_matrix(&cp, &mp, 1).unwrap());
            let dim = cp.dim() * cp.dim();
            assert!(spans_contain(dim, &direct, &z1).unwrap());
            assert!(spans_contain(dim, &z1, &direct).unwrap());
        }
    }

    #[test]
    fn les_on_samples() {
        for cp in [graded(1), graded(2), diag01(), pair(grouplike(), SparseMat::zeros(1, 1))] {
            let mp = coadjoint(&cp);
            let report = les_check(&cp, &mp, 3).unwrap();
            assert!(report.holds(), "{report:?}");
        }
    }

    #[test]
    fn representatives_are_cocycles_and_independent() {
        let cp = graded(3);
        let mp = coadjoint(&cp);
        let hc = coder_cohomology(&cp, &mp, 3).unwrap();
        assert!(hc.consistent());
        for deg in &hc.degrees {
            let d = crate::cochain::d_coder_matrix(&cp, &mp, deg.degree).unwrap();
            for r in &deg.representatives {
                assert!(d.apply(r).unwrap().is_empty());
                assert!(r[0].1.is_one());
            }
        }
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let cp = graded(3);
        let mp = coadjoint(&cp);
        let strip = |r: CohomologyReport| {
            r.degrees.into_iter().map(|d| (d.dim_z, d.dim_b, d.representatives)).collect::<Vec<_>>()
        };
        let a = coder_cohomology_with(&cp, &mp, 3, Exec::Sequential).unwrap();
        let b = coder_cohomology_with(&cp, &mp, 3, Exec::Parallel).unwrap();
        assert_eq!(strip(a), strip(b));
    }
}
