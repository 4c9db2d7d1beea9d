//! Hochschild cochains `M → C^{⊗n}`, the coboundary `δ_c`, the operator `ω`
//! and the Coder differential, both as operations on cochains and as
//! assembled matrices acting on flattened coordinates.
//!
//! A cochain of degree `n` is a `dⁿ × m` matrix. Its coordinate vector is the
//! column-major flattening: entry `(r, k)` sits at `k dⁿ + r`. A Coder cochain
//! `(f, g)` flattens to `vec f` followed by `vec g`.

use crate::coalg::{Coalgebra, CoderPair};
use crate::comodule::{Bicomodule, BicomodulePair};
use crate::config;
use crate::error::{Error, Result};
use crate::exactlin::{insert_leg, normalize_vec, tensor_dim, SparseMat, SparseVec};
use crate::par::Exec;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    dim_c: usize,
    dim_m: usize,
    map: SparseMat,
}

impl Cochain {
    pub fn new(degree: usize, dim_c: usize, dim_m: usize, map: SparseMat) -> Result<Self> {
        let expected = (tensor_dim(dim_c, degree)?, dim_m);
        if map.shape() != expected {
            return Err(Error::ShapeMismatch { op: "cochain", left: expected, right: map.shape() });
        }
        Ok(Cochain { degree, dim_c, dim_m, map })
    }

    pub fn zero(degree: usize, dim_c: usize, dim_m: usize) -> Result<Self> {
        Ok(Cochain { degree, dim_c, dim_m, map: SparseMat::zeros(tensor_dim(dim_c, degree)?, dim_m) })
    }

    pub fn from_vec(degree: usize, dim_c: usize, dim_m: usize, v: &[(usize, Scalar)]) -> Result<Self> {
        let rows = tensor_dim(dim_c, degree)?;
        Ok(Cochain { degree, dim_c, dim_m, map: SparseMat::unvectorize(rows, dim_m, v)? })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim_c(&self) -> usize {
        self.dim_c
    }

    pub fn dim_m(&self) -> usize {
        self.dim_m
    }

    pub fn map(&self) -> &SparseMat {
        &self.map
    }

    pub fn into_map(self) -> SparseMat {
        self.map
    }

    pub fn len(&self) -> usize {
        self.map.rows() * self.map.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_zero()
    }

    pub fn to_vec(&self) -> SparseVec {
        self.map.vectorize()
    }

    fn same_space(&self, other: &Cochain) -> Result<()> {
        if (self.degree, self.dim_c, self.dim_m) != (other.degree, other.dim_c, other.dim_m) {
            return Err(Error::ShapeMismatch { op: "cochain sum", left: self.map.shape(), right: other.map.shape() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.same_space(other)?;
        Ok(Cochain { map: self.map.add(&other.map)?, ..*self })
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.same_space(other)?;
        Ok(Cochain { map: self.map.sub(&other.map)?, ..*self })
    }

    pub fn scale(&self, c: &Scalar) -> Cochain {
        Cochain { map: self.map.scale(c), ..*self }
    }
}

/// A Coder cochain of degree `n ≥ 1`: `f` of degree `n` and, for `n ≥ 2`,
/// `g` of degree `n − 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoderCochain {
    f: Cochain,
    g: Option<Cochain>,
}

impl CoderCochain {
    pub fn new(f: Cochain, g: Option<Cochain>) -> Result<Self> {
        let n = f.degree;
        if n == 0 {
            return Err(Error::Invalid("Coder cochains start in degree 1".into()));
        }
        match &g {
            None if n >= 2 => Err(Error::Invalid(format!("degree-{n} Coder cochain needs a second component"))),
            Some(_) if n == 1 => Err(Error::Invalid("degree-1 Coder cochains have a single component".into())),
            Some(g) if (g.degree + 1, g.dim_c, g.dim_m) != (n, f.dim_c, f.dim_m) => {
                Err(Error::ShapeMismatch { op: "Coder cochain", left: f.map.shape(), right: g.map.shape() })
            }
            _ => Ok(CoderCochain { f, g }),
        }
    }

    pub fn zero(degree: usize, dim_c: usize, dim_m: usize) -> Result<Self> {
        let f = Cochain::zero(degree, dim_c, dim_m)?;
        let g = if degree >= 2 { Some(Cochain::zero(degree - 1, dim_c, dim_m)?) } else { None };
        CoderCochain::new(f, g)
    }

    pub fn degree(&self) -> usize {
        self.f.degree
    }

    pub fn f(&self) -> &Cochain {
        &self.f
    }

    pub fn g(&self) -> Option<&Cochain> {
        self.g.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.g.as_ref().is_none_or(Cochain::is_zero)
    }

    pub fn len(&self) -> usize {
        self.f.len() + self.g.as_ref().map_or(0, Cochain::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_vec(&self) -> SparseVec {
        let mut v = self.f.to_vec();
        if let Some(g) = &self.g {
            let off = self.f.len();
            v.extend(g.to_vec().into_iter().map(|(i, x)| (i + off, x)));
        }
        v
    }

    pub fn from_vec(degree: usize, dim_c: usize, dim_m: usize, v: &[(usize, Scalar)]) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Invalid("Coder cochains start in degree 1".into()));
        }
        let split = tensor_dim(dim_c, degree)? * dim_m;
        let (head, tail): (Vec<_>, Vec<_>) = v.iter().cloned().partition(|(i, _)| *i < split);
        let f = Cochain::from_vec(degree, dim_c, dim_m, &head)?;
        let g = if degree >= 2 {
            let tail: Vec<_> = tail.into_iter().map(|(i, x)| (i - split, x)).collect();
            Some(Cochain::from_vec(degree - 1, dim_c, dim_m, &tail)?)
        } else if !tail.is_empty() {
            return Err(Error::Invalid("coordinate vector too long for a degree-1 Coder cochain".into()));
        } else {
            None
        };
        CoderCochain::new(f, g)
    }
}

/// Dimension of `C^n_c(M, C)`.
pub fn cochain_dim(d: usize, m: usize, n: usize) -> Result<usize> {
    let size = tensor_dim(d, n)?.checked_mul(m).filter(|s| *s <= config::index_bound()).ok_or_else(|| {
        Error::IndexOverflow {
            what: format!("degree-{n} cochains"),
            size: (d as u128).saturating_pow(n as u32).saturating_mul(m as u128),
            bound: config::index_bound(),
        }
    })?;
    Ok(size)
}

/// Dimension of `C^n_Coder(M, C)`, zero in degree 0.
pub fn coder_cochain_dim(d: usize, m: usize, n: usize) -> Result<usize> {
    match n {
        0 => Ok(0),
        1 => cochain_dim(d, m, 1),
        _ => Ok(cochain_dim(d, m, n)? + cochain_dim(d, m, n - 1)?),
    }
}

fn check_degree(n: usize) -> Result<()> {
    let max = config::max_degree();
    if n > max {
        return Err(Error::DegreeBound { degree: n, max });
    }
    Ok(())
}

fn check_cochain(c: &Coalgebra, m: &Bicomodule, f: &Cochain) -> Result<()> {
    if c.dim() != m.dim_c() || f.dim_c != c.dim() || f.dim_m != m.dim_m() {
        return Err(Error::ShapeMismatch { op: "cochain", left: (c.dim(), m.dim_m()), right: (f.dim_c, f.dim_m) });
    }
    Ok(())
}

/// `δ_c f = (Id⊗f)ρ_l + Σ_i (−1)^i (Id^{i−1}⊗Δ⊗Id^{n−i}) f + (−1)^{n+1} (f⊗Id)ρ_r`.
pub fn delta_c(c: &Coalgebra, m: &Bicomodule, f: &Cochain) -> Result<Cochain> {
    check_cochain(c, m, f)?;
    let n = f.degree;
    let d = c.dim();
    cochain_dim(d, m.dim_m(), n + 1)?;
    let id = c.identity();
    let mut out = id.kron(&f.map)?.compose(m.rho_l())?;
    for i in 1..=n {
        let leg = insert_leg(d, i - 1, c.delta(), n - i)?.compose(&f.map)?;
        out = if i % 2 == 0 { out.add(&leg)? } else { out.sub(&leg)? };
    }
    let right = f.map.kron(&id)?.compose(m.rho_r())?;
    out = if n % 2 == 1 { out.add(&right)? } else { out.sub(&right)? };
    Cochain::new(n + 1, d, m.dim_m(), out)
}

/// `ω f = Σ_i (Id^{i−1}⊗ψ_C⊗Id^{n−i}) f − f ψ_M`.
pub fn omega(cp: &CoderPair, mp: &BicomodulePair, f: &Cochain) -> Result<Cochain> {
    check_cochain(cp.coalgebra(), mp.bicomodule(), f)?;
    let n = f.degree;
    let d = cp.dim();
    let mut out = f.map.compose(mp.psi_m().mat())?.neg();
    for i in 1..=n {
        out = out.add(&insert_leg(d, i - 1, cp.psi().mat(), n - i)?.compose(&f.map)?)?;
    }
    Cochain::new(n, d, mp.dim_m(), out)
}

/// `d¹ f = (δf, −ωf)` and `dⁿ(f, g) = (δf, δg + (−1)ⁿ ωf)`.
pub fn d_coder(cp: &CoderPair, mp: &BicomodulePair, x: &CoderCochain) -> Result<CoderCochain> {
    let n = x.degree();
    let c = cp.coalgebra();
    let m = mp.bicomodule();
    let df = delta_c(c, m, &x.f)?;
    let w = omega(cp, mp, &x.f)?;
    let w = if n.is_multiple_of(2) { w } else { w.scale(&-Scalar::one()) };
    let second = match &x.g {
        Some(g) => delta_c(c, m, g)?.add(&w)?,
        None => w,
    };
    CoderCochain::new(df, Some(second))
}

/// The action of `Id^{left} ⊗ op ⊗ Id^{right}` on one basis tensor, where
/// `op` maps one tensor factor of dimension `d` into `out_factors` factors.
struct Leg<'a> {
    op: &'a SparseMat,
    /// `d^{right}`
    low: usize,
    /// `d` (one factor in)
    width_in: usize,
    /// rows of `op`
    width_out: usize,
}

impl Leg<'_> {
    fn push(&self, r: usize, out_offset: usize, sign: &Scalar, col: &mut Vec<(usize, Scalar)>) {
        let s = r % self.low;
        let digit = (r / self.low) % self.width_in;
        let p = r / (self.low * self.width_in);
        let base = out_offset + p * self.width_out * self.low + s;
        for (a, v) in self.op.col(digit) {
            col.push((base + a * self.low, sign * v));
        }
    }
}

fn legs<'a>(d: usize, n: usize, op: &'a SparseMat) -> Vec<Leg<'a>> {
    (1..=n).map(|i| Leg { op, low: d.pow((n - i) as u32), width_in: d, width_out: op.rows() }).collect()
}

/// Entries `(row, col, value)` of `ρ` grouped by the `M` index `k` of its
/// output, so that `by_k[k]` lists `(i, other, value)`.
fn group_coaction(
    rho: &SparseMat,
    split: impl Fn(usize) -> (usize, usize),
    dim_m: usize,
) -> Vec<Vec<(usize, usize, Scalar)>> {
    let mut by_k = vec![Vec::new(); dim_m];
    for (r, i, v) in rho.triplets() {
        let (k, other) = split(r);
        by_k[k].push((i, other, v.clone()));
    }
    by_k
}

/// Matrix of `δ_c` from degree `n` to degree `n + 1`.
pub fn delta_matrix(c: &Coalgebra, m: &Bicomodule, n: usize) -> Result<SparseMat> {
    delta_matrix_with(c, m, n, Exec::default())
}

pub fn delta_matrix_with(c: &Coalgebra, m: &Bicomodule, n: usize, exec: Exec) -> Result<SparseMat> {
    if c.dim() != m.dim_c() {
        return Err(Error::ShapeMismatch {
            op: "delta_matrix",
            left: (c.dim(), c.dim()),
            right: (m.dim_c(), m.dim_c()),
        });
    }
    check_degree(n)?;
    let d = c.dim();
    let dm = m.dim_m();
    let d0 = tensor_dim(d, n)?;
    let d1 = cochain_dim(d, dm, n + 1)? / dm;
    let cols = d0 * dm;
    // ρ_l row j m + k, ρ_r row k d + j
    let left = group_coaction(m.rho_l(), |r| (r % dm, r / dm), dm);
    let right = group_coaction(m.rho_r(), |r| (r / d, r % d), dm);
    let legs = legs(d, n, c.delta());
    let signs: Vec<Scalar> = (0..=n + 1).map(|i| if i % 2 == 0 { Scalar::one() } else { -Scalar::one() }).collect();
    let columns = exec.map_range(cols, |col| {
        let (k, r) = (col / d0, col % d0);
        let mut out = Vec::new();
        for (i, j, v) in &left[k] {
            out.push((i * d1 + j * d0 + r, v.clone()));
        }
        for (idx, leg) in legs.iter().enumerate() {
            leg.push(r, k * d1, &signs[idx + 1], &mut out);
        }
        for (i, j, v) in &right[k] {
            out.push((i * d1 + r * d + j, &signs[n + 1] * v));
        }
        normalize_vec(out)
    });
    SparseMat::from_columns(d1 * dm, columns)
}

/// Matrix of `ω` on degree-`n` cochains.
pub fn omega_matrix(cp: &CoderPair, mp: &BicomodulePair, n: usize) -> Result<SparseMat> {
    omega_matrix_with(cp, mp, n, Exec::default())
}

pub fn omega_matrix_with(cp: &CoderPair, mp: &BicomodulePair, n: usize, exec: Exec) -> Result<SparseMat> {
    let d = cp.dim();
    if d != mp.bicomodule().dim_c() {
        return Err(Error::ShapeMismatch { op: "omega_matrix", left: (d, d), right: (mp.bicomodule().dim_c(), 0) });
    }
    check_degree(n)?;
    let dm = mp.dim_m();
    let size = cochain_dim(d, dm, n)?;
    let d0 = size / dm;
    let legs = legs(d, n, cp.psi().mat());
    let psi_m_t = mp.psi_m().mat().transpose();
    let one = Scalar::one();
    let columns = exec.map_range(size, |col| {
        let (k, r) = (col / d0, col % d0);
        let mut out = Vec::new();
        for leg in &legs {
            leg.push(r, k * d0, &one, &mut out);
        }
        for (i, v) in psi_m_t.col(k) {
            out.push((i * d0 + r, -v));
        }
        normalize_vec(out)
    });
    SparseMat::from_columns(size, columns)
}

/// Matrix of `dⁿ` on `C^n_Coder`, in block form `[[δⁿ, 0], [(−1)ⁿ ωⁿ, δⁿ⁻¹]]`
/// (for `n = 1` the single block column `[[δ¹], [−ω¹]]`).
pub fn d_coder_matrix(cp: &CoderPair, mp: &BicomodulePair, n: usize) -> Result<SparseMat> {
    d_coder_matrix_with(cp, mp, n, Exec::default())
}

pub fn d_coder_matrix_with(cp: &CoderPair, mp: &BicomodulePair, n: usize, exec: Exec) -> Result<SparseMat> {
    if n == 0 {
        return Err(Error::Invalid("the Coder complex starts in degree 1".into()));
    }
    let c = cp.coalgebra();
    let m = mp.bicomodule();
    let delta = delta_matrix_with(c, m, n, exec)?;
    let mut w = omega_matrix_with(cp, mp, n, exec)?;
    if n % 2 == 1 {
        w = w.neg();
    }
    if n == 1 {
        return SparseMat::block(&[vec![&delta], vec![&w]]);
    }
    let lower = delta_matrix_with(c, m, n - 1, exec)?;
    let zero = SparseMat::zeros(delta.rows(), lower.cols());
    SparseMat::block(&[vec![&delta, &zero], vec![&w, &lower]])
}

/// Builds the matrix of a linear map on coordinate vectors by applying it to
/// every basis vector. Used as an independent oracle for the assemblies.
pub fn probe_matrix<F>(domain: usize, codomain: usize, mut op: F) -> Result<SparseMat>
where
    F: FnMut(&[(usize, Scalar)]) -> Result<SparseVec>,
{
    let mut columns = Vec::with_capacity(domain);
    for j in 0..domain {
        columns.push(op(&[(j, Scalar::one())])?);
    }
    SparseMat::from_columns(codomain, columns)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalg::{
        comatrix, degree_weights, divided_power, grading_coderivation, grouplike, new_coder_pair, zero_coproduct, Endo,
    };
    use crate::comodule::coadjoint;
    use crate::random::random_matrix;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn graded(n: usize) -> CoderPair {
        new_coder_pair(divided_power(n), grading_coderivation(&degree_weights(n + 1), n + 1).unwrap()).unwrap()
    }

    fn diag01() -> CoderPair {
        let psi = SparseMat::diagonal(vec![Scalar::zero(), Scalar::one()]);
        new_coder_pair(zero_coproduct(2).unwrap(), Endo::new(psi).unwrap()).unwrap()
    }

    fn samples() -> Vec<CoderPair> {
        vec![
            new_coder_pair(grouplike(), Endo::zero(1)).unwrap(),
            graded(1),
            graded(2),
            new_coder_pair(comatrix(2).unwrap(), Endo::zero(4)).unwrap(),
            diag01(),
        ]
    }

    #[test]
    fn delta_of_identity_is_delta() {
        let cp = graded(2);
        let mp = coadjoint(&cp);
        let id = Cochain::new(1, 3, 3, SparseMat::identity(3)).unwrap();
        assert_eq!(delta_c(cp.coalgebra(), mp.bicomodule(), &id).unwrap().map(), cp.delta());
        assert!(omega(&cp, &mp, &id).unwrap().is_zero());
        let x = CoderCochain::new(id, None).unwrap();
        let dx = d_coder(&cp, &mp, &x).unwrap();
        assert_eq!(dx.f().map(), cp.delta());
        assert!(dx.g().unwrap().is_zero());
    }

    #[test]
    fn grouplike_degree_two_cocycle() {
        let cp = new_coder_pair(grouplike(), Endo::zero(1)).unwrap();
        let mp = coadjoint(&cp);
        let f = Cochain::new(2, 1, 1, SparseMat::identity(1)).unwrap();
        assert!(delta_c(cp.coalgebra(), mp.bicomodule(), &f).unwrap().is_zero());
        // odd degrees: δ multiplies by 1
        let f = Cochain::new(3, 1, 1, SparseMat::identity(1)).unwrap();
        assert_eq!(delta_c(cp.coalgebra(), mp.bicomodule(), &f).unwrap().map(), &SparseMat::identity(1));
        let z = Cochain::zero(2, 1, 1).unwrap();
        assert!(delta_c(cp.coalgebra(), mp.bicomodule(), &z).unwrap().is_zero());
    }

    #[test]
    fn omega_is_the_commutator_on_zero_coproduct() {
        let cp = diag01();
        let mp = coadjoint(&cp);
        let psi = cp.psi().mat().to_dense();
        for r in 0..2 {
            for c in 0..2 {
                let e = SparseMat::from_triplets(2, 2, [(r, c, Scalar::one())]).unwrap();
                let f = Cochain::new(1, 2, 2, e.clone()).unwrap();
                let got = omega(&cp, &mp, &f).unwrap().into_map().to_dense();
                let ed = e.to_dense();
                let a = crate::exactlin::sparse::dense_mul(&psi, &ed);
                let b = crate::exactlin::sparse::dense_mul(&ed, &psi);
                for i in 0..2 {
                    for j in 0..2 {
                        assert_eq!(got[i][j], &a[i][j] - &b[i][j]);
                    }
                }
            }
        }
        // ω(E_{01}) = ψE_{01} − E_{01}ψ = −E_{01}
        let f = Cochain::new(1, 2, 2, SparseMat::from_triplets(2, 2, [(0, 1, Scalar::one())]).unwrap()).unwrap();
        assert_eq!(omega(&cp, &mp, &f).unwrap(), f.scale(&-Scalar::one()));
    }

    #[test]
    fn degree_zero_conventions() {
        let cp = graded(2);
        let mp = coadjoint(&cp);
        let f = Cochain::new(0, 3, 3, SparseMat::from_dense(&[vec![1, 2, 3]])).unwrap();
        let df = delta_c(cp.coalgebra(), mp.bicomodule(), &f).unwrap();
        assert_eq!(df.degree(), 1);
        assert_eq!(omega(&cp, &mp, &f).unwrap().into_map(), f.map().compose(cp.psi().mat()).unwrap().neg());
    }

    #[test]
    fn assembled_matrices_match_operations() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for cp in samples() {
            let mp = coadjoint(&cp);
            let d = cp.dim();
            for n in 0..=3 {
                let dm = delta_matrix(cp.coalgebra(), mp.bicomodule(), n).unwrap();
                let om = omega_matrix(&cp, &mp, n).unwrap();
                for _ in 0..3 {
                    let f = Cochain::new(n, d, d, random_matrix(&mut rng, d.pow(n as u32), d, 0.5)).unwrap();
                    let df = delta_c(cp.coalgebra(), mp.bicomodule(), &f).unwrap();
                    assert_eq!(dm.apply(&f.to_vec()).unwrap(), df.to_vec(), "δ, n = {n}");
                    assert_eq!(om.apply(&f.to_vec()).unwrap(), omega(&cp, &mp, &f).unwrap().to_vec(), "ω, n = {n}");
                }
            }
        }
    }

    #[test]
    fn probe_agrees_with_assembly() {
        let cp = graded(2);
        let mp = coadjoint(&cp);
        for n in 1..=3 {
            let size = coder_cochain_dim(3, 3, n).unwrap();
            let probed = probe_matrix(size, coder_cochain_dim(3, 3, n + 1).unwrap(), |v| {
                let x = CoderCochain::from_vec(n, 3, 3, v)?;
                Ok(d_coder(&cp, &mp, &x)?.to_vec())
            })
            .unwrap();
            assert_eq!(probed, d_coder_matrix(&cp, &mp, n).unwrap());
        }
    }

    #[test]
    fn complex_laws() {
        for cp in samples() {
            let mp = coadjoint(&cp);
            let (c, m) = (cp.coalgebra(), mp.bicomodule());
            for n in 0..=2 {
                let d0 = delta_matrix(c, m, n).unwrap();
                let d1 = delta_matrix(c, m, n + 1).unwrap();
                assert!(d1.compose(&d0).unwrap().is_zero());
                let w0 = omega_matrix(&cp, &mp, n).unwrap();
                let w1 = omega_matrix(&cp, &mp, n + 1).unwrap();
                assert_eq!(w1.compose(&d0).unwrap(), d0.compose(&w0).unwrap());
            }
            for n in 1..=2 {
                let a = d_coder_matrix(&cp, &mp, n).unwrap();
                let b = d_coder_matrix(&cp, &mp, n + 1).unwrap();
                assert!(b.compose(&a).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn zero_psi_gives_block_diagonal() {
        let cp = new_coder_pair(comatrix(2).unwrap(), Endo::zero(4)).unwrap();
        let mp = coadjoint(&cp);
        let m = d_coder_matrix(&cp, &mp, 2).unwrap();
        let top = cochain_dim(4, 4, 3).unwrap();
        let left = cochain_dim(4, 4, 2).unwrap();
        assert!(m.row_slice(top, m.rows() - top).col_slice(0, left).is_zero());
    }

    #[test]
    fn coder_cochain_shapes() {
        let f = Cochain::zero(2, 2, 2).unwrap();
        assert!(CoderCochain::new(f.clone(), None).is_err());
        assert!(CoderCochain::new(Cochain::zero(0, 2, 2).unwrap(), None).is_err());
        let g = Cochain::zero(1, 2, 2).unwrap();
        let x = CoderCochain::new(f, Some(g)).unwrap();
        assert_eq!(x.len(), 8 + 4);
        let v = vec![(1, Scalar::one()), (9, Scalar::from_int(2))];
        assert_eq!(CoderCochain::from_vec(2, 2, 2, &v).unwrap().to_vec(), v);
    }

    #[test]
    fn degree_guard() {
        let cp = graded(1);
        let mp = coadjoint(&cp);
        let over = config::max_degree() + 1;
        assert!(matches!(delta_matrix(cp.coalgebra(), mp.bicomodule(), over), Err(Error::DegreeBound { .. })));
    }
}
