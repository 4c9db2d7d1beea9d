//! Truncated one-parameter deformations of a Coder pair over its coadjoint
//! bicomodule: validation, infinitesimals, obstructions, extension, gauge
//! transformations and trivialization.

use crate::coalg::CoderPair;
use crate::cochain::{d_coder, d_coder_matrix, Cochain, CoderCochain};
use crate::cohomology::{class_coordinates, coder_degree};
use crate::comodule::{coadjoint, BicomodulePair};
use crate::error::{Error, Result};
use crate::exactlin::{Solver, SparseMat};
use crate::report::ValidationReport;
use crate::scalar::Scalar;

/// `Δ_t = Σ Δ_i tⁱ`, `ψ_t = Σ ψ_i tⁱ` truncated at `t^{order}`, with
/// `Δ_0 = Δ` and `ψ_0 = ψ_C` taken from the base pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deformation {
    base: CoderPair,
    deltas: Vec<SparseMat>,
    psis: Vec<SparseMat>,
}

impl Deformation {
    /// `deltas` and `psis` are the coefficients of orders `1..=n`.
    pub fn new(base: CoderPair, deltas: Vec<SparseMat>, psis: Vec<SparseMat>) -> Result<Self> {
        if deltas.len() != psis.len() {
            return Err(Error::Invalid(format!(
                "{} coproduct coefficients but {} coderivation coefficients",
                deltas.len(),
                psis.len()
            )));
        }
        let d = base.dim();
        for (k, (a, b)) in deltas.iter().zip(&psis).enumerate() {
            if a.shape() != (d * d, d) {
                return Err(Error::ShapeMismatch { op: "deformation coproduct", left: (d * d, d), right: a.shape() });
            }
            if b.shape() != (d, d) {
                return Err(Error::Invalid(format!(
                    "coderivation coefficient of order {} has shape {:?}",
                    k + 1,
                    b.shape()
                )));
            }
        }
        let mut all_d = vec![base.delta().clone()];
        all_d.extend(deltas);
        let mut all_p = vec![base.psi().mat().clone()];
        all_p.extend(psis);
        Ok(Deformation { base, deltas: all_d, psis: all_p })
    }

    pub fn trivial(base: CoderPair, order: usize) -> Self {
        let d = base.dim();
        Deformation::new(base, vec![SparseMat::zeros(d * d, d); order], vec![SparseMat::zeros(d, d); order])
            .expect("shapes")
    }

    pub fn base(&self) -> &CoderPair {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.deltas.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// `Δ_k`, zero beyond the order.
    pub fn delta(&self, k: usize) -> SparseMat {
        self.deltas.get(k).cloned().unwrap_or_else(|| SparseMat::zeros(self.dim() * self.dim(), self.dim()))
    }

    pub fn psi(&self, k: usize) -> SparseMat {
        self.psis.get(k).cloned().unwrap_or_else(|| SparseMat::zeros(self.dim(), self.dim()))
    }

    pub fn deltas(&self) -> &[SparseMat] {
        &self.deltas
    }

    pub fn psis(&self) -> &[SparseMat] {
        &self.psis
    }

    /// The coefficient pair of order `k ≥ 1` as a degree-2 Coder cochain.
    pub fn coefficient(&self, k: usize) -> Result<CoderCochain> {
        let d = self.dim();
        CoderCochain::new(Cochain::new(2, d, d, self.delta(k))?, Some(Cochain::new(1, d, d, self.psi(k))?))
    }

    /// Keeps the coefficients up to `order`, padding with zeros.
    pub fn truncate(&self, order: usize) -> Deformation {
        Deformation {
            base: self.base.clone(),
            deltas: (0..=order).map(|k| self.delta(k)).collect(),
            psis: (0..=order).map(|k| self.psi(k)).collect(),
        }
    }

    fn with_coefficient(&self, delta: SparseMat, psi: SparseMat) -> Deformation {
        let mut out = self.clone();
        out.deltas.push(delta);
        out.psis.push(psi);
        out
    }

    pub fn is_trivial(&self) -> bool {
        (1..=self.order()).all(|k| self.deltas[k].is_zero() && self.psis[k].is_zero())
    }
}

/// The two residuals at order `k`:
/// `Σ_{i+j=k} (Id⊗Δ_i)Δ_j − (Δ_i⊗Id)Δ_j` and
/// `Σ_{i+j=k} Δ_iψ_j − (ψ_i⊗Id)Δ_j − (Id⊗ψ_i)Δ_j`.
pub fn order_residuals(d: &Deformation, k: usize) -> Result<(SparseMat, SparseMat)> {
    let n = d.dim();
    let id = SparseMat::identity(n);
    let mut coassoc = SparseMat::zeros(n * n * n, n);
    let mut coder = SparseMat::zeros(n * n, n);
    for i in 0..=k {
        let j = k - i;
        let (di, dj) = (d.delta(i), d.delta(j));
        if !dj.is_zero() && !di.is_zero() {
            coassoc = coassoc.add(&id.kron(&di)?.compose(&dj)?)?.sub(&di.kron(&id)?.compose(&dj)?)?;
        }
        let (pi, pj) = (d.psi(i), d.psi(j));
        if !di.is_zero() && !pj.is_zero() {
            coder = coder.add(&di.compose(&pj)?)?;
        }
        if !pi.is_zero() && !dj.is_zero() {
            coder = coder.sub(&pi.kron(&id)?.compose(&dj)?)?.sub(&id.kron(&pi)?.compose(&dj)?)?;
        }
    }
    Ok((coassoc, coder))
}

/// The failures at the first order `k ≤ order` where either identity breaks.
pub fn validate_deformation(d: &Deformation) -> Result<ValidationReport> {
    let mut report = ValidationReport::default();
    for k in 0..=d.order() {
        let (a, b) = order_residuals(d, k)?;
        report.record(format!("coassociativity at order {k}"), a);
        report.record(format!("coderivation at order {k}"), b);
        if !report.passed() {
            break;
        }
    }
    Ok(report)
}

fn require_valid(d: &Deformation) -> Result<()> {
    let report = validate_deformation(d)?;
    if report.passed() {
        Ok(())
    } else {
        Err(Error::Axiom(report))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Infinitesimal {
    /// First order with a nonzero coefficient, if any.
    pub order: Option<usize>,
    pub cochain: CoderCochain,
    pub is_cocycle: bool,
}

pub fn infinitesimal(d: &Deformation) -> Result<Infinitesimal> {
    if d.order() == 0 {
        return Err(Error::Invalid("an order-0 deformation has no infinitesimal".into()));
    }
    require_valid(d)?;
    let order = (1..=d.order()).find(|&k| !d.deltas[k].is_zero() || !d.psis[k].is_zero());
    let cochain = d.coefficient(order.unwrap_or(1))?;
    let mp = coadjoint(&d.base);
    let is_cocycle = d_coder(&d.base, &mp, &cochain)?.is_zero();
    Ok(Infinitesimal { order, cochain, is_cocycle })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionPair {
    pub ob_c: Cochain,
    pub ob_psi: Cochain,
    /// `d³(Ob_C, Ob_ψ) = 0`.
    pub is_cocycle: bool,
}

impl ObstructionPair {
    pub fn to_coder_cochain(&self) -> Result<CoderCochain> {
        CoderCochain::new(self.ob_c.clone(), Some(self.ob_psi.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.ob_c.is_zero() && self.ob_psi.is_zero()
    }
}

/// Obstruction to extending an order-`n` deformation to order `n + 1`.
pub fn obstruction(d: &Deformation) -> Result<ObstructionPair> {
    require_valid(d)?;
    let n = d.dim();
    let k = d.order() + 1;
    let id = SparseMat::identity(n);
    let mut ob_c = SparseMat::zeros(n * n * n, n);
    let mut ob_psi = SparseMat::zeros(n * n, n);
    for i in 1..k {
        let j = k - i;
        let (di, dj, pi, pj) = (d.delta(i), d.delta(j), d.psi(i), d.psi(j));
        ob_c = ob_c.add(&di.kron(&id)?.compose(&dj)?)?.sub(&id.kron(&di)?.compose(&dj)?)?;
        ob_psi = ob_psi.add(&di.compose(&pj)?)?.sub(&id.kron(&pi)?.compose(&dj)?)?.sub(&pi.kron(&id)?.compose(&dj)?)?;
    }
    let ob_c = Cochain::new(3, n, n, ob_c)?;
    let ob_psi = Cochain::new(2, n, n, ob_psi)?;
    let pair = CoderCochain::new(ob_c.clone(), Some(ob_psi.clone()))?;
    let is_cocycle = d_coder(&d.base, &coadjoint(&d.base), &pair)?.is_zero();
    Ok(ObstructionPair { ob_c, ob_psi, is_cocycle })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extension {
    Extended(Deformation),
    Obstructed {
        obstruction: ObstructionPair,
        /// Coordinates of the obstruction class in the computed basis of `H³_Coder`.
        class: Vec<Scalar>,
    },
}

/// Solves `d²(Δ_{n+1}, ψ_{n+1}) = (Ob_C, Ob_ψ)` with free variables zero.
pub fn extend(d: &Deformation) -> Result<Extension> {
    let ob = obstruction(d)?;
    let mp = coadjoint(&d.base);
    let d2 = d_coder_matrix(&d.base, &mp, 2)?;
    let rhs = ob.to_coder_cochain()?.to_vec();
    let n = d.dim();
    match Solver::new(&d2).solve(&rhs)? {
        Some(x) => {
            let next = CoderCochain::from_vec(2, n, n, &x)?;
            let out = d.with_coefficient(next.f().map().clone(), next.g().expect("degree 2").map().clone());
            let report = validate_deformation(&out)?;
            if !report.passed() {
                return Err(Error::Internal(format!("extension failed validation:\n{report}")));
            }
            Ok(Extension::Extended(out))
        }
        None => {
            let h3 = coder_degree(&d.base, &mp, 3)?;
            let class = class_coordinates(d2.rows(), d2.columns(), &h3.representatives, &rhs)
                .ok_or_else(|| Error::Internal("obstruction is not a cocycle".into()))?;
            Ok(Extension::Obstructed { obstruction: ob, class })
        }
    }
}

/// `Φ_t = Σ φ_i tⁱ` with `φ_0 = Id`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gauge {
    phis: Vec<SparseMat>,
}

impl Gauge {
    /// `phis` are the coefficients of orders `1..=n`.
    pub fn new(dim: usize, phis: Vec<SparseMat>) -> Result<Self> {
        if let Some(bad) = phis.iter().find(|p| p.shape() != (dim, dim)) {
            return Err(Error::ShapeMismatch { op: "gauge", left: (dim, dim), right: bad.shape() });
        }
        let mut all = vec![SparseMat::identity(dim)];
        all.extend(phis);
        Ok(Gauge { phis: all })
    }

    pub fn identity(dim: usize, order: usize) -> Self {
        Gauge::new(dim, vec![SparseMat::zeros(dim, dim); order]).expect("shapes")
    }

    pub fn order(&self) -> usize {
        self.phis.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.phis[0].rows()
    }

    pub fn phi(&self, k: usize) -> SparseMat {
        self.phis.get(k).cloned().unwrap_or_else(|| SparseMat::zeros(self.dim(), self.dim()))
    }

    pub fn phis(&self) -> &[SparseMat] {
        &self.phis
    }

    /// `self ∘ other` truncated at `order`.
    pub fn compose(&self, other: &Gauge, order: usize) -> Result<Gauge> {
        let phis = series_mul(&self.series(order), &other.series(order), order)?;
        Ok(Gauge { phis })
    }

    fn series(&self, order: usize) -> Vec<SparseMat> {
        (0..=order).map(|k| self.phi(k)).collect()
    }
}

/// Coefficients of `a(t) b(t)` up to `order`.
fn series_mul(a: &[SparseMat], b: &[SparseMat], order: usize) -> Result<Vec<SparseMat>> {
    let mut out = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = SparseMat::zeros(a[0].rows(), b[0].cols());
        for i in 0..=k {
            let (x, y) = (&a[i], &b[k - i]);
            if !x.is_zero() && !y.is_zero() {
                acc = acc.add(&x.compose(y)?)?;
            }
        }
        out.push(acc);
    }
    Ok(out)
}

/// Coefficients of `Φ_t ⊗ Φ_t` up to `order`.
fn series_kron_square(a: &[SparseMat], order: usize) -> Result<Vec<SparseMat>> {
    let n = a[0].rows();
    let mut out = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = SparseMat::zeros(n * n, n * n);
        for i in 0..=k {
            let (x, y) = (&a[i], &a[k - i]);
            if !x.is_zero() && !y.is_zero() {
                acc = acc.add(&x.kron(y)?)?;
            }
        }
        out.push(acc);
    }
    Ok(out)
}

/// `Φ_t^{-1}` up to `order`: `inv_k = −Σ_{i=1..k} φ_i inv_{k−i}`.
pub fn gauge_inverse(g: &Gauge, order: usize) -> Gauge {
    let n = g.dim();
    let mut inv = vec![SparseMat::identity(n)];
    for k in 1..=order {
        let mut acc = SparseMat::zeros(n, n);
        for i in 1..=k {
            let p = g.phi(i);
            if !p.is_zero() {
                acc = acc.sub(&p.compose(&inv[k - i]).expect("square")).expect("square");
            }
        }
        inv.push(acc);
    }
    Gauge { phis: inv }
}

/// `Δ̄_t = (Φ_t⊗Φ_t) Δ_t Φ_t^{-1}` and `ψ̄_t = Φ_t ψ_t Φ_t^{-1}` truncated at the
/// deformation's order.
pub fn apply_gauge(d: &Deformation, g: &Gauge) -> Result<Deformation> {
    if g.dim() != d.dim() {
        return Err(Error::ShapeMismatch { op: "gauge", left: (d.dim(), d.dim()), right: (g.dim(), g.dim()) });
    }
    require_valid(d)?;
    let order = d.order();
    let phi = g.series(order);
    let inv = gauge_inverse(g, order).phis;
    let deltas = series_mul(&series_mul(&series_kron_square(&phi, order)?, &d.deltas, order)?, &inv, order)?;
    let psis = series_mul(&series_mul(&phi, &d.psis, order)?, &inv, order)?;
    let out = Deformation { base: d.base.clone(), deltas, psis };
    if out.deltas[0] != d.deltas[0] || out.psis[0] != d.psis[0] {
        return Err(Error::Internal("gauge changed the base pair".into()));
    }
    let report = validate_deformation(&out)?;
    if !report.passed() {
        return Err(Error::Internal(format!("gauge transform failed validation:\n{report}")));
    }
    Ok(out)
}

/// Checks `Δ̄_t Φ_t = (Φ_t⊗Φ_t) Δ_t` and `ψ̄_t Φ_t = Φ_t ψ_t` coefficient-wise,
/// reporting the first failing order.
pub fn check_equivalence(d1: &Deformation, d2: &Deformation, g: &Gauge) -> Result<ValidationReport> {
    if d1.order() != d2.order() {
        return Err(Error::Invalid(format!("orders {} and {} differ", d1.order(), d2.order())));
    }
    if d1.dim() != d2.dim() || g.dim() != d1.dim() {
        return Err(Error::ShapeMismatch { op: "equivalence", left: (d1.dim(), d2.dim()), right: (g.dim(), g.dim()) });
    }
    let order = d1.order();
    let phi = g.series(order);
    let lhs_c = series_mul(&d2.deltas, &phi, order)?;
    let rhs_c = series_mul(&series_kron_square(&phi, order)?, &d1.deltas, order)?;
    let lhs_p = series_mul(&d2.psis, &phi, order)?;
    let rhs_p = series_mul(&phi, &d1.psis, order)?;
    let mut report = ValidationReport::default();
    for k in 0..=order {
        report.record(format!("coproduct intertwining at order {k}"), lhs_c[k].sub(&rhs_c[k])?);
        report.record(format!("coderivation intertwining at order {k}"), lhs_p[k].sub(&rhs_p[k])?);
        if !report.passed() {
            break;
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfinitesimalComparison {
    pub report: ValidationReport,
    /// `(Δ̄₁, ψ̄₁) − (Δ₁, ψ₁)`
    pub difference: CoderCochain,
}

/// Verifies `(Δ̄₁, ψ̄₁) = (Δ₁, ψ₁) + d¹(φ₁)`.
pub fn equivalent_infinitesimals_check(
    d1: &Deformation,
    d2: &Deformation,
    g: &Gauge,
) -> Result<InfinitesimalComparison> {
    let n = d1.dim();
    let first = d1.coefficient(1)?;
    let second = d2.coefficient(1)?;
    let mp = coadjoint(&d1.base);
    let phi1 = CoderCochain::new(Cochain::new(1, n, n, g.phi(1))?, None)?;
    let dphi = d_coder(&d1.base, &mp, &phi1)?;
    let diff_f = second.f().sub(first.f())?;
    let diff_g = second.g().expect("degree 2").sub(first.g().expect("degree 2"))?;
    let mut report = ValidationReport::default();
    report.record("Δ̄₁ − Δ₁ = δ(φ₁)", diff_f.sub(dphi.f())?.into_map());
    report.record("ψ̄₁ − ψ₁ = −ω(φ₁)", diff_g.sub(dphi.g().expect("degree 2"))?.into_map());
    Ok(InfinitesimalComparison { report, difference: CoderCochain::new(diff_f, Some(diff_g))? })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Trivialization {
    /// `apply_gauge(d, gauge)` is trivial up to the processed order.
    Trivialized(Gauge),
    Blocked {
        order: usize,
        cochain: CoderCochain,
        /// Coordinates of the class in the computed basis of `H²_Coder`.
        class: Vec<Scalar>,
    },
}

/// Removes the lowest nonzero coefficient order by order with gauges
/// `Id + φ t^r`, where `d¹(φ) = −(Δ_r, ψ_r)`, up to `min(order, budget)`.
pub fn trivialize(d: &Deformation, budget: usize) -> Result<Trivialization> {
    require_valid(d)?;
    let order = d.order().min(budget);
    let n = d.dim();
    let mp = coadjoint(&d.base);
    let d1 = d_coder_matrix(&d.base, &mp, 1)?;
    let mut solver = Solver::new(&d1);
    let mut current = d.truncate(order);
    let mut total = Gauge::identity(n, order);
    while let Some(r) = (1..=order).find(|&k| !current.deltas[k].is_zero() || !current.psis[k].is_zero()) {
        let coeff = current.coefficient(r)?;
        let rhs: Vec<_> = coeff.to_vec().into_iter().map(|(i, x)| (i, -x)).collect();
        let Some(phi) = solver.solve(&rhs)? else {
            let class = h2_class(&d.base, &mp, &d1, &coeff)?;
            return Ok(Trivialization::Blocked { order: r, cochain: coeff, class });
        };
        let mut phis = vec![SparseMat::zeros(n, n); order];
        phis[r - 1] = SparseMat::unvectorize(n, n, &phi)?;
        let step = Gauge::new(n, phis)?;
        current = apply_gauge(&current, &step)?;
        total = step.compose(&total, order)?;
    }
    Ok(Trivialization::Trivialized(total))
}

fn h2_class(cp: &CoderPair, mp: &BicomodulePair, d1: &SparseMat, x: &CoderCochain) -> Result<Vec<Scalar>> {
    let h2 = coder_degree(cp, mp, 2)?;
    class_coordinates(d1.rows(), d1.columns(), &h2.representatives, &x.to_vec())
        .ok_or_else(|| Error::Internal("coefficient is not a cocycle".into()))
}
