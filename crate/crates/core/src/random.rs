//! Seeded random structures for tests, benches and the CLI sampler.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coalg::CoderPair;
use crate::cochain::{probe_matrix, CoderCochain};
use crate::deform::{extend, order_residuals, Deformation, Extension, Gauge};
use crate::error::Result;
use crate::exactlin::{kernel_basis, SparseMat, SparseVec};
use crate::par::Exec;
use crate::scalar::Scalar;

/// A small nonzero rational: an integer in `[-3, 3]`, occasionally divided
/// by 2 or 3.
pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    let mut num = rng.random_range(1..=3i64);
    if rng.random_bool(0.5) {
        num = -num;
    }
    match rng.random_range(0..6) {
        0 => Scalar::ratio(num, 2),
        1 => Scalar::ratio(num, 3),
        _ => Scalar::from_int(num),
    }
}

/// Each entry is nonzero with probability `density`.
pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, density: f64) -> SparseMat {
    let mut entries = Vec::new();
    for c in 0..cols {
        for r in 0..rows {
            if rng.random_bool(density) {
                entries.push((r, c, random_scalar(rng)));
            }
        }
    }
    SparseMat::from_triplets(rows, cols, entries).expect("in bounds")
}

/// Deterministic per-item generator, independent of scheduling.
pub fn item_rng(seed: u64, item: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(item);
    rng
}

/// Random sparse combination of `k` distinct members of `basis`.
pub fn random_combination<R: Rng + ?Sized>(rng: &mut R, basis: &[SparseVec], k: usize) -> SparseVec {
    if basis.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for i in sample(rng, basis.len(), k.min(basis.len())) {
        let c = random_scalar(rng);
        out = crate::exactlin::axpy(&out, &c, &basis[i]);
    }
    out
}

/// Valid order-1 deformations, drawn from the kernel of the linear map
/// `(Δ₁, ψ₁) ↦` order-1 residuals of the deformation equations.
#[derive(Debug, Clone)]
pub struct Order1Sampler {
    base: CoderPair,
    basis: Vec<SparseVec>,
}

impl Order1Sampler {
    pub fn new(base: &CoderPair) -> Result<Self> {
        let d = base.dim();
        let (n_delta, n_psi) = (d * d * d, d * d);
        let system = probe_matrix(n_delta + n_psi, d * d * d * d + d * d * d, |v| {
            let x = CoderCochain::from_vec(2, d, d, v)?;
            let def = Deformation::new(
                base.clone(),
                vec![x.f().map().clone()],
                vec![x.g().expect("degree 2").map().clone()],
            )?;
            let (a, b) = order_residuals(&def, 1)?;
            let mut out = a.vectorize();
            let off = d * d * d * d;
            out.extend(b.vectorize().into_iter().map(|(i, c)| (i + off, c)));
            Ok(out)
        })?;
        Ok(Order1Sampler { base: base.clone(), basis: kernel_basis(&system) })
    }

    pub fn base(&self) -> &CoderPair {
        &self.base
    }

    /// Basis of the order-1 solution space, flattened as degree-2 Coder cochains.
    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn sample_coefficient<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<CoderCochain> {
        let d = self.base.dim();
        let terms = rng.random_range(1..=3);
        CoderCochain::from_vec(2, d, d, &random_combination(rng, &self.basis, terms))
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Deformation> {
        let x = self.sample_coefficient(rng)?;
        Deformation::new(self.base.clone(), vec![x.f().map().clone()], vec![x.g().expect("degree 2").map().clone()])
    }

    /// Samples an order-1 deformation and extends it up to `order`, adding a
    /// random 2-cocycle to every particular solution. Stops early when an
    /// obstruction appears; the second value is the order that was blocked.
    pub fn sample_to_order<R: Rng + ?Sized>(&self, rng: &mut R, order: usize) -> Result<(Deformation, Option<usize>)> {
        let mut def = self.sample(rng)?;
        while def.order() < order {
            match extend(&def)? {
                Extension::Extended(next) => {
                    let k = next.order();
                    let z = self.sample_coefficient(rng)?;
                    let mut deltas: Vec<_> = next.deltas()[1..].to_vec();
                    let mut psis: Vec<_> = next.psis()[1..].to_vec();
                    deltas[k - 1] = deltas[k - 1].add(z.f().map())?;
                    psis[k - 1] = psis[k - 1].add(z.g().expect("degree 2").map())?;
                    def = Deformation::new(self.base.clone(), deltas, psis)?;
                }
                Extension::Obstructed { .. } => {
                    let blocked = def.order() + 1;
                    return Ok((def, Some(blocked)));
                }
            }
        }
        Ok((def, None))
    }

    /// `count` independent order-1 samples, item `i` drawn from `item_rng(seed, i)`.
    pub fn sample_batch(&self, count: usize, seed: u64, exec: Exec) -> Result<Vec<Deformation>> {
        exec.map_range(count, |i| self.sample(&mut item_rng(seed, i as u64))).into_iter().collect()
    }
}

/// A gauge with sparse random coefficients.
pub fn random_gauge<R: Rng + ?Sized>(rng: &mut R, dim: usize, order: usize) -> Gauge {
    let density = (2.0 / dim as f64).min(1.0);
    let phis = (0..order).map(|_| random_matrix(rng, dim, dim, density)).collect();
    Gauge::new(dim, phis).expect("shapes")
}
