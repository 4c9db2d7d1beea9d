//! Incremental exact elimination.
//!
//! [`Echelon`] keeps a set of pivot vectors in echelon form (distinct leading
//! indices, leading coefficient one). Vectors are inserted one at a time and
//! are reduced on a dense scratch buffer driven by a min-heap of touched
//! indices, so the cost of a reduction is proportional to the fill it
//! actually creates.
//!
//! When provenance tracking is on, every pivot remembers which combination
//! of the inserted generators produced it. Inserting the columns of a matrix
//! in ascending order then identifies exactly the pivot columns of its
//! reduced row-echelon form, and the dependency found for each free column
//! is the one the RREF would report. That is how [`kernel_basis`] and
//! [`solve`] reproduce the RREF conventions without forming the RREF.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::sparse::{SparseMat, SparseVec};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Insert {
    /// The vector was independent and now leads at this index.
    Pivot(usize),
    /// The vector equals this combination of earlier generators
    /// (empty unless provenance is tracked).
    Dependent(SparseVec),
}

struct Pivot {
    row: SparseVec,
    prov: SparseVec,
}

struct Dense {
    vals: Vec<Scalar>,
    queued: Vec<bool>,
    heap: BinaryHeap<Reverse<usize>>,
}

impl Dense {
    fn new(len: usize) -> Self {
        Dense { vals: vec![Scalar::zero(); len], queued: vec![false; len], heap: BinaryHeap::new() }
    }

    fn load(&mut self, v: &[(usize, Scalar)]) {
        for (i, x) in v {
            self.vals[*i] += x;
            self.push(*i);
        }
    }

    fn push(&mut self, i: usize) {
        if !self.queued[i] {
            self.queued[i] = true;
            self.heap.push(Reverse(i));
        }
    }

    /// Smallest index holding a nonzero value, without removing it.
    fn lead(&mut self) -> Option<usize> {
        while let Some(&Reverse(i)) = self.heap.peek() {
            if self.vals[i].is_zero() {
                self.heap.pop();
                self.queued[i] = false;
            } else {
                return Some(i);
            }
        }
        None
    }

    /// `self -= c * v`.
    fn sub_scaled(&mut self, c: &Scalar, v: &[(usize, Scalar)]) {
        for (i, x) in v {
            self.vals[*i] -= &(c * x);
            self.push(*i);
        }
    }

    /// Drains into a sorted sparse vector and resets the buffer.
    fn drain(&mut self) -> SparseVec {
        let mut out = Vec::with_capacity(self.heap.len());
        while let Some(Reverse(i)) = self.heap.pop() {
            self.queued[i] = false;
            let v = std::mem::take(&mut self.vals[i]);
            if !v.is_zero() {
                out.push((i, v));
            }
        }
        out
    }
}

pub struct Echelon {
    dim: usize,
    track: bool,
    slot: Vec<Option<usize>>,
    pivots: Vec<Pivot>,
    generators: usize,
    work: Dense,
    prov_work: Option<Dense>,
}

impl Echelon {
    /// Echelon basis for vectors of length `dim`. With `track`, provenance
    /// over at most `max_generators` inserted vectors is recorded.
    pub fn new(dim: usize, track: bool, max_generators: usize) -> Self {
        Echelon {
            dim,
            track,
            slot: vec![None; dim],
            pivots: Vec::new(),
            generators: 0,
            work: Dense::new(dim),
            prov_work: track.then(|| Dense::new(max_generators)),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    /// Reduces the loaded work vector; returns its remaining lead if any.
    fn reduce_loaded(&mut self) -> Option<usize> {
        loop {
            let lead = self.work.lead()?;
            let Some(k) = self.slot[lead] else { return Some(lead) };
            let c = self.work.vals[lead].clone();
            let p = &self.pivots[k];
            self.work.sub_scaled(&c, &p.row);
            if let Some(pw) = self.prov_work.as_mut() {
                pw.sub_scaled(&c, &p.prov);
            }
        }
    }

    fn check_len(&self, v: &[(usize, Scalar)]) {
        if let Some((i, _)) = v.last() {
            assert!(*i < self.dim, "vector index {i} out of range for dimension {}", self.dim);
        }
    }

    /// Adds a generator. Generators are numbered in insertion order.
    pub fn insert(&mut self, v: &[(usize, Scalar)]) -> Insert {
        self.check_len(v);
        let gen = self.generators;
        self.generators += 1;
        self.work.load(v);
        if let Some(pw) = self.prov_work.as_mut() {
            pw.load(&[(gen, Scalar::one())]);
        }
        match self.reduce_loaded() {
            Some(lead) => {
                let inv = self.work.vals[lead].recip().expect("nonzero lead");
                let row: SparseVec = self.work.drain().into_iter().map(|(i, x)| (i, &x * &inv)).collect();
                let prov = match self.prov_work.as_mut() {
                    Some(pw) => pw.drain().into_iter().map(|(i, x)| (i, &x * &inv)).collect(),
                    None => Vec::new(),
                };
                self.slot[lead] = Some(self.pivots.len());
                self.pivots.push(Pivot { row, prov });
                Insert::Pivot(lead)
            }
            None => {
                self.work.drain();
                // prov now holds e_gen - combo; the combination is its negation
                // with the generator itself removed
                let combo = match self.prov_work.as_mut() {
                    Some(pw) => pw.drain().into_iter().filter(|(i, _)| *i != gen).map(|(i, x)| (i, -x)).collect(),
                    None => Vec::new(),
                };
                Insert::Dependent(combo)
            }
        }
    }

    /// Whether `v` lies in the span, without modifying the basis.
    pub fn contains(&mut self, v: &[(usize, Scalar)]) -> bool {
        self.check_len(v);
        self.work.load(v);
        let saved = self.prov_work.take();
        let lead = self.reduce_loaded();
        self.prov_work = saved;
        self.work.drain();
        lead.is_none()
    }

    /// Coefficients over the generators expressing `v`, or `None` when `v`
    /// is outside the span. Requires provenance tracking.
    pub fn express(&mut self, v: &[(usize, Scalar)]) -> Option<SparseVec> {
        assert!(self.track, "express needs provenance tracking");
        self.check_len(v);
        self.work.load(v);
        let lead = self.reduce_loaded();
        self.work.drain();
        let prov = self.prov_work.as_mut().expect("tracked").drain();
        match lead {
            Some(_) => None,
            // prov = -combo
            None => Some(prov.into_iter().map(|(i, x)| (i, -x)).collect()),
        }
    }
}

/// Exact rank over the rationals.
pub fn rank(a: &SparseMat) -> usize {
    // rank(A) = rank(A^T): insert whichever family has fewer members
    if a.cols() <= a.rows() {
        let mut e = Echelon::new(a.rows(), false, 0);
        for col in a.columns() {
            e.insert(col);
        }
        e.rank()
    } else {
        rank(&a.transpose())
    }
}

/// Kernel basis in the RREF convention: one vector per free column, in
/// ascending column order, with that free variable set to one and the other
/// free variables zero.
pub fn kernel_basis(a: &SparseMat) -> Vec<SparseVec> {
    let mut e = Echelon::new(a.rows(), true, a.cols());
    let mut out = Vec::new();
    for (j, col) in a.columns().iter().enumerate() {
        if let Insert::Dependent(combo) = e.insert(col) {
            let mut v: SparseVec = combo.into_iter().map(|(i, x)| (i, -x)).collect();
            v.push((j, Scalar::one()));
            out.push(v);
        }
    }
    out
}

/// Column-echelon factorization reusable across right-hand sides.
pub struct Solver {
    echelon: Echelon,
    cols: usize,
}

impl Solver {
    pub fn new(a: &SparseMat) -> Self {
        let mut echelon = Echelon::new(a.rows(), true, a.cols());
        for col in a.columns() {
            echelon.insert(col);
        }
        Solver { echelon, cols: a.cols() }
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Particular solution with every free variable zero, or `None`.
    pub fn solve(&mut self, b: &[(usize, Scalar)]) -> Result<Option<SparseVec>> {
        if let Some((i, _)) = b.last() {
            if *i >= self.echelon.dim() {
                return Err(Error::ShapeMismatch {
                    op: "solve",
                    left: (self.echelon.dim(), self.cols),
                    right: (*i + 1, 1),
                });
            }
        }
        Ok(self.echelon.express(b))
    }
}

/// Solves `a x = b` with free variables set to zero.
pub fn solve(a: &SparseMat, b: &[(usize, Scalar)]) -> Result<Option<SparseVec>> {
    Solver::new(a).solve(b)
}

/// Dense convenience wrapper around [`solve`].
pub fn solve_dense(a: &SparseMat, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if b.len() != a.rows() {
        return Err(Error::ShapeMismatch { op: "solve", left: a.shape(), right: (b.len(), 1) });
    }
    let sparse = to_sparse(b);
    Ok(solve(a, &sparse)?.map(|x| to_dense(&x, a.cols())))
}

pub fn to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn to_dense(v: &[(usize, Scalar)], len: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub dim: usize,
    /// Indices into `big` of the coset representatives.
    pub representatives: Vec<usize>,
}

/// Dimension of `span(big) / span(sub)` together with members of `big`
/// completing `sub` to a basis, picked greedily in input order.
pub fn quotient_dim(dim: usize, big: &[SparseVec], sub: &[SparseVec]) -> Result<Quotient> {
    let mut ambient = Echelon::new(dim, false, 0);
    for v in big {
        ambient.insert(v);
    }
    let mut e = Echelon::new(dim, false, 0);
    for v in sub {
        e.insert(v);
    }
    let sub_rank = e.rank();
    let mut representatives = Vec::new();
    for (i, v) in big.iter().enumerate() {
        if matches!(e.insert(v), Insert::Pivot(_)) {
            representatives.push(i);
        }
    }
    if sub_rank + representatives.len() != ambient.rank() {
        return Err(Error::NotContained);
    }
    Ok(Quotient { dim: ambient.rank() - sub_rank, representatives })
}

/// Whether two families span the same subspace.
pub fn same_span(dim: usize, a: &[SparseVec], b: &[SparseVec]) -> bool {
    let mut ea = Echelon::new(dim, false, 0);
    a.iter().for_each(|v| {
        ea.insert(v);
    });
    let mut eb = Echelon::new(dim, false, 0);
    b.iter().for_each(|v| {
        eb.insert(v);
    });
    ea.rank() == eb.rank() && b.iter().all(|v| ea.contains(v)) && a.iter().all(|v| eb.contains(v))
}

/// Scales a vector so its first nonzero coordinate is one.
pub fn normalize_leading(v: SparseVec) -> SparseVec {
    match v.first() {
        Some((_, lead)) if !lead.is_one() => {
            let inv = lead.recip().expect("nonzero");
            v.into_iter().map(|(i, x)| (i, &x * &inv)).collect()
        }
        _ => v,
    }
}
