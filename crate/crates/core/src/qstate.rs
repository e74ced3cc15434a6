//! Dense multipartite states.
//!
//! Basis ordering is row-major with party 0 as the most significant tensor
//! factor: for dims `[d0, d1, ..., dN-1]` the basis ket `|i0 i1 ... iN-1>`
//! sits at index `((i0 * d1 + i1) * d2 + i2) ...`. Every constructor and the
//! state file format use this ordering.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Operator};

/// Maximum tolerated `max |rho - rho^dag|`.
pub const HERMITIAN_TOL: f64 = 1e-9;
/// Maximum tolerated `|Tr rho - 1|`.
pub const TRACE_TOL: f64 = 1e-9;
/// Smallest eigenvalue accepted as positive semidefinite.
pub const PSD_TOL: f64 = -1e-8;
/// Normalization tolerance accepted when building a state vector.
pub const NORM_TOL: f64 = 1e-9;
/// Default cap on the total Hilbert-space dimension.
pub const DEFAULT_MAX_DIM: usize = 1024;

/// Local dimensions of the parties `A_0 ... A_{N-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SystemLayout {
    dims: Vec<usize>,
}

impl SystemLayout {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidLayout("no parties".into()));
        }
        if let Some(pos) = dims.iter().position(|&d| d == 0) {
            return Err(Error::InvalidLayout(format!("party {pos} has dimension 0")));
        }
        dims.iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| Error::InvalidLayout("total dimension overflows".into()))?;
        Ok(Self { dims })
    }

    /// `n` qubits.
    pub fn qubits(n: usize) -> Result<Self> {
        Self::new(vec![2; n])
    }

    /// `n` parties of dimension `d` each.
    pub fn uniform(n: usize, d: usize) -> Result<Self> {
        Self::new(vec![d; n])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// Dimension of the subsystem made of `parties`.
    pub fn subsystem_dim(&self, parties: &[usize]) -> usize {
        parties.iter().map(|&p| self.dims[p]).product()
    }

    /// Distance between consecutive basis indices of party `p`.
    pub fn stride(&self, p: usize) -> usize {
        self.dims[p + 1..].iter().product()
    }

    /// Layout of the kept parties, in their original relative order.
    pub fn sub_layout(&self, keep: &[usize]) -> Result<Self> {
        let keep = self.normalize_subset(keep)?;
        if keep.is_empty() {
            return Self::new(vec![1]);
        }
        Self::new(keep.iter().map(|&p| self.dims[p]).collect())
    }

    /// Appends a party of dimension `d` on the right.
    pub fn with_party(&self, d: usize) -> Result<Self> {
        let mut dims = self.dims.clone();
        dims.push(d);
        Self::new(dims)
    }

    /// Validates a party subset and returns it sorted.
    pub fn normalize_subset(&self, subset: &[usize]) -> Result<Vec<usize>> {
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateIndex(w[0]));
            }
        }
        if let Some(&last) = sorted.last() {
            if last >= self.parties() {
                return Err(Error::IndexOutOfRange {
                    index: last,
                    parties: self.parties(),
                });
            }
        }
        Ok(sorted)
    }

    /// Parties not in `subset`, ascending.
    pub fn complement(&self, subset: &[usize]) -> Vec<usize> {
        (0..self.parties())
            .filter(|p| !subset.contains(p))
            .collect()
    }

    pub fn check_state(&self, rho: &DensityMatrix) -> Result<()> {
        if self.total_dim() != rho.dim() {
            return Err(Error::LayoutMismatch {
                layout: self.total_dim(),
                state: rho.dim(),
            });
        }
        Ok(())
    }

    pub fn check_guard(&self, max_dim: usize) -> Result<()> {
        let dim = self.total_dim();
        if dim > max_dim {
            return Err(Error::DimensionGuard { dim, max: max_dim });
        }
        Ok(())
    }

    /// Full-space offsets of every basis state of `parties` (mixed radix,
    /// first listed party most significant).
    fn offsets(&self, parties: &[usize]) -> Vec<usize> {
        let mut offs = vec![0usize];
        for &p in parties {
            let stride = self.stride(p);
            offs = offs
                .iter()
                .flat_map(|&o| (0..self.dims[p]).map(move |i| o + i * stride))
                .collect();
        }
        offs
    }
}

/// Pure state amplitudes in row-major tensor order.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Accepts amplitudes with `|‖ψ‖² − 1| ≤ 1e-9` and renormalizes them exactly.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidArgument("empty state vector".into()));
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sq });
        }
        let scale = norm_sq.sqrt().recip();
        Ok(Self {
            amplitudes: amplitudes.into_iter().map(|a| a * scale).collect(),
        })
    }

    /// Normalizes arbitrary nonzero amplitudes.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if norm_sq == 0.0 || !norm_sq.is_finite() {
            return Err(Error::NotNormalized { norm_sq });
        }
        let scale = norm_sq.sqrt().recip();
        Self::new(amplitudes.into_iter().map(|a| a * scale).collect())
    }

    /// Computational basis ket `|index>` in dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::IndexOutOfRange {
                index,
                parties: dim,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Self::new(amps)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn to_density(&self) -> DensityMatrix {
        density_from_vector(self)
    }
}

/// Dense Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    /// Builds a validated density matrix from row-major entries.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        let rho = Self { dim, entries };
        rho.validate()?;
        Ok(rho)
    }

    /// Builds from nested rows.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: bad.len(),
            });
        }
        Self::new(dim, rows.into_iter().flatten().collect())
    }

    /// Real diagonal state `diag(p_0, ..., p_{D-1})`.
    pub fn diagonal(probs: &[f64]) -> Result<Self> {
        let dim = probs.len();
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (i, &p) in probs.iter().enumerate() {
            entries[i * dim + i] = Complex64::new(p, 0.0);
        }
        Self::new(dim, entries)
    }

    /// `I / dim`.
    pub fn maximally_mixed(dim: usize) -> Self {
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        let w = 1.0 / dim as f64;
        for i in 0..dim {
            entries[i * dim + i] = Complex64::new(w, 0.0);
        }
        Self { dim, entries }
    }

    /// Skips validation; callers guarantee the invariants.
    pub(crate) fn from_raw(dim: usize, entries: Vec<Complex64>) -> Self {
        debug_assert_eq!(entries.len(), dim * dim);
        Self { dim, entries }
    }

    pub(crate) fn from_operator(op: &Operator) -> Self {
        let dim = op.nrows();
        let entries = (0..dim)
            .flat_map(|r| (0..dim).map(move |c| op[(r, c)]))
            .collect();
        Self { dim, entries }
    }

    /// Checks the Hermiticity, trace and positivity tolerances.
    pub fn validate(&self) -> Result<()> {
        let deviation = self.hermitian_deviation();
        if !deviation.is_finite() || deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = self.trace();
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::BadTrace { trace });
        }
        let min_eigenvalue = self.eigenvalues().first().copied().unwrap_or(0.0);
        if min_eigenvalue < PSD_TOL {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.entries.chunks(self.dim)
    }

    /// Real part of the trace.
    pub fn trace(&self) -> f64 {
        (0..self.dim)
            .map(|i| self.entries[i * self.dim + i].re)
            .sum()
    }

    /// `Tr(rho^2)`, which for a Hermitian matrix is the squared Frobenius norm.
    pub fn purity(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn hermitian_deviation(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for r in 0..d {
            for c in r..d {
                let diff = (self.entries[r * d + c] - self.entries[c * d + r].conj()).norm();
                worst = worst.max(diff);
            }
        }
        worst
    }

    /// Largest elementwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Eigenvalues of `(rho + rho^dag)/2`, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(self.dim, &self.entries)
    }

    /// Eigenvalues and eigenvectors of `(rho + rho^dag)/2`.
    pub fn eigh(&self) -> (Vec<f64>, Operator) {
        linalg::hermitian_eigh(self.dim, &self.entries)
    }

    pub fn to_operator(&self) -> Operator {
        Operator::from_fn(self.dim, self.dim, |r, c| self.entries[r * self.dim + c])
    }

    /// `U rho U^dag`.
    pub fn conjugate(&self, u: &Operator) -> Result<Self> {
        if u.nrows() != self.dim || u.ncols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: u.nrows(),
            });
        }
        let out = u * self.to_operator() * u.adjoint();
        Ok(Self::from_operator(&out))
    }
}

/// `|psi><psi|`.
pub fn density_from_vector(psi: &StateVector) -> DensityMatrix {
    let amps = psi.amplitudes();
    let dim = amps.len();
    let entries = amps
        .iter()
        .flat_map(|a| amps.iter().map(move |b| a * b.conj()))
        .collect();
    DensityMatrix::from_raw(dim, entries)
}

/// Convex combination `sum_i w_i rho_i`.
pub fn mix(states: &[DensityMatrix], weights: &[f64]) -> Result<DensityMatrix> {
    if states.is_empty() {
        return Err(Error::BadWeights("no states to mix".into()));
    }
    if states.len() != weights.len() {
        return Err(Error::BadWeights(format!(
            "{} states but {} weights",
            states.len(),
            weights.len()
        )));
    }
    check_probability_vector(weights)?;
    let dim = states[0].dim();
    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    for (rho, &w) in states.iter().zip(weights) {
        if rho.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: rho.dim(),
            });
        }
        for (acc, z) in entries.iter_mut().zip(rho.entries()) {
            *acc += z * w;
        }
    }
    Ok(DensityMatrix::from_raw(dim, entries))
}

pub(crate) fn check_probability_vector(weights: &[f64]) -> Result<()> {
    if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
        return Err(Error::BadWeights(format!(
            "weight {w} is negative or not finite"
        )));
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > 1e-12 {
        return Err(Error::BadWeights(format!("weights sum to {sum}")));
    }
    Ok(())
}

/// Kronecker product `a ⊗ b`, `a` leftmost.
pub fn tensor(a: &DensityMatrix, b: &DensityMatrix) -> DensityMatrix {
    let (da, db) = (a.dim(), b.dim());
    let dim = da * db;
    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    for ar in 0..da {
        for ac in 0..da {
            let x = a.get(ar, ac);
            if x == Complex64::new(0.0, 0.0) {
                continue;
            }
            for br in 0..db {
                let row = (ar * db + br) * dim + ac * db;
                for bc in 0..db {
                    entries[row + bc] = x * b.get(br, bc);
                }
            }
        }
    }
    DensityMatrix::from_raw(dim, entries)
}

/// Tensor product of several states, first one leftmost.
pub fn tensor_all(states: &[DensityMatrix]) -> DensityMatrix {
    states.iter().fold(
        DensityMatrix::from_raw(1, vec![Complex64::new(1.0, 0.0)]),
        |acc, s| tensor(&acc, s),
    )
}

/// Reduced state on `keep`, tracing out every other party.
///
/// The kept parties appear in ascending index order regardless of the order
/// in `keep`.
pub fn partial_trace(
    rho: &DensityMatrix,
    layout: &SystemLayout,
    keep: &[usize],
) -> Result<DensityMatrix> {
    layout.check_state(rho)?;
    let keep = layout.normalize_subset(keep)?;
    if keep.len() == layout.parties() {
        return Ok(rho.clone());
    }
    let traced = layout.complement(&keep);
    let kept_offs = layout.offsets(&keep);
    let traced_offs = layout.offsets(&traced);
    let d = rho.dim();
    let dk = kept_offs.len();
    let src = rho.entries();
    let mut entries = vec![Complex64::new(0.0, 0.0); dk * dk];
    for (a, &ra) in kept_offs.iter().enumerate() {
        for (b, &rb) in kept_offs.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for &t in &traced_offs {
                acc += src[(ra + t) * d + rb + t];
            }
            entries[a * dk + b] = acc;
        }
    }
    Ok(DensityMatrix::from_raw(dk, entries))
}

/// Reorders parties so that new party `k` is old party `order[k]`.
pub fn permute_parties(
    rho: &DensityMatrix,
    layout: &SystemLayout,
    order: &[usize],
) -> Result<(DensityMatrix, SystemLayout)> {
    layout.check_state(rho)?;
    if order.len() != layout.parties() {
        return Err(Error::InvalidArgument(format!(
            "permutation has {} entries for {} parties",
            order.len(),
            layout.parties()
        )));
    }
    layout.normalize_subset(order)?;
    let new_layout = SystemLayout::new(order.iter().map(|&p| layout.dims()[p]).collect())?;
    // basis index in the new ordering -> basis index in the old ordering
    let map = layout.offsets(order);
    let d = rho.dim();
    let src = rho.entries();
    let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
    for (r, &or) in map.iter().enumerate() {
        for (c, &oc) in map.iter().enumerate() {
            entries[r * d + c] = src[or * d + oc];
        }
    }
    Ok((DensityMatrix::from_raw(d, entries), new_layout))
}

/// Applies `U_0 ⊗ ... ⊗ U_{N-1}` by conjugation.
pub fn apply_local_unitaries(
    rho: &DensityMatrix,
    layout: &SystemLayout,
    unitaries: &[Operator],
) -> Result<DensityMatrix> {
    layout.check_state(rho)?;
    if unitaries.len() != layout.parties() {
        return Err(Error::InvalidArgument(format!(
            "{} unitaries for {} parties",
            unitaries.len(),
            layout.parties()
        )));
    }
    let mut full = Operator::identity(1, 1);
    for (u, &d) in unitaries.iter().zip(layout.dims()) {
        if u.nrows() != d || u.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: u.nrows(),
            });
        }
        full = linalg::kron(&full, u);
    }
    rho.conjugate(&full)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn bell() -> StateVector {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        StateVector::new(vec![c(h), c(0.0), c(0.0), c(h)]).unwrap()
    }

    fn ghz4() -> StateVector {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut a = vec![c(0.0); 16];
        a[0] = c(h);
        a[15] = c(h);
        StateVector::new(a).unwrap()
    }

    fn w4() -> StateVector {
        let mut a = vec![c(0.0); 16];
        for i in [1, 2, 4, 8] {
            a[i] = c(0.5);
        }
        StateVector::new(a).unwrap()
    }

    #[test]
    fn basis_projector() {
        let rho = density_from_vector(&StateVector::basis(2, 0).unwrap());
        assert_eq!(rho.entries(), &[c(1.0), c(0.0), c(0.0), c(0.0)]);
    }

    #[test]
    fn bell_projector_corners() {
        let rho = bell().to_density();
        for r in 0..4 {
            for col in 0..4 {
                let expect = if [0, 3].contains(&r) && [0, 3].contains(&col) {
                    0.5
                } else {
                    0.0
                };
                assert!((rho.get(r, col) - c(expect)).norm() < 1e-15);
            }
        }
        rho.validate().unwrap();
    }

    #[test]
    fn werner_psi_projector_diagonal() {
        let mut a = vec![c(0.0); 8];
        a[6] = c(2.0);
        a[5] = c(-1.0);
        a[3] = c(-1.0);
        let rho = StateVector::normalized(a).unwrap().to_density();
        let diag: Vec<f64> = (0..8).map(|i| rho.get(i, i).re).collect();
        let expect = [0.0, 0.0, 0.0, 1.0 / 6.0, 0.0, 1.0 / 6.0, 4.0 / 6.0, 0.0];
        for (x, e) in diag.iter().zip(expect) {
            assert!((x - e).abs() < 1e-15);
        }
    }

    #[test]
    fn unnormalized_vector_rejected() {
        let err = StateVector::new(vec![c(1.0), c(1.0)]).unwrap_err();
        assert!(matches!(err, Error::NotNormalized { .. }));
    }

    #[test]
    fn mix_cases() {
        let rho = bell().to_density();
        assert_eq!(mix(std::slice::from_ref(&rho), &[1.0]).unwrap(), rho);

        let zero = DensityMatrix::diagonal(&[1.0, 0.0]).unwrap();
        let one = DensityMatrix::diagonal(&[0.0, 1.0]).unwrap();
        let m = mix(&[zero, one], &[0.5, 0.5]).unwrap();
        assert!(m.max_abs_diff(&DensityMatrix::maximally_mixed(2)) < 1e-15);

        let m = mix(&[ghz4().to_density(), w4().to_density()], &[0.3, 0.7]).unwrap();
        assert!((m.get(0, 0).re - 0.15).abs() < 1e-15);
        m.validate().unwrap();
    }

    #[test]
    fn mix_errors() {
        let a = DensityMatrix::maximally_mixed(2);
        let b = DensityMatrix::maximally_mixed(4);
        assert!(matches!(
            mix(&[a.clone(), a.clone()], &[0.5, 0.6]),
            Err(Error::BadWeights(_))
        ));
        assert!(matches!(
            mix(&[a.clone(), a.clone()], &[1.5, -0.5]),
            Err(Error::BadWeights(_))
        ));
        assert!(matches!(
            mix(&[a, b], &[0.5, 0.5]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn tensor_cases() {
        let rho = bell().to_density();
        let scalar = DensityMatrix::new(1, vec![c(1.0)]).unwrap();
        assert_eq!(tensor(&rho, &scalar), rho);

        let zero = DensityMatrix::diagonal(&[1.0, 0.0]).unwrap();
        let one = DensityMatrix::diagonal(&[0.0, 1.0]).unwrap();
        let expect = DensityMatrix::diagonal(&[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(tensor(&zero, &one), expect);

        let half = DensityMatrix::maximally_mixed(2);
        assert!(tensor(&half, &half).max_abs_diff(&DensityMatrix::maximally_mixed(4)) < 1e-15);
    }

    #[test]
    fn partial_trace_cases() {
        let layout = SystemLayout::qubits(2).unwrap();
        let rho = bell().to_density();
        assert_eq!(partial_trace(&rho, &layout, &[0, 1]).unwrap(), rho);
        let m = partial_trace(&rho, &layout, &[0]).unwrap();
        assert!(m.max_abs_diff(&DensityMatrix::maximally_mixed(2)) < 1e-15);

        let l4 = SystemLayout::qubits(4).unwrap();
        let m = partial_trace(&ghz4().to_density(), &l4, &[0, 1]).unwrap();
        let expect = DensityMatrix::diagonal(&[0.5, 0.0, 0.0, 0.5]).unwrap();
        assert!(m.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn partial_trace_errors() {
        let layout = SystemLayout::qubits(2).unwrap();
        let rho = bell().to_density();
        assert!(matches!(
            partial_trace(&rho, &layout, &[2]),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            partial_trace(&rho, &layout, &[0, 0]),
            Err(Error::DuplicateIndex(0))
        ));
        let wrong = SystemLayout::qubits(3).unwrap();
        assert!(matches!(
            partial_trace(&rho, &wrong, &[0]),
            Err(Error::LayoutMismatch { .. })
        ));
    }

    #[test]
    fn trace_out_everything_gives_scalar() {
        let layout = SystemLayout::qubits(2).unwrap();
        let m = partial_trace(&bell().to_density(), &layout, &[]).unwrap();
        assert_eq!(m.dim(), 1);
        assert!((m.get(0, 0).re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn partial_trace_mixed_dims_matches_tensor_factors() {
        let a = DensityMatrix::diagonal(&[0.2, 0.3, 0.5]).unwrap();
        let b = bell().to_density();
        let layout = SystemLayout::new(vec![3, 2, 2]).unwrap();
        let ab = tensor(&a, &b);
        assert!(partial_trace(&ab, &layout, &[0]).unwrap().max_abs_diff(&a) < 1e-15);
        assert!(
            partial_trace(&ab, &layout, &[1, 2])
                .unwrap()
                .max_abs_diff(&b)
                < 1e-15
        );
    }

    #[test]
    fn permutation_swaps_factors() {
        let zero = DensityMatrix::diagonal(&[1.0, 0.0]).unwrap();
        let third = DensityMatrix::diagonal(&[0.1, 0.2, 0.7]).unwrap();
        let layout = SystemLayout::new(vec![2, 3]).unwrap();
        let (p, pl) = permute_parties(&tensor(&zero, &third), &layout, &[1, 0]).unwrap();
        assert_eq!(pl.dims(), &[3, 2]);
        assert!(p.max_abs_diff(&tensor(&third, &zero)) < 1e-15);
    }

    #[test]
    fn validation_rejects_bad_matrices() {
        let non_herm = vec![c(0.5), Complex64::new(0.1, 0.1), c(0.0), c(0.5)];
        assert!(matches!(
            DensityMatrix::new(2, non_herm),
            Err(Error::NotHermitian { .. })
        ));
        assert!(matches!(
            DensityMatrix::diagonal(&[0.5, 0.6]),
            Err(Error::BadTrace { .. })
        ));
        assert!(matches!(
            DensityMatrix::diagonal(&[1.1, -0.1]),
            Err(Error::NotPositive { .. })
        ));
    }

    #[test]
    fn layout_rejects_zero_dim() {
        assert!(SystemLayout::new(vec![2, 0]).is_err());
        assert!(SystemLayout::new(vec![]).is_err());
    }
}
