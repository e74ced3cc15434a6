//! Named state families and seeded random states.
//!
//! Random states draw from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64(seed)`. Complex Gaussian entries are sampled as a real
//! part followed by an imaginary part, each from a standard normal, walking
//! the vector (or the `D x rank` matrix, row-major) in index order.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Operator;
use crate::qstate::{density_from_vector, mix, DensityMatrix, StateVector, SystemLayout};

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn check_p(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ParameterOutOfRange(p));
    }
    Ok(())
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 parties, got {n}"
        )));
    }
    Ok(())
}

/// `(|0...0> + |1...1>)/sqrt(2)` on `n` qubits.
pub fn ghz(n: usize) -> Result<StateVector> {
    ghz_qudit(n, 2)
}

/// `sum_k |k...k>/sqrt(d)` on `n` parties of dimension `d`.
pub fn ghz_qudit(n: usize, d: usize) -> Result<StateVector> {
    check_n(n)?;
    let layout = SystemLayout::uniform(n, d)?;
    let ones: usize = (0..n).map(|p| layout.stride(p)).sum();
    let mut amps = vec![zero(); layout.total_dim()];
    for k in 0..d {
        amps[k * ones] = Complex64::new(1.0, 0.0);
    }
    StateVector::normalized(amps)
}

/// Uniform superposition of the `n` weight-one qubit kets.
pub fn w_state(n: usize) -> Result<StateVector> {
    w_qudit(n, 2)
}

/// Uniform superposition of kets with exactly one party in `|1>`, others in `|0>`.
pub fn w_qudit(n: usize, d: usize) -> Result<StateVector> {
    check_n(n)?;
    if d < 2 {
        return Err(Error::InvalidArgument(
            "W state needs local dimension >= 2".into(),
        ));
    }
    let layout = SystemLayout::uniform(n, d)?;
    let mut amps = vec![zero(); layout.total_dim()];
    for p in 0..n {
        amps[layout.stride(p)] = Complex64::new(1.0, 0.0);
    }
    StateVector::normalized(amps)
}

/// `|0...0>` on the given layout.
pub fn product(layout: &SystemLayout) -> Result<StateVector> {
    StateVector::basis(layout.total_dim(), 0)
}

/// `p |GHZ4><GHZ4| + (1-p) |W4><W4|` on four qubits.
pub fn ghz_w_mixture(p: f64) -> Result<DensityMatrix> {
    check_p(p)?;
    let g = density_from_vector(&ghz(4)?);
    let w = density_from_vector(&w_state(4)?);
    mix(&[g, w], &[p, 1.0 - p])
}

/// `(2|110> - |101> - |011>)/sqrt(6)`.
pub fn werner_psi() -> StateVector {
    let mut amps = vec![zero(); 8];
    amps[0b110] = Complex64::new(2.0, 0.0);
    amps[0b101] = Complex64::new(-1.0, 0.0);
    amps[0b011] = Complex64::new(-1.0, 0.0);
    StateVector::normalized(amps).expect("fixed nonzero amplitudes")
}

/// `(p/8) I⊗I⊗I + (1-p) |psi><psi|` with `psi` from [`werner_psi`].
pub fn generalized_werner(p: f64) -> Result<DensityMatrix> {
    check_p(p)?;
    let psi = density_from_vector(&werner_psi());
    mix(&[DensityMatrix::maximally_mixed(8), psi], &[p, 1.0 - p])
}

/// Deterministic generator for a seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Haar-random pure state: a normalized complex Gaussian vector.
pub fn random_pure(layout: &SystemLayout, seed: u64) -> Result<StateVector> {
    let mut rng = seeded_rng(seed);
    random_pure_with(layout, &mut rng)
}

pub fn random_pure_with<R: Rng + ?Sized>(
    layout: &SystemLayout,
    rng: &mut R,
) -> Result<StateVector> {
    let amps = (0..layout.total_dim())
        .map(|_| complex_gaussian(rng))
        .collect();
    StateVector::normalized(amps)
}

/// `G G^dag / Tr(G G^dag)` with `G` a `D x rank` complex Gaussian matrix.
pub fn random_mixed(layout: &SystemLayout, rank: usize, seed: u64) -> Result<DensityMatrix> {
    let mut rng = seeded_rng(seed);
    random_mixed_with(layout, rank, &mut rng)
}

pub fn random_mixed_with<R: Rng + ?Sized>(
    layout: &SystemLayout,
    rank: usize,
    rng: &mut R,
) -> Result<DensityMatrix> {
    let d = layout.total_dim();
    if rank == 0 || rank > d {
        return Err(Error::InvalidArgument(format!(
            "rank must be in 1..={d}, got {rank}"
        )));
    }
    let g: Vec<Complex64> = (0..d * rank).map(|_| complex_gaussian(rng)).collect();
    let mut entries = vec![zero(); d * d];
    for r in 0..d {
        for c in r..d {
            let z: Complex64 = (0..rank)
                .map(|k| g[r * rank + k] * g[c * rank + k].conj())
                .sum();
            entries[r * d + c] = z;
            entries[c * d + r] = z.conj();
        }
    }
    let trace: f64 = (0..d).map(|i| entries[i * d + i].re).sum();
    for z in &mut entries {
        *z /= trace;
    }
    DensityMatrix::new(d, entries)
}

/// Haar-random `d x d` unitary from the phase-corrected QR of a Ginibre matrix.
pub fn random_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Operator {
    let z = DMatrix::from_fn(d, d, |_, _| complex_gaussian(rng));
    let (q, r) = z.qr().unpack();
    let mut u = q;
    for k in 0..d {
        let rkk = r[(k, k)];
        let phase = if rkk.norm() > 0.0 {
            rkk / rkk.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let mut col = u.column_mut(k);
        col *= phase;
    }
    u
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Ghz,
    W,
    GhzWMixture,
    GeneralizedWerner,
    Product,
    RandomPure,
    RandomMixed,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Ghz,
        Family::W,
        Family::GhzWMixture,
        Family::GeneralizedWerner,
        Family::Product,
        Family::RandomPure,
        Family::RandomMixed,
    ];

    /// Name used on the command line.
    pub fn cli_name(self) -> &'static str {
        match self {
            Family::Ghz => "ghz",
            Family::W => "w",
            Family::GhzWMixture => "ghz-w",
            Family::GeneralizedWerner => "werner",
            Family::Product => "product",
            Family::RandomPure => "random-pure",
            Family::RandomMixed => "random-mixed",
        }
    }

    /// Whether the family depends on `p`.
    pub fn is_parametric(self) -> bool {
        matches!(self, Family::GhzWMixture | Family::GeneralizedWerner)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let alias = match s {
            "ghz_w_mixture" | "ghz-w-mixture" => Some(Family::GhzWMixture),
            "generalized_werner" | "generalized-werner" => Some(Family::GeneralizedWerner),
            "random_pure" => Some(Family::RandomPure),
            "random_mixed" => Some(Family::RandomMixed),
            _ => None,
        };
        alias
            .or_else(|| Family::ALL.into_iter().find(|f| f.cli_name() == s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family {s:?}")))
    }
}

/// A named family plus its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub n_parties: usize,
    pub local_dim: usize,
    #[serde(default)]
    pub p: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_rank")]
    pub rank: usize,
}

fn default_rank() -> usize {
    1
}

impl FamilySpec {
    pub fn new(family: Family) -> Self {
        let n_parties = match family {
            Family::GhzWMixture => 4,
            _ => 3,
        };
        Self {
            family,
            n_parties,
            local_dim: 2,
            p: 0.0,
            seed: 0,
            rank: 1,
        }
    }

    /// Same spec with a different `p`.
    pub fn at(&self, p: f64) -> Self {
        Self { p, ..self.clone() }
    }

    pub fn layout(&self) -> Result<SystemLayout> {
        match self.family {
            Family::GhzWMixture => SystemLayout::qubits(4),
            Family::GeneralizedWerner => SystemLayout::qubits(3),
            _ => SystemLayout::uniform(self.n_parties, self.local_dim),
        }
    }

    fn validate(&self) -> Result<()> {
        check_p(self.p)?;
        if self.n_parties < 1 {
            return Err(Error::InvalidArgument("n_parties must be >= 1".into()));
        }
        if self.local_dim < 2 {
            return Err(Error::InvalidArgument("local_dim must be >= 2".into()));
        }
        if self.rank < 1 {
            return Err(Error::InvalidArgument("rank must be >= 1".into()));
        }
        match self.family {
            Family::GhzWMixture if self.n_parties != 4 || self.local_dim != 2 => Err(
                Error::InvalidArgument("the GHZ/W mixture is defined on 4 qubits only".into()),
            ),
            Family::GeneralizedWerner if self.n_parties != 3 || self.local_dim != 2 => {
                Err(Error::InvalidArgument(
                    "the generalized Werner family is defined on 3 qubits only".into(),
                ))
            }
            _ => Ok(()),
        }
    }

    /// Builds the state, refusing layouts above `max_dim`.
    pub fn build(&self, max_dim: usize) -> Result<(DensityMatrix, SystemLayout)> {
        self.validate()?;
        let layout = self.layout()?;
        layout.check_guard(max_dim)?;
        let (n, d) = (self.n_parties, self.local_dim);
        let rho = match self.family {
            Family::Ghz => ghz_qudit(n, d)?.to_density(),
            Family::W => w_qudit(n, d)?.to_density(),
            Family::GhzWMixture => ghz_w_mixture(self.p)?,
            Family::GeneralizedWerner => generalized_werner(self.p)?,
            Family::Product => product(&layout)?.to_density(),
            Family::RandomPure => random_pure(&layout, self.seed)?.to_density(),
            Family::RandomMixed => random_mixed(&layout, self.rank, self.seed)?,
        };
        Ok((rho, layout))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::{subsystem_entropy, von_neumann_entropy, LogBase};
    use crate::qstate::{partial_trace, DEFAULT_MAX_DIM};

    fn h2(p: f64) -> f64 {
        if p <= 0.0 || p >= 1.0 {
            return 0.0;
        }
        -(p * p.log2() + (1.0 - p) * (1.0 - p).log2())
    }

    fn nonzero(psi: &StateVector) -> Vec<(usize, f64)> {
        psi.amplitudes()
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > 1e-15)
            .map(|(i, a)| (i, a.re))
            .collect()
    }

    #[test]
    fn ghz_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = nonzero(&ghz(2).unwrap());
        assert_eq!(bell.len(), 2);
        assert_eq!((bell[0].0, bell[1].0), (0, 3));
        let g4 = nonzero(&ghz(4).unwrap());
        assert_eq!((g4[0].0, g4[1].0), (0, 15));
        assert!((g4[0].1 - h).abs() < 1e-15 && (g4[1].1 - h).abs() < 1e-15);
        let l3 = SystemLayout::qubits(3).unwrap();
        let s = subsystem_entropy(&ghz(3).unwrap().to_density(), &l3, &[1], LogBase::Two).unwrap();
        assert!((s - 1.0).abs() < 1e-12);
        assert!(ghz(1).is_err());
    }

    #[test]
    fn ghz_qutrit() {
        let g = ghz_qudit(2, 3).unwrap();
        let idx: Vec<usize> = nonzero(&g).iter().map(|x| x.0).collect();
        assert_eq!(idx, vec![0, 4, 8]);
    }

    #[test]
    fn w_examples() {
        let w4 = nonzero(&w_state(4).unwrap());
        assert_eq!(w4.iter().map(|x| x.0).collect::<Vec<_>>(), vec![1, 2, 4, 8]);
        assert!(w4.iter().all(|x| (x.1 - 0.5).abs() < 1e-15));
        let w2 = nonzero(&w_state(2).unwrap());
        assert_eq!(w2.iter().map(|x| x.0).collect::<Vec<_>>(), vec![1, 2]);

        let l4 = SystemLayout::qubits(4).unwrap();
        let m = partial_trace(&w_state(4).unwrap().to_density(), &l4, &[0]).unwrap();
        let expect = DensityMatrix::diagonal(&[0.75, 0.25]).unwrap();
        assert!(m.max_abs_diff(&expect) < 1e-15);
        let s = von_neumann_entropy(&m, LogBase::Two).unwrap();
        assert!((s - 0.8112781245).abs() < 1e-10);
    }

    #[test]
    fn ghz_w_mixture_examples() {
        let g = ghz(4).unwrap().to_density();
        let w = w_state(4).unwrap().to_density();
        assert!(ghz_w_mixture(1.0).unwrap().max_abs_diff(&g) < 1e-15);
        assert!(ghz_w_mixture(0.0).unwrap().max_abs_diff(&w) < 1e-15);
        for k in 0..=20 {
            let p = k as f64 / 20.0;
            let s = von_neumann_entropy(&ghz_w_mixture(p).unwrap(), LogBase::Two).unwrap();
            assert!((s - h2(p)).abs() < 1e-9, "p = {p}");
        }
        assert!(ghz_w_mixture(1.5).is_err());
        assert!(ghz_w_mixture(-0.1).is_err());
    }

    #[test]
    fn werner_examples() {
        assert!(
            generalized_werner(1.0)
                .unwrap()
                .max_abs_diff(&DensityMatrix::maximally_mixed(8))
                < 1e-15
        );
        let w0 = generalized_werner(0.0).unwrap();
        let diag: Vec<f64> = (0..8).map(|i| w0.get(i, i).re).collect();
        assert!((diag[3] - 1.0 / 6.0).abs() < 1e-15);
        assert!((diag[5] - 1.0 / 6.0).abs() < 1e-15);
        assert!((diag[6] - 4.0 / 6.0).abs() < 1e-15);
        let l3 = SystemLayout::qubits(3).unwrap();
        let s = subsystem_entropy(&w0, &l3, &[2], LogBase::Two).unwrap();
        assert!((s - 0.9182958341).abs() < 1e-10);
        generalized_werner(0.37).unwrap().validate().unwrap();
        assert!(generalized_werner(2.0).is_err());
    }

    #[test]
    fn random_determinism() {
        let l = SystemLayout::qubits(3).unwrap();
        assert_eq!(random_pure(&l, 42).unwrap(), random_pure(&l, 42).unwrap());
        assert_ne!(random_pure(&l, 42).unwrap(), random_pure(&l, 43).unwrap());
        assert_eq!(
            random_mixed(&l, 3, 9).unwrap(),
            random_mixed(&l, 3, 9).unwrap()
        );
    }

    #[test]
    fn random_mixed_rank_one_is_pure() {
        let l = SystemLayout::qubits(3).unwrap();
        let rho = random_mixed(&l, 1, 5).unwrap();
        assert!((rho.purity() - 1.0).abs() < 1e-9);
        assert!(random_mixed(&l, 0, 5).is_err());
        assert!(random_mixed(&l, 9, 5).is_err());
    }

    #[test]
    fn random_pure_schmidt_symmetry() {
        let l = SystemLayout::qubits(2).unwrap();
        let rho = random_pure(&l, 3).unwrap().to_density();
        let a = subsystem_entropy(&rho, &l, &[0], LogBase::Two).unwrap();
        let b = subsystem_entropy(&rho, &l, &[1], LogBase::Two).unwrap();
        assert!((a - b).abs() < 1e-9);
        assert!(a > 0.0);
    }

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = seeded_rng(1);
        for d in [1, 2, 3, 5] {
            let u = random_unitary(d, &mut rng);
            let err = (&u * u.adjoint() - Operator::identity(d, d))
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            assert!(err < 1e-12);
        }
    }

    #[test]
    fn family_spec_builds_everything() {
        for family in Family::ALL {
            let mut spec = FamilySpec::new(family);
            spec.p = 0.25;
            spec.rank = 3;
            spec.seed = 17;
            let (rho, layout) = spec.build(DEFAULT_MAX_DIM).unwrap();
            rho.validate().unwrap();
            layout.check_state(&rho).unwrap();
            assert_eq!(family.cli_name().parse::<Family>().unwrap(), family);
        }
    }

    #[test]
    fn family_spec_guards() {
        let mut spec = FamilySpec::new(Family::Ghz);
        spec.n_parties = 11;
        assert!(matches!(
            spec.build(DEFAULT_MAX_DIM),
            Err(Error::DimensionGuard { .. })
        ));
        let mut spec = FamilySpec::new(Family::GhzWMixture);
        spec.n_parties = 3;
        assert!(spec.build(DEFAULT_MAX_DIM).is_err());
        let spec = FamilySpec::new(Family::GeneralizedWerner).at(1.2);
        assert!(matches!(
            spec.build(DEFAULT_MAX_DIM),
            Err(Error::ParameterOutOfRange(_))
        ));
    }
}
