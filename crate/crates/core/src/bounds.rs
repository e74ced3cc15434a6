//! Entropic lower bounds on multipartite squashed entanglement and
//! extension-based upper bounds.
//!
//! All values follow the multipartite convention
//! `E_sq(rho) = inf_E I(A_1 : ... : A_N | E)`, which for two parties is twice
//! the original bipartite squashed entanglement. Lower bounds may be negative,
//! in which case they carry no information.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entropy::{
    conditional_mutual_information, multipartite_mutual_information, subsystem_entropy, LogBase,
    PartyGrouping,
};
use crate::error::{Error, Result};
use crate::qstate::{
    check_probability_vector, partial_trace, DensityMatrix, SystemLayout, DEFAULT_MAX_DIM,
};

/// A lower bound certifies entanglement only above this value.
pub const VERDICT_THRESHOLD: f64 = 1e-9;
/// Minimum `Tr(rho^2)` for a state to count as pure.
pub const PURITY_TOL: f64 = 1e-8;
/// Elementwise tolerance for `Tr_E sigma == rho`.
pub const EXTENSION_TOL: f64 = 1e-8;

/// Shared knobs for entropy-based evaluations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Options {
    pub base: LogBase,
    pub max_dim: usize,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            base: LogBase::Two,
            max_dim: DEFAULT_MAX_DIM,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Max over the three pair-subtracted tripartite expressions.
    Lemma1,
    /// Pair-averaged tripartite expression.
    Corollary2,
    /// General N-party subset-averaged expression.
    Lemma3,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Lemma1, Method::Corollary2, Method::Lemma3];

    pub fn name(self) -> &'static str {
        match self {
            Method::Lemma1 => "lemma1",
            Method::Corollary2 => "corollary2",
            Method::Lemma3 => "lemma3",
        }
    }

    pub fn evaluate(
        self,
        rho: &DensityMatrix,
        layout: &SystemLayout,
        opts: &Options,
    ) -> Result<BoundReport> {
        match self {
            Method::Lemma1 => lemma1_bound(rho, layout, opts),
            Method::Corollary2 => corollary2_bound(rho, layout, opts),
            Method::Lemma3 => lemma3_bound(rho, layout, opts),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown method {s:?}")))
    }
}

/// Result of one lower-bound evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub method: Method,
    /// Marginal entropies keyed by comma-separated party indices (`"0,2"`).
    pub entropies: BTreeMap<String, f64>,
    /// The three pair-subtracted expressions for lemma1, otherwise just the value.
    pub candidates: Vec<f64>,
    pub value: f64,
}

impl BoundReport {
    pub fn certifies_entanglement(&self) -> bool {
        self.value > VERDICT_THRESHOLD
    }
}

pub fn subset_key(subset: &[usize]) -> String {
    subset
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Exact `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn check_bound_input(rho: &DensityMatrix, layout: &SystemLayout, opts: &Options) -> Result<()> {
    layout.check_state(rho)?;
    layout.check_guard(opts.max_dim)?;
    if let Some(p) = layout.dims().iter().position(|&d| d < 2) {
        return Err(Error::InvalidLayout(format!(
            "party {p} has dimension {}, bounds need every party to have dimension >= 2",
            layout.dims()[p]
        )));
    }
    Ok(())
}

fn require_parties(method: Method, layout: &SystemLayout) -> Result<()> {
    let n = layout.parties();
    let ok = match method {
        Method::Lemma1 | Method::Corollary2 => n == 3,
        Method::Lemma3 => n >= 3,
    };
    if ok {
        return Ok(());
    }
    Err(Error::PartyCount {
        method: method.name(),
        expected: match method {
            Method::Lemma3 => "at least 3",
            _ => "exactly 3",
        },
        got: n,
    })
}

/// Entropies of the given subsets, computed in parallel but returned in input order.
fn marginal_entropies(
    rho: &DensityMatrix,
    layout: &SystemLayout,
    subsets: &[Vec<usize>],
    base: LogBase,
) -> Result<Vec<f64>> {
    subsets
        .par_iter()
        .map(|s| subsystem_entropy(rho, layout, s, base))
        .collect()
}

fn tripartite_entropies(
    rho: &DensityMatrix,
    layout: &SystemLayout,
    opts: &Options,
) -> Result<(Vec<Vec<usize>>, Vec<f64>)> {
    let subsets = vec![
        vec![0],
        vec![1],
        vec![2],
        vec![0, 1],
        vec![0, 2],
        vec![1, 2],
        vec![0, 1, 2],
    ];
    let s = marginal_entropies(rho, layout, &subsets, opts.base)?;
    Ok((subsets, s))
}

fn entropy_map(subsets: &[Vec<usize>], values: &[f64]) -> BTreeMap<String, f64> {
    subsets
        .iter()
        .zip(values)
        .map(|(s, &v)| (subset_key(s), v))
        .collect()
}

/// `max{C - S(A1A2), C - S(A1A3), C - S(A2A3)}` with
/// `C = S(A1) + S(A2) + S(A3) - 2 S(A1A2A3)`.
pub fn lemma1_bound(
    rho: &DensityMatrix,
    layout: &SystemLayout,
    opts: &Options,
) -> Result<BoundReport> {
    require_parties(Method::Lemma1, layout)?;
    check_bound_input(rho, layout, opts)?;
    let (subsets, s) = tripartite_entropies(rho, layout, opts)?;
    let c = s[0] + s[1] + s[2] - 2.0 * s[6];
    let candidates = vec![c - s[3], c - s[4], c - s[5]];
    let value = candidates.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(BoundReport {
        method: Method::Lemma1,
        entropies: entropy_map(&subsets, &s),
        candidates,
        value,
    })
}

/// `S(A1) + S(A2) + S(A3) - [S(A1A2) + S(A1A3) + S(A2A3)]/3 - 2 S(A1A2A3)`.
pub fn corollary2_bound(
    rho: &DensityMatrix,
    layout: &SystemLayout,
    opts: &Options,
) -> Result<BoundReport> {
    require_parties(Method::Corollary2, layout)?;
    check_bound_input(rho, layout, opts)?;
    let (subsets, s) = tripartite_entropies(rho, layout, opts)?;
    let singles = s[0] + s[1] + s[2];
    let pairs = s[3] + s[4] + s[5];
    let value = singles - pairs / 3.0 - 2.0 * s[6];
    Ok(BoundReport {
        method: Method::Corollary2,
        entropies: entropy_map(&subsets, &s),
        candidates: vec![value],
        value,
    })
}

/// `sum_i S(A_i) - sum_{M=2}^{N-1} C(N,M)^{-1} sum_{|K|=M} S(A_K) - 2 S(A_1...A_N)`.
pub fn lemma3_bound(
    rho: &DensityMatrix,
    layout: &SystemLayout,
    opts: &Options,
) -> Result<BoundReport> {
    require_parties(Method::Lemma3, layout)?;
    check_bound_input(rho, layout, opts)?;
    let n = layout.parties();
    let subsets: Vec<Vec<usize>> = (1..=n).flat_map(|m| combinations(n, m)).collect();
    let s = marginal_entropies(rho, layout, &subsets, opts.base)?;

    // subsets are grouped by size, so walk them in order
    let mut value = 0.0;
    let mut offset = 0;
    for m in 1..=n {
        let count = binomial(n, m) as usize;
        let layer: f64 = s[offset..offset + count].iter().sum();
        value += match m {
            1 => layer,
            m if m == n => -2.0 * layer,
            _ => -layer / count as f64,
        };
        offset += count;
    }
    Ok(BoundReport {
        method: Method::Lemma3,
        entropies: entropy_map(&subsets, &s),
        candidates: vec![value],
        value,
    })
}

/// `sum_i S(A_i)` for a globally pure state, where it is the exact value.
pub fn pure_state_squashed(
    rho: &DensityMatrix,
    layout: &SystemLayout,
    opts: &Options,
) -> Result<f64> {
    check_bound_input(rho, layout, opts)?;
    let purity = rho.purity();
    if purity < 1.0 - PURITY_TOL {
        return Err(Error::NotPure { purity });
    }
    let singles: Vec<Vec<usize>> = (0..layout.parties()).map(|p| vec![p]).collect();
    Ok(marginal_entropies(rho, layout, &singles, opts.base)?
        .iter()
        .sum())
}

/// A state `sigma` on `A_1 ... A_N E` with `E` at `e_index`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionState {
    sigma: DensityMatrix,
    layout: SystemLayout,
    e_index: usize,
}

impl ExtensionState {
    pub fn new(sigma: DensityMatrix, layout: SystemLayout, e_index: usize) -> Result<Self> {
        layout.check_state(&sigma)?;
        if e_index >= layout.parties() {
            return Err(Error::IndexOutOfRange {
                index: e_index,
                parties: layout.parties(),
            });
        }
        Ok(Self {
            sigma,
            layout,
            e_index,
        })
    }

    pub fn sigma(&self) -> &DensityMatrix {
        &self.sigma
    }

    pub fn layout(&self) -> &SystemLayout {
        &self.layout
    }

    pub fn e_index(&self) -> usize {
        self.e_index
    }

    /// Indices of the non-extension parties.
    pub fn system_parties(&self) -> Vec<usize> {
        self.layout.complement(&[self.e_index])
    }

    pub fn system_layout(&self) -> Result<SystemLayout> {
        self.layout.sub_layout(&self.system_parties())
    }

    /// `Tr_E sigma`.
    pub fn reduced(&self) -> Result<DensityMatrix> {
        partial_trace(&self.sigma, &self.layout, &self.system_parties())
    }

    /// Fails unless `Tr_E sigma` matches `target` within [`EXTENSION_TOL`].
    pub fn check_extends(&self, target: &DensityMatrix) -> Result<()> {
        let reduced = self.reduced()?;
        let deviation = reduced.max_abs_diff(target);
        if deviation.is_nan() || deviation > EXTENSION_TOL {
            return Err(Error::InconsistentExtension { deviation });
        }
        Ok(())
    }
}

/// `I(A_1 : ... : A_N | E)` evaluated on `sigma`: an upper bound on the
/// squashed entanglement of `Tr_E sigma`.
pub fn squashed_objective(
    ext: &ExtensionState,
    target: Option<&DensityMatrix>,
    opts: &Options,
) -> Result<f64> {
    ext.layout.check_guard(opts.max_dim)?;
    if let Some(t) = target {
        ext.check_extends(t)?;
    }
    let grouping = PartyGrouping::singletons(ext.system_parties()).given(vec![ext.e_index])?;
    conditional_mutual_information(&ext.sigma, &ext.layout, &grouping, opts.base)
}

/// `sigma = sum_i p_i rho_i ⊗ |i><i|_E`, with `E` appended as the last party.
pub fn classical_extension(
    ensemble: &[(f64, DensityMatrix)],
    layout: &SystemLayout,
) -> Result<ExtensionState> {
    if ensemble.is_empty() {
        return Err(Error::BadWeights("empty ensemble".into()));
    }
    let weights: Vec<f64> = ensemble.iter().map(|(w, _)| *w).collect();
    check_probability_vector(&weights)?;
    let d = layout.total_dim();
    let k = ensemble.len();
    let dim = d * k;
    let mut entries = vec![num_complex::Complex64::new(0.0, 0.0); dim * dim];
    for (i, (w, rho)) in ensemble.iter().enumerate() {
        layout.check_state(rho)?;
        for a in 0..d {
            for b in 0..d {
                entries[(a * k + i) * dim + b * k + i] = rho.get(a, b) * *w;
            }
        }
    }
    let sigma = DensityMatrix::from_raw(dim, entries);
    ExtensionState::new(sigma, layout.with_party(k)?, layout.parties())
}

/// Spectral ensemble `{(l_i, |v_i><v_i|)}` of `rho`, dropping numerically zero weights.
pub fn eigen_ensemble(rho: &DensityMatrix) -> Vec<(f64, DensityMatrix)> {
    let (vals, vecs) = rho.eigh();
    let d = rho.dim();
    let mut out: Vec<(f64, DensityMatrix)> = vals
        .iter()
        .enumerate()
        .filter(|(_, &l)| l > 1e-14)
        .map(|(k, &l)| {
            let col = vecs.column(k);
            let entries = (0..d)
                .flat_map(|r| (0..d).map(move |c| (r, c)))
                .map(|(r, c)| col[r] * col[c].conj())
                .collect();
            (l, DensityMatrix::from_raw(d, entries))
        })
        .collect();
    let total: f64 = out.iter().map(|(w, _)| w).sum();
    for (w, _) in &mut out {
        *w /= total;
    }
    out
}

/// `I_n(A_1A'_1 : ... : A_nA'_n) - I_n(A'_1 : ... : A'_n)`, halved when `n = 2`.
///
/// `pairing` lists `(A_i, A'_i)` party indices and must cover the layout
/// exactly once. The result upper-bounds the conditional entanglement of
/// mutual information of the unprimed marginal.
pub fn ci_objective(
    layout: &SystemLayout,
    sigma: &DensityMatrix,
    pairing: &[(usize, usize)],
    opts: &Options,
) -> Result<f64> {
    layout.check_state(sigma)?;
    layout.check_guard(opts.max_dim)?;
    if pairing.len() < 2 {
        return Err(Error::InvalidGrouping(format!(
            "pairing needs at least 2 pairs, got {}",
            pairing.len()
        )));
    }
    let mut covered: Vec<usize> = pairing.iter().flat_map(|&(a, b)| [a, b]).collect();
    covered.sort_unstable();
    if covered != (0..layout.parties()).collect::<Vec<_>>() {
        return Err(Error::InvalidGrouping(
            "pairing must use every party of the layout exactly once".into(),
        ));
    }
    let joint = PartyGrouping::new(pairing.iter().map(|&(a, b)| vec![a, b]).collect(), vec![])?;
    let primes = PartyGrouping::singletons(pairing.iter().map(|&(_, b)| b));
    let value = multipartite_mutual_information(sigma, layout, &joint, opts.base)?
        - multipartite_mutual_information(sigma, layout, &primes, opts.base)?;
    Ok(if pairing.len() == 2 {
        value / 2.0
    } else {
        value
    })
}
