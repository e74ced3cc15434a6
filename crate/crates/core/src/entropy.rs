//! Von Neumann entropy and the mutual-information functionals built on it.
//!
//! All functionals are linear combinations of marginal entropies
//! `S(X) = -Tr rho_X log rho_X`, computed from the spectrum of the
//! symmetrized marginal. Values are in bits unless [`LogBase::E`] is chosen.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::{partial_trace, DensityMatrix, SystemLayout, PSD_TOL};

/// Eigenvalues in `[-ZERO_CLAMP, 0]` are treated as exact zeros.
pub const ZERO_CLAMP: f64 = 1e-10;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum LogBase {
    /// Bits.
    #[default]
    #[serde(rename = "2")]
    Two,
    /// Nats.
    #[serde(rename = "e")]
    E,
}

impl LogBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Two => x.log2(),
            LogBase::E => x.ln(),
        }
    }
}

impl std::str::FromStr for LogBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "2" => Ok(LogBase::Two),
            "e" => Ok(LogBase::E),
            other => Err(Error::InvalidArgument(format!(
                "log base must be 2 or e, got {other:?}"
            ))),
        }
    }
}

/// `-sum_i l_i log l_i` over the eigenvalues of `rho`, clamped to `[0, log D]`.
pub fn von_neumann_entropy(rho: &DensityMatrix, base: LogBase) -> Result<f64> {
    if rho.dim() == 1 {
        return Ok(0.0);
    }
    let mut s = 0.0;
    for lambda in rho.eigenvalues() {
        if lambda < PSD_TOL {
            return Err(Error::NotPositive {
                min_eigenvalue: lambda,
            });
        }
        if lambda < -ZERO_CLAMP {
            log::warn!("clamping eigenvalue {lambda:e} to zero");
        }
        if lambda > 0.0 {
            s -= lambda * base.log(lambda);
        }
    }
    Ok(s.clamp(0.0, base.log(rho.dim() as f64)))
}

/// Entropy of the marginal on `subset`.
pub fn subsystem_entropy(
    rho: &DensityMatrix,
    layout: &SystemLayout,
    subset: &[usize],
    base: LogBase,
) -> Result<f64> {
    von_neumann_entropy(&partial_trace(rho, layout, subset)?, base)
}

/// Disjoint party blocks `G_1, ..., G_k`, optionally conditioned on `E`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartyGrouping {
    groups: Vec<Vec<usize>>,
    conditioning: Vec<usize>,
}

impl PartyGrouping {
    pub fn new(groups: Vec<Vec<usize>>, conditioning: Vec<usize>) -> Result<Self> {
        if groups.iter().any(|g| g.is_empty()) {
            return Err(Error::InvalidGrouping("empty group".into()));
        }
        let mut seen: Vec<usize> = groups.iter().flatten().copied().collect();
        seen.extend(&conditioning);
        let total = seen.len();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != total {
            return Err(Error::InvalidGrouping(
                "groups and conditioning set must be pairwise disjoint".into(),
            ));
        }
        let mut groups = groups;
        for g in &mut groups {
            g.sort_unstable();
        }
        let mut conditioning = conditioning;
        conditioning.sort_unstable();
        Ok(Self {
            groups,
            conditioning,
        })
    }

    /// One group per listed party, no conditioning.
    pub fn singletons(parties: impl IntoIterator<Item = usize>) -> Self {
        Self {
            groups: parties.into_iter().map(|p| vec![p]).collect(),
            conditioning: Vec::new(),
        }
    }

    /// Same groups, conditioned on `e`.
    pub fn given(self, e: Vec<usize>) -> Result<Self> {
        Self::new(self.groups, e)
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn conditioning(&self) -> &[usize] {
        &self.conditioning
    }

    /// Union of all groups, ascending.
    pub fn union(&self) -> Vec<usize> {
        let mut u: Vec<usize> = self.groups.iter().flatten().copied().collect();
        u.sort_unstable();
        u
    }

    fn check(&self, layout: &SystemLayout) -> Result<()> {
        if self.groups.len() < 2 {
            return Err(Error::InvalidGrouping(format!(
                "need at least 2 groups, got {}",
                self.groups.len()
            )));
        }
        for &p in self.groups.iter().flatten().chain(&self.conditioning) {
            if p >= layout.parties() {
                return Err(Error::IndexOutOfRange {
                    index: p,
                    parties: layout.parties(),
                });
            }
        }
        Ok(())
    }
}

fn joined(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut v = [a, b].concat();
    v.sort_unstable();
    v
}

/// `sum_i S(G_i) - S(G_1 ... G_k)`.
pub fn multipartite_mutual_information(
    rho: &DensityMatrix,
    layout: &SystemLayout,
    grouping: &PartyGrouping,
    base: LogBase,
) -> Result<f64> {
    if !grouping.conditioning().is_empty() {
        return Err(Error::InvalidGrouping(
            "mutual information takes no conditioning set".into(),
        ));
    }
    grouping.check(layout)?;
    let mut total = 0.0;
    for g in grouping.groups() {
        total += subsystem_entropy(rho, layout, g, base)?;
    }
    Ok(total - subsystem_entropy(rho, layout, &grouping.union(), base)?)
}

/// `sum_i S(G_i E) - (k-1) S(E) - S(G_1 ... G_k E)`.
///
/// For two groups this is `S(AE) + S(BE) - S(ABE) - S(E)`.
pub fn conditional_mutual_information(
    rho: &DensityMatrix,
    layout: &SystemLayout,
    grouping: &PartyGrouping,
    base: LogBase,
) -> Result<f64> {
    grouping.check(layout)?;
    let e = grouping.conditioning();
    let k = grouping.groups().len();
    let mut total = 0.0;
    for g in grouping.groups() {
        total += subsystem_entropy(rho, layout, &joined(g, e), base)?;
    }
    total -= (k - 1) as f64 * subsystem_entropy(rho, layout, e, base)?;
    total -= subsystem_entropy(rho, layout, &joined(&grouping.union(), e), base)?;
    Ok(total)
}

/// The same quantity as [`conditional_mutual_information`], accumulated as
/// `I(G_1:G_2|E) + I(G_3:G_1G_2|E) + ... + I(G_k:G_1...G_{k-1}|E)`.
pub fn cmi_chain(
    rho: &DensityMatrix,
    layout: &SystemLayout,
    grouping: &PartyGrouping,
    base: LogBase,
) -> Result<f64> {
    grouping.check(layout)?;
    let e = grouping.conditioning();
    let s_e = subsystem_entropy(rho, layout, e, base)?;
    let groups = grouping.groups();
    let mut prefix = groups[0].clone();
    let mut s_prefix_e = subsystem_entropy(rho, layout, &joined(&prefix, e), base)?;
    let mut total = 0.0;
    for g in &groups[1..] {
        let s_g_e = subsystem_entropy(rho, layout, &joined(g, e), base)?;
        prefix = joined(&prefix, g);
        let s_joint = subsystem_entropy(rho, layout, &joined(&prefix, e), base)?;
        total += s_g_e + s_prefix_e - s_joint - s_e;
        s_prefix_e = s_joint;
    }
    Ok(total)
}

/// Returns `I(a:b|e)`. Strong subadditivity says this is nonnegative.
pub fn check_strong_subadditivity(
    rho: &DensityMatrix,
    layout: &SystemLayout,
    a: &[usize],
    b: &[usize],
    e: &[usize],
    base: LogBase,
) -> Result<f64> {
    let grouping = PartyGrouping::new(vec![a.to_vec(), b.to_vec()], e.to_vec())?;
    conditional_mutual_information(rho, layout, &grouping, base)
}
