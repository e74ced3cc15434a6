//! Computable entropic bounds on multipartite squashed entanglement.
//!
//! The crate is organized bottom-up:
//!
//! - [`qstate`]: dense states, tensor products and partial traces.
//! - [`entropy`]: von Neumann entropy and (conditional) mutual information.
//! - [`bounds`]: entropic lower bounds, the exact pure-state value and
//!   objectives evaluated on explicit extensions (upper bounds).
//! - [`states`]: the GHZ/W mixture, the generalized Werner family and
//!   seeded random states.
//! - [`sweep`]: parameter sweeps and bisection for sign changes.
//!
//! ```
//! use esq_core::{bounds::{lemma3_bound, Options}, states, SystemLayout};
//!
//! let rho = states::ghz(4).unwrap().to_density();
//! let layout = SystemLayout::qubits(4).unwrap();
//! let report = lemma3_bound(&rho, &layout, &Options::default()).unwrap();
//! assert!((report.value - 2.0).abs() < 1e-9);
//! ```

pub mod bounds;
pub mod entropy;
pub mod error;
mod linalg;
pub mod qstate;
pub mod states;
pub mod sweep;

pub use bounds::{BoundReport, ExtensionState, Method, Options};
pub use entropy::{LogBase, PartyGrouping};
pub use error::{Error, Result};
pub use linalg::{kron, Operator};
pub use qstate::{DensityMatrix, StateVector, SystemLayout};
pub use states::{Family, FamilySpec};
pub use sweep::{Crossing, Direction, Grid, SweepResult, ThresholdResult};

pub use num_complex::Complex64;
