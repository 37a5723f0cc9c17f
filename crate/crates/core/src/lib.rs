//! Second Hankel determinant functionals for classes of normalized univalent
//! functions, together with the machinery to certify their upper bounds
//! numerically.
//!
//! Every function class handled here is parameterized by a Schwarz function
//! `ω(z) = c₁z + c₂z² + c₃z³ + ⋯`. The crate provides:
//!
//! - [`series`]: truncated complex power series used to solve the defining
//!   functional equations independently of the closed forms.
//! - [`schwarz`]: the exact feasible region of `(c₁, c₂, c₃)` and its Schur
//!   parameter chart.
//! - [`classes`]: closed-form coefficient maps, `H₂(2)` functionals, the
//!   generic Hankel determinant and the recurrence oracle.
//! - [`bounds`]: closed-form bounds and the one-dimensional envelopes in `c₁`.
//! - [`optimizer`]: deterministic global maximization of `|H₂(2)|`.
//! - [`check`]: the oracle-agreement suite shared by the CLI and tests.

pub mod bounds;
pub mod check;
pub mod classes;
mod error;
pub mod optimizer;
pub mod schwarz;
pub mod series;

pub use num_complex::Complex64;

pub use bounds::{closed_bound, envelope, envelope_max, EnvelopeMax, PRIOR_SQ_BOUND};
pub use classes::{ClassKind, ClassSpec, CoeffVector};
pub use error::{Error, Result};
pub use optimizer::{maximize_h2, BoundReport, SearchConfig, SearchStatus, SeedLayout};
pub use schwarz::{ReducedTriple, SchurPoint, SchwarzTriple};
pub use series::TruncatedSeries;

/// Feasibility slack used throughout.
pub const FEASIBILITY_TOL: f64 = 1e-12;
