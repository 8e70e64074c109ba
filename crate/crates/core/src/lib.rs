//! Exact intersection-theory calculus.
//!
//! The crate bundles the small calculi needed to re-derive classical
//! enumerative numbers with exact rational arithmetic:
//!
//! - [`scalar`] and [`partition`]: rationals and box combinatorics,
//! - [`grassmann`]: Schubert calculus on `Gr(k, n)`,
//! - [`surface`]: truncated Chern classes on a formal surface and jet bundles,
//! - [`lattice`]: numerical classes on ruled surfaces with unknown coefficients,
//! - [`curves`]: Plücker, Riemann–Hurwitz, correspondence and scroll formulas,
//! - [`worksheet`]: a straight-line worksheet language tying them together.

pub mod curves;
pub mod error;
pub mod grassmann;
pub mod lattice;
pub mod linear;
pub mod partition;
pub mod scalar;
pub mod surface;
pub mod worksheet;

pub use error::{AlgebraError, CurveError, GrassmannError, LatticeError, SurfaceError};
pub use grassmann::{GrassmannContext, SchubertElement};
pub use partition::Partition;
pub use scalar::Scalar;
