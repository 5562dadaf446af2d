//! Exact Chow-ring computations for the smooth hyperplane section `D` of
//! the Grassmannian `Gr(3,6)` over a separably closed field.
//!
//! The crate is organised bottom-up:
//!
//! * [`schubert`]: Schubert calculus and Chern classes on `Gr(k, n)`.
//! * [`dvariety`]: a multiplication model of `CH(D)` including the
//!   vanishing class `d`, Gram matrices and the torus-fixed-point census.
//! * [`space`]: the cellular spaces correspondences live on, behind a
//!   common trait and a name registry.
//! * [`corr`]: correspondences, the Severi–Brauer-type idempotents and the
//!   residual projector.
//! * [`steenrod`]: mod-3 reduced powers on the admissible subalgebra and
//!   the torsion certificate chain.
//! * [`certificate`]: the end-to-end verification suite.

pub mod certificate;
pub mod coeff;
pub mod corr;
pub mod dvariety;
pub mod error;
pub mod expr;
pub mod report;
pub mod schubert;
pub mod space;
pub mod steenrod;

pub use coeff::Modulus;
pub use error::{Error, Result};
