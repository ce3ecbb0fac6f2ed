//! Bers generating-set machinery for first-order systems with variable
//! coefficients: biquaternionic Maxwell equations for stratified media,
//! force-free magnetic fields and the fixed-energy Dirac system.
//!
//! Everything is verified the same way: closed-form or constructed solutions
//! are sampled onto uniform grids, the governing operator is applied with
//! second-order finite differences, and the residual norms (plus observed
//! convergence orders under dyadic refinement) are reported in a
//! [`ResidualReport`].
//!
//! The main pieces:
//!
//! * [`algebra`]: biquaternions, hyperbolic and bicomplex numbers.
//! * [`calculus`]: grids, sampled fields, difference operators and the
//!   elliptic Vekua machinery (characteristic coefficients, intertwining).
//! * [`medium`]: a stratified dielectric and its change of variable.
//! * [`formal_powers`]: the recursive formal powers of the hyperbolic
//!   Vekua equation with generating pair `(f, j/f)`.
//! * [`maxwell`], [`forcefree`], [`dirac`]: residuals, generating sets and
//!   second-kind equations for the three systems.

pub mod algebra;
pub mod calculus;
pub mod dirac;
mod error;
pub mod forcefree;
pub mod formal_powers;
pub mod maxwell;
pub mod medium;
pub mod numerics;

pub use algebra::{Bicomplex, Biquaternion, Hyperbolic};
pub use calculus::{Field, Grid, ResidualReport};
pub use error::{Error, Result};
pub use num_complex::Complex64;
