//! Sampled fields on uniform grids, second-order difference operators and
//! residual bookkeeping.
//!
//! Axis conventions: the hyperbolic and elliptic planes use axis 0 for the
//! "real" coordinate (`ξ` or `x`) and axis 1 for the imaginary one (`t` or
//! `y`). Space-time fields used by the Maxwell module put `t` on axis 0.

mod field;
mod grid;
mod ops;
mod residual;
mod vekua;

pub use field::Field;
pub use grid::{Grid, Grid2, Grid3, MIN_NODES};
pub use ops::{
    dbar_elliptic, dbar_hyperbolic, dz_elliptic, moisil_theodoresco, moisil_theodoresco_on,
    partial, quaternion_gradient,
};
pub use residual::{LevelNorms, ResidualReport};
pub use vekua::{
    characteristic_coefficients, intertwine_residual_elliptic, vekua_residual, PAIR_TOL,
};
