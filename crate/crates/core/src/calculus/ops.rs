use super::Field;
use crate::algebra::{Biquaternion, FieldValue, HyperbolicUnit};
use num_complex::Complex64;

/// Second-order derivative along `axis`: central differences in the
/// interior, three-point one-sided stencils on the two boundary layers.
pub fn partial<V: FieldValue, const D: usize>(field: &Field<V, D>, axis: usize) -> Field<V, D> {
    let grid = *field.grid();
    let n = grid.counts()[axis];
    let stride = grid.stride(axis);
    let inv2h = 0.5 / grid.spacing()[axis];
    let v = field.values();
    let values = (0..grid.len())
        .map(|idx| {
            let i = grid.multi_index(idx)[axis];
            if i == 0 {
                ((v[idx + stride] - v[idx]) * 4.0 - (v[idx + 2 * stride] - v[idx])) * inv2h
            } else if i == n - 1 {
                ((v[idx] - v[idx - stride]) * 4.0 - (v[idx] - v[idx - 2 * stride])) * inv2h
            } else {
                (v[idx + stride] - v[idx - stride]) * inv2h
            }
        })
        .collect();
    Field::new(grid, values).expect("same grid")
}

/// `Dq = Σ e_k ∂_k q` on a purely spatial 3D grid.
pub fn moisil_theodoresco(field: &Field<Biquaternion, 3>) -> Field<Biquaternion, 3> {
    moisil_theodoresco_on(field, 0)
}

/// `Σ e_k ∂_k q` where spatial coordinate `x_k` lives on grid axis
/// `first_spatial_axis + k - 1`. Axes before `first_spatial_axis` (time)
/// are ignored; missing spatial axes count as constant directions.
pub fn moisil_theodoresco_on<const D: usize>(
    field: &Field<Biquaternion, D>,
    first_spatial_axis: usize,
) -> Field<Biquaternion, D> {
    let mut out = Field::constant(*field.grid(), Biquaternion::ZERO);
    for (k, axis) in (first_spatial_axis..D).enumerate().take(3) {
        let ek = Biquaternion::unit(k + 1);
        let d = partial(field, axis);
        out = out.zip_with(&d, |acc, dq| acc + ek * dq).expect("same grid");
    }
    out
}

/// `Dφ = Σ e_k ∂_k φ` for a complex scalar field.
pub fn quaternion_gradient<const D: usize>(
    field: &Field<Complex64, D>,
    first_spatial_axis: usize,
) -> Field<Biquaternion, D> {
    let mut out = Field::constant(*field.grid(), Biquaternion::ZERO);
    for (k, axis) in (first_spatial_axis..D).enumerate().take(3) {
        let d = partial(field, axis);
        out = out
            .zip_with(&d, |mut acc, dphi| {
                acc.q[k + 1] += dphi;
                acc
            })
            .expect("same grid");
    }
    out
}

/// Hyperbolic `∂_z̄ = ½(∂_ξ - j ∂_t)` with `ξ` on axis 0 and `t` on axis 1.
pub fn dbar_hyperbolic<V: HyperbolicUnit>(field: &Field<V, 2>) -> Field<V, 2> {
    let dxi = partial(field, 0);
    let dt = partial(field, 1);
    dxi.zip_with(&dt, |a, b| (a - b.mul_j()) * 0.5)
        .expect("same grid")
}

/// Elliptic `∂_z̄ = ½(∂_x + i ∂_y)`.
pub fn dbar_elliptic(field: &Field<Complex64, 2>) -> Field<Complex64, 2> {
    let dx = partial(field, 0);
    let dy = partial(field, 1);
    dx.zip_with(&dy, |a, b| (a + Complex64::i() * b) * 0.5)
        .expect("same grid")
}

/// Elliptic `∂_z = ½(∂_x - i ∂_y)`.
pub fn dz_elliptic(field: &Field<Complex64, 2>) -> Field<Complex64, 2> {
    let dx = partial(field, 0);
    let dy = partial(field, 1);
    dx.zip_with(&dy, |a, b| (a - Complex64::i() * b) * 0.5)
        .expect("same grid")
}
