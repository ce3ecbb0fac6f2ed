//! End to end through the public API: a stratified medium, its formal
//! powers, the reconstructed electromagnetic field, and its coordinates in
//! the generating sextet.

use bers_core::formal_powers::{build_x_tables, GeneratingFunction, HyperbolicPoint};
use bers_core::maxwell::{
    build_sextet, formal_power_fields, maxmain_residual, maxwell_1d_residual, second_kind_residual, w_from_fields,
};
use bers_core::medium::{build_tables, MediumProfile, MediumTables, Permittivity};
use bers_core::{Grid, Hyperbolic, ResidualReport};

fn power_medium() -> MediumTables {
    let eps = Permittivity::Power {
        scale: 1.0,
        shift: 1.0,
        power: -4.0,
    };
    build_tables(MediumProfile::new((0.0, 1.0), eps, 1.0, 2001).unwrap()).unwrap()
}

#[test]
fn change_of_variable_matches_closed_forms() {
    // ε = (x+1)^-4: c = (x+1)², ξ = 1 - 1/(x+1), C = 1/(1-ξ)²
    let t = power_medium();
    for k in 0..=20 {
        let x = k as f64 / 20.0;
        let xi = t.xi_of_x(x).unwrap();
        assert!((xi - (1.0 - 1.0 / (x + 1.0))).abs() < 1e-10);
        assert!((t.x_of_xi(xi).unwrap() - x).abs() < 1e-9);
        assert!((t.big_c(xi).unwrap() * (1.0 - xi).powi(2) - 1.0).abs() < 1e-8);
        // c′ comes from the interpolant
        assert!((t.c_vector(x).unwrap() - 1.0 / (x + 1.0)).abs() < 1e-10);
    }
}

#[test]
fn formal_power_fields_solve_maxwell_and_their_coordinates_the_second_kind_system() {
    let t = power_medium();
    let table = build_x_tables(&GeneratingFunction::for_maxwell(&t).unwrap(), 3).unwrap();
    let (a1, a2) = (Hyperbolic::new(0.7, -0.2), Hyperbolic::new(-0.4, 1.1));
    let (mut main, mut second, mut one_d) = (
        ResidualReport::new("main"),
        ResidualReport::new("second"),
        ResidualReport::new("1d"),
    );
    // this medium reaches the asymptotic range later than the exponential one
    for m in [65, 129, 257] {
        let g = Grid::from_ranges([(0.0, 0.5), (0.0, 1.0)], [m, m]).unwrap();
        let em = formal_power_fields(&table, 3, a1, a2, &t, g).unwrap();
        one_d.levels.extend(maxwell_1d_residual(&em, &t).unwrap().levels);
        let v = em.to_v(&t).unwrap();
        main.levels.extend(maxmain_residual(&v, &t).unwrap().levels);
        let sextet = build_sextet(&t, g).unwrap();
        let phi = sextet.decompose(&v).unwrap();
        second.levels.extend(second_kind_residual(&phi, &sextet, &t).unwrap().levels);

        // the field map inverts back to the formal powers at every node
        let (w1, w2) = w_from_fields(&em, &t).unwrap();
        for i in (0..g.len()).step_by(97) {
            let [time, x] = g.node_coords(i);
            let p = HyperbolicPoint::new(t.xi_of_x(x).unwrap(), time);
            let z1 = table.z_formal_power(3, a1, p).unwrap();
            let z2 = table.z_formal_power(3, a2, p).unwrap();
            assert!((w1[i].u - z1.u).abs() < 1e-9 && (w1[i].v - z1.v).abs() < 1e-9);
            assert!((w2[i].u - z2.u).abs() < 1e-9 && (w2[i].v - z2.v).abs() < 1e-9);
        }
    }
    for r in [&one_d, &main, &second] {
        assert!(r.converges(1.9, 1e-10), "{r:?}");
    }
}
