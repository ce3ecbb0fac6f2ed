//! Randomised identities of the three algebras plus zero-divisor detection.

use super::RunError;
use crate::config::Settings;
use crate::report::Report;
use bers_core::algebra::{right_mul, FieldValue};
use bers_core::{Bicomplex, Biquaternion, Complex64, Hyperbolic};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::Path;

fn biquaternion(rng: &mut impl Rng) -> Biquaternion {
    let mut c = || Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    Biquaternion::new(c(), c(), c(), c())
}

fn hyperbolic(rng: &mut impl Rng) -> Hyperbolic {
    Hyperbolic::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn bicomplex(rng: &mut impl Rng) -> Bicomplex {
    Bicomplex::new(
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
    )
}

fn bq_norm(q: Biquaternion) -> f64 {
    q.norm_sqr().sqrt()
}

fn bc_diff(a: Bicomplex, b: Bicomplex) -> f64 {
    (a - b).norm()
}

/// Worst relative error of each identity over the random cases.
#[derive(Default)]
struct Worst {
    bq_assoc: f64,
    bq_conj: f64,
    bq_scalar: f64,
    bq_inverse: f64,
    bq_right_mul: f64,
    hyp_assoc: f64,
    hyp_inverse: f64,
    bc_assoc: f64,
    bc_split: f64,
}

fn bump(slot: &mut f64, v: f64) {
    *slot = slot.max(v);
}

pub fn run(s: &Settings, _out: &Path) -> Result<Report, RunError> {
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let tol = s.config.tolerances.algebra;
    let mut w = Worst::default();
    for _ in 0..s.config.algebra.cases {
        let (p, q, r) = (biquaternion(&mut rng), biquaternion(&mut rng), biquaternion(&mut rng));
        let scale3 = 1.0 + bq_norm(p) * bq_norm(q) * bq_norm(r);
        bump(&mut w.bq_assoc, ((p * q) * r).max_abs_diff(&(p * (q * r))) / scale3);
        let scale2 = 1.0 + bq_norm(p) * bq_norm(q);
        bump(&mut w.bq_conj, (p * q).conj().max_abs_diff(&(q.conj() * p.conj())) / scale2);
        let qq = q * q.conj();
        let vec_part = qq.vector_part().iter().map(|c| c.norm()).fold(0.0, f64::max);
        let form_gap = (qq.scalar_part() - q.quadratic_form()).norm();
        bump(&mut w.bq_scalar, vec_part.max(form_gap) / (1.0 + q.norm_sqr()));
        if let Ok(inv) = q.inverse() {
            let scale = 1.0 + bq_norm(q) * bq_norm(inv);
            let err = (q * inv).max_abs_diff(&Biquaternion::ONE).max((inv * q).max_abs_diff(&Biquaternion::ONE));
            bump(&mut w.bq_inverse, err / scale);
        }
        // M^p M^q = M^{qp}
        let nested = right_mul(p).apply(right_mul(q).apply(r));
        let composed = right_mul(p).compose(&right_mul(q)).apply(r);
        bump(
            &mut w.bq_right_mul,
            nested.max_abs_diff(&(r * (q * p))).max(composed.max_abs_diff(&nested)) / scale3,
        );

        let (a, b, c) = (hyperbolic(&mut rng), hyperbolic(&mut rng), hyperbolic(&mut rng));
        let hs = 1.0 + a.norm() * b.norm() * c.norm();
        let assoc = ((a * b) * c - a * (b * c)).norm().max((a * b - b * a).norm());
        bump(&mut w.hyp_assoc, assoc / hs);
        if let Ok(inv) = a.inverse() {
            bump(&mut w.hyp_inverse, (a * inv - Hyperbolic::ONE).norm() / (1.0 + a.norm() * inv.norm()));
        }

        let (x, y, z) = (bicomplex(&mut rng), bicomplex(&mut rng), bicomplex(&mut rng));
        let bs = 1.0 + FieldValue::norm(&x) * FieldValue::norm(&y) * FieldValue::norm(&z);
        bump(&mut w.bc_assoc, bc_diff((x * y) * z, x * (y * z)).max(bc_diff(x * y, y * x)) / bs);
        // W = w1 + w2 e1 multiplies like a complex number over the hyperbolic numbers
        let ((x1, x2), (y1, y2)) = (x.split(), y.split());
        let via_split = Bicomplex::join(x1 * y1 - x2 * y2, x1 * y2 + x2 * y1);
        let round_trip = bc_diff(Bicomplex::join(x1, x2), x);
        bump(&mut w.bc_split, bc_diff(via_split, x * y).max(round_trip) / (1.0 + FieldValue::norm(&x) * FieldValue::norm(&y)));
    }

    let mut report = Report::new();
    for (id, anchor, v) in [
        ("algebra.biquaternion.associativity", "biquaternion-product", w.bq_assoc),
        ("algebra.biquaternion.conjugation", "conjugate-of-product-reverses-order", w.bq_conj),
        ("algebra.biquaternion.norm-scalar", "q-times-conjugate-is-scalar", w.bq_scalar),
        ("algebra.biquaternion.inverse", "inverse-of-non-zero-divisor", w.bq_inverse),
        ("algebra.biquaternion.right-multiplication", "right-multiplication-operator", w.bq_right_mul),
        ("algebra.hyperbolic.associativity", "hyperbolic-product", w.hyp_assoc),
        ("algebra.hyperbolic.inverse", "hyperbolic-inverse", w.hyp_inverse),
        ("algebra.bicomplex.associativity", "bicomplex-product", w.bc_assoc),
        ("algebra.bicomplex.split", "bicomplex-split-into-hyperbolic-pair", w.bc_split),
    ] {
        report.at_most(id, anchor, None, v, tol);
    }

    // detection uses the same relative threshold as every inverse in the library
    let i = Complex64::new(0.0, 1.0);
    let q = Biquaternion::ONE + i * Biquaternion::unit(1);
    let rel = q.quadratic_form().norm() / (1.0 + q.norm_sqr());
    let detected = q.is_zero_divisor() && q.inverse().is_err();
    report.at_most(
        "algebra.zero-divisor.biquaternion",
        "one-plus-i-e1-is-a-zero-divisor",
        None,
        if detected { rel } else { f64::INFINITY },
        tol,
    );
    let h = Hyperbolic::ONE + Hyperbolic::J;
    let rel = h.modulus_sqr().abs() / (1.0 + h.u * h.u + h.v * h.v);
    let detected = h.is_zero_divisor() && h.inverse().is_err();
    report.at_most(
        "algebra.zero-divisor.hyperbolic",
        "one-plus-j-is-a-zero-divisor",
        None,
        if detected { rel } else { f64::INFINITY },
        tol,
    );
    Ok(report)
}
