//! Inequality checkers on inputs with hand-computed norms.

use std::f64::consts::PI;

use aqg::init::cosine;
use aqg::norms::{
    check_commutator, check_embedding, check_interpolation, check_product, check_riesz_bound, commutator_kernel,
    commutator_kernel_scan, Corpus, Flavor, ProductVariant,
};
use aqg::spectral::{Axis, GridSpec};

fn g() -> GridSpec {
    GridSpec::square(32).unwrap()
}

#[test]
fn embedding_on_a_cosine() {
    // ∫cos⁴x₁ over the box is (3/8)(2π)², so ‖cos x₁‖_{L⁴} = (3π²/2)^{1/4};
    // ‖|∇|^{1/2} cos x₁‖ = ‖cos x₁‖ = √2 π.
    let r = check_embedding(&cosine(g(), Axis::X1, 1, 1.0), 0.5, 4.0).unwrap();
    assert!((r.lhs - (1.5 * PI * PI).powf(0.25)).abs() < 1e-13);
    assert!((r.rhs - 2f64.sqrt() * PI).abs() < 1e-13);
}

#[test]
fn product_of_equal_cosines() {
    // cos²x₁ = 1/2 + cos(2x₁)/2; its Ḣ^{1/2} norm is √2 · (√2π/2) = π.
    let f = cosine(g(), Axis::X1, 1, 1.0);
    let r = check_product(&f, &f, 0.75, 0.75, ProductVariant::Symmetric).unwrap();
    assert!((r.lhs - PI).abs() < 1e-13);
    assert!((r.rhs - 2.0 * 2.0 * PI * PI).abs() < 1e-12);
    assert!(check_product(&f, &f, 1.0, 0.5, ProductVariant::Symmetric).is_err());
    assert!(check_product(&f, &f, 0.5, 1.5, ProductVariant::Asymmetric).is_err());
}

#[test]
fn riesz_is_an_isometry_on_a_single_direction() {
    let r = check_riesz_bound(&cosine(g(), Axis::X2, 3, 1.0), 2.0).unwrap();
    assert!((r.ratio - 1.0).abs() < 1e-14);
    assert!(r.holds_with_constant_one);
    assert!(check_riesz_bound(&cosine(g(), Axis::X2, 3, 1.0), 1.0).is_err());
}

#[test]
fn interpolation_endpoints_are_equalities() {
    let f = Corpus::new(3, 1, 6.0).field(g(), 0);
    for z in [0.0, 1.0] {
        let r = check_interpolation(&f, Axis::X1, 1.0, 0.3, 1.3, z, Flavor::Inhomogeneous).unwrap();
        assert!((r.ratio - 1.0).abs() < 1e-14, "z={z}: {r:?}");
    }
    assert!(check_interpolation(&f, Axis::X1, 1.0, 0.3, 0.3, 0.5, Flavor::Inhomogeneous).is_err());
}

#[test]
fn interpolation_on_a_single_mode_is_sharp() {
    // One mode: every side is a power of |ξ₂|, so equality for every z.
    let f = cosine(g(), Axis::X2, 2, 1.0);
    for z in [0.25, 0.5, 0.75] {
        let r = check_interpolation(&f, Axis::X2, 0.5, 0.2, 1.7, z, Flavor::Homogeneous).unwrap();
        assert!((r.ratio - 1.0).abs() < 1e-14);
        assert!(r.holds_with_constant_one);
    }
}

#[test]
fn commutator_bounded_on_a_cosine() {
    let f = cosine(GridSpec::square(16).unwrap(), Axis::X1, 1, 1.0);
    let c = check_commutator(&f, &f, 1.5, 0.5).unwrap();
    assert!(c.report.holds_with_constant_one);
    let kernel = c.kernel.expect("small grids get a kernel scan");
    assert!(kernel.holds());
}

#[test]
fn kernel_inequality_is_tight_on_the_axis() {
    // ξ = 2η on a line: lhs = (2^s - 1)|η|^s, rhs = s 2^{s-1} · 2|η|^s.
    let (lhs, rhs) = commutator_kernel((2.0, 0.0), (1.0, 0.0), 2.0);
    assert_eq!((lhs, rhs), (3.0, 8.0));
    let scan = commutator_kernel_scan(4, 1.5);
    assert_eq!(scan.pairs, 81 * 81);
    assert!(scan.holds());
}

#[test]
fn corpus_is_grid_independent() {
    let c = Corpus::new(7, 3, 5.0);
    let a = c.field(GridSpec::square(16).unwrap(), 2);
    let b = c.field(GridSpec::square(32).unwrap(), 2);
    assert!(a.resampled(*b.grid()).sub(&b).unwrap().max_abs_coeff() < 1e-15);
    assert!((a.l2_norm() - 1.0).abs() < 1e-14);
}
