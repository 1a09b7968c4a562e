//! Cross-module properties exercised through the public API.

use fracdim::clifford::build_gammas;
use fracdim::dixmier::{action_prediction, dixmier_partial_sums};
use fracdim::fit::linear_fit;
use fracdim::triple::{self, read_triplets, write_triplets, ModeLattice};
use fracdim::zeta;
use fracdim::{DeformationParams64, DixmierFit64, LoopResult64, TripleOperator64};
use num_complex::Complex;
use proptest::prelude::*;

#[test]
fn deformed_block_norm_growth() {
    // ‖−γ·I(1+|I|²)^{−α}‖ ~ |I|^{1−2α}
    for &a in &[-0.3, 0.1, 0.3] {
        let p = DeformationParams64::new(2, a).unwrap();
        let rep = build_gammas::<f64>(2).unwrap();
        let lat = ModeLattice::new(2, 40).unwrap();
        let d = triple::build_deformed_dirac(&lat, &rep, &p).unwrap();
        let (mut x, mut y) = (Vec::new(), Vec::new());
        for r in [10i64, 20, 30, 40] {
            x.push((r as f64).ln());
            y.push(d.block_at(&[r, 0], &[r, 0]).spectral_norm().ln());
        }
        let (_, slope, _) = linear_fit(&x, &y).unwrap();
        assert!((slope - (1.0 - 2.0 * a)).abs() < 0.01, "α={a}: slope {slope}");
    }
}

#[test]
fn undeformed_zeta_is_canonical() {
    for n in 1..=3usize {
        let p = DeformationParams64::new(n, 0.0).unwrap();
        for s in [n as f64 + 1.5, n as f64 + 3.0, 0.5] {
            let z = Complex::new(s, 0.0);
            let a = zeta::zeta_deformed(z, &p, zeta::DEFAULT_K_MAX).unwrap().value;
            let b = zeta::zeta_abs_dirac(z, n, true).unwrap().value;
            assert!((a - b).norm() <= 1e-10 * b.norm(), "n={n} s={s}: {a} vs {b}");
        }
    }
}

#[test]
fn leading_pole_sits_at_spectral_dimension() {
    for &(n, a) in &[(1usize, 0.2), (2, -0.2), (3, 0.15)] {
        let p = DeformationParams64::new(n, a).unwrap();
        let r = zeta::locate_deformed_pole(&p, 0, zeta::DEFAULT_K_MAX).unwrap();
        assert!((r.location - p.spectral_dimension()).abs() < 1e-8);
        let pred = zeta::predicted_residue(&p, 0);
        assert!((r.fitted_residue.re - pred).abs() < 1e-6 * pred.abs());
    }
}

#[test]
fn f32_instantiation_runs() {
    let p = fracdim::params::DeformationParams::<f32>::new(1, 0.25).unwrap();
    let pred = action_prediction(&[1], &p).unwrap();
    assert!(pred.value.is_finite() && pred.value > 0.0);
    let rep = build_gammas::<f32>(3).unwrap();
    let g = rep.gamma_dot(&[1.0, 2.0, 2.0]).unwrap();
    let sq = g.matmul(&g);
    assert!((sq[(0, 0)].re - 9.0).abs() < 1e-5);
}

#[test]
fn results_serialise() {
    let p = DeformationParams64::new(1, 0.1).unwrap();
    let fit: DixmierFit64 = dixmier_partial_sums(&[1], &p, &[8, 16, 32, 64]).unwrap();
    let v = serde_json::to_value(&fit).unwrap();
    assert_eq!(v["cutoffs"], serde_json::json!([8, 16, 32, 64]));
    let t: LoopResult64 = fracdim::loops::tadpole_closed(&p).unwrap();
    let v = serde_json::to_value(t).unwrap();
    assert_eq!(v["method"], "closed-form");
    assert_eq!(v["params"]["M"], 1.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn export_round_trip(n in 1usize..=2, a in -0.45f64..0.45, j in -2i64..=2) {
        let rep = build_gammas::<f64>(n).unwrap();
        let lat = ModeLattice::new(n, 4).unwrap();
        let mut shift = vec![0i64; n];
        shift[0] = j;
        let f = triple::FourierSeries::phase(&shift);
        let p = DeformationParams64::new(n, a).unwrap();
        let op: TripleOperator64 = triple::differential(&f, &p, &lat, &rep).unwrap();
        let mut buf = Vec::new();
        write_triplets(&op, &mut buf).unwrap();
        let back: TripleOperator64 = read_triplets(buf.as_slice()).unwrap();
        prop_assert_eq!(op.sub(&back).max_abs_interior(0), 0.0);
    }

    #[test]
    fn differential_is_bounded_in_cutoff(a in 0.0f64..0.45, j in 1i64..=2) {
        let rep = build_gammas::<f64>(1).unwrap();
        let f = triple::FourierSeries::phase(&[j]);
        let p = DeformationParams64::new(1, a).unwrap();
        let norm = |cut: usize| {
            let lat = ModeLattice::new(1, cut).unwrap();
            triple::differential(&f, &p, &lat, &rep).unwrap().interior_operator_norm(f.support_radius())
        };
        prop_assert!(norm(16) <= norm(8) + 1e-10);
    }
}
