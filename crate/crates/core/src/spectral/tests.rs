use super::*;
use crate::charfield::{omega_grid, Grid3};
use crate::linkmodel::{builtin_borromean, builtin_lpqr, builtin_unlink};
use core::f64::consts::{PI, TAU};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cz(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn random_form(rng: &mut ChaCha8Rng, degree: u8, m: usize) -> FourierForm {
    FourierForm::from_fn(degree, m, |_| [cz(rng), cz(rng), cz(rng)]).make_real()
}

/// Real, mean-zero, closed 2-form.
fn random_exact2(rng: &mut ChaCha8Rng, m: usize) -> FourierForm {
    random_form(rng, 2, m).hodge().exact
}

#[test]
fn dft_conventions() {
    let n = 16;
    let one = Grid3::from_fn(n, |_, _, _| 1.0);
    let f = analyze_scalar(&one, 0, 7).unwrap();
    assert!((f.c0()[0] - 1.0).norm() < 1e-15);
    assert!(f.coefficients().iter().enumerate().all(|(i, c)| i == f.coefficients().len() / 2 || c[0].norm() <= 1e-14));

    let cs = Grid3::from_fn(n, |i, _, _| (TAU * i as f64 / n as f64).cos());
    let f = analyze_scalar(&cs, 0, 7).unwrap();
    for m in [[1, 0, 0], [-1, 0, 0]] {
        assert!((f.get(m)[0] - 0.5).norm() < 1e-15, "{:?}", f.get(m));
    }
    assert!(f.get([0, 1, 0])[0].norm() < 1e-15);

    assert_eq!(analyze_scalar(&one, 0, 8), Err(crate::Error::AliasBound { nmax: 8, grid: 16 }));
}

#[test]
fn round_trip_on_band_limited_fields() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (n, m) in [(10, 4), (16, 7), (15, 5)] {
        let f = random_form(&mut rng, 1, m);
        let g = synthesize(&f, n);
        let back = analyze_vector([&g[0], &g[1], &g[2]], 1, m).unwrap();
        assert!(back.max_diff(&f) < 1e-12, "{}", back.max_diff(&f));
        // Values agree with direct evaluation.
        let x = [g[0].coord(3), g[0].coord(1), g[0].coord(n - 1)];
        let e = f.eval(x);
        assert!((e[1] - g[1].get(3, 1, n - 1)).abs() < 1e-12);
    }
}

#[test]
fn d_squared_vanishes() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..10 {
        for k in [0u8, 1] {
            let f = random_form(&mut rng, k, 5);
            let dd = f.d_op().unwrap().d_op().unwrap();
            assert!(dd.max_abs() < 1e-13);
        }
        for k in [2u8, 3] {
            let f = random_form(&mut rng, k, 5);
            let dd = f.delta_op().unwrap().delta_op().unwrap();
            assert!(dd.max_abs() < 1e-13);
        }
    }
    let f = FourierForm::zeros(3, 2);
    assert_eq!(f.d_op(), Err(crate::Error::BadDegree(3)));
    assert_eq!(FourierForm::zeros(0, 2).delta_op(), Err(crate::Error::BadDegree(0)));
}

#[test]
fn laplacian_is_d_delta_plus_delta_d() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in 0..=3u8 {
        let f = random_form(&mut rng, k, 4);
        let mut sum = FourierForm::zeros(k, 4);
        if k < 3 {
            sum = sum.add(&f.d_op().unwrap().delta_op().unwrap());
        }
        if k > 0 {
            sum = sum.add(&f.delta_op().unwrap().d_op().unwrap());
        }
        assert!(sum.max_diff(&f.laplacian_op()) < 1e-12, "degree {k}");
    }
}

#[test]
fn green_inverts_laplacian() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for k in 0..=3u8 {
        let f = random_form(&mut rng, k, 5).without_mean();
        let g = f.green_op().unwrap().laplacian_op();
        assert!(g.max_diff(&f) < 1e-13);
        let g = f.laplacian_op().green_op().unwrap();
        assert!(g.max_diff(&f) < 1e-13);
    }
    let f = random_form(&mut rng, 2, 3);
    assert_eq!(f.green_op(), Err(crate::Error::NonMeanZero));
}

#[test]
fn harmonic_forms() {
    let mut h = FourierForm::zeros(1, 3);
    h.set([0, 0, 0], [Complex64::new(1.0, 0.0), Complex64::new(-2.0, 0.0), Complex64::new(0.5, 0.0)]);
    assert_eq!(h.delta_op().unwrap().max_abs(), 0.0);
    assert_eq!(h.d_op().unwrap().max_abs(), 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let f = random_form(&mut rng, 2, 4);
    let har = f.hodge().harmonic;
    assert_eq!(har.d_op().unwrap().max_abs(), 0.0);
    assert_eq!(har.delta_op().unwrap().max_abs(), 0.0);
}

#[test]
fn hodge_orthogonality() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for k in 0..=3u8 {
        let f = random_form(&mut rng, k, 4);
        let h = f.hodge();
        let parts = [&h.exact, &h.harmonic, &h.coexact];
        let total = parts[0].add(parts[1]).add(parts[2]);
        assert!(total.max_diff(&f) < 1e-14);
        for i in 0..3 {
            for j in i + 1..3 {
                assert!(parts[i].inner(parts[j]).norm() < 1e-12, "degree {k}: {i} {j}");
            }
        }
        // Exact parts are closed; coexact parts are coclosed.
        if k < 3 {
            assert!(h.exact.d_op().unwrap().max_abs() < 1e-13);
        }
        if k > 0 {
            assert!(h.coexact.delta_op().unwrap().max_abs() < 1e-13);
        }
    }
    // A 1-form is closed iff cₙ ∥ n.
    let f = random_form(&mut rng, 1, 4).hodge().exact;
    for (i, c) in f.coefficients().iter().enumerate() {
        let n = f.mode(i).map(|v| v as f64);
        let cr = [c[1] * n[2] - c[2] * n[1], c[2] * n[0] - c[0] * n[2], c[0] * n[1] - c[1] * n[0]];
        assert!(cr.iter().all(|z| z.norm() < 1e-14));
    }
}

#[test]
fn operators_preserve_reality() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let f = random_form(&mut rng, 1, 4);
    assert!(f.is_real(1e-15));
    assert!(f.d_op().unwrap().is_real(1e-12));
    assert!(f.delta_op().unwrap().is_real(1e-12));
    let w = random_exact2(&mut rng, 4);
    assert!(w.is_real(1e-12));
    assert!(alpha_min(&w).unwrap().is_real(1e-12));
    assert!(w.without_mean().green_op().unwrap().is_real(1e-12));
}

#[test]
fn alpha_min_examples() {
    let mut w = FourierForm::zeros(2, 2);
    w.set([0, 0, 1], [Complex64::new(1.0, 0.0), Complex64::default(), Complex64::default()]);
    let a = alpha_min(&w).unwrap();
    let c = a.get([0, 0, 1]);
    assert_eq!(c, [Complex64::default(), Complex64::new(0.0, 1.0), Complex64::default()]);

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20 {
        let w = random_exact2(&mut rng, 5);
        let a = alpha_min(&w).unwrap();
        assert!(a.d_op().unwrap().max_diff(&w) < 1e-12);
        // Adding a nonzero closed 1-form gives another primitive of larger norm.
        let closed = random_form(&mut rng, 1, 5).hodge().exact.add(&random_form(&mut rng, 1, 5).hodge().harmonic);
        let other = a.add(&closed);
        assert!(other.d_op().unwrap().max_diff(&w) < 1e-12);
        assert!(a.l2_norm() < other.l2_norm());
    }
    let mut bad = random_exact2(&mut rng, 3);
    bad.set([0, 0, 0], [Complex64::new(0.1, 0.0), Complex64::default(), Complex64::default()]);
    assert_eq!(alpha_min(&bad), Err(crate::Error::NotExact));
    let coexact = random_form(&mut rng, 2, 3).hodge().coexact;
    assert_eq!(alpha_min(&coexact), Err(crate::Error::NotExact));
}

#[test]
fn wedge_is_pointwise_integral() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let a = random_form(&mut rng, 1, 3);
    let w = random_form(&mut rng, 2, 3);
    let n = 8;
    let (ga, gw) = (synthesize(&a, n), synthesize(&w, n));
    let mut acc = 0.0;
    for i in 0..n * n * n {
        acc += (0..3).map(|k| ga[k].values()[i] * gw[k].values()[i]).sum::<f64>();
    }
    let quad = acc * (TAU / n as f64).powi(3);
    let wi = wedge_integral(&a, &w).unwrap();
    assert!((wi.re - quad).abs() < 1e-10 && wi.im.abs() < 1e-12);
}

#[test]
fn formulas_one_and_three_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..100 {
        let w = random_exact2(&mut rng, 4);
        let m3 = mu_formula3(&w).unwrap();
        let m1 = mu_formula1(&w).unwrap();
        assert!((m1 - m3).abs() < 1e-10 * (1.0 + m3.abs()), "{m1} {m3}");
        // The complex route leaves no imaginary residue.
        let im = wedge_integral(&alpha_min(&w).unwrap(), &w).unwrap().im;
        assert!(im.abs() < 1e-12);
    }
    let z = FourierForm::zeros(2, 3);
    assert_eq!(mu_formula1(&z).unwrap(), 0.0);
    assert_eq!(mu_formula3(&z).unwrap(), 0.0);
}

#[test]
fn formula_two_matches_on_band_limited_fields() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let n = 12;
    for _ in 0..3 {
        let w = random_exact2(&mut rng, 5);
        let g = synthesize(&w, n);
        let m2 = mu_formula2_direct([&g[0], &g[1], &g[2]]).unwrap();
        let m3 = mu_formula3(&w).unwrap();
        assert!((m2 - m3).abs() < 1e-9 * (1.0 + m3.abs()), "{m2} {m3}");
    }
    let z = Grid3::from_fn(6, |_, _, _| 0.0);
    assert_eq!(mu_formula2_direct([&z, &z, &z]).unwrap(), 0.0);
    let big = Grid3::from_fn(17, |_, _, _| 0.0);
    assert_eq!(mu_formula2_direct([&big, &big, &big]), Err(crate::Error::GridTooLarge(17)));
}

#[test]
fn degrees_from_links() {
    let w = analyze(&omega_grid(&builtin_unlink(), 32), 15).unwrap();
    let d = degrees(&w).unwrap();
    assert_eq!(d.as_array(), [0, 0, 0]);
    assert!(d.residuals.iter().all(|r| *r < 1e-6));
    assert!(mu_formula3(&w).unwrap().abs() < 1e-3);

    let l = builtin_lpqr(2, 1, 1).unwrap();
    let w = analyze(&omega_grid(&l, 192), 4).unwrap();
    assert_eq!(degrees(&w).unwrap().as_array(), [2, 1, 1]);
    assert!(matches!(mu_formula3(&w), Err(crate::Error::NonzeroLinking { p: 2, q: 1, r: 1 })));
}

#[test]
fn swapping_components_negates_sum() {
    let l = builtin_borromean();
    let a = mu_sum3(&analyze(&omega_grid(&l, 24), 11).unwrap()).unwrap();
    let b = mu_sum3(&analyze(&omega_grid(&l.permuted([1, 0, 2]), 24), 11).unwrap()).unwrap();
    let c = mu_sum3(&analyze(&omega_grid(&l.permuted([1, 2, 0]), 24), 11).unwrap()).unwrap();
    assert!((a + b).abs() < 1e-10, "{a} {b}");
    assert!((a - c).abs() < 1e-10, "{a} {c}");
}

#[test]
fn phi_properties() {
    let n = 32;
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                acc += phi_eval([TAU * i as f64 / n as f64, TAU * j as f64 / n as f64, TAU * k as f64 / n as f64], 5);
            }
        }
    }
    assert!((acc / (n * n * n) as f64).abs() < 1e-12);

    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..20 {
        let x = [rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU)];
        assert_eq!(phi_eval(x, 4), phi_eval([-x[0], -x[1], -x[2]], 4));
    }

    let k = PhiKernel::new(6);
    assert_eq!(k.coefficient([0, 0, 0]), 0.0);
    assert!((k.coefficient([1, 2, 0]) - 1.0 / (5.0 * VOL)).abs() < 1e-18);
    let f = random_form(&mut rng, 0, 6).without_mean();
    assert!(k.convolve(&f).laplacian_op().max_diff(&f) < 1e-12);
    // Kernel series agrees with the evaluator.
    let x = [0.3, 1.9, 4.0];
    assert!((k.as_form().eval(x)[0] - k.eval(x)).abs() < 1e-14);
}

#[test]
fn phi_plot_closed_form() {
    let rows = phi_plot2d(1, 7);
    assert_eq!(rows.len(), 49);
    assert!(rows.iter().any(|r| r.0 == 0.0 && r.1 == 0.0));
    for (x, y, v) in rows {
        let want = (2.0 * x.cos() + 2.0 * y.cos() + 2.0 * x.cos() * y.cos()) / (4.0 * PI * PI);
        assert!((v - want).abs() < 1e-14);
    }
}
