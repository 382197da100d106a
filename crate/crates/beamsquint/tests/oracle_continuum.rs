//! Independent oracles for the continuum spectra: a dense-array subspace
//! iteration, a two-dimensional tensor-grid Nystrom solver, and plain
//! composite quadrature, kept free of the library's own reduction and
//! special-function code.

use beamsquint::continuum::{
    beamspace_limit_gain, default_nodes, discretization_error, polarization_count,
    sandwich_bounds, ula_kernel_spectrum, upa_reduced_spectrum, upa_weight_profile,
};
use beamsquint::geometry::{squint_factor, ArrayGeometry, BandSpec, Direction, SquintFactor};
use nalgebra::DMatrix;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Engineers a squint factor with the requested dispersion vector.
fn sf_of(alpha_x: f64, alpha_y: f64) -> SquintFactor<f64> {
    let c = 299_792_458.0;
    let w = 1e9;
    let band = BandSpec::new(10e9, w).unwrap();
    let norm = alpha_x.hypot(alpha_y);
    let dir = Direction::new(0.9 * alpha_x / norm, 0.9 * alpha_y / norm).unwrap();
    let aperture = norm * c / (0.9 * w);
    let geom = ArrayGeometry::new(16, 16, aperture / 16.0, aperture / 16.0).unwrap();
    squint_factor(&geom, &dir, &band)
}

#[test]
fn top_kernel_eigenvalue_pinned_by_dense_discretization() {
    // oracle: lambda_0 of the 4096-element sinc matrix by block subspace
    // iteration, rescaled by alpha/N; shares nothing with the Nystrom path
    let n = 4096_usize;
    let alpha = 4.0;
    let b = DMatrix::<f64>::from_fn(n, n, |i, j| {
        let d = (i as f64 - j as f64) * alpha / n as f64;
        if i == j {
            1.0
        } else {
            (std::f64::consts::PI * d).sin() / (std::f64::consts::PI * d)
        }
    });
    let block = 6;
    let mut q = DMatrix::<f64>::from_fn(n, block, |i, j| {
        ((i * (j + 3) + 1) as f64 * 0.7391).sin()
    });
    for _ in 0..60 {
        q = &b * q;
        q = q.qr().q();
    }
    let small = q.transpose() * (&b * &q);
    let mut evs: Vec<f64> = small.symmetric_eigenvalues().iter().copied().collect();
    evs.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let lam0_dense = evs[0] * alpha / n as f64;

    let lam0_nystrom = ula_kernel_spectrum(alpha, 200).unwrap().eigenvalue(0);
    assert!(
        (lam0_dense - lam0_nystrom).abs() < 1e-8,
        "dense {lam0_dense} vs nystrom {lam0_nystrom}"
    );
    // frozen value, cross-checked against the dense oracle above
    assert!((lam0_nystrom - 0.999_942_753_4).abs() < 1e-9);
}

/// Two-dimensional tensor-grid Nystrom eigenvalues of the planar kernel
/// `sin(pi |a| p)/(pi p)` with `p` the projection of `r - r'` onto the
/// dispersion direction; test-only, independent of the 1-D reduction.
fn tensor2d_spectrum(alpha_x: f64, alpha_y: f64, n1d: usize) -> Vec<f64> {
    let rule = beamsquint::quad::GaussLegendre::<f64>::new(n1d).unwrap();
    let (xs, ws) = rule.mapped(-0.5, 0.5);
    let norm = alpha_x.hypot(alpha_y);
    let m = n1d * n1d;
    let mut proj = Vec::with_capacity(m);
    let mut weight = Vec::with_capacity(m);
    for i in 0..n1d {
        for j in 0..n1d {
            proj.push((alpha_x * xs[i] + alpha_y * xs[j]) / norm);
            weight.push((ws[i] * ws[j]).sqrt());
        }
    }
    let a = DMatrix::<f64>::from_fn(m, m, |r, c| {
        let d = proj[r] - proj[c];
        let k = if d.abs() < 1e-14 {
            norm
        } else {
            (std::f64::consts::PI * norm * d).sin() / (std::f64::consts::PI * d)
        };
        weight[r] * weight[c] * k
    });
    let mut evs: Vec<f64> = a.symmetric_eigenvalues().iter().copied().collect();
    evs.sort_by(|x, y| y.partial_cmp(x).unwrap());
    evs
}

#[test]
fn reduction_matches_tensor_nystrom() {
    let mut rng = StdRng::seed_from_u64(2024);
    let mut cases = vec![(3.0, 4.0), (2.0, 2.0), (0.4, 0.3)];
    for _ in 0..3 {
        let norm = rng.gen_range(0.5..8.0);
        let angle = rng.gen_range(0.05..std::f64::consts::FRAC_PI_2 - 0.05);
        cases.push((norm * angle.cos(), norm * angle.sin()));
    }
    for (ax, ay) in cases {
        let sf = sf_of(ax, ay);
        let reduced = upa_reduced_spectrum(&sf, 200).unwrap();
        let tensor = tensor2d_spectrum(sf.alpha_x(), sf.alpha_y(), 36);
        for l in 0..10 {
            let rel = (reduced.eigenvalue(l) - tensor[l]).abs() / tensor[l].abs().max(1e-9);
            assert!(rel < 1e-4, "alpha=({ax:.2},{ay:.2}) l={l}: rel={rel:.2e}");
        }
    }
}

#[test]
fn sandwich_contains_true_eigenvalues_for_random_triples() {
    let mut rng = StdRng::seed_from_u64(31337);
    for trial in 0..100 {
        let norm = rng.gen_range(0.5..6.0);
        let angle = rng.gen_range(0.0..std::f64::consts::FRAC_PI_2);
        let (ax, ay) = (norm * angle.cos(), norm * angle.sin());
        if ax.abs() < 1e-6 && ay.abs() < 1e-6 {
            continue;
        }
        let sf = sf_of(ax.max(1e-4), ay.max(1e-4));
        let delta = rng.gen_range(0.0..=1.0);
        let ell = rng.gen_range(0..8usize);
        let (lo, up) = sandwich_bounds(&sf, delta, ell, 160).unwrap();
        let truth = upa_reduced_spectrum(&sf, 200).unwrap().eigenvalue(ell);
        assert!(
            lo - 1e-6 <= truth && truth <= up + 1e-6,
            "trial {trial}: alpha=({ax:.3},{ay:.3}) delta={delta:.3} l={ell}: \
             {lo:.6} <= {truth:.6} <= {up:.6}"
        );
    }
}

#[test]
fn polarization_counts_track_alpha() {
    for alpha in [4.0_f64, 16.0, 64.0] {
        let spec = ula_kernel_spectrum(alpha, default_nodes(alpha)).unwrap();
        let count = polarization_count(&spec, 0.5).unwrap() as f64;
        let slack = 2.0 + 2.0 * alpha.ln();
        assert!(
            (count - alpha).abs() <= slack,
            "alpha={alpha}: count={count}, slack={slack:.2}"
        );
    }
    // the eps = 0.5 crossing widens only logarithmically
    let c16 = polarization_count(&ula_kernel_spectrum(16.0, 300).unwrap(), 0.5).unwrap() as f64;
    let c64 = polarization_count(&ula_kernel_spectrum(64.0, 700).unwrap(), 0.5).unwrap() as f64;
    assert!((c64 - 64.0).abs() <= (c16 - 16.0).abs() + 2.0 + 2.0 * (64.0_f64 / 16.0).ln());
}

#[test]
fn beamspace_limit_agrees_with_composite_quadrature() {
    // oracle: plain Simpson over each window of sinc^2
    let simpson = |a: f64, b: f64| {
        let n = 4000;
        let h = (b - a) / n as f64;
        let f = |t: f64| {
            if t.abs() < 1e-12 {
                1.0
            } else {
                let s = (std::f64::consts::PI * t).sin() / (std::f64::consts::PI * t);
                s * s
            }
        };
        let mut acc = f(a) + f(b);
        for i in 1..n {
            acc += if i % 2 == 1 { 4.0 } else { 2.0 } * f(a + h * i as f64);
        }
        acc * h / 3.0
    };
    let (alpha, n_rf) = (4.0, 4usize);
    let mut direct = 0.0;
    for ell in 0..n_rf {
        let c = ell as f64 - (n_rf - 1) as f64 / 2.0;
        direct += simpson(c - alpha / 2.0, c + alpha / 2.0);
    }
    direct /= alpha;
    let lib = beamspace_limit_gain(alpha, n_rf).unwrap();
    assert!((lib - direct).abs() < 1e-6, "{lib} vs {direct}");
}

#[test]
fn beamspace_limit_matches_min_p_one_at_alpha_64() {
    for (p, tol) in [(0.5, 0.02), (1.0, 0.02), (2.0, 0.02)] {
        let n_rf = (p * 64.0_f64).ceil() as usize;
        let v = beamspace_limit_gain(64.0, n_rf).unwrap();
        assert!(
            (v - p.min(1.0)).abs() < tol,
            "p={p}: {v} vs {}",
            p.min(1.0)
        );
    }
}

#[test]
fn discretization_error_shrinks_with_n_and_blows_up_at_alpha_near_n() {
    let c = 299_792_458.0;
    let err_of = |alpha: f64, n: usize| {
        let w = 2e9;
        let d = alpha * c / (w * n as f64);
        let geom = ArrayGeometry::ula(n, d).unwrap();
        let band = BandSpec::new(4e9, w).unwrap();
        let dir = Direction::new(1.0, 0.0).unwrap();
        discretization_error(&geom, &dir, &band, 200).unwrap()
    };
    // decreasing in N at fixed alpha
    let e = [err_of(1.0, 32), err_of(1.0, 64), err_of(1.0, 128)];
    assert!(e[0] > e[1] && e[1] > e[2], "{e:?}");
    // valid regime stays tight
    assert!(err_of(4.0, 128) < 1e-3);
    // alpha approaching N degrades the continuum representation
    let valid = err_of(4.0, 16);
    let edge = err_of(15.5, 16);
    assert!(edge > 100.0 * valid, "valid={valid:.2e} edge={edge:.2e}");
    let ramp = [err_of(4.0, 16), err_of(8.0, 16), err_of(12.0, 16), err_of(15.0, 16)];
    assert!(ramp.windows(2).all(|p| p[0] < p[1]), "{ramp:?}");
}

#[test]
fn kernel_eigenvalues_nondecreasing_in_alpha() {
    // domain inclusion after rescaling makes each lambda_ell monotone
    let alphas = [0.5, 1.0, 2.0, 3.0, 5.0, 8.0];
    let specs: Vec<_> = alphas
        .iter()
        .map(|&a| ula_kernel_spectrum(a, 160).unwrap())
        .collect();
    for ell in 0..6 {
        for w in specs.windows(2) {
            assert!(
                w[0].eigenvalue(ell) <= w[1].eigenvalue(ell) + 1e-9,
                "ell={ell}"
            );
        }
    }
}

#[test]
fn weight_profile_integrates_to_one_under_quadrature() {
    let mut rng = StdRng::seed_from_u64(5150);
    for _ in 0..10 {
        let sf = sf_of(rng.gen_range(0.2..5.0), rng.gen_range(0.2..5.0));
        let w = upa_weight_profile(&sf).unwrap();
        let l1 = w.breakpoints()[3].0 * 2.0;
        let n = 20_000;
        let h = l1 / n as f64;
        let mut acc = 0.0;
        for i in 0..n {
            acc += w.eval(-l1 / 2.0 + (i as f64 + 0.5) * h) * h;
        }
        assert!((acc - 1.0).abs() < 1e-6);
    }
}
