mod common;

use altwalk::eigen::eigh;
use altwalk::experiments::{coherence_series, STRONG_LOCALIZATION, WEAK_LOCALIZATION};
use altwalk::observables::{coherence_norm, coherence_norm_capped, coherence_operator, trace_norm};
use altwalk::{evolve, WalkError, WalkParams, WalkerState};
use num_complex::Complex64;

fn flat(m: &altwalk::DensityMatrix) -> Vec<Complex64> {
    m.entries.iter().copied().collect()
}

#[test]
fn spectrum_matches_jacobi_oracle() {
    for (px, py) in [STRONG_LOCALIZATION, WEAK_LOCALIZATION, (1.1, 2.9)] {
        for steps in [2usize, 4, 5] {
            let d = coherence_operator(&evolve(&WalkParams::new(steps, px, py)).unwrap()).unwrap();
            let n = d.dim();
            let ours = d.eigenvalues().unwrap();
            let oracle = common::jacobi_eigenvalues(&flat(&d), n);
            for (a, b) in ours.iter().zip(&oracle) {
                assert!((a - b).abs() < 1e-10, "steps {steps}: {a} vs {b}");
            }
            let norm_oracle: f64 = oracle.iter().map(|l| l.abs()).sum();
            assert!((trace_norm(&d).unwrap() - norm_oracle).abs() < 1e-9);
        }
    }
}

#[test]
fn eigenpairs_of_coherence_operator_spot_checks() {
    for steps in [10usize, 20] {
        let d = coherence_operator(&evolve(&WalkParams::new(steps, STRONG_LOCALIZATION.0, 0.0)).unwrap()).unwrap();
        let n = d.dim();
        let a = flat(&d);
        let eig = eigh(&a, n).unwrap();
        let sum: f64 = eig.values.iter().sum();
        assert!(sum.abs() < 1e-8, "sum of eigenvalues {sum}");
        for k in (0..n).step_by(n / 7 + 1).chain([0, n - 1]) {
            let v = eig.vector(k).unwrap();
            let residual: f64 = (0..n)
                .map(|i| {
                    let av: Complex64 = (0..n).map(|j| a[i * n + j] * v[j]).sum();
                    (av - eig.values[k] * v[i]).norm_sqr()
                })
                .sum::<f64>()
                .sqrt();
            assert!(residual <= 1e-8, "steps {steps}, eigenpair {k}: residual {residual}");
        }
    }
}

#[test]
fn first_two_steps_by_hand() {
    let fresh = evolve(&WalkParams::new(0, 0.0, 0.0)).unwrap();
    assert!(coherence_norm(&fresh).unwrap().abs() <= 1e-12);
    let one = evolve(&WalkParams::new(1, 0.0, 0.0)).unwrap();
    let d = coherence_operator(&one).unwrap();
    let eigs = d.eigenvalues().unwrap();
    for (got, want) in eigs.iter().zip([-0.25, -0.25, 0.25, 0.25]) {
        assert!((got - want).abs() < 1e-14, "{eigs:?}");
    }
    assert!((coherence_norm(&one).unwrap() - 1.0).abs() <= 1e-9);
}

#[test]
fn product_states_have_zero_coherence_norm() {
    // psi(x, y, c) = f(x) g(y) chi(c)
    let f = [Complex64::new(0.3, 0.1), Complex64::new(-0.5, 0.2), Complex64::new(0.1, 0.7), Complex64::new(0.2, -0.2)];
    let g = [Complex64::new(0.9, 0.0), Complex64::new(0.1, -0.4), Complex64::new(0.0, 0.3), Complex64::new(-0.6, 0.6)];
    let chi = [Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)];
    let nf: f64 = f.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    let ng: f64 = g.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    let xs = [-3i64, -1, 1, 3];
    let mut sites = Vec::new();
    for (i, &x) in xs.iter().enumerate() {
        for (j, &y) in xs.iter().enumerate() {
            for (c, &k) in chi.iter().enumerate() {
                sites.push(((x, y, c), f[i] / nf * g[j] / ng * k));
            }
        }
    }
    let s = WalkerState::from_amplitudes(3, (3, 3), sites).unwrap();
    assert!((s.norm_sq() - 1.0).abs() < 1e-12);
    assert!(coherence_norm(&s).unwrap().abs() <= 1e-9);
}

#[test]
fn series_head_and_trace() {
    let params = WalkParams::new(0, STRONG_LOCALIZATION.0, 0.0);
    let series = coherence_series(&params, 12, 2500).unwrap();
    assert_eq!(series.len(), 13);
    assert!(series[0].1.abs() <= 1e-12);
    assert!((series[1].1 - 1.0).abs() <= 1e-9);
    assert!(series.iter().all(|&(_, c)| c >= 0.0));
    for (t, c) in &series {
        let s = evolve(&WalkParams::new(*t, STRONG_LOCALIZATION.0, 0.0)).unwrap();
        assert_eq!(*c, coherence_norm(&s).unwrap());
    }
}

#[test]
fn dimension_cap_is_enforced_with_guidance() {
    let s = evolve(&WalkParams::new(50, 0.0, 0.0)).unwrap();
    let err = coherence_norm(&s).unwrap_err();
    assert!(matches!(err, WalkError::DimensionCap { dim: 2601, cap: 2500 }));
    assert!(err.to_string().contains("raise the cap"));
    assert!(coherence_series(&WalkParams::new(0, 0.0, 0.0), 50, 2500).is_err());
    let small = evolve(&WalkParams::new(3, 0.0, 0.0)).unwrap();
    assert!(coherence_norm_capped(&small, 16).is_ok());
}
