//! Dense Hermitian eigensolver.
//!
//! Two stages:
//!
//! 1. Householder reduction `A = Q T Q^H` with `T` real symmetric
//!    tridiagonal. Reflector `k` is `H_k = I - tau_k v_k v_k^H` with
//!    `v_k[k + 1] = 1`; it is chosen so that the subdiagonal entry it
//!    produces is real, which makes `T` real without an extra diagonal
//!    phase transform (same scheme as LAPACK `zhetd2`, lower storage).
//! 2. Implicit-shift QL iteration on `T` (the EISPACK `tql2` recurrence),
//!    optionally accumulating the rotations into the eigenvectors of `T`,
//!    which are then mapped back through `Q`.
//!
//! Matrices are row-major `n x n` slices.

use num_complex::Complex64;

use crate::error::WalkError;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Eigenvalues (ascending) and, optionally, eigenvectors as columns of a
/// row-major `n x n` matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: Option<Vec<Complex64>>,
    n: usize,
}

impl HermitianEigen {
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Eigenvector `k` as a dense vector.
    pub fn vector(&self, k: usize) -> Option<Vec<Complex64>> {
        let v = self.vectors.as_ref()?;
        Some((0..self.n).map(|i| v[i * self.n + k]).collect())
    }
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn eigenvalues(matrix: &[Complex64], n: usize) -> Result<Vec<f64>, WalkError> {
    Ok(decompose(matrix, n, false)?.values)
}

/// Full eigendecomposition of a Hermitian matrix.
pub fn eigh(matrix: &[Complex64], n: usize) -> Result<HermitianEigen, WalkError> {
    decompose(matrix, n, true)
}

fn decompose(matrix: &[Complex64], n: usize, want_vectors: bool) -> Result<HermitianEigen, WalkError> {
    if matrix.len() != n * n {
        return Err(WalkError::InvalidInput(format!(
            "matrix has {} entries, expected {n}x{n}",
            matrix.len()
        )));
    }
    if n == 0 {
        return Ok(HermitianEigen { values: vec![], vectors: want_vectors.then(Vec::new), n });
    }
    let mut a = matrix.to_vec();
    let (mut diag, mut off, taus) = tridiagonalize(&mut a, n);

    let mut z = if want_vectors {
        let mut z = vec![0.0; n * n];
        for i in 0..n {
            z[i * n + i] = 1.0;
        }
        Some(z)
    } else {
        None
    };
    tql(&mut diag, &mut off, z.as_deref_mut(), n)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();

    let vectors = z.map(|z| {
        let mut out = vec![ZERO; n * n];
        for (col, &src) in order.iter().enumerate() {
            let mut v: Vec<Complex64> = (0..n).map(|i| Complex64::new(z[i * n + src], 0.0)).collect();
            apply_q(&a, &taus, n, &mut v);
            for i in 0..n {
                out[i * n + col] = v[i];
            }
        }
        out
    });

    Ok(HermitianEigen { values, vectors, n })
}

/// Reduces `a` in place. On return the strictly lower part of column `k`
/// below row `k + 1` holds `v_k` (its leading 1 implicit). Returns the
/// diagonal, the subdiagonal (`off[k] = T[k + 1][k]`, last entry 0) and the
/// reflector scalars.
fn tridiagonalize(a: &mut [Complex64], n: usize) -> (Vec<f64>, Vec<f64>, Vec<Complex64>) {
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n];
    let mut taus = vec![ZERO; n.saturating_sub(1)];
    let mut v = vec![ZERO; n];
    let mut w = vec![ZERO; n];

    for k in 0..n.saturating_sub(1) {
        let m = n - k - 1;
        let alpha = a[(k + 1) * n + k];
        let xnorm_sq: f64 = ((k + 2)..n).map(|i| a[i * n + k].norm_sqr()).sum();

        let (tau, beta) = if xnorm_sq == 0.0 && alpha.im == 0.0 {
            (ZERO, alpha.re)
        } else {
            let norm = (alpha.norm_sqr() + xnorm_sq).sqrt();
            let beta = if alpha.re >= 0.0 { -norm } else { norm };
            let tau = Complex64::new((beta - alpha.re) / beta, -alpha.im / beta);
            let scale = (alpha - beta).inv();
            for i in (k + 2)..n {
                a[i * n + k] *= scale;
            }
            (tau, beta)
        };
        off[k] = beta;
        taus[k] = tau;

        if tau != ZERO {
            // v over indices k+1..n, relative offset j = i - (k + 1)
            v[0] = Complex64::new(1.0, 0.0);
            for j in 1..m {
                v[j] = a[(k + 1 + j) * n + k];
            }
            // w = tau * A22 v
            for r in 0..m {
                let row = &a[(k + 1 + r) * n + k + 1..(k + 1 + r) * n + n];
                let s: Complex64 = row.iter().zip(&v[..m]).map(|(x, y)| x * y).sum();
                w[r] = tau * s;
            }
            // w -= (tau / 2) (w^H v) v
            let wv: Complex64 = w[..m].iter().zip(&v[..m]).map(|(x, y)| x.conj() * y).sum();
            let corr = -0.5 * tau * wv;
            for j in 0..m {
                w[j] += corr * v[j];
            }
            // A22 -= v w^H + w v^H
            for r in 0..m {
                let (vr, wr) = (v[r], w[r]);
                let row = &mut a[(k + 1 + r) * n + k + 1..(k + 1 + r) * n + n];
                for (cidx, entry) in row.iter_mut().enumerate() {
                    *entry -= vr * w[cidx].conj() + wr * v[cidx].conj();
                }
            }
        }
        diag[k] = a[k * n + k].re;
    }
    diag[n - 1] = a[(n - 1) * n + n - 1].re;
    (diag, off, taus)
}

/// `y <- Q y` with `Q = H_0 H_1 ... H_{n-2}`.
fn apply_q(a: &[Complex64], taus: &[Complex64], n: usize, y: &mut [Complex64]) {
    for k in (0..taus.len()).rev() {
        let tau = taus[k];
        if tau == ZERO {
            continue;
        }
        // v^H y over indices k+1..n
        let mut s = y[k + 1];
        for i in (k + 2)..n {
            s += a[i * n + k].conj() * y[i];
        }
        let f = tau * s;
        y[k + 1] -= f;
        for i in (k + 2)..n {
            y[i] -= f * a[i * n + k];
        }
    }
}

/// Implicit QL on the symmetric tridiagonal `(d, e)` with `e[i] = T[i+1][i]`.
/// Eigenvalues replace `d`; rotations are accumulated into `z` when given.
fn tql(d: &mut [f64], e: &mut [f64], mut z: Option<&mut [f64]>, n: usize) -> Result<(), WalkError> {
    let eps = f64::EPSILON;
    let max_iter = 60 * n.max(1);
    let mut shift_total = 0.0;
    let mut tst1: f64 = 0.0;
    let mut iterations = 0usize;

    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        // e[n-1] is always 0, so m < n here
        if m > l {
            loop {
                iterations += 1;
                if iterations > max_iter {
                    return Err(WalkError::NoConvergence { dim: n });
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let h = g - d[l];
                for di in d.iter_mut().take(n).skip(l + 2) {
                    *di -= h;
                }
                shift_total += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    let h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if let Some(z) = z.as_deref_mut() {
                        for k in 0..n {
                            let row = k * n;
                            let zh = z[row + i + 1];
                            z[row + i + 1] = s * z[row + i] + c * zh;
                            z[row + i] = c * z[row + i] - s * zh;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += shift_total;
        e[l] = 0.0;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Deterministic pseudo-random Hermitian matrix.
    fn hermitian(n: usize, seed: u64) -> Vec<Complex64> {
        let mut state = seed;
        let mut next = || {
            state = crate::evolution::mix64(state.wrapping_add(0x9e37_79b9_7f4a_7c15));
            crate::evolution::unit_interval(state) * 2.0 - 1.0
        };
        let mut a = vec![ZERO; n * n];
        for i in 0..n {
            a[i * n + i] = c(next(), 0.0);
            for j in 0..i {
                let z = c(next(), next());
                a[i * n + j] = z;
                a[j * n + i] = z.conj();
            }
        }
        a
    }

    fn residual(a: &[Complex64], n: usize, eig: &HermitianEigen) -> f64 {
        let mut worst: f64 = 0.0;
        for k in 0..n {
            let v = eig.vector(k).unwrap();
            for i in 0..n {
                let av: Complex64 = (0..n).map(|j| a[i * n + j] * v[j]).sum();
                worst = worst.max((av - eig.values[k] * v[i]).norm());
            }
        }
        worst
    }

    #[test]
    fn two_by_two_closed_form() {
        // [[1, i], [-i, 1]] has eigenvalues 0 and 2
        let a = vec![c(1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(1.0, 0.0)];
        let vals = eigenvalues(&a, 2).unwrap();
        assert!((vals[0] - 0.0).abs() < 1e-14);
        assert!((vals[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn diagonal_and_trivial_sizes() {
        assert!(eigenvalues(&[], 0).unwrap().is_empty());
        assert_eq!(eigenvalues(&[c(3.5, 0.0)], 1).unwrap(), vec![3.5]);
        let a = vec![c(2.0, 0.0), ZERO, ZERO, ZERO, c(-1.0, 0.0), ZERO, ZERO, ZERO, c(0.5, 0.0)];
        assert_eq!(eigenvalues(&a, 3).unwrap(), vec![-1.0, 0.5, 2.0]);
        assert!(eigenvalues(&a, 2).is_err());
    }

    #[test]
    fn random_matrices_satisfy_eigen_equation() {
        for (n, seed) in [(3, 1), (8, 2), (17, 3), (40, 4)] {
            let a = hermitian(n, seed);
            let eig = eigh(&a, n).unwrap();
            assert!(residual(&a, n, &eig) < 1e-12, "n = {n}");
            let trace: f64 = (0..n).map(|i| a[i * n + i].re).sum();
            let sum: f64 = eig.values.iter().sum();
            assert!((trace - sum).abs() < 1e-12);
            assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
            let vals = eigenvalues(&a, n).unwrap();
            for (x, y) in vals.iter().zip(&eig.values) {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn eigenvectors_are_orthonormal() {
        let n = 12;
        let a = hermitian(n, 99);
        let eig = eigh(&a, n).unwrap();
        for p in 0..n {
            let vp = eig.vector(p).unwrap();
            for q in 0..n {
                let vq = eig.vector(q).unwrap();
                let dot: Complex64 = vp.iter().zip(&vq).map(|(x, y)| x.conj() * y).sum();
                let expect = if p == q { 1.0 } else { 0.0 };
                assert!((dot - expect).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn degenerate_spectrum() {
        // rank-2 projector plus identity: eigenvalues {1, 1, 2, 2}
        let n = 4;
        let u = [c(0.5, 0.0), c(0.0, 0.5), c(-0.5, 0.0), c(0.0, -0.5)];
        let w = [c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0)];
        let mut a = vec![ZERO; n * n];
        for i in 0..n {
            a[i * n + i] += 1.0;
            for j in 0..n {
                a[i * n + j] += u[i] * u[j].conj() + w[i] * w[j].conj();
            }
        }
        let vals = eigenvalues(&a, n).unwrap();
        for (got, want) in vals.iter().zip([1.0, 1.0, 2.0, 2.0]) {
            assert!((got - want).abs() < 1e-13, "{vals:?}");
        }
    }
}
