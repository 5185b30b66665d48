//! Measured quantities: return probability, position distribution, walker
//! density matrices and the coherence norm.
//!
//! Density matrices are expressed on the parity sublattice: after `s` steps
//! only `x, y in {-s, -s + 2, ..., s}` carry amplitude, so each axis has
//! `s + 1` basis states and the two-walker matrix has `(s + 1)^2`.

use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::eigen;
use crate::error::WalkError;
use crate::lattice_state::{Axis, WalkerState};

/// Default largest dimension accepted by [`coherence_norm`], i.e. `t <= 49`.
pub const DEFAULT_DIMENSION_CAP: usize = 2500;

/// Basis labels of a [`DensityMatrix`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Basis {
    /// Positions along a single axis.
    Line(Vec<i64>),
    /// `(x, y)` pairs, `x` the slow index.
    Product { xs: Vec<i64>, ys: Vec<i64> },
}

impl Basis {
    pub fn len(&self) -> usize {
        match self {
            Basis::Line(v) => v.len(),
            Basis::Product { xs, ys } => xs.len() * ys.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    pub entries: Array2<Complex64>,
    pub basis: Basis,
}

impl DensityMatrix {
    pub fn new(entries: Array2<Complex64>, basis: Basis) -> Result<Self, WalkError> {
        let (r, c) = entries.dim();
        if r != c || r != basis.len() {
            return Err(WalkError::InvalidInput(format!(
                "{r}x{c} matrix does not match a basis of {} states",
                basis.len()
            )));
        }
        Ok(Self { entries, basis })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.diag().sum()
    }

    /// Largest `|A - A^H|` entry.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..=i {
                worst = worst.max((self.entries[[i, j]] - self.entries[[j, i]].conj()).norm());
            }
        }
        worst
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>, WalkError> {
        let n = self.dim();
        let flat: Vec<Complex64> = self.entries.iter().copied().collect();
        eigen::eigenvalues(&flat, n)
    }

    /// Kronecker product `self (x) other` on the product basis.
    pub fn kron(&self, other: &DensityMatrix) -> Result<DensityMatrix, WalkError> {
        let (Basis::Line(xs), Basis::Line(ys)) = (&self.basis, &other.basis) else {
            return Err(WalkError::InvalidInput(
                "kron expects two single-axis density matrices".into(),
            ));
        };
        let (na, nb) = (self.dim(), other.dim());
        let n = na * nb;
        let entries = Array2::from_shape_fn((n, n), |(r, c)| {
            self.entries[[r / nb, c / nb]] * other.entries[[r % nb, c % nb]]
        });
        DensityMatrix::new(entries, Basis::Product { xs: xs.clone(), ys: ys.clone() })
    }
}

/// Per-step observables of a run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub t: usize,
    pub p0: f64,
    /// Mean of `p0` over the even steps `2..=t`; absent for `t < 2`.
    pub p_bar: Option<f64>,
    pub c_norm: Option<f64>,
}

pub fn return_probability(state: &WalkerState) -> f64 {
    state.probability_at(0, 0).unwrap_or(0.0)
}

/// Mean of `p0[t]` over even `t` in `2..=T`, with `T = p0.len() - 1`.
pub fn average_return_probability(p0: &[f64]) -> Result<f64, WalkError> {
    let horizon = p0.len().saturating_sub(1);
    if p0.is_empty() || horizon < 2 || !horizon.is_multiple_of(2) {
        return Err(WalkError::InvalidInput(format!(
            "average return probability needs an even horizon of at least 2, got {}",
            p0.len() as i64 - 1
        )));
    }
    let sum: f64 = (2..=horizon).step_by(2).map(|t| p0[t]).sum();
    Ok(sum / (horizon / 2) as f64)
}

/// Coin-traced probabilities over the parity sublattice, `x` slow.
pub fn position_distribution(state: &WalkerState) -> Vec<((i64, i64), f64)> {
    let xs = state.sublattice(Axis::X);
    let ys = state.sublattice(Axis::Y);
    let mut out = Vec::with_capacity(xs.len() * ys.len());
    for &x in &xs {
        for &y in &ys {
            out.push(((x, y), state.probability_at(x, y).unwrap_or(0.0)));
        }
    }
    out
}

/// Walker density matrix with the coin traced out, `sum_c |psi_c><psi_c|`.
pub fn reduced_walker_density(state: &WalkerState) -> DensityMatrix {
    let psi0 = state.coin_slice(0);
    let psi1 = state.coin_slice(1);
    let n = psi0.len();
    let entries = Array2::from_shape_fn((n, n), |(i, j)| {
        psi0[i] * psi0[j].conj() + psi1[i] * psi1[j].conj()
    });
    DensityMatrix {
        entries,
        basis: Basis::Product {
            xs: state.sublattice(Axis::X),
            ys: state.sublattice(Axis::Y),
        },
    }
}

/// Partial trace of a two-walker matrix, keeping `axis`.
pub fn marginal_density(rho: &DensityMatrix, axis: Axis) -> Result<DensityMatrix, WalkError> {
    let Basis::Product { xs, ys } = &rho.basis else {
        return Err(WalkError::InvalidInput(
            "marginal needs a density matrix on the (x, y) product basis".into(),
        ));
    };
    let (nx, ny) = (xs.len(), ys.len());
    if rho.dim() != nx * ny {
        return Err(WalkError::InvalidInput(format!(
            "matrix dimension {} does not match the {nx}x{ny} product basis",
            rho.dim()
        )));
    }
    let e = &rho.entries;
    let (entries, labels) = match axis {
        Axis::X => (
            Array2::from_shape_fn((nx, nx), |(i, k)| {
                (0..ny).map(|j| e[[i * ny + j, k * ny + j]]).sum()
            }),
            xs.clone(),
        ),
        Axis::Y => (
            Array2::from_shape_fn((ny, ny), |(j, l)| {
                (0..nx).map(|i| e[[i * ny + j, i * ny + l]]).sum()
            }),
            ys.clone(),
        ),
    };
    DensityMatrix::new(entries, Basis::Line(labels))
}

/// `rho_W - rho_x (x) rho_y`, Hermitian and traceless.
pub fn coherence_operator(state: &WalkerState) -> Result<DensityMatrix, WalkError> {
    let rho = reduced_walker_density(state);
    let rx = marginal_density(&rho, Axis::X)?;
    let ry = marginal_density(&rho, Axis::Y)?;
    let product = rx.kron(&ry)?;
    Ok(DensityMatrix {
        entries: rho.entries - product.entries,
        basis: rho.basis,
    })
}

/// Coherence norm `|| rho_W - rho_x (x) rho_y ||_1` with the default cap.
pub fn coherence_norm(state: &WalkerState) -> Result<f64, WalkError> {
    coherence_norm_capped(state, DEFAULT_DIMENSION_CAP)
}

/// Coherence norm, rejecting matrices larger than `cap`.
pub fn coherence_norm_capped(state: &WalkerState, cap: usize) -> Result<f64, WalkError> {
    let dim = (state.reach(Axis::X) + 1) * (state.reach(Axis::Y) + 1);
    if dim > cap {
        return Err(WalkError::DimensionCap { dim, cap });
    }
    trace_norm(&coherence_operator(state)?)
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
pub fn trace_norm(m: &DensityMatrix) -> Result<f64, WalkError> {
    Ok(m.eigenvalues()?.iter().map(|l| l.abs()).sum())
}
