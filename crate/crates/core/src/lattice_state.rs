//! Walker + coin state on a bounded square lattice.
//!
//! Amplitudes live in a dense `(2T+1) x (2T+1) x 2` array indexed by
//! `(x + T, y + T, c)`. Starting from the origin, `s` shifts along an axis
//! can reach at most `|x| <= s`, so truncating the infinite lattice at the
//! capacity `T` is exact as long as no more than `T` steps are taken.

use num_complex::Complex64;

use crate::error::WalkError;

const NORM_TOLERANCE: f64 = 1e-9;

/// Axis of the lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

/// Coin state `a0 |0> + a1 |1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinState {
    pub a0: Complex64,
    pub a1: Complex64,
}

impl CoinState {
    pub fn new(a0: Complex64, a1: Complex64) -> Self {
        Self { a0, a1 }
    }

    /// `|0>`
    pub fn zero() -> Self {
        Self::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
    }

    /// `|1>`
    pub fn one() -> Self {
        Self::new(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0))
    }

    /// `(|0> + |1>)/sqrt 2`
    pub fn plus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::new(Complex64::new(h, 0.0), Complex64::new(h, 0.0))
    }

    /// `(|0> + i|1>)/sqrt 2`, the default initial coin.
    pub fn plus_y() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::new(Complex64::new(h, 0.0), Complex64::new(0.0, h))
    }

    pub fn norm_sq(&self) -> f64 {
        self.a0.norm_sqr() + self.a1.norm_sqr()
    }

    pub fn validate(&self) -> Result<(), WalkError> {
        let n = self.norm_sq();
        if !n.is_finite() || (n - 1.0).abs() > NORM_TOLERANCE {
            return Err(WalkError::InvalidInput(format!(
                "initial coin must be normalized, got |a0|^2 + |a1|^2 = {n}"
            )));
        }
        Ok(())
    }

    pub fn component(&self, c: usize) -> Complex64 {
        if c == 0 {
            self.a0
        } else {
            self.a1
        }
    }
}

impl Default for CoinState {
    fn default() -> Self {
        Self::plus_y()
    }
}

/// Full pure state of walker and coin.
///
/// Besides the amplitudes the state records how far the support may extend
/// along each axis (`reach`). Along an axis with reach `r`, every populated
/// site satisfies `|x| <= r` and `x = r (mod 2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkerState {
    capacity: usize,
    side: usize,
    amplitudes: Vec<Complex64>,
    steps_taken: usize,
    reach_x: usize,
    reach_y: usize,
}

impl WalkerState {
    /// Walker at the origin with the given coin, room for `capacity` steps.
    pub fn new(capacity: usize, coin: CoinState) -> Result<Self, WalkError> {
        if capacity < 1 {
            return Err(WalkError::InvalidInput(
                "lattice capacity must be at least 1".into(),
            ));
        }
        coin.validate()?;
        let mut state = Self::empty(capacity);
        *state.amp_mut(0, 0, 0) = coin.a0;
        *state.amp_mut(0, 0, 1) = coin.a1;
        Ok(state)
    }

    fn empty(capacity: usize) -> Self {
        let side = 2 * capacity + 1;
        Self {
            capacity,
            side,
            amplitudes: vec![Complex64::new(0.0, 0.0); side * side * 2],
            steps_taken: 0,
            reach_x: 0,
            reach_y: 0,
        }
    }

    /// Builds a state from explicit site amplitudes.
    ///
    /// Every listed site must lie inside the given reach and on its parity
    /// sublattice. The result is not required to be normalized.
    pub fn from_amplitudes<I>(
        capacity: usize,
        reach: (usize, usize),
        sites: I,
    ) -> Result<Self, WalkError>
    where
        I: IntoIterator<Item = ((i64, i64, usize), Complex64)>,
    {
        if capacity < 1 {
            return Err(WalkError::InvalidInput(
                "lattice capacity must be at least 1".into(),
            ));
        }
        if reach.0 > capacity || reach.1 > capacity {
            return Err(WalkError::InvalidInput(format!(
                "reach {reach:?} exceeds capacity {capacity}"
            )));
        }
        let mut state = Self::empty(capacity);
        state.reach_x = reach.0;
        state.reach_y = reach.1;
        for ((x, y, c), amp) in sites {
            if c > 1 {
                return Err(WalkError::InvalidInput(format!("coin index {c} is not 0 or 1")));
            }
            if !on_sublattice(x, reach.0) || !on_sublattice(y, reach.1) {
                return Err(WalkError::InvalidInput(format!(
                    "site ({x}, {y}) is outside the parity sublattice of reach {reach:?}"
                )));
            }
            *state.amp_mut(x, y, c) = amp;
        }
        Ok(state)
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn steps_taken(&self) -> usize {
        self.steps_taken
    }

    /// Support bound along `axis`.
    pub fn reach(&self, axis: Axis) -> usize {
        match axis {
            Axis::X => self.reach_x,
            Axis::Y => self.reach_y,
        }
    }

    pub(crate) fn set_steps_taken(&mut self, steps: usize) {
        self.steps_taken = steps;
    }

    pub(crate) fn set_reach(&mut self, axis: Axis, r: usize) {
        match axis {
            Axis::X => self.reach_x = r,
            Axis::Y => self.reach_y = r,
        }
    }

    /// Number of sites along each axis of the allocation, `2T + 1`.
    pub fn side(&self) -> usize {
        self.side
    }

    #[inline]
    pub(crate) fn index(&self, x: i64, y: i64, c: usize) -> usize {
        let t = self.capacity as i64;
        let ix = (x + t) as usize;
        let iy = (y + t) as usize;
        (ix * self.side + iy) * 2 + c
    }

    #[inline]
    fn amp_mut(&mut self, x: i64, y: i64, c: usize) -> &mut Complex64 {
        let i = self.index(x, y, c);
        &mut self.amplitudes[i]
    }

    fn in_range(&self, x: i64, y: i64) -> bool {
        let t = self.capacity as i64;
        x.abs() <= t && y.abs() <= t
    }

    /// Amplitude at `(x, y, c)`.
    pub fn amplitude(&self, x: i64, y: i64, c: usize) -> Result<Complex64, WalkError> {
        if !self.in_range(x, y) || c > 1 {
            return Err(WalkError::InvalidInput(format!(
                "site ({x}, {y}, {c}) is outside the lattice of capacity {}",
                self.capacity
            )));
        }
        Ok(self.amplitudes[self.index(x, y, c)])
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Coin-traced probability of finding the walker at `(x, y)`.
    pub fn probability_at(&self, x: i64, y: i64) -> Result<f64, WalkError> {
        if !self.in_range(x, y) {
            return Err(WalkError::InvalidInput(format!(
                "site ({x}, {y}) is outside the lattice of capacity {}",
                self.capacity
            )));
        }
        let i = self.index(x, y, 0);
        Ok(self.amplitudes[i].norm_sqr() + self.amplitudes[i + 1].norm_sqr())
    }

    /// Sites `-r, -r + 2, ..., r` of the parity sublattice along `axis`.
    pub fn sublattice(&self, axis: Axis) -> Vec<i64> {
        sublattice_coords(self.reach(axis))
    }

    /// Amplitudes of coin branch `c` on the parity sublattice, flattened
    /// with `x` as the slow index.
    pub fn coin_slice(&self, c: usize) -> Vec<Complex64> {
        let xs = self.sublattice(Axis::X);
        let ys = self.sublattice(Axis::Y);
        let mut out = Vec::with_capacity(xs.len() * ys.len());
        for &x in &xs {
            for &y in &ys {
                out.push(self.amplitudes[self.index(x, y, c)]);
            }
        }
        out
    }
}

pub(crate) fn sublattice_coords(reach: usize) -> Vec<i64> {
    let r = reach as i64;
    (0..=reach).map(|k| -r + 2 * k as i64).collect()
}

fn on_sublattice(x: i64, reach: usize) -> bool {
    x.unsigned_abs() as usize <= reach && (x - reach as i64).rem_euclid(2) == 0
}
