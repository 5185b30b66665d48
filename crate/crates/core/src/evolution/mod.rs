//! Gates and the time-step sequence of the alternate walk.

mod disorder;

pub use disorder::{
    draw_delta, hash_key, mix64, trial_seed, unit_interval, DisorderKind, DisorderSpec,
    DisorderTarget,
};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::WalkError;
use crate::lattice_state::{Axis, CoinState, WalkerState};

/// Parameters of one walk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkParams {
    pub total_steps: usize,
    pub phi_x: f64,
    pub phi_y: f64,
    pub initial_coin: CoinState,
    /// Index `t` used by the phase gates of the first step. Step `k`
    /// (0-based) uses `t = step_index_base + k`.
    pub step_index_base: i64,
    pub disorder: DisorderSpec,
}

impl WalkParams {
    pub fn new(total_steps: usize, phi_x: f64, phi_y: f64) -> Self {
        Self {
            total_steps,
            phi_x,
            phi_y,
            initial_coin: CoinState::plus_y(),
            step_index_base: 1,
            disorder: DisorderSpec::none(),
        }
    }

    pub fn with_coin(mut self, coin: CoinState) -> Self {
        self.initial_coin = coin;
        self
    }

    pub fn with_step_base(mut self, base: i64) -> Self {
        self.step_index_base = base;
        self
    }

    pub fn with_disorder(mut self, disorder: DisorderSpec) -> Self {
        self.disorder = disorder;
        self
    }

    pub fn validate(&self) -> Result<(), WalkError> {
        if !self.phi_x.is_finite() || !self.phi_y.is_finite() {
            return Err(WalkError::InvalidInput("phase angles must be finite".into()));
        }
        if !(self.disorder.epsilon.is_finite() && self.disorder.epsilon >= 0.0) {
            return Err(WalkError::InvalidInput(
                "disorder epsilon must be a finite non-negative number".into(),
            ));
        }
        self.initial_coin.validate()
    }
}

/// Where a phase gate sits in the step: before the x shift or the y shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PhaseSlot {
    X,
    Y,
}

/// `(exp(-i phi t / 2), exp(i phi t / 2))`
#[inline]
fn phase_pair(phi: f64, t: i64) -> (Complex64, Complex64) {
    let theta = phi * t as f64 / 2.0;
    let (s, c) = theta.sin_cos();
    (Complex64::new(c, -s), Complex64::new(c, s))
}

/// Hadamard on the coin at every site.
pub fn apply_hadamard(state: &mut WalkerState) {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let xs = state.sublattice(Axis::X);
    let ys = state.sublattice(Axis::Y);
    let offsets: Vec<usize> = xs
        .iter()
        .flat_map(|&x| ys.iter().map(move |&y| (x, y)))
        .map(|(x, y)| state.index(x, y, 0))
        .collect();
    let amps = state.amplitudes_mut();
    for i in offsets {
        let (a0, a1) = (amps[i], amps[i + 1]);
        amps[i] = (a0 + a1) * h;
        amps[i + 1] = (a0 - a1) * h;
    }
}

/// Phase gate `P(phi_eff, t)` at every site, `phi_eff = (1 + delta) phi`.
///
/// `delta` is drawn from `disorder` when this slot is targeted, and is zero
/// otherwise. Position-keyed draws use the site the amplitude occupies when
/// the gate acts.
pub fn apply_phase(
    state: &mut WalkerState,
    phi: f64,
    t: i64,
    disorder: &DisorderSpec,
    slot: PhaseSlot,
) {
    let targeted = match slot {
        PhaseSlot::X => disorder.targets_x(),
        PhaseSlot::Y => disorder.targets_y(),
    };
    let xs = state.sublattice(Axis::X);
    let ys = state.sublattice(Axis::Y);

    if disorder.is_inert() || !targeted || disorder.kind == DisorderKind::Time {
        let delta = if targeted { draw_delta(disorder, t, 0, 0) } else { 0.0 };
        let phi_eff = (1.0 + delta) * phi;
        if phi_eff == 0.0 {
            return;
        }
        let (p0, p1) = phase_pair(phi_eff, t);
        for &x in &xs {
            for &y in &ys {
                let i = state.index(x, y, 0);
                let amps = state.amplitudes_mut();
                amps[i] *= p0;
                amps[i + 1] *= p1;
            }
        }
        return;
    }

    for &x in &xs {
        for &y in &ys {
            let delta = draw_delta(disorder, t, x, y);
            let (p0, p1) = phase_pair((1.0 + delta) * phi, t);
            let i = state.index(x, y, 0);
            let amps = state.amplitudes_mut();
            amps[i] *= p0;
            amps[i + 1] *= p1;
        }
    }
}

/// Conditional shift along `axis`: coin 0 moves to the negative side,
/// coin 1 to the positive side.
pub fn shift(state: &mut WalkerState, axis: Axis) -> Result<(), WalkError> {
    let r = state.reach(axis);
    if r + 1 > state.capacity() {
        return Err(WalkError::CapacityExceeded {
            capacity: state.capacity(),
        });
    }
    let xs = state.sublattice(Axis::X);
    let ys = state.sublattice(Axis::Y);
    let (dx, dy) = match axis {
        Axis::X => (1, 0),
        Axis::Y => (0, 1),
    };
    // Sources sit on the current parity sublattice and destinations on the
    // opposite one, so moving site by site never overwrites a pending source.
    for &x in &xs {
        for &y in &ys {
            let src = state.index(x, y, 0);
            let down = state.index(x - dx, y - dy, 0);
            let up = state.index(x + dx, y + dy, 1);
            let amps = state.amplitudes_mut();
            let a0 = std::mem::take(&mut amps[src]);
            let a1 = std::mem::take(&mut amps[src + 1]);
            amps[down] = a0;
            amps[up] = a1;
        }
    }
    state.set_reach(axis, r + 1);
    Ok(())
}

pub fn shift_x(state: &mut WalkerState) -> Result<(), WalkError> {
    shift(state, Axis::X)
}

pub fn shift_y(state: &mut WalkerState) -> Result<(), WalkError> {
    shift(state, Axis::Y)
}

/// One full time step with index `t`.
pub fn step(state: &mut WalkerState, params: &WalkParams, t: i64) -> Result<(), WalkError> {
    let expected = state.steps_taken() as i64 + params.step_index_base;
    if t != expected {
        return Err(WalkError::InvalidInput(format!(
            "step index {t} does not follow the {} steps already taken (expected {expected})",
            state.steps_taken()
        )));
    }
    if state.reach(Axis::X) + 1 > state.capacity() || state.reach(Axis::Y) + 1 > state.capacity() {
        return Err(WalkError::CapacityExceeded {
            capacity: state.capacity(),
        });
    }
    apply_hadamard(state);
    apply_phase(state, params.phi_x, t, &params.disorder, PhaseSlot::X);
    shift(state, Axis::X)?;
    apply_hadamard(state);
    apply_phase(state, params.phi_y, t, &params.disorder, PhaseSlot::Y);
    shift(state, Axis::Y)?;
    state.set_steps_taken(state.steps_taken() + 1);
    Ok(())
}

/// Runs the walk, calling `observer` with the initial state and then with
/// the state after every step.
pub fn evolve_with<F>(params: &WalkParams, mut observer: F) -> Result<WalkerState, WalkError>
where
    F: FnMut(&WalkerState),
{
    params.validate()?;
    let mut state = WalkerState::new(params.total_steps.max(1), params.initial_coin)?;
    observer(&state);
    for k in 0..params.total_steps {
        step(&mut state, params, params.step_index_base + k as i64)?;
        observer(&state);
    }
    Ok(state)
}

pub fn evolve(params: &WalkParams) -> Result<WalkerState, WalkError> {
    evolve_with(params, |_| {})
}

/// Final state of the one-dimensional walk, indexed by `x` in `[-T, T]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LineState {
    pub steps: usize,
    pub amplitudes: Vec<[Complex64; 2]>,
}

impl LineState {
    pub fn amplitude(&self, x: i64, c: usize) -> Complex64 {
        let t = self.steps as i64;
        if x.abs() > t || c > 1 {
            return Complex64::new(0.0, 0.0);
        }
        self.amplitudes[(x + t) as usize][c]
    }

    pub fn probability(&self, x: i64) -> f64 {
        self.amplitude(x, 0).norm_sqr() + self.amplitude(x, 1).norm_sqr()
    }

    pub fn norm_sq(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a[0].norm_sqr() + a[1].norm_sqr())
            .sum()
    }
}

/// One-dimensional walk: Hadamard, `P(phi, t)`, shift, for `t = 1..=T`.
///
/// Disorder applies when its target includes the x gate; position keys use
/// `(x, 0)`.
pub fn walk1d(
    total_steps: usize,
    phi: f64,
    coin: CoinState,
    disorder: &DisorderSpec,
) -> Result<LineState, WalkError> {
    coin.validate()?;
    let t_max = total_steps as i64;
    let width = 2 * total_steps + 1;
    let zero = Complex64::new(0.0, 0.0);
    let mut cur = vec![[zero; 2]; width];
    let mut next = vec![[zero; 2]; width];
    cur[total_steps] = [coin.a0, coin.a1];
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let targeted = disorder.targets_x();

    for k in 0..t_max {
        let t = k + 1;
        next.iter_mut().for_each(|a| *a = [zero; 2]);
        // after k steps the support is x in {-k, -k + 2, ..., k}
        for x in (-k..=k).step_by(2) {
            let [a0, a1] = cur[(x + t_max) as usize];
            let (b0, b1) = ((a0 + a1) * h, (a0 - a1) * h);
            let delta = if targeted { draw_delta(disorder, t, x, 0) } else { 0.0 };
            let phi_eff = (1.0 + delta) * phi;
            let (c0, c1) = if phi_eff == 0.0 {
                (b0, b1)
            } else {
                let (p0, p1) = phase_pair(phi_eff, t);
                (b0 * p0, b1 * p1)
            };
            next[(x - 1 + t_max) as usize][0] = c0;
            next[(x + 1 + t_max) as usize][1] = c1;
        }
        std::mem::swap(&mut cur, &mut next);
    }
    Ok(LineState {
        steps: total_steps,
        amplitudes: cur,
    })
}
