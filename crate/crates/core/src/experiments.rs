//! Numerical studies built on single walks: return-probability series,
//! angle sweeps, disorder ensembles and coherence-norm series.
//!
//! Independent work items (grid cells, trials, time points) run on the rayon
//! pool; results are always collected in input order, so every output is a
//! deterministic function of the parameters.

use rayon::prelude::*;

use crate::error::WalkError;
use crate::evolution::{evolve_with, trial_seed, DisorderKind, DisorderSpec, WalkParams};
use crate::lattice_state::WalkerState;
use crate::observables::{coherence_norm_capped, return_probability, SeriesRecord};

/// Reference arrangements: strong, weak and no localization.
pub const STRONG_LOCALIZATION: (f64, f64) = (19.0 * std::f64::consts::PI / 25.0, 0.0);
pub const WEAK_LOCALIZATION: (f64, f64) = (std::f64::consts::FRAC_PI_4, 0.0);
pub const NO_LOCALIZATION: (f64, f64) = (0.0, 0.0);

/// `P0(t)` for `t = 0..=T`.
pub fn p0_series(params: &WalkParams) -> Result<Vec<f64>, WalkError> {
    let mut p0 = Vec::with_capacity(params.total_steps + 1);
    evolve_with(params, |s| p0.push(return_probability(s)))?;
    Ok(p0)
}

/// Running mean over even steps: entry `t` averages `p0[2], p0[4], ...`
/// up to `t`; `None` for `t < 2`.
pub fn running_average(p0: &[f64]) -> Vec<Option<f64>> {
    let mut sum = 0.0;
    let mut count = 0usize;
    p0.iter()
        .enumerate()
        .map(|(t, &p)| {
            if t >= 2 && t % 2 == 0 {
                sum += p;
                count += 1;
            }
            (t >= 2).then(|| sum / count as f64)
        })
        .collect()
}

/// One record per step `0..=T`.
pub fn run_series(params: &WalkParams) -> Result<Vec<SeriesRecord>, WalkError> {
    let p0 = p0_series(params)?;
    Ok(records(&p0, &running_average(&p0)))
}

fn records(p0: &[f64], p_bar: &[Option<f64>]) -> Vec<SeriesRecord> {
    p0.iter()
        .zip(p_bar)
        .enumerate()
        .map(|(t, (&p0, &p_bar))| SeriesRecord { t, p0, p_bar, c_norm: None })
        .collect()
}

fn p_bar_at_horizon(params: &WalkParams) -> Result<f64, WalkError> {
    let p0 = p0_series(params)?;
    crate::observables::average_return_probability(&p0)
}

fn check_horizon(steps: usize) -> Result<(), WalkError> {
    if steps < 2 || !steps.is_multiple_of(2) {
        return Err(WalkError::InvalidInput(format!(
            "the averaging horizon must be even and at least 2, got {steps}"
        )));
    }
    Ok(())
}

/// `k * 2 pi / n` for `k = 0..n`.
pub fn angle_grid(n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| 2.0 * std::f64::consts::PI * k as f64 / n as f64)
        .collect()
}

/// Cartesian grid of `(phi_x, phi_y)` evaluated at one horizon.
#[derive(Debug, Clone)]
pub struct SweepGrid {
    pub phi_x_values: Vec<f64>,
    pub phi_y_values: Vec<f64>,
    pub steps: usize,
    /// Supplies coin, step base and disorder; its angles and step count are
    /// overridden per cell.
    pub template: WalkParams,
}

impl SweepGrid {
    /// `n x n` grid over `[0, 2 pi)` with spacing `2 pi / n`.
    pub fn uniform(n: usize, steps: usize) -> Self {
        let values = angle_grid(n);
        Self {
            phi_x_values: values.clone(),
            phi_y_values: values,
            steps,
            template: WalkParams::new(steps, 0.0, 0.0),
        }
    }
}

/// `P_bar(T)` per cell; `result[i][j]` belongs to `(phi_x[i], phi_y[j])`.
pub fn sweep(grid: &SweepGrid) -> Result<Vec<Vec<f64>>, WalkError> {
    check_horizon(grid.steps)?;
    if grid.phi_x_values.iter().chain(&grid.phi_y_values).any(|v| !v.is_finite()) {
        return Err(WalkError::InvalidInput("grid angles must be finite".into()));
    }
    let ny = grid.phi_y_values.len();
    let cells: Vec<(f64, f64)> = grid
        .phi_x_values
        .iter()
        .flat_map(|&px| grid.phi_y_values.iter().map(move |&py| (px, py)))
        .collect();
    let values = cells
        .par_iter()
        .map(|&(px, py)| {
            let mut p = grid.template;
            p.total_steps = grid.steps;
            p.phi_x = px;
            p.phi_y = py;
            p_bar_at_horizon(&p)
        })
        .collect::<Result<Vec<f64>, _>>()?;
    Ok(if ny == 0 {
        vec![Vec::new(); grid.phi_x_values.len()]
    } else {
        values.chunks(ny).map(<[f64]>::to_vec).collect()
    })
}

/// `P_bar(T)` along `phi_x` with `phi_y = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LineScan {
    pub points: Vec<(f64, f64)>,
    /// Index of the largest value (first one on ties).
    pub argmax: usize,
}

impl LineScan {
    pub fn best(&self) -> (f64, f64) {
        self.points[self.argmax]
    }
}

pub fn line_scan(phi_x_values: &[f64], template: &WalkParams) -> Result<LineScan, WalkError> {
    if phi_x_values.is_empty() {
        return Err(WalkError::InvalidInput("line scan needs at least one angle".into()));
    }
    let grid = SweepGrid {
        phi_x_values: phi_x_values.to_vec(),
        phi_y_values: vec![0.0],
        steps: template.total_steps,
        template: *template,
    };
    let values = sweep(&grid)?;
    let points: Vec<(f64, f64)> = phi_x_values
        .iter()
        .zip(&values)
        .map(|(&px, row)| (px, row[0]))
        .collect();
    let argmax = points
        .iter()
        .enumerate()
        .fold(0, |best, (i, p)| if p.1 > points[best].1 { i } else { best });
    Ok(LineScan { points, argmax })
}

/// Trial-averaged disorder run.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialEnsemble {
    pub base_params: WalkParams,
    pub n_trials: usize,
    pub base_seed: u64,
    /// Mean `P0(t)` over trials.
    pub mean_p0: Vec<f64>,
    /// Mean running `P_bar(t)` over trials.
    pub per_step_mean: Vec<Option<f64>>,
}

impl TrialEnsemble {
    pub fn records(&self) -> Vec<SeriesRecord> {
        records(&self.mean_p0, &self.per_step_mean)
    }
}

/// Parameters of trial `index`: the base disorder with its seed replaced by
/// one derived from `(base_seed, index)`.
pub fn trial_params(base: &WalkParams, disorder: DisorderSpec, base_seed: u64, index: usize) -> WalkParams {
    base.with_disorder(disorder.with_seed(trial_seed(base_seed, index as u64)))
}

pub fn disorder_ensemble(
    base: &WalkParams,
    kind: DisorderKind,
    epsilon: f64,
    n_trials: usize,
    base_seed: u64,
) -> Result<TrialEnsemble, WalkError> {
    if n_trials < 1 {
        return Err(WalkError::InvalidInput("an ensemble needs at least one trial".into()));
    }
    let disorder = DisorderSpec { kind, epsilon, ..base.disorder };
    let base_params = base.with_disorder(disorder);
    base_params.validate()?;

    if disorder.is_inert() {
        // Every trial is the clean walk; averaging copies would only add rounding.
        let p0 = p0_series(&base_params)?;
        let per_step_mean = running_average(&p0);
        return Ok(TrialEnsemble { base_params, n_trials, base_seed, mean_p0: p0, per_step_mean });
    }

    let trials = (0..n_trials)
        .into_par_iter()
        .map(|i| p0_series(&trial_params(&base_params, disorder, base_seed, i)))
        .collect::<Result<Vec<_>, _>>()?;

    let len = base.total_steps + 1;
    let mut mean_p0 = vec![0.0; len];
    let mut mean_bar = vec![0.0; len];
    for p0 in &trials {
        for (acc, v) in mean_p0.iter_mut().zip(p0) {
            *acc += v;
        }
        for (acc, v) in mean_bar.iter_mut().zip(running_average(p0)) {
            *acc += v.unwrap_or(0.0);
        }
    }
    let n = n_trials as f64;
    mean_p0.iter_mut().for_each(|v| *v /= n);
    let per_step_mean = mean_bar
        .into_iter()
        .enumerate()
        .map(|(t, v)| (t >= 2).then_some(v / n))
        .collect();
    Ok(TrialEnsemble { base_params, n_trials, base_seed, mean_p0, per_step_mean })
}

/// Coherence norm at every step `0..=t_max`.
pub fn coherence_series(params: &WalkParams, t_max: usize, cap: usize) -> Result<Vec<(usize, f64)>, WalkError> {
    let dim = (t_max + 1) * (t_max + 1);
    if dim > cap {
        return Err(WalkError::DimensionCap { dim, cap });
    }
    let mut p = *params;
    p.total_steps = t_max;
    let mut snapshots: Vec<WalkerState> = Vec::with_capacity(t_max + 1);
    evolve_with(&p, |s| snapshots.push(s.clone()))?;
    // largest matrices first so the pool is not left waiting on the tail
    let mut values = snapshots
        .par_iter()
        .rev()
        .map(|s| coherence_norm_capped(s, cap).map(|c| (s.steps_taken(), c)))
        .collect::<Result<Vec<_>, _>>()?;
    values.reverse();
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::observables::average_return_probability;

    #[test]
    fn zero_steps_gives_one_record() {
        let r = run_series(&WalkParams::new(0, 1.0, 1.0)).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].t, 0);
        assert!((r[0].p0 - 1.0).abs() < 1e-15);
        assert_eq!(r[0].p_bar, None);
    }

    #[test]
    fn running_average_matches_horizon_average() {
        let p0 = p0_series(&WalkParams::new(20, 0.5, 1.5)).unwrap();
        let bar = running_average(&p0);
        for t in (2..=20).step_by(2) {
            let direct = average_return_probability(&p0[..=t]).unwrap();
            assert!((bar[t].unwrap() - direct).abs() < 1e-15);
            if t < 20 {
                assert_eq!(bar[t + 1], bar[t]);
            }
        }
        assert_eq!(bar[0], None);
        assert_eq!(bar[1], None);
    }

    #[test]
    fn single_cell_sweep_matches_series() {
        let mut grid = SweepGrid::uniform(1, 40);
        grid.phi_x_values = vec![0.0];
        grid.phi_y_values = vec![0.0];
        let g = sweep(&grid).unwrap();
        let s = run_series(&WalkParams::new(40, 0.0, 0.0)).unwrap();
        assert_eq!(g[0][0], s[40].p_bar.unwrap());
    }

    #[test]
    fn sweep_rejects_odd_horizon() {
        assert!(sweep(&SweepGrid::uniform(2, 7)).is_err());
    }

    #[test]
    fn single_value_scan_matches_series() {
        let scan = line_scan(&[0.9], &WalkParams::new(30, 0.0, 0.0)).unwrap();
        let s = run_series(&WalkParams::new(30, 0.9, 0.0)).unwrap();
        assert_eq!(scan.points, vec![(0.9, s[30].p_bar.unwrap())]);
        assert_eq!(scan.argmax, 0);
    }

    #[test]
    fn ensemble_of_one_is_the_single_run() {
        let base = WalkParams::new(20, STRONG_LOCALIZATION.0, 0.0);
        let e = disorder_ensemble(&base, DisorderKind::Position, 0.01, 1, 77).unwrap();
        let single = trial_params(&base, DisorderSpec::new(DisorderKind::Position, 0.01, 0), 77, 0);
        let s = run_series(&single).unwrap();
        for (r, m) in s.iter().zip(e.records()) {
            assert_eq!(r.p0, m.p0);
            assert_eq!(r.p_bar, m.p_bar);
        }
    }

    #[test]
    fn inert_ensemble_is_clean_series() {
        let base = WalkParams::new(20, STRONG_LOCALIZATION.0, 0.0);
        let clean = run_series(&base).unwrap();
        for kind in [DisorderKind::None, DisorderKind::Time, DisorderKind::Both] {
            let e = disorder_ensemble(&base, kind, 0.0, 5, 3).unwrap();
            assert_eq!(e.records(), clean);
        }
    }

    #[test]
    fn ensemble_requires_a_trial() {
        let base = WalkParams::new(4, 1.0, 0.0);
        assert!(disorder_ensemble(&base, DisorderKind::Time, 0.01, 0, 1).is_err());
    }

    #[test]
    fn coherence_series_head() {
        let c = coherence_series(&WalkParams::new(0, 0.0, 0.0), 3, 100).unwrap();
        assert_eq!(c.iter().map(|p| p.0).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        assert!(c[0].1.abs() < 1e-12);
        assert!((c[1].1 - 1.0).abs() < 1e-9);
        assert!(coherence_series(&WalkParams::new(0, 0.0, 0.0), 10, 100).is_err());
    }
}
