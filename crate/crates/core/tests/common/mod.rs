//! Reference implementations used as independent oracles. None of these
//! touch the production gate or eigensolver code.

#![allow(dead_code)]

use std::collections::HashMap;

use num_complex::Complex64;

pub type Site = (i64, i64, usize);
pub type MapState = HashMap<Site, Complex64>;

/// Which diagonal form of the phase gate to use.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PhaseForm {
    /// diag(e^{-i phi t/2}, e^{i phi t/2})
    Symmetric,
    /// diag(1, e^{i phi t}), equal to the symmetric form up to a global phase
    Lower,
}

fn add(map: &mut MapState, key: Site, v: Complex64) {
    *map.entry(key).or_insert(Complex64::new(0.0, 0.0)) += v;
}

fn hadamard(state: &MapState) -> MapState {
    let h = 1.0 / 2f64.sqrt();
    let mut out = MapState::new();
    for (&(x, y, c), &a) in state {
        // H|0> = (|0> + |1>)/sqrt2, H|1> = (|0> - |1>)/sqrt2
        let sign = if c == 0 { 1.0 } else { -1.0 };
        add(&mut out, (x, y, 0), a * h);
        add(&mut out, (x, y, 1), a * h * sign);
    }
    out
}

fn phase<F: Fn(i64, i64) -> f64>(state: &MapState, t: i64, form: PhaseForm, phi_at: F) -> MapState {
    state
        .iter()
        .map(|(&(x, y, c), &a)| {
            let phi = phi_at(x, y);
            let angle = match (form, c) {
                (PhaseForm::Symmetric, 0) => -phi * t as f64 / 2.0,
                (PhaseForm::Symmetric, _) => phi * t as f64 / 2.0,
                (PhaseForm::Lower, 0) => 0.0,
                (PhaseForm::Lower, _) => phi * t as f64,
            };
            ((x, y, c), a * Complex64::from_polar(1.0, angle))
        })
        .collect()
}

/// S_x = sum |i-1,j,0><i,j,0| + |i+1,j,1><i,j,1|, likewise S_y.
fn shift(state: &MapState, along_x: bool) -> MapState {
    let mut out = MapState::new();
    for (&(x, y, c), &a) in state {
        let d = if c == 0 { -1 } else { 1 };
        let key = if along_x { (x + d, y, c) } else { (x, y + d, c) };
        add(&mut out, key, a);
    }
    out
}

/// Direct-definition alternate walk. `delta(slot, t, x, y)` supplies the
/// relative perturbation of the angle in each slot (0 = x gate, 1 = y gate).
pub fn naive_walk<D>(
    steps: usize,
    phi_x: f64,
    phi_y: f64,
    coin: (Complex64, Complex64),
    base: i64,
    form: PhaseForm,
    delta: D,
) -> MapState
where
    D: Fn(usize, i64, i64, i64) -> f64,
{
    let mut s = MapState::new();
    s.insert((0, 0, 0), coin.0);
    s.insert((0, 0, 1), coin.1);
    for k in 0..steps {
        let t = base + k as i64;
        s = hadamard(&s);
        s = phase(&s, t, form, |x, y| (1.0 + delta(0, t, x, y)) * phi_x);
        s = shift(&s, true);
        s = hadamard(&s);
        s = phase(&s, t, form, |x, y| (1.0 + delta(1, t, x, y)) * phi_y);
        s = shift(&s, false);
    }
    s
}

pub fn clean_walk(steps: usize, phi_x: f64, phi_y: f64, coin: (Complex64, Complex64), form: PhaseForm) -> MapState {
    naive_walk(steps, phi_x, phi_y, coin, 1, form, |_, _, _, _| 0.0)
}

pub fn map_probability(s: &MapState, x: i64, y: i64) -> f64 {
    [0, 1]
        .iter()
        .map(|&c| s.get(&(x, y, c)).map_or(0.0, |a| a.norm_sqr()))
        .sum()
}

/// Textbook 1D Hadamard walk, phi = 0: psi_{t+1}(x) = (H psi_t)(x+1) on
/// the |0> component and (H psi_t)(x-1) on |1>, stored in a map.
pub fn hadamard_walk_1d(steps: usize, coin: (Complex64, Complex64)) -> HashMap<(i64, usize), Complex64> {
    let h = 1.0 / 2f64.sqrt();
    let mut s: HashMap<(i64, usize), Complex64> = HashMap::new();
    s.insert((0, 0), coin.0);
    s.insert((0, 1), coin.1);
    for _ in 0..steps {
        let mut next: HashMap<(i64, usize), Complex64> = HashMap::new();
        for x in s.keys().map(|k| k.0).collect::<std::collections::BTreeSet<_>>() {
            let a0 = s.get(&(x, 0)).copied().unwrap_or_default();
            let a1 = s.get(&(x, 1)).copied().unwrap_or_default();
            *next.entry((x - 1, 0)).or_default() += (a0 + a1) * h;
            *next.entry((x + 1, 1)).or_default() += (a0 - a1) * h;
        }
        s = next;
    }
    s
}

/// Eigenvalues of a Hermitian matrix (row-major) by cyclic Jacobi on the
/// real symmetric embedding [[Re, -Im], [Im, Re]], whose spectrum is that of
/// the input with every eigenvalue doubled.
pub fn jacobi_eigenvalues(a: &[Complex64], n: usize) -> Vec<f64> {
    let m = 2 * n;
    let mut s = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            let z = a[i * n + j];
            s[i * m + j] = z.re;
            s[(i + n) * m + j + n] = z.re;
            s[i * m + j + n] = -z.im;
            s[(i + n) * m + j] = z.im;
        }
    }
    for _sweep in 0..100 {
        let off: f64 = (0..m)
            .flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| s[i * m + j] * s[i * m + j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..m {
            for q in (p + 1)..m {
                let apq = s[p * m + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (s[q * m + q] - s[p * m + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;
                for k in 0..m {
                    let (akp, akq) = (s[k * m + p], s[k * m + q]);
                    s[k * m + p] = c * akp - sn * akq;
                    s[k * m + q] = sn * akp + c * akq;
                }
                for k in 0..m {
                    let (apk, aqk) = (s[p * m + k], s[q * m + k]);
                    s[p * m + k] = c * apk - sn * aqk;
                    s[q * m + k] = sn * apk + c * aqk;
                }
            }
        }
    }
    let mut vals: Vec<f64> = (0..m).map(|i| s[i * m + i]).collect();
    vals.sort_by(f64::total_cmp);
    vals.into_iter().step_by(2).collect()
}

/// Small deterministic generator for test inputs.
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        Self(seed ^ 0x5851_f42d_4c95_7f2d)
    }

    pub fn next_f64(&mut self) -> f64 {
        // xorshift64*
        self.0 ^= self.0 >> 12;
        self.0 ^= self.0 << 25;
        self.0 ^= self.0 >> 27;
        let v = self.0.wrapping_mul(0x2545_f491_4f6c_dd1d);
        (v >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn angle(&mut self) -> f64 {
        self.next_f64() * 2.0 * std::f64::consts::PI
    }
}
