//! Reproducible phase disorder.
//!
//! Every perturbation `delta` is a pure function of `(seed, key)`. There is
//! no sequential generator state, so position-keyed draws need no per-site
//! storage and the order in which sites are visited does not matter.
//!
//! Mixing function (stable across platforms, integer-only):
//!
//! ```text
//! mix(z)  = SplitMix64 finalizer:
//!           z ^= z >> 30; z *= 0xbf58476d1ce4e5b9;
//!           z ^= z >> 27; z *= 0x94d049bb133111eb;
//!           z ^= z >> 31
//! h0      = mix(seed + GAMMA)
//! h(k+1)  = mix((h(k) + GAMMA) ^ word(k))      for each key word
//! ```
//!
//! with `GAMMA = 0x9e3779b97f4a7c15` and wrapping arithmetic. The key words
//! are a domain tag followed by the key coordinates as two's-complement
//! `u64`. The top 53 bits of the final hash give `u` in `[0, 1)` and
//! `delta = epsilon * (2u - 1)`.

use serde::{Deserialize, Serialize};

const GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

const TAG_TIME: u64 = 1;
const TAG_POSITION: u64 = 2;
const TAG_BOTH: u64 = 3;
const TAG_TRIAL: u64 = 0x74_7269_616c;

/// Which coordinates the perturbation depends on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DisorderKind {
    None,
    /// One draw per time step, shared by all sites.
    Time,
    /// One fixed draw per lattice site, reused at every step.
    Position,
    /// An independent draw for every (site, step).
    Both,
}

/// Which of the two phase gates receive the perturbation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DisorderTarget {
    PhiXOnly,
    PhiYOnly,
    BothPhases,
}

/// Multiplicative disorder `phi -> (1 + delta) phi`, `delta ~ U(-epsilon, epsilon)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DisorderSpec {
    pub kind: DisorderKind,
    pub epsilon: f64,
    pub seed: u64,
    pub target: DisorderTarget,
}

impl DisorderSpec {
    pub fn none() -> Self {
        Self {
            kind: DisorderKind::None,
            epsilon: 0.0,
            seed: 0,
            target: DisorderTarget::PhiXOnly,
        }
    }

    pub fn new(kind: DisorderKind, epsilon: f64, seed: u64) -> Self {
        Self {
            kind,
            epsilon,
            seed,
            target: DisorderTarget::PhiXOnly,
        }
    }

    pub fn with_target(mut self, target: DisorderTarget) -> Self {
        self.target = target;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// True when no draw can be nonzero.
    pub fn is_inert(&self) -> bool {
        self.kind == DisorderKind::None || self.epsilon == 0.0
    }

    pub(crate) fn targets_x(&self) -> bool {
        matches!(self.target, DisorderTarget::PhiXOnly | DisorderTarget::BothPhases)
    }

    pub(crate) fn targets_y(&self) -> bool {
        matches!(self.target, DisorderTarget::PhiYOnly | DisorderTarget::BothPhases)
    }
}

impl Default for DisorderSpec {
    fn default() -> Self {
        Self::none()
    }
}

#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Hash of `seed` and a sequence of key words.
#[inline]
pub fn hash_key(seed: u64, words: &[u64]) -> u64 {
    words.iter().fold(mix64(seed.wrapping_add(GAMMA)), |h, &w| {
        mix64(h.wrapping_add(GAMMA) ^ w)
    })
}

/// Uniform `[0, 1)` from the top 53 bits.
#[inline]
pub fn unit_interval(h: u64) -> f64 {
    (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Seed for trial `index` of an ensemble.
pub fn trial_seed(base_seed: u64, index: u64) -> u64 {
    hash_key(base_seed, &[TAG_TRIAL, index])
}

/// Relative perturbation for step `t` at site `(x, y)`.
///
/// Coordinates irrelevant to `spec.kind` are ignored, so e.g. time disorder
/// returns the same value at every site of one step.
pub fn draw_delta(spec: &DisorderSpec, t: i64, x: i64, y: i64) -> f64 {
    if spec.is_inert() {
        return 0.0;
    }
    let h = match spec.kind {
        DisorderKind::None => return 0.0,
        DisorderKind::Time => hash_key(spec.seed, &[TAG_TIME, t as u64]),
        DisorderKind::Position => hash_key(spec.seed, &[TAG_POSITION, x as u64, y as u64]),
        DisorderKind::Both => hash_key(spec.seed, &[TAG_BOTH, t as u64, x as u64, y as u64]),
    };
    spec.epsilon * (2.0 * unit_interval(h) - 1.0)
}
