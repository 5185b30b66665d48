//! Resolved run configuration, as stored in `manifest.json`.

use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::angle::Angle;
use crate::evolution::{DisorderKind, DisorderSpec, DisorderTarget, WalkParams};
use crate::lattice_state::CoinState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Evolve,
    Sweep,
    Scan,
    Disorder,
    Coherence,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Evolve => "evolve",
            CommandKind::Sweep => "sweep",
            CommandKind::Scan => "scan",
            CommandKind::Disorder => "disorder",
            CommandKind::Coherence => "coherence",
        }
    }

    pub fn default_steps(self) -> usize {
        match self {
            CommandKind::Sweep | CommandKind::Coherence => 40,
            _ => 100,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Initial coin as given on the command line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoinSpec {
    pub text: String,
    pub a0: [f64; 2],
    pub a1: [f64; 2],
}

impl CoinSpec {
    pub fn coin(&self) -> CoinState {
        CoinState::new(
            Complex64::new(self.a0[0], self.a0[1]),
            Complex64::new(self.a1[0], self.a1[1]),
        )
    }
}

impl FromStr for CoinSpec {
    type Err = String;

    /// `zero`, `one`, `plus`, `plus-y`, or two complex components `a0,a1`
    /// such as `0.6,0.8i`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text = s.trim();
        let coin = match text {
            "zero" => CoinState::zero(),
            "one" => CoinState::one(),
            "plus" => CoinState::plus(),
            "plus-y" => CoinState::plus_y(),
            other => {
                let (a, b) = other.split_once(',').ok_or_else(|| {
                    format!("coin {other:?} is not zero, one, plus, plus-y or a0,a1")
                })?;
                let parse = |v: &str| {
                    Complex64::from_str(v.trim())
                        .map_err(|_| format!("cannot parse coin component {v:?} as a complex number"))
                };
                CoinState::new(parse(a)?, parse(b)?)
            }
        };
        coin.validate().map_err(|e| e.to_string())?;
        Ok(CoinSpec {
            text: text.to_string(),
            a0: [coin.a0.re, coin.a0.im],
            a1: [coin.a1.re, coin.a1.im],
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum DisorderArg {
    None,
    Time,
    Position,
    Both,
}

impl From<DisorderArg> for DisorderKind {
    fn from(d: DisorderArg) -> Self {
        match d {
            DisorderArg::None => DisorderKind::None,
            DisorderArg::Time => DisorderKind::Time,
            DisorderArg::Position => DisorderKind::Position,
            DisorderArg::Both => DisorderKind::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum TargetArg {
    PhiX,
    PhiY,
    Both,
}

impl From<TargetArg> for DisorderTarget {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::PhiX => DisorderTarget::PhiXOnly,
            TargetArg::PhiY => DisorderTarget::PhiYOnly,
            TargetArg::Both => DisorderTarget::BothPhases,
        }
    }
}

/// Everything needed to reproduce one invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub steps: usize,
    pub phi_x: Angle,
    pub phi_y: Angle,
    pub coin: CoinSpec,
    pub step_base: i64,
    pub disorder: DisorderArg,
    pub disorder_target: TargetArg,
    pub epsilon: f64,
    pub seed: u64,
    pub trials: Option<usize>,
    pub grid_n: usize,
    pub coherence_cap: usize,
    pub format: OutputFormat,
}

impl RunConfig {
    pub fn disorder_spec(&self) -> DisorderSpec {
        DisorderSpec::new(self.disorder.into(), self.epsilon, self.seed)
            .with_target(self.disorder_target.into())
    }

    pub fn walk_params(&self) -> WalkParams {
        WalkParams::new(self.steps, self.phi_x.radians, self.phi_y.radians)
            .with_coin(self.coin.coin())
            .with_step_base(self.step_base)
            .with_disorder(self.disorder_spec())
    }

    /// Re-derives angle values from their recorded text so a manifest
    /// reproduces the exact bits of the original parse.
    pub fn normalized(mut self) -> Result<Self, String> {
        for angle in [&mut self.phi_x, &mut self.phi_y] {
            *angle = angle.text.parse::<Angle>().map_err(|e| e.to_string())?;
        }
        self.coin = self.coin.text.parse()?;
        Ok(self)
    }
}
