//! Angle syntax for the command line.
//!
//! Accepted forms: decimal radians (`2.387`, `-0.5`, `1e-3`), and multiples
//! of pi written `[-][k][*]pi[/n]` (`pi`, `-pi/4`, `19pi/25`, `2*pi`). The
//! symbol `π` is accepted in place of `pi`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

const GRAMMAR: &str = "expected decimal radians (e.g. 2.387) or a fraction of pi (e.g. 19pi/25, pi/4, -2*pi)";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AngleParseError {
    pub input: String,
}

impl fmt::Display for AngleParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot parse angle {:?}: {GRAMMAR}", self.input)
    }
}

impl std::error::Error for AngleParseError {}

/// An angle with the text it was given as, so it can be echoed exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Angle {
    pub radians: f64,
    /// Normalized `k*pi/n` form when the input was symbolic.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub symbolic: Option<String>,
    pub text: String,
}

impl Angle {
    pub fn from_radians(radians: f64) -> Self {
        Self { radians, symbolic: None, text: format!("{radians:?}") }
    }
}

impl FromStr for Angle {
    type Err = AngleParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || AngleParseError { input: s.to_string() };
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(err());
        }
        let lowered = trimmed.to_ascii_lowercase().replace('π', "pi");
        let Some(pos) = lowered.find("pi") else {
            let radians: f64 = lowered.parse().map_err(|_| err())?;
            if !radians.is_finite() {
                return Err(err());
            }
            return Ok(Angle { radians, symbolic: None, text: trimmed.to_string() });
        };

        let (head, tail) = (&lowered[..pos], &lowered[pos + 2..]);
        let head = head.strip_suffix('*').unwrap_or(head);
        let numerator: i64 = match head {
            "" => 1,
            "-" => -1,
            "+" => 1,
            h => h.parse().map_err(|_| err())?,
        };
        let denominator: i64 = match tail {
            "" => 1,
            t => {
                let d = t.strip_prefix('/').ok_or_else(err)?;
                d.parse().map_err(|_| err())?
            }
        };
        if denominator <= 0 {
            return Err(err());
        }
        let radians = numerator as f64 * PI / denominator as f64;
        let symbolic = match (numerator, denominator) {
            (0, _) => "0".to_string(),
            (1, 1) => "pi".to_string(),
            (-1, 1) => "-pi".to_string(),
            (n, 1) => format!("{n}pi"),
            (1, d) => format!("pi/{d}"),
            (-1, d) => format!("-pi/{d}"),
            (n, d) => format!("{n}pi/{d}"),
        };
        Ok(Angle { radians, symbolic: Some(symbolic), text: trimmed.to_string() })
    }
}

pub fn parse_angle(text: &str) -> Result<f64, AngleParseError> {
    text.parse::<Angle>().map(|a| a.radians)
}
