//! Convergence-experiment configuration.
//!
//! Config files are flat `key=value` lines:
//!
//! ```text
//! measure=arc:1.5707963
//! f=conj
//! w_strategy=fixed:0
//! degrees=4,8,16,32
//! p=1,2
//! format=csv
//! resolution=8192      # optional
//! ```

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use super::catalog::FunctionId;
use super::HarnessError;
use crate::unit;

/// How the generating point wₙ is chosen for each degree n. The theory
/// places no restriction on the sequence {wₙ}; these are probes, none
/// canonical.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WStrategy {
    /// wₙ = e^{iθ} for every n.
    Fixed(f64),
    /// wₙ = e^{i·n·step}.
    Rotate(f64),
    /// wₙ drawn from a generator keyed by (seed, n).
    PseudoRandom(u64),
}

impl WStrategy {
    pub fn w_for(&self, n: usize) -> Complex64 {
        match self {
            WStrategy::Fixed(theta) => unit(*theta),
            WStrategy::Rotate(step) => unit(n as f64 * step),
            WStrategy::PseudoRandom(seed) => {
                // key the stream by (seed, n) so rows are independent of
                // evaluation order
                let mut rng =
                    ChaCha8Rng::seed_from_u64(seed.wrapping_add((n as u64).wrapping_mul(0x9E3779B97F4A7C15)));
                unit(rng.gen::<f64>() * TAU)
            }
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            WStrategy::PseudoRandom(seed) => Some(*seed),
            _ => None,
        }
    }
}

impl FromStr for WStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(theta) = s.strip_prefix("fixed:") {
            return theta
                .parse()
                .map(WStrategy::Fixed)
                .map_err(|_| format!("bad fixed angle {theta:?}"));
        }
        if let Some(step) = s.strip_prefix("rotate:") {
            return step
                .parse()
                .map(WStrategy::Rotate)
                .map_err(|_| format!("bad rotation step {step:?}"));
        }
        if let Some(seed) = s.strip_prefix("pseudorandom:") {
            return seed
                .parse()
                .map(WStrategy::PseudoRandom)
                .map_err(|_| format!("bad seed {seed:?}"));
        }
        if s == "pseudorandom" {
            return Err("pseudorandom strategy requires a seed: pseudorandom:<seed>".into());
        }
        Err(format!(
            "unknown w-strategy {s:?}; expected fixed:<theta>, rotate:<step>, or pseudorandom:<seed>"
        ))
    }
}

impl fmt::Display for WStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WStrategy::Fixed(theta) => write!(f, "fixed:{theta}"),
            WStrategy::Rotate(step) => write!(f, "rotate:{step}"),
            WStrategy::PseudoRandom(seed) => write!(f, "pseudorandom:{seed}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format {other:?}; expected csv or json")),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub measure: String,
    pub function: FunctionId,
    pub w_strategy: WStrategy,
    pub degrees: Vec<usize>,
    pub exponents: Vec<f64>,
    pub format: OutputFormat,
    pub resolution: Option<usize>,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.degrees.is_empty() {
            return Err(HarnessError::Config("degree list must not be empty".into()));
        }
        if !self.degrees.windows(2).all(|w| w[0] < w[1]) {
            return Err(HarnessError::Config(
                "degree list must be strictly increasing".into(),
            ));
        }
        if self.exponents.is_empty() {
            return Err(HarnessError::Config("exponent list must not be empty".into()));
        }
        for &p in &self.exponents {
            if !(p > 0.0 && p <= 2.0) {
                return Err(HarnessError::Config(format!(
                    "exponents must lie in (0, 2], got {p}"
                )));
            }
        }
        super::parse_measure_spec(&self.measure)?;
        Ok(())
    }

    /// Parse the flat key=value format; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, HarnessError> {
        let mut measure = None;
        let mut function = None;
        let mut w_strategy = None;
        let mut degrees = None;
        let mut exponents = None;
        let mut format = OutputFormat::Csv;
        let mut resolution = None;

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                HarnessError::Config(format!("line {}: expected key=value, got {line:?}", lineno + 1))
            })?;
            let bad = |msg: String| HarnessError::Config(format!("line {}: {msg}", lineno + 1));
            match key.trim() {
                "measure" => measure = Some(value.trim().to_string()),
                "f" => function = Some(value.trim().parse::<FunctionId>().map_err(bad)?),
                "w_strategy" => w_strategy = Some(value.trim().parse::<WStrategy>().map_err(bad)?),
                "degrees" => {
                    degrees = Some(
                        value
                            .split(',')
                            .map(|v| v.trim().parse::<usize>())
                            .collect::<Result<Vec<_>, _>>()
                            .map_err(|e| bad(e.to_string()))?,
                    )
                }
                "p" => {
                    exponents = Some(
                        value
                            .split(',')
                            .map(|v| v.trim().parse::<f64>())
                            .collect::<Result<Vec<_>, _>>()
                            .map_err(|e| bad(e.to_string()))?,
                    )
                }
                "format" => format = value.trim().parse::<OutputFormat>().map_err(bad)?,
                "resolution" => {
                    resolution = Some(value.trim().parse::<usize>().map_err(|e| bad(e.to_string()))?)
                }
                other => return Err(bad(format!("unknown key {other:?}"))),
            }
        }

        let cfg = ExperimentConfig {
            measure: measure.ok_or_else(|| HarnessError::Config("missing key `measure`".into()))?,
            function: function.ok_or_else(|| HarnessError::Config("missing key `f`".into()))?,
            w_strategy: w_strategy
                .ok_or_else(|| HarnessError::Config("missing key `w_strategy`".into()))?,
            degrees: degrees.ok_or_else(|| HarnessError::Config("missing key `degrees`".into()))?,
            exponents: exponents.ok_or_else(|| HarnessError::Config("missing key `p`".into()))?,
            format,
            resolution,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Inverse of [`ExperimentConfig::parse`].
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("measure={}\n", self.measure));
        out.push_str(&format!("f={}\n", self.function));
        out.push_str(&format!("w_strategy={}\n", self.w_strategy));
        out.push_str(&format!(
            "degrees={}\n",
            self.degrees
                .iter()
                .map(|n| n.to_string())
                .collect::<Vec<_>>()
                .join(",")
        ));
        out.push_str(&format!(
            "p={}\n",
            self.exponents
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        ));
        out.push_str(&format!("format={}\n", self.format));
        if let Some(r) = self.resolution {
            out.push_str(&format!("resolution={r}\n"));
        }
        out
    }
}
