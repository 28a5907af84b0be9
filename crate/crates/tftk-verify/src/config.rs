//! Experiment names, configurations, defaults, and validation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The ten named experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExperimentName {
    SchattenBound,
    Lemma31,
    KnRoundtrip,
    KnMagnitude,
    NormEquivalence,
    Counterexample,
    Embedding,
    FrameSuite,
    WilsonSuite,
    Monotonicity,
}

pub const ALL_EXPERIMENTS: [ExperimentName; 10] = [
    ExperimentName::SchattenBound,
    ExperimentName::Lemma31,
    ExperimentName::KnRoundtrip,
    ExperimentName::KnMagnitude,
    ExperimentName::NormEquivalence,
    ExperimentName::Counterexample,
    ExperimentName::Embedding,
    ExperimentName::FrameSuite,
    ExperimentName::WilsonSuite,
    ExperimentName::Monotonicity,
];

impl ExperimentName {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::SchattenBound => "schatten-bound",
            Self::Lemma31 => "lemma31",
            Self::KnRoundtrip => "kn-roundtrip",
            Self::KnMagnitude => "kn-magnitude",
            Self::NormEquivalence => "norm-equivalence",
            Self::Counterexample => "counterexample",
            Self::Embedding => "embedding",
            Self::FrameSuite => "frame-suite",
            Self::WilsonSuite => "wilson-suite",
            Self::Monotonicity => "monotonicity",
        }
    }
}

impl fmt::Display for ExperimentName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExperimentName {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        ALL_EXPERIMENTS
            .iter()
            .find(|e| e.as_str() == s)
            .copied()
            .ok_or_else(|| ConfigError(format!("unknown experiment {s:?}")))
    }
}

/// A rejected configuration; maps to exit code 2 at the CLI.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

/// Everything an experiment run depends on. Identical configs produce
/// identical reports.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub name: ExperimentName,
    /// Ambient dimension N.
    pub dim: usize,
    pub trials: usize,
    pub p_grid: Vec<f64>,
    /// Weight parameter for polynomial weights.
    pub s: f64,
    pub seed: u64,
    pub lattice_a: usize,
    pub lattice_b: usize,
    /// Wilson channel count M.
    pub channels: usize,
}

/// The echo of a configuration stored inside a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub dim: usize,
    pub trials: usize,
    pub p_grid: Vec<f64>,
    pub s: f64,
    pub seed: u64,
    pub lattice_a: usize,
    pub lattice_b: usize,
    pub channels: usize,
}

impl ExperimentConfig {
    /// The default configuration of an experiment; every field can be
    /// overridden from the CLI.
    pub fn defaults_for(name: ExperimentName) -> Self {
        let base = Self {
            name,
            dim: 8,
            trials: 100,
            p_grid: vec![1.0, 2.0],
            s: 1.0,
            seed: 42,
            lattice_a: 2,
            lattice_b: 2,
            channels: 4,
        };
        match name {
            ExperimentName::SchattenBound => Self {
                trials: 200,
                p_grid: vec![1.0, 1.25, 1.5, 1.75, 2.0],
                ..base
            },
            ExperimentName::Lemma31 => Self {
                trials: 200,
                p_grid: vec![1.0, 1.5, 2.0],
                ..base
            },
            ExperimentName::KnRoundtrip => Self { dim: 16, trials: 5, ..base },
            ExperimentName::KnMagnitude => Self { trials: 3, ..base },
            ExperimentName::NormEquivalence => Self { trials: 50, ..base },
            ExperimentName::Counterexample => Self { dim: 64, trials: 20, ..base },
            ExperimentName::Embedding => Self { trials: 500, p_grid: vec![1.5], ..base },
            ExperimentName::FrameSuite => Self { dim: 16, ..base },
            ExperimentName::WilsonSuite => Self { dim: 32, ..base },
            ExperimentName::Monotonicity => Self { trials: 500, ..base },
        }
    }

    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            dim: self.dim,
            trials: self.trials,
            p_grid: self.p_grid.clone(),
            s: self.s,
            seed: self.seed,
            lattice_a: self.lattice_a,
            lattice_b: self.lattice_b,
            channels: self.channels,
        }
    }

    /// Enforces the config invariants for the named experiment.
    pub fn validate(&self) -> Result<(), ConfigError> {
        use ExperimentName::*;
        if self.dim < 2 || self.dim > 64 {
            return Err(ConfigError(format!("dim must lie in [2, 64], got {}", self.dim)));
        }
        if matches!(self.name, KnMagnitude | NormEquivalence) && self.dim > 32 {
            return Err(ConfigError(format!(
                "{} materializes N^4 coefficient grids; dim must be <= 32, got {}",
                self.name, self.dim
            )));
        }
        if self.p_grid.is_empty() {
            return Err(ConfigError("p grid must not be empty".into()));
        }
        if self.p_grid.iter().any(|p| !p.is_finite() || *p < 1.0) {
            return Err(ConfigError(format!("p grid must lie in [1, inf), got {:?}", self.p_grid)));
        }
        if matches!(self.name, SchattenBound | Lemma31 | NormEquivalence | Embedding)
            && self.p_grid.iter().any(|p| *p > 2.0)
        {
            return Err(ConfigError(format!(
                "{} requires p in [1, 2], got {:?}",
                self.name, self.p_grid
            )));
        }
        if matches!(self.name, SchattenBound | Lemma31 | FrameSuite) {
            if self.lattice_a == 0
                || self.lattice_b == 0
                || self.dim % self.lattice_a != 0
                || self.dim % self.lattice_b != 0
            {
                return Err(ConfigError(format!(
                    "lattice steps ({}, {}) must divide dim {}",
                    self.lattice_a, self.lattice_b, self.dim
                )));
            }
            let elements = (self.dim / self.lattice_a) * (self.dim / self.lattice_b);
            if elements > 1024 {
                return Err(ConfigError(format!(
                    "tensor coefficient grid would hold {elements}^2 entries; \
                     reduce dim or enlarge the lattice steps"
                )));
            }
        }
        if matches!(self.name, Counterexample | WilsonSuite) {
            if self.channels < 2 || self.dim % (2 * self.channels) != 0 {
                return Err(ConfigError(format!(
                    "need 2M | N and M >= 2, got N = {}, M = {}",
                    self.dim, self.channels
                )));
            }
        }
        if self.name == Embedding {
            if self.s < 0.0 {
                return Err(ConfigError(format!("weight parameter s must be >= 0, got {}", self.s)));
            }
            let boundary = 2.0 / (1.0 + self.s);
            if self.p_grid.iter().any(|p| *p < 2.0 && *p <= boundary) {
                return Err(ConfigError(format!(
                    "embedding exponents below the convergence boundary 2d/(d+s) = {boundary}"
                )));
            }
        }
        Ok(())
    }
}
