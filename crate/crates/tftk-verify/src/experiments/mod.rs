//! The ten experiments. Each one turns a configuration into a [`Report`]
//! whose records carry measured left/right sides and gate slacks.

use std::collections::BTreeMap;
use std::fmt;

use crate::config::{ConfigError, ExperimentConfig, ExperimentName};
use crate::report::{Report, TrialRecord};

mod counterexample;
mod embedding;
mod frames;
mod kn;
mod monotonicity;
mod schatten;

/// An experiment failure: a bad configuration or a numerical breakdown
/// attributed to the trial that hit it.
#[derive(Debug, Clone, PartialEq)]
pub enum RunError {
    Config(ConfigError),
    Numeric { trial: Option<usize>, source: tftk::Error },
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Config(e) => e.fmt(f),
            Self::Numeric { trial: Some(t), source } => {
                write!(f, "numerical failure in trial {t}: {source}")
            }
            Self::Numeric { trial: None, source } => write!(f, "numerical failure: {source}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        Self::Config(e)
    }
}

pub(crate) fn numeric(trial: Option<usize>, source: tftk::Error) -> RunError {
    RunError::Numeric { trial, source }
}

/// Runs the named experiment. Identical (config, seed) pairs produce
/// bit-identical reports regardless of thread count.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Report, RunError> {
    cfg.validate()?;
    let (tolerance, trials, constants) = match cfg.name {
        ExperimentName::SchattenBound => schatten::schatten_bound(cfg)?,
        ExperimentName::Lemma31 => schatten::lemma31(cfg)?,
        ExperimentName::KnRoundtrip => kn::roundtrip(cfg)?,
        ExperimentName::KnMagnitude => kn::magnitude(cfg)?,
        ExperimentName::NormEquivalence => kn::norm_equivalence(cfg)?,
        ExperimentName::Counterexample => counterexample::run(cfg)?,
        ExperimentName::Embedding => embedding::run(cfg)?,
        ExperimentName::FrameSuite => frames::frame_suite(cfg)?,
        ExperimentName::WilsonSuite => frames::wilson_suite(cfg)?,
        ExperimentName::Monotonicity => monotonicity::run(cfg)?,
    };
    Ok(Report::from_records(
        cfg.name.as_str(),
        cfg.echo(),
        tolerance,
        trials,
        constants,
    ))
}

pub(crate) type ExperimentOutput =
    Result<(f64, Vec<TrialRecord>, BTreeMap<String, f64>), RunError>;

/// Parallel map over trial indices, honoring the VERIFY_THREADS cap and
/// returning records in trial order regardless of scheduling.
pub(crate) fn map_trials<F>(trials: usize, f: F) -> Result<Vec<TrialRecord>, RunError>
where
    F: Fn(usize) -> Result<Vec<TrialRecord>, RunError> + Sync,
{
    use rayon::prelude::*;
    let pool = thread_pool()?;
    let nested: Vec<Vec<TrialRecord>> = pool.install(|| {
        (0..trials)
            .into_par_iter()
            .map(|t| f(t))
            .collect::<Result<Vec<_>, RunError>>()
    })?;
    Ok(nested.into_concat())
}

trait Concat {
    fn into_concat(self) -> Vec<TrialRecord>;
}

impl Concat for Vec<Vec<TrialRecord>> {
    fn into_concat(self) -> Vec<TrialRecord> {
        let mut out = Vec::with_capacity(self.iter().map(Vec::len).sum());
        for v in self {
            out.extend(v);
        }
        out
    }
}

fn thread_pool() -> Result<rayon::ThreadPool, RunError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(text) = std::env::var("VERIFY_THREADS") {
        if let Ok(threads) = text.parse::<usize>() {
            if threads >= 1 {
                builder = builder.num_threads(threads);
            }
        }
    }
    builder
        .build()
        .map_err(|_| RunError::Config(ConfigError("could not build thread pool".into())))
}

/// Shorthand for a record whose deviation is compared directly against the
/// report tolerance.
pub(crate) fn record(
    index: usize,
    digest: impl Into<String>,
    label: impl Into<String>,
    lhs: f64,
    rhs: f64,
    deviation: f64,
) -> TrialRecord {
    TrialRecord {
        index,
        digest: digest.into(),
        label: label.into(),
        lhs,
        rhs,
        deviation,
    }
}
