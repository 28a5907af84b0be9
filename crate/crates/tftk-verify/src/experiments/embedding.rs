//! The weighted-l2 into mixed-l^{2,p} embedding: certified constant,
//! boundary divergence flag, and the strictness witness ladder.

use std::collections::BTreeMap;

use tftk::coeff::{Axis, CoeffArray};
use tftk::norms::{
    embedding_constant, embedding_witness_norms, mixed_norm, Exponent, MixedNormSpec,
    Permutation, Weight,
};

use crate::config::ExperimentConfig;
use crate::experiments::{map_trials, numeric, record, ExperimentOutput};
use crate::rng::TrialRng;

const DIMENSION_D: usize = 1;
const TRUNCATION: usize = 64;
const INNER_EXTENT: usize = 5;
const OUTER_EXTENT: usize = 7;
const WITNESS_RADII: [i64; 5] = [4, 8, 16, 32, 64];
/// Required growth of the weighted witness norm per box doubling.
const WITNESS_GROWTH: f64 = 1.10;

pub fn run(cfg: &ExperimentConfig) -> ExperimentOutput {
    let s = cfg.s;
    let mut constants = BTreeMap::new();

    // Hoelder inequality with the certified constant on random arrays
    let mut specs = Vec::new();
    for &p in &cfg.p_grid {
        let cert = embedding_constant(DIMENSION_D, s, p, TRUNCATION)
            .map_err(|e| numeric(None, e))?;
        constants.insert(format!("constant_p={p}"), cert.constant);
        constants.insert(format!("constant_with_tail_p={p}"), cert.constant_with_tail);
        constants.insert(format!("tail_bound_p={p}"), cert.tail_bound);
        let lhs_spec = MixedNormSpec::new(
            vec![
                Exponent::Finite(2.0),
                Exponent::Finite(2.0),
                Exponent::new(p).map_err(|e| numeric(None, e))?,
                Exponent::new(p).map_err(|e| numeric(None, e))?,
            ],
            Permutation::identity(4),
            Weight::One,
        )
        .map_err(|e| numeric(None, e))?;
        let rhs_spec = MixedNormSpec::new(
            vec![Exponent::Finite(2.0); 4],
            Permutation::identity(4),
            Weight::PolyOuter { s, outer: 2 },
        )
        .map_err(|e| numeric(None, e))?;
        specs.push((p, cert.constant_with_tail, lhs_spec, rhs_spec));
    }
    let axes = vec![
        Axis::time(1, INNER_EXTENT),
        Axis::frequency(1, INNER_EXTENT),
        Axis::time(2, OUTER_EXTENT),
        Axis::frequency(2, OUTER_EXTENT),
    ];
    let len = INNER_EXTENT * INNER_EXTENT * OUTER_EXTENT * OUTER_EXTENT;
    let mut records = map_trials(cfg.trials, |trial| {
        let mut rng = TrialRng::new(cfg.seed, trial as u64);
        let x = CoeffArray::new(axes.clone(), (0..len).map(|_| rng.gaussian()).collect())
            .map_err(|e| numeric(Some(trial), e))?;
        let digest = rng.digest();
        let mut out = Vec::with_capacity(specs.len());
        for (p, constant, lhs_spec, rhs_spec) in &specs {
            let lhs = mixed_norm(&x, lhs_spec).map_err(|e| numeric(Some(trial), e))?;
            let rhs =
                constant * mixed_norm(&x, rhs_spec).map_err(|e| numeric(Some(trial), e))?;
            out.push(record(
                trial,
                digest.clone(),
                format!("holder p={p}"),
                lhs,
                rhs,
                (lhs - rhs).max(0.0),
            ));
        }
        Ok(out)
    })?;

    // boundary case p = 2d/(d+s): no finite constant may be claimed
    let boundary = 2.0 * DIMENSION_D as f64 / (DIMENSION_D as f64 + s);
    let boundary_rejected =
        embedding_constant(DIMENSION_D, s, boundary, TRUNCATION).is_err();
    constants.insert("boundary_p".to_string(), boundary);
    constants.insert(
        "boundary_flagged_divergent".to_string(),
        if boundary_rejected { 1.0 } else { 0.0 },
    );
    records.push(record(
        cfg.trials,
        "deterministic",
        "boundary divergence flag",
        if boundary_rejected { 1.0 } else { 0.0 },
        1.0,
        if boundary_rejected { 0.0 } else { 1.0 },
    ));

    // witness ladder: weighted norms keep growing, l^p norms converge
    let p_witness = cfg.p_grid[0];
    let ladder: Vec<(f64, f64)> = WITNESS_RADII
        .iter()
        .map(|&r| embedding_witness_norms(DIMENSION_D, s, p_witness, r))
        .collect();
    for (r, (weighted, plain)) in WITNESS_RADII.iter().zip(&ladder) {
        records.push(record(
            cfg.trials,
            "deterministic",
            format!("witness box R={r}"),
            *weighted,
            *plain,
            0.0,
        ));
    }
    let mut growth_slack = 0.0f64;
    for w in ladder.windows(2) {
        growth_slack = growth_slack.max((WITNESS_GROWTH * w[0].0 - w[1].0) / w[0].0);
    }
    records.push(record(
        cfg.trials,
        "deterministic",
        "witness weighted-norm growth gate",
        growth_slack,
        0.0,
        growth_slack.max(0.0),
    ));
    let mut ratio_slack = 0.0f64;
    let mut prev_inc = f64::INFINITY;
    for w in ladder.windows(2) {
        let inc = w[1].1 - w[0].1;
        if prev_inc.is_finite() {
            ratio_slack = ratio_slack.max(inc / prev_inc - 1.0);
        }
        prev_inc = inc;
    }
    records.push(record(
        cfg.trials,
        "deterministic",
        "witness convergence gate",
        ratio_slack,
        0.0,
        ratio_slack.max(0.0),
    ));

    Ok((1e-12, records, constants))
}
