//! Monotonicity suites: mixed-norm exponent and weight monotonicity,
//! Schatten monotonicity, and permutation invariance at equal exponents.

use std::collections::BTreeMap;

use tftk::coeff::{Axis, CoeffArray};
use tftk::norms::{mixed_norm, Exponent, MixedNormSpec, Permutation, Weight};
use tftk::operators::KernelOperator;

use crate::config::ExperimentConfig;
use crate::experiments::{map_trials, numeric, record, ExperimentOutput};
use crate::rng::TrialRng;

const EXP_MENU: [f64; 6] = [1.0, 1.25, 1.5, 2.0, 3.0, f64::INFINITY];

pub fn run(cfg: &ExperimentConfig) -> ExperimentOutput {
    let records = map_trials(cfg.trials, |trial| {
        let mut rng = TrialRng::new(cfg.seed, trial as u64);
        let mut out = Vec::with_capacity(4);

        // exponent monotonicity: p <= r entrywise implies ||.||_r <= ||.||_p
        let extents: &[usize] = if trial % 2 == 0 { &[4, 5] } else { &[3, 3, 2, 4] };
        let array = random_array(&mut rng, extents, trial)?;
        let m = extents.len();
        let mut lo = Vec::with_capacity(m);
        let mut hi = Vec::with_capacity(m);
        for _ in 0..m {
            let i = rng.range(EXP_MENU.len());
            let j = i + rng.range(EXP_MENU.len() - i);
            lo.push(Exponent::new(EXP_MENU[i]).map_err(|e| numeric(Some(trial), e))?);
            hi.push(Exponent::new(EXP_MENU[j]).map_err(|e| numeric(Some(trial), e))?);
        }
        let norm_lo = mixed_norm(
            &array,
            &MixedNormSpec::new(lo, Permutation::identity(m), Weight::One)
                .map_err(|e| numeric(Some(trial), e))?,
        )
        .map_err(|e| numeric(Some(trial), e))?;
        let norm_hi = mixed_norm(
            &array,
            &MixedNormSpec::new(hi, Permutation::identity(m), Weight::One)
                .map_err(|e| numeric(Some(trial), e))?,
        )
        .map_err(|e| numeric(Some(trial), e))?;
        out.push(record(
            trial,
            rng.digest(),
            "exponent monotonicity",
            norm_hi,
            norm_lo,
            ((norm_hi - norm_lo) / norm_lo.max(1.0)).max(0.0),
        ));

        // weight monotonicity: t <= s implies v_t-norm <= v_s-norm
        let s = rng.uniform(0.0, 2.0);
        let t = rng.uniform(0.0, 1.0) * s;
        let p = rng.uniform(1.0, 3.0);
        let exps = vec![Exponent::Finite(p); m];
        let norm_t = mixed_norm(
            &array,
            &MixedNormSpec::new(exps.clone(), Permutation::identity(m), Weight::Poly { s: t })
                .map_err(|e| numeric(Some(trial), e))?,
        )
        .map_err(|e| numeric(Some(trial), e))?;
        let norm_s = mixed_norm(
            &array,
            &MixedNormSpec::new(exps, Permutation::identity(m), Weight::Poly { s })
                .map_err(|e| numeric(Some(trial), e))?,
        )
        .map_err(|e| numeric(Some(trial), e))?;
        out.push(record(
            trial,
            rng.digest(),
            "weight monotonicity",
            norm_t,
            norm_s,
            ((norm_t - norm_s) / norm_s.max(1.0)).max(0.0),
        ));

        // Schatten monotonicity: p <= q implies ||A||_q <= ||A||_p
        let kernel = KernelOperator::new(rng.gaussian_matrix(cfg.dim, cfg.dim))
            .map_err(|e| numeric(Some(trial), e))?;
        let mut schatten_slack = 0.0f64;
        let mut prev = f64::INFINITY;
        for p in [1.0, 1.25, 1.5, 2.0, 3.0, f64::INFINITY] {
            let value = kernel.schatten_norm(p).map_err(|e| numeric(Some(trial), e))?;
            if prev.is_finite() {
                schatten_slack = schatten_slack.max((value - prev) / prev.max(1.0));
            }
            prev = value;
        }
        out.push(record(
            trial,
            rng.digest(),
            "schatten monotonicity",
            prev,
            0.0,
            schatten_slack.max(0.0),
        ));

        // permutation invariance at equal exponents
        let square = random_array(&mut rng, &[3, 3, 3, 3], trial)?;
        let p_eq = [1.0, 1.5, 2.0][trial % 3];
        let mut image: Vec<usize> = (1..=4).collect();
        for i in (1..4).rev() {
            let j = rng.range(i + 1);
            image.swap(i, j);
        }
        let perm = Permutation::from_one_based(&image).map_err(|e| numeric(Some(trial), e))?;
        let id_norm = mixed_norm(
            &square,
            &MixedNormSpec::new(
                vec![Exponent::Finite(p_eq); 4],
                Permutation::identity(4),
                Weight::One,
            )
            .map_err(|e| numeric(Some(trial), e))?,
        )
        .map_err(|e| numeric(Some(trial), e))?;
        let perm_norm = mixed_norm(
            &square,
            &MixedNormSpec::new(vec![Exponent::Finite(p_eq); 4], perm, Weight::One)
                .map_err(|e| numeric(Some(trial), e))?,
        )
        .map_err(|e| numeric(Some(trial), e))?;
        out.push(record(
            trial,
            rng.digest(),
            "permutation invariance",
            perm_norm,
            id_norm,
            (perm_norm - id_norm).abs() / id_norm.max(1.0),
        ));
        Ok(out)
    })?;
    Ok((1e-12, records, BTreeMap::new()))
}

fn random_array(
    rng: &mut TrialRng,
    extents: &[usize],
    trial: usize,
) -> Result<CoeffArray, crate::experiments::RunError> {
    let axes: Vec<Axis> = extents
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            if i % 2 == 0 {
                Axis::time(i / 2 + 1, e)
            } else {
                Axis::frequency(i / 2 + 1, e)
            }
        })
        .collect();
    let len = extents.iter().product();
    CoeffArray::new(axes, (0..len).map(|_| rng.gaussian()).collect())
        .map_err(|e| numeric(Some(trial), e))
}
