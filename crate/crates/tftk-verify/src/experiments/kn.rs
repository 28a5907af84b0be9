//! Kohn-Nirenberg quantization experiments: the exact round trip, the
//! time-frequency magnitude identity, and the kernel/symbol norm comparison.

use std::collections::BTreeMap;

use num_complex::Complex64;
use tftk::norms::{mixed_norm, tensor_gaussian_window, Exponent, MixedNormSpec, Permutation, Weight};
use tftk::operators::{
    kernel_to_kn, kn_tf_magnitude_check, kn_to_kernel, kn_unitary, KNSymbol, KernelOperator,
};
use tftk::signal::unit_phase;
use tftk::stft::stft2_full;
use tftk::CMatrix;

use crate::config::ExperimentConfig;
use crate::experiments::{map_trials, numeric, record, ExperimentOutput};
use crate::report::TrialRecord;
use crate::rng::TrialRng;

fn max_entry_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Exact inversion of the quantization pair plus the three closed-form
/// symbols (constant, multiplier, shift) and the Frobenius scaling of the
/// frozen convention.
pub fn roundtrip(cfg: &ExperimentConfig) -> ExperimentOutput {
    let n = cfg.dim;
    let mut records = Vec::new();

    // closed form: constant symbol quantizes to the identity
    let id = kn_to_kernel(&KNSymbol::constant(n, Complex64::new(1.0, 0.0)));
    records.push(record(
        0,
        "closed-form",
        "constant symbol -> identity",
        id.frobenius_norm(),
        (n as f64).sqrt(),
        max_entry_diff(id.matrix(), KernelOperator::identity(n).matrix()),
    ));

    // closed form: symbol depending on t only -> multiplication operator
    let mut tau = CMatrix::zeros(n, n);
    let mut diag = CMatrix::zeros(n, n);
    for t in 0..n {
        let m = Complex64::new(0.3 + t as f64, -(t as f64) * 0.5);
        diag[(t, t)] = m;
        for xi in 0..n {
            tau[(t, xi)] = m;
        }
    }
    let mult = kn_to_kernel(&KNSymbol::new(tau).map_err(|e| numeric(None, e))?);
    records.push(record(
        0,
        "closed-form",
        "multiplier symbol -> diagonal",
        mult.frobenius_norm(),
        diag.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt(),
        max_entry_diff(mult.matrix(), &diag),
    ));

    // closed form: tau(t, xi) = e^{2 pi i xi / N} -> cyclic shift f(.) -> f(.+1)
    let mut tau = CMatrix::zeros(n, n);
    let mut shift = CMatrix::zeros(n, n);
    for t in 0..n {
        shift[(t, (t + 1) % n)] = Complex64::new(1.0, 0.0);
        for xi in 0..n {
            tau[(t, xi)] = unit_phase(xi as i64, n as i64);
        }
    }
    let got = kn_to_kernel(&KNSymbol::new(tau).map_err(|e| numeric(None, e))?);
    records.push(record(
        0,
        "closed-form",
        "modulated symbol -> cyclic shift",
        got.frobenius_norm(),
        (n as f64).sqrt(),
        max_entry_diff(got.matrix(), &shift),
    ));

    // random round trips and the Frobenius scaling constant sqrt(N)
    let random: Vec<TrialRecord> = map_trials(cfg.trials, |trial| {
        let mut rng = TrialRng::new(cfg.seed, trial as u64);
        let kernel = KernelOperator::new(rng.gaussian_matrix(n, n))
            .map_err(|e| numeric(Some(trial), e))?;
        let digest = rng.digest();
        let tau = kernel_to_kn(&kernel);
        let back = kn_to_kernel(&tau);
        let mut out = vec![record(
            trial,
            digest.clone(),
            "round trip",
            back.frobenius_norm(),
            kernel.frobenius_norm(),
            max_entry_diff(back.matrix(), kernel.matrix()),
        )];
        let ratio = tau.frobenius_norm() / kernel.frobenius_norm();
        let scale = (n as f64).sqrt();
        out.push(record(
            trial,
            digest,
            "frobenius scaling",
            ratio,
            scale,
            (ratio - scale).abs() / scale,
        ));
        Ok(out)
    })?;
    records.extend(random);
    Ok((1e-12, records, BTreeMap::new()))
}

/// The magnitude identity between kernel and symbol coefficients at the
/// frozen index remap, exhaustive when N^4 tuples fit the budget.
pub fn magnitude(cfg: &ExperimentConfig) -> ExperimentOutput {
    let n = cfg.dim;
    let window = KernelOperator::new(tensor_gaussian_window(n).map_err(|e| numeric(None, e))?)
        .map_err(|e| numeric(None, e))?;
    let tuple_budget = 4096.min(n * n * n * n);
    let records = map_trials(cfg.trials, |trial| {
        let mut rng = TrialRng::new(cfg.seed, trial as u64);
        let kernel = KernelOperator::new(rng.gaussian_matrix(n, n))
            .map_err(|e| numeric(Some(trial), e))?;
        let digest = rng.digest();
        let report = kn_tf_magnitude_check(&kernel, &window, tuple_budget, cfg.seed ^ trial as u64)
            .map_err(|e| numeric(Some(trial), e))?;
        let label = if report.exhaustive {
            format!("magnitude identity ({} tuples, exhaustive)", report.tuples)
        } else {
            format!("magnitude identity ({} tuples, sampled)", report.tuples)
        };
        Ok(vec![record(
            trial,
            digest,
            label,
            report.max_deviation,
            0.0,
            report.max_deviation,
        )])
    })?;
    Ok((1e-9, records, BTreeMap::new()))
}

/// Slice-permuted mixed modulation norms of a kernel and of its
/// isometrically scaled symbol: the ratio interval [1/C, C] is recorded, and
/// at p = 2 the two norms must agree to 1e-8.
pub fn norm_equivalence(cfg: &ExperimentConfig) -> ExperimentOutput {
    let n = cfg.dim;
    let window = tensor_gaussian_window(n).map_err(|e| numeric(None, e))?;
    let window_sym = kn_unitary(&window).map_err(|e| numeric(None, e))?;
    let slice = Permutation::from_one_based(&[2, 4, 1, 3]).expect("fixed slice permutation");
    let records = map_trials(cfg.trials, |trial| {
        let mut rng = TrialRng::new(cfg.seed, trial as u64);
        let kernel = rng.gaussian_matrix(n, n);
        let digest = rng.digest();
        let tau = kn_unitary(&kernel).map_err(|e| numeric(Some(trial), e))?;
        let v_kernel = stft2_full(&kernel, &window).map_err(|e| numeric(Some(trial), e))?;
        let v_symbol = stft2_full(&tau, &window_sym).map_err(|e| numeric(Some(trial), e))?;
        let mut out = Vec::with_capacity(cfg.p_grid.len());
        for &p in &cfg.p_grid {
            let spec = MixedNormSpec::new(
                vec![
                    Exponent::Finite(2.0),
                    Exponent::Finite(2.0),
                    Exponent::new(p).map_err(|e| numeric(Some(trial), e))?,
                    Exponent::new(p).map_err(|e| numeric(Some(trial), e))?,
                ],
                slice.clone(),
                Weight::One,
            )
            .map_err(|e| numeric(Some(trial), e))?;
            let lhs = mixed_norm(&v_kernel, &spec).map_err(|e| numeric(Some(trial), e))?;
            let rhs = mixed_norm(&v_symbol, &spec).map_err(|e| numeric(Some(trial), e))?;
            let deviation = if p == 2.0 { (lhs / rhs - 1.0).abs() } else { 0.0 };
            out.push(record(trial, digest.clone(), format!("p={p} ratio"), lhs, rhs, deviation));
        }
        Ok(out)
    })?;
    let mut c_upper = 1.0f64;
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for r in &records {
        let ratio = r.lhs / r.rhs;
        lo = lo.min(ratio);
        hi = hi.max(ratio);
        c_upper = c_upper.max(ratio).max(1.0 / ratio);
    }
    let mut constants = BTreeMap::new();
    constants.insert("ratio_min".to_string(), lo);
    constants.insert("ratio_max".to_string(), hi);
    constants.insert("c".to_string(), c_upper);
    Ok((1e-8, records, constants))
}
