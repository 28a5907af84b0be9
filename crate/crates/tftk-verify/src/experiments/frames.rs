//! Frame and Wilson verification suites.

use std::collections::BTreeMap;

use tftk::coeff::CoeffArray;
use tftk::gabor::{CanonicalKind, GaborLattice, GaborSystem};
use tftk::norms::{modulation_norm_full, modulation_norm_lattice, MixedNormSpec};
use tftk::operators::KernelOperator;
use tftk::signal::{gaussian_window, Window};
use tftk::wilson::WilsonBasis;

use crate::config::ExperimentConfig;
use crate::experiments::{map_trials, numeric, record, ExperimentOutput};
use crate::rng::TrialRng;

/// Canonical-window properties, frame inequalities, dual reconstruction in
/// both orders, analysis/synthesis adjointness, and measured lattice/full
/// norm ratios over an exponent grid.
pub fn frame_suite(cfg: &ExperimentConfig) -> ExperimentOutput {
    let n = cfg.dim;
    let lattice = GaborLattice::new(n, cfg.lattice_a, cfg.lattice_b)
        .map_err(|e| numeric(None, e))?;
    let gaussian = gaussian_window(n).map_err(|e| numeric(None, e))?;
    let raw = GaborSystem::new(lattice, gaussian.clone()).map_err(|e| numeric(None, e))?;
    let tight = raw.canonical_system(CanonicalKind::Tight).map_err(|e| numeric(None, e))?;
    let dual = raw.canonical_system(CanonicalKind::Dual).map_err(|e| numeric(None, e))?;
    let (raw_lo, raw_hi) = raw.frame_bounds().map_err(|e| numeric(None, e))?;
    let (tight_lo, tight_hi) = tight.frame_bounds().map_err(|e| numeric(None, e))?;

    let mut records = vec![
        record(0, "deterministic", "tight lower bound", tight_lo, 1.0, (tight_lo - 1.0).abs()),
        record(0, "deterministic", "tight upper bound", tight_hi, 1.0, (tight_hi - 1.0).abs()),
    ];

    let trial_records = map_trials(cfg.trials, |trial| {
        let mut rng = TrialRng::new(cfg.seed, trial as u64);
        let f = Window::normalized(rng.gaussian_signal(n))
            .map_err(|e| numeric(Some(trial), e))?;
        let f = f.signal();
        let digest = rng.digest();
        let mut out = Vec::new();

        // Parseval energy identity on the tight system
        let energy = tight.analysis(f).map_err(|e| numeric(Some(trial), e))?.energy();
        out.push(record(
            trial,
            digest.clone(),
            "parseval energy",
            energy,
            1.0,
            (energy - 1.0).abs(),
        ));

        // two-sided frame inequality on the raw system
        let raw_energy = raw.analysis(f).map_err(|e| numeric(Some(trial), e))?.energy();
        let sandwich =
            (raw_lo - raw_energy).max(raw_energy - raw_hi).max(0.0) / raw_hi.max(1.0);
        out.push(record(trial, digest.clone(), "frame sandwich", raw_energy, raw_hi, sandwich));

        // dual reconstruction in both orders
        for (label, analyze, synthesize) in
            [("dual reconstruction (gamma, g)", &dual, &raw), ("dual reconstruction (g, gamma)", &raw, &dual)]
        {
            let coeffs = analyze.analysis(f).map_err(|e| numeric(Some(trial), e))?;
            let back = synthesize.synthesis(&coeffs).map_err(|e| numeric(Some(trial), e))?;
            let err: f64 = back
                .values()
                .iter()
                .zip(f.values())
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            out.push(record(trial, digest.clone(), label, err, 0.0, err));
        }

        // adjoint identity <analysis f, C> = <f, synthesis C>
        let coeffs = CoeffArray::new(
            raw.analysis(f).map_err(|e| numeric(Some(trial), e))?.axes().to_vec(),
            (0..raw.element_count()).map(|_| rng.gaussian()).collect(),
        )
        .map_err(|e| numeric(Some(trial), e))?;
        let lhs = raw
            .analysis(f)
            .map_err(|e| numeric(Some(trial), e))?
            .inner(&coeffs)
            .map_err(|e| numeric(Some(trial), e))?;
        let rhs = f
            .inner(&raw.synthesis(&coeffs).map_err(|e| numeric(Some(trial), e))?)
            .map_err(|e| numeric(Some(trial), e))?;
        let dev = (lhs - rhs).norm() / (1.0 + lhs.norm());
        out.push(record(trial, rng.digest(), "adjoint identity", lhs.norm(), rhs.norm(), dev));
        Ok(out)
    })?;
    records.extend(trial_records);

    // measured lattice/full modulation-norm ratios over an exponent grid;
    // reported, never asserted
    let mut constants = BTreeMap::new();
    constants.insert("raw_lower_bound".to_string(), raw_lo);
    constants.insert("raw_upper_bound".to_string(), raw_hi);
    let mut probe = TrialRng::new(cfg.seed, u64::MAX / 2);
    for ps in [[1.0, 1.0], [2.0, 2.0], [1.5, 2.0], [2.0, 1.0]] {
        let spec = MixedNormSpec::unweighted(&ps).map_err(|e| numeric(None, e))?;
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for _ in 0..cfg.trials.clamp(1, 100) {
            let f = Window::normalized(probe.gaussian_signal(n))
                .map_err(|e| numeric(None, e))?;
            let lattice_norm = modulation_norm_lattice(f.signal(), &raw, &spec)
                .map_err(|e| numeric(None, e))?;
            let full_norm = modulation_norm_full(f.signal(), &gaussian, &spec)
                .map_err(|e| numeric(None, e))?;
            let ratio = lattice_norm / full_norm;
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
        constants.insert(format!("lattice_full_ratio_lo_p={},{}", ps[0], ps[1]), lo);
        constants.insert(format!("lattice_full_ratio_hi_p={},{}", ps[0], ps[1]), hi);
    }
    Ok((1e-10, records, constants))
}

/// Gram gate, coefficient energy, reconstruction, and tensor energy for the
/// Wilson basis.
pub fn wilson_suite(cfg: &ExperimentConfig) -> ExperimentOutput {
    let n = cfg.dim;
    let basis = WilsonBasis::build(n, cfg.channels).map_err(|e| numeric(None, e))?;
    let gram = basis.gram_deviation();
    let mut records =
        vec![record(0, "deterministic", "gram gate", gram, 0.0, gram)];

    let trial_records = map_trials(cfg.trials, |trial| {
        let mut rng = TrialRng::new(cfg.seed, trial as u64);
        let f = rng.gaussian_signal(n);
        let digest = rng.digest();
        let coeffs = basis.coefficients(&f).map_err(|e| numeric(Some(trial), e))?;
        let energy_dev =
            (coeffs.energy() - f.norm().powi(2)).abs() / f.norm().powi(2).max(1e-300);
        let back = basis.synthesize(&coeffs).map_err(|e| numeric(Some(trial), e))?;
        let recon: f64 = back
            .values()
            .iter()
            .zip(f.values())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
            / f.norm();
        let mut out = vec![
            record(trial, digest.clone(), "coefficient energy", coeffs.energy(), f.norm().powi(2), energy_dev),
            record(trial, digest.clone(), "reconstruction", recon, 0.0, recon),
        ];
        // tensor energy identity on every eighth trial (kernel-sized work)
        if trial % 8 == 0 {
            let kernel = KernelOperator::new(rng.gaussian_matrix(n, n))
                .map_err(|e| numeric(Some(trial), e))?;
            let tensor = basis.tensor_coefficients(&kernel).map_err(|e| numeric(Some(trial), e))?;
            let fro2 = kernel.frobenius_norm().powi(2);
            out.push(record(
                trial,
                rng.digest(),
                "tensor energy",
                tensor.energy(),
                fro2,
                (tensor.energy() - fro2).abs() / fro2,
            ));
        }
        Ok(out)
    })?;
    records.extend(trial_records);
    Ok((1e-10, records, BTreeMap::new()))
}
