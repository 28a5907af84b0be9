//! Operator-level bounds: the tensor-frame Schatten bound, the coefficient
//! operator contraction, quantization identities, and spectra of Wilson
//! expansions.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tftk::gabor::{CanonicalKind, GaborLattice, GaborSystem};
use tftk::norms::{mixed_norm, Exponent, MixedNormSpec, Permutation, Weight};
use tftk::operators::{
    build_counterexample, kn_tf_magnitude_check, kn_unitary, schatten_bound_rhs, KernelOperator,
};
use tftk::signal::{gaussian_window, Signal, Window};
use tftk::stft::stft2_full;
use tftk::wilson::{WilsonBasis, WilsonIndex};
use tftk::CMatrix;

fn random_kernel(rng: &mut ChaCha8Rng, n: usize) -> KernelOperator {
    let mut m = CMatrix::zeros(n, n);
    for t in 0..n {
        for y in 0..n {
            m[(t, y)] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
    }
    KernelOperator::new(m).unwrap()
}

fn parseval_gaussian(n: usize, a: usize, b: usize) -> GaborSystem {
    GaborSystem::new(GaborLattice::new(n, a, b).unwrap(), gaussian_window(n).unwrap())
        .unwrap()
        .canonical_system(CanonicalKind::Tight)
        .unwrap()
}

#[test]
fn schatten_bound_dominates_schatten_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    let sys = parseval_gaussian(8, 2, 2);
    for _ in 0..50 {
        let k = random_kernel(&mut rng, 8);
        for p in [1.0, 1.25, 1.5, 1.75, 2.0] {
            let lhs = k.schatten_norm(p).unwrap();
            let rhs = schatten_bound_rhs(&k, &sys, p).unwrap();
            assert!(lhs <= rhs * (1.0 + 1e-9), "p = {p}: {lhs} > {rhs}");
        }
        // forced equality at p = 2
        let rhs2 = schatten_bound_rhs(&k, &sys, 2.0).unwrap();
        let gap = (k.schatten_norm(2.0).unwrap() - rhs2).abs();
        assert!(gap <= 1e-8 * k.frobenius_norm());
    }
}

#[test]
fn schatten_bound_closed_forms_in_onb() {
    let n = 4usize;
    let onb = GaborSystem::new(
        GaborLattice::new(n, 1, n).unwrap(),
        Window::unit(Signal::delta(n, 0).unwrap()).unwrap(),
    )
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let k = random_kernel(&mut rng, n);
    for p in [1.0, 1.5, 2.0] {
        // matrix units: RHS = l^p norm of the column l2 norms
        let mut want = 0.0f64;
        for col in 0..n {
            let mut inner = 0.0;
            for row in 0..n {
                inner += k.matrix()[(row, col)].norm_sqr();
            }
            want += inner.sqrt().powf(p);
        }
        let want = want.powf(1.0 / p);
        let got = schatten_bound_rhs(&k, &onb, p).unwrap();
        assert!((got - want).abs() <= 1e-10 * want);
    }
    // k = E_{ij}: RHS = 1 = Schatten norm, every p
    let mut m = CMatrix::zeros(n, n);
    m[(2, 1)] = Complex64::new(1.0, 0.0);
    let e = KernelOperator::new(m).unwrap();
    for p in [1.0, 1.3, 2.0] {
        assert!((schatten_bound_rhs(&e, &onb, p).unwrap() - 1.0).abs() <= 1e-12);
        assert!((e.schatten_norm(p).unwrap() - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn schatten_bound_rejects_non_parseval_systems() {
    let raw = GaborSystem::new(
        GaborLattice::new(8, 2, 2).unwrap(),
        gaussian_window(8).unwrap(),
    )
    .unwrap();
    let k = KernelOperator::identity(8);
    assert!(matches!(
        schatten_bound_rhs(&k, &raw, 1.5),
        Err(tftk::Error::NotParseval { .. })
    ));
    let tight = raw.canonical_system(CanonicalKind::Tight).unwrap();
    assert!(matches!(
        schatten_bound_rhs(&k, &tight, 2.5),
        Err(tftk::Error::InvalidExponent { .. })
    ));
}

#[test]
fn coefficient_operator_is_a_contraction() {
    // (sum_j |sum_n <f_j, phi_n><G(., n), g_j>|^p)^{1/p} <= ||G||_{2,p}
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let n = 8usize;
    let sys = parseval_gaussian(n, 2, 2);
    let count = sys.element_count();
    let elements = sys.elements();
    for _ in 0..50 {
        let fam_f = random_orthonormal(&mut rng, n);
        let fam_g = random_orthonormal(&mut rng, n);
        let mut g_cols: Vec<Signal> = Vec::with_capacity(count);
        for _ in 0..count {
            g_cols.push(Signal::new(
                (0..n)
                    .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect(),
            )
            .unwrap());
        }
        for p in [1.0, 1.5, 2.0] {
            let mut lhs = 0.0f64;
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for (col, phi) in elements.iter().enumerate() {
                    acc += fam_f[j].inner(phi).unwrap() * g_cols[col].inner(&fam_g[j]).unwrap();
                }
                lhs += acc.norm().powf(p);
            }
            let lhs = lhs.powf(1.0 / p);
            let rhs = g_cols
                .iter()
                .map(|col| col.norm().powf(p))
                .sum::<f64>()
                .powf(1.0 / p);
            assert!(lhs <= rhs + 1e-9, "p = {p}: {lhs} > {rhs}");
        }
    }
}

fn random_orthonormal(rng: &mut ChaCha8Rng, n: usize) -> Vec<Signal> {
    let mut m = CMatrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            m[(r, c)] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
    }
    let q = m.qr().q();
    (0..n)
        .map(|c| Signal::new((0..n).map(|r| q[(r, c)]).collect()).unwrap())
        .collect()
}

#[test]
fn schatten_monotonicity() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for _ in 0..100 {
        let k = random_kernel(&mut rng, 8);
        let ps = [1.0, 1.25, 1.5, 2.0, 3.0, f64::INFINITY];
        let norms: Vec<f64> = ps.iter().map(|&p| k.schatten_norm(p).unwrap()).collect();
        for w in norms.windows(2) {
            assert!(w[1] <= w[0] * (1.0 + 1e-12));
        }
    }
}

#[test]
fn magnitude_identity_sampled_at_n8() {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let n = 8usize;
    let k = random_kernel(&mut rng, n);
    let g = gaussian_window(n).unwrap();
    let mut w = CMatrix::zeros(n, n);
    for t in 0..n {
        for y in 0..n {
            w[(t, y)] = g.signal()[t] * g.signal()[y];
        }
    }
    let window = KernelOperator::new(w).unwrap();
    // 8^4 = 4096, so asking for 4096 tuples covers the whole grid
    let report = kn_tf_magnitude_check(&k, &window, 4096, 11).unwrap();
    assert!(report.exhaustive);
    assert_eq!(report.tuples, 4096);
    assert!(report.max_deviation <= 1e-9, "dev = {:e}", report.max_deviation);
}

#[test]
fn kernel_and_symbol_norms_agree_at_p2() {
    // slice-permuted (2,2,p,p) norms of kernel and isometrically scaled
    // symbol coincide exactly at p = 2
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let n = 8usize;
    let g = gaussian_window(n).unwrap();
    let mut w = CMatrix::zeros(n, n);
    for t in 0..n {
        for y in 0..n {
            w[(t, y)] = g.signal()[t] * g.signal()[y];
        }
    }
    let w_sym = kn_unitary(&w).unwrap();
    let slice = Permutation::from_one_based(&[2, 4, 1, 3]).unwrap();
    let mut c_upper: f64 = 1.0;
    for _ in 0..10 {
        let k = random_kernel(&mut rng, n);
        let tau = kn_unitary(k.matrix()).unwrap();
        let vk = stft2_full(k.matrix(), &w).unwrap();
        let vt = stft2_full(&tau, &w_sym).unwrap();
        for p in [1.0, 2.0] {
            let spec = MixedNormSpec::new(
                vec![
                    Exponent::Finite(2.0),
                    Exponent::Finite(2.0),
                    Exponent::Finite(p),
                    Exponent::Finite(p),
                ],
                slice.clone(),
                Weight::One,
            )
            .unwrap();
            let ratio = mixed_norm(&vk, &spec).unwrap() / mixed_norm(&vt, &spec).unwrap();
            if p == 2.0 {
                assert!((ratio - 1.0).abs() <= 1e-8, "p=2 ratio {ratio}");
            }
            c_upper = c_upper.max(ratio).max(1.0 / ratio);
        }
    }
    assert!(c_upper.is_finite() && c_upper < 2.0, "C = {c_upper}");
}

#[test]
fn counterexample_spectrum_for_random_weights() {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    for (n, m) in [(16usize, 2usize), (32, 4)] {
        let basis = WilsonBasis::build(n, m).unwrap();
        let indices = basis.indices().to_vec();
        for _ in 0..10 {
            let count = rng.gen_range(1..=indices.len());
            let mut picked = indices.clone();
            for i in (1..picked.len()).rev() {
                let j = rng.gen_range(0..=i);
                picked.swap(i, j);
            }
            picked.truncate(count);
            let lam: Vec<(WilsonIndex, Complex64)> = picked
                .into_iter()
                .map(|idx| {
                    (idx, Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                })
                .collect();
            let op = build_counterexample(&basis, &lam).unwrap();
            let mut want: Vec<f64> = lam.iter().map(|(_, w)| w.norm()).collect();
            want.resize(n, 0.0);
            want.sort_by(|a, b| b.partial_cmp(a).unwrap());
            let got = op.singular_values().unwrap();
            for (g, w) in got.values().iter().zip(&want) {
                assert!((g - w).abs() <= 1e-9, "{g} vs {w}");
            }
        }
    }
}

#[test]
fn sharpness_table_grows_in_trace_norm_only() {
    // lambda_{l,j} = (1 + |j|)^{-1}, channel-independent: the trace norm
    // grows with K while the sup-relaxed mixed norm stays put
    let m = 4usize;
    let mut trace_norms = Vec::new();
    let mut relaxed_norms = Vec::new();
    for kk in [2usize, 4, 8] {
        let n = 2 * m * kk;
        let basis = WilsonBasis::build(n, m).unwrap();
        let lam: Vec<(WilsonIndex, Complex64)> = basis
            .indices()
            .iter()
            .map(|&idx| {
                let centered = idx.k as i64 - kk as i64;
                (idx, Complex64::new(1.0 / (1.0 + centered.abs() as f64), 0.0))
            })
            .collect();
        let op = build_counterexample(&basis, &lam).unwrap();
        trace_norms.push(op.schatten_norm(1.0).unwrap());
        let coeffs = basis.tensor_coefficients(&op).unwrap();
        // inner (2,2) on the first-variable axes, l1 over the second
        // frequency, sup over the second time axis
        let spec = MixedNormSpec::new(
            vec![
                Exponent::Finite(2.0),
                Exponent::Finite(2.0),
                Exponent::Finite(1.0),
                Exponent::Infinite,
            ],
            Permutation::from_one_based(&[1, 4, 2, 3]).unwrap(),
            Weight::One,
        )
        .unwrap();
        relaxed_norms.push(mixed_norm(&coeffs, &spec).unwrap());
    }
    assert!(trace_norms.windows(2).all(|w| w[1] > w[0] * 1.01), "{trace_norms:?}");
    let first = relaxed_norms[0];
    for v in &relaxed_norms {
        assert!((v - first).abs() <= 0.05 * first, "{relaxed_norms:?}");
    }
    // frozen oracle values for the ladder
    for (got, want) in trace_norms.iter().zip([29.0 / 3.0, 83.0 / 6.0]) {
        assert!((got - want).abs() <= 1e-9 * want);
    }
    assert!((relaxed_norms[0] - 5.0).abs() <= 1e-9);
}
