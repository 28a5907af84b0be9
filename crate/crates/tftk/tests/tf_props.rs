//! Invariants of the elementary time-frequency operations.

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tftk::signal::{dft, gaussian_window, modulate, tf_shift, translate, Direction, Signal, Window};
use tftk::stft::{istft_full, stft_full};

fn random_signal(rng: &mut ChaCha8Rng, n: usize) -> Signal {
    Signal::new(
        (0..n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect(),
    )
    .unwrap()
}

fn signal_strategy(n: usize) -> impl Strategy<Value = Signal> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n)
        .prop_map(|v| Signal::new(v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shifts_and_dft_are_unitary(f in signal_strategy(12), x in -24i64..24, xi in -24i64..24) {
        let norm = f.norm();
        prop_assert!((translate(&f, x).norm() - norm).abs() <= 1e-12);
        prop_assert!((modulate(&f, xi).norm() - norm).abs() <= 1e-12);
        prop_assert!((tf_shift(&f, x, xi).norm() - norm).abs() <= 1e-12);
        prop_assert!((dft(&f, Direction::Forward).norm() - norm).abs() <= 1e-12);
        prop_assert!((dft(&f, Direction::Inverse).norm() - norm).abs() <= 1e-12);
    }

    #[test]
    fn commutation_relation(f in signal_strategy(8), x in 0i64..8, xi in 0i64..8) {
        // M_xi T_x = e^{2 pi i x xi / N} T_x M_xi
        let n = 8i64;
        let lhs = modulate(&translate(&f, x), xi);
        let phase = Complex64::from_polar(
            1.0,
            2.0 * std::f64::consts::PI * ((x * xi).rem_euclid(n) as f64) / n as f64,
        );
        let rhs = translate(&modulate(&f, xi), x).scaled(phase);
        for (a, b) in lhs.values().iter().zip(rhs.values()) {
            prop_assert!((a - b).norm() <= 1e-12);
        }
    }
}

#[test]
fn orthogonality_relation_over_sizes() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for n in [8usize, 16, 32] {
        for _ in 0..100 {
            let f = random_signal(&mut rng, n);
            let g = Window::raw(random_signal(&mut rng, n));
            let v = stft_full(&f, &g).unwrap();
            let want = n as f64 * f.norm().powi(2) * g.signal().norm().powi(2);
            let rel = (v.energy() - want).abs() / want;
            assert!(rel <= 1e-10, "N = {n}: relative error {rel:e}");
        }
    }
}

#[test]
fn reconstruction_with_arbitrary_synthesis_window() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [8usize, 16] {
        for _ in 0..25 {
            let f = random_signal(&mut rng, n);
            let g = Window::normalized(random_signal(&mut rng, n)).unwrap();
            let psi = Window::raw(random_signal(&mut rng, n));
            let v = stft_full(&f, &g).unwrap();
            let got = istft_full(&v, &g, &psi).unwrap();
            let scale = psi.signal().inner(g.signal()).unwrap();
            let err: f64 = got
                .values()
                .iter()
                .zip(f.values())
                .map(|(a, b)| (a - b * scale).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(err / f.norm() <= 1e-10);
        }
    }
}

#[test]
fn covariance_shifts_magnitudes_cyclically() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let n = 8usize;
    let f = random_signal(&mut rng, n);
    let g = gaussian_window(n).unwrap();
    let base = stft_full(&f, &g).unwrap();
    for (a, b) in [(1i64, 3i64), (5, 2), (7, 7)] {
        let shifted = stft_full(&tf_shift(&f, a, b), &g).unwrap();
        for k in 0..n {
            for l in 0..n {
                let got = shifted.at(&[k, l]).unwrap().norm();
                let src = base
                    .at(&[
                        (k as i64 - a).rem_euclid(n as i64) as usize,
                        (l as i64 - b).rem_euclid(n as i64) as usize,
                    ])
                    .unwrap()
                    .norm();
                assert!((got - src).abs() <= 1e-10);
            }
        }
    }
}

#[test]
fn impulse_window_magnitudes_at_gaussian() {
    // single-sample overlap: for f = delta_0 the column magnitudes equal
    // |g(-k)|, constant in l
    let n = 8usize;
    let g = gaussian_window(n).unwrap();
    let f = Signal::delta(n, 0).unwrap();
    let v = stft_full(&f, &g).unwrap();
    for k in 0..n {
        let want = g.signal()[(n - k) % n].norm();
        for l in 0..n {
            assert!((v.at(&[k, l]).unwrap().norm() - want).abs() <= 1e-12);
        }
    }
}
