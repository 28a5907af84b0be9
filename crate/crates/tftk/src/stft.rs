//! Full-grid short-time Fourier transforms and their inversion.
//!
//! The one-variable transform is `V(k, l) = <f, M_l T_k g> =
//! sum_t f(t) e^{-2 pi i l t / N} conj(g(t - k))`, computed row-wise with
//! length-N DFTs (unnormalized exponential sums, so each entry is exactly the
//! counting-measure inner product). The two-variable transform does the same
//! for kernels on Z_N x Z_N against a two-variable window.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::coeff::{Axis, CoeffArray};
use crate::error::{Error, Result};
use crate::signal::{Signal, Window};
use crate::CMatrix;

/// Full-grid Gabor transform of `f` against window `g`.
///
/// Axes: [(time, 1, N), (frequency, 1, N)]. Satisfies the orthogonality
/// relation `sum_{k,l} |V(k,l)|^2 = N ||f||^2 ||g||^2`.
pub fn stft_full(f: &Signal, g: &Window) -> Result<CoeffArray> {
    let n = f.n();
    if g.n() != n {
        return Err(Error::DimensionMismatch { expected: n, got: g.n() });
    }
    let gv = g.signal().values();
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(n);
    let mut values = vec![Complex64::new(0.0, 0.0); n * n];
    let mut row = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..n {
        for t in 0..n {
            let shifted = gv[(t + n - k) % n];
            row[t] = f[t] * shifted.conj();
        }
        fft.process(&mut row);
        values[k * n..(k + 1) * n].copy_from_slice(&row);
    }
    CoeffArray::new(vec![Axis::time(1, n), Axis::frequency(1, n)], values)
}

/// Inverts a full-grid transform: `(1/N) sum_{k,l} V(k,l) M_l T_k psi`.
///
/// When `coeffs = stft_full(f, g)` the result is `<psi, g> f`; with
/// `psi = g` unit-norm this recovers `f`. The analysis window `g` enters only
/// through the contract: it must match the coefficient grid and be nonzero.
pub fn istft_full(coeffs: &CoeffArray, analysis: &Window, synthesis: &Window) -> Result<Signal> {
    let n = expect_full_grid(coeffs)?;
    if analysis.n() != n {
        return Err(Error::DimensionMismatch { expected: n, got: analysis.n() });
    }
    if synthesis.n() != n {
        return Err(Error::DimensionMismatch { expected: n, got: synthesis.n() });
    }
    if analysis.signal().norm() == 0.0 {
        return Err(Error::ZeroWindow);
    }
    let psi = synthesis.signal().values();
    let mut planner = FftPlanner::new();
    let ifft = planner.plan_fft_inverse(n);
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    let mut row = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..n {
        row.copy_from_slice(&coeffs.values()[k * n..(k + 1) * n]);
        // row(t) = sum_l V(k, l) e^{2 pi i l t / N}
        ifft.process(&mut row);
        for t in 0..n {
            out[t] += row[t] * psi[(t + n - k) % n];
        }
    }
    let scale = 1.0 / n as f64;
    for z in &mut out {
        *z *= scale;
    }
    Signal::new(out)
}

fn expect_full_grid(coeffs: &CoeffArray) -> Result<usize> {
    let axes = coeffs.axes();
    if axes.len() != 2 {
        return Err(Error::ArityMismatch { expected: 2, got: axes.len() });
    }
    let n = axes[0].extent;
    if axes != [Axis::time(1, n), Axis::frequency(1, n)] {
        return Err(Error::ShapeMismatch { expected: n, got: axes[1].extent });
    }
    Ok(n)
}

/// Full-grid transform of a two-variable kernel against a two-variable
/// window: `V(x, y, z, t) = <k, M_(z,t) T_(x,y) w>`.
///
/// Axes: [(time,1,N), (time,2,N), (frequency,1,N), (frequency,2,N)], so the
/// entry at (x, y, z, t) pairs translation (x, y) with modulation (z, t).
/// The array holds N^4 entries; callers cap N accordingly.
pub fn stft2_full(kernel: &CMatrix, window: &CMatrix) -> Result<CoeffArray> {
    let n = kernel.nrows();
    if kernel.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, got: kernel.ncols() });
    }
    if window.nrows() != n || window.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, got: window.nrows() });
    }
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(n);
    let mut values = vec![Complex64::new(0.0, 0.0); n * n * n * n];
    let mut block = vec![Complex64::new(0.0, 0.0); n * n];
    let mut col = vec![Complex64::new(0.0, 0.0); n];
    for x in 0..n {
        for y in 0..n {
            // H(a, b) = k(a, b) conj(w(a - x, b - y)); block is row-major (a, b)
            for a in 0..n {
                for b in 0..n {
                    let w = window[((a + n - x) % n, (b + n - y) % n)];
                    block[a * n + b] = kernel[(a, b)] * w.conj();
                }
            }
            // unnormalized 2-D DFT: rows (b -> t), then columns (a -> z)
            for a in 0..n {
                fft.process(&mut block[a * n..(a + 1) * n]);
            }
            for t in 0..n {
                for a in 0..n {
                    col[a] = block[a * n + t];
                }
                fft.process(&mut col);
                for z in 0..n {
                    values[((x * n + y) * n + z) * n + t] = col[z];
                }
            }
        }
    }
    CoeffArray::new(
        vec![
            Axis::time(1, n),
            Axis::time(2, n),
            Axis::frequency(1, n),
            Axis::frequency(2, n),
        ],
        values,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::{gaussian_window, tf_shift};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample_signal(n: usize) -> Signal {
        Signal::new(
            (0..n)
                .map(|t| c((t as f64 * 0.9).sin() + 0.2, (t as f64 * 0.4).cos()))
                .collect(),
        )
        .unwrap()
    }

    /// Brute-force double sum, independent of the FFT path.
    fn stft_brute(f: &Signal, g: &Signal) -> Vec<Complex64> {
        let n = f.n();
        let mut out = vec![c(0.0, 0.0); n * n];
        for k in 0..n {
            for l in 0..n {
                let shifted = tf_shift(g, k as i64, l as i64);
                out[k * n + l] = f.inner(&shifted).unwrap();
            }
        }
        out
    }

    #[test]
    fn matches_brute_force_inner_products() {
        let f = sample_signal(4);
        let g = gaussian_window(4).unwrap();
        let v = stft_full(&f, &g).unwrap();
        let brute = stft_brute(&f, g.signal());
        for (a, b) in v.values().iter().zip(&brute) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn impulse_window_collapses_to_samples() {
        let f = sample_signal(6);
        let g = Window::unit(Signal::delta(6, 0).unwrap()).unwrap();
        let v = stft_full(&f, &g).unwrap();
        for k in 0..6 {
            for l in 0..6 {
                let got = v.at(&[k, l]).unwrap().norm();
                assert!((got - f[k].norm()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn orthogonality_relation_at_n4() {
        // brute-force double sum confirms sum |V|^2 = N ||f||^2 ||g||^2
        let f = sample_signal(4);
        let g = Window::raw(sample_signal(4).scaled(c(0.3, 0.8)));
        let v = stft_full(&f, &g).unwrap();
        let lhs: f64 = stft_brute(&f, g.signal()).iter().map(|z| z.norm_sqr()).sum();
        assert!((v.energy() - lhs).abs() < 1e-9);
        let rhs = 4.0 * f.norm().powi(2) * g.signal().norm().powi(2);
        assert!((lhs - rhs).abs() / rhs < 1e-12);
    }

    #[test]
    fn inversion_recovers_scaled_signal() {
        let n = 4;
        let f = sample_signal(n);
        let g = gaussian_window(n).unwrap();
        let v = stft_full(&f, &g).unwrap();
        // psi = g unit norm: recovers f
        let back = istft_full(&v, &g, &g).unwrap();
        for (x, y) in back.values().iter().zip(f.values()) {
            assert!((x - y).norm() < 1e-12);
        }
        // general psi: result = <psi, g> f
        let psi = Window::raw(sample_signal(n).scaled(c(0.0, 1.3)));
        let back = istft_full(&v, &g, &psi).unwrap();
        let scale = psi.signal().inner(g.signal()).unwrap();
        for (x, y) in back.values().iter().zip(f.values()) {
            assert!((x - y * scale).norm() < 1e-11);
        }
    }

    #[test]
    fn orthogonal_synthesis_window_gives_zero() {
        let n = 4;
        let f = sample_signal(n);
        let g = Window::unit(Signal::delta(n, 0).unwrap()).unwrap();
        let psi = Window::unit(Signal::delta(n, 1).unwrap()).unwrap();
        let v = stft_full(&f, &g).unwrap();
        let out = istft_full(&v, &g, &psi).unwrap();
        assert!(out.norm() < 1e-12);
    }

    #[test]
    fn istft_input_validation() {
        let n = 4;
        let g = gaussian_window(n).unwrap();
        let zero = CoeffArray::zeros(vec![Axis::time(1, n), Axis::frequency(1, n)]).unwrap();
        assert!(istft_full(&zero, &g, &g).unwrap().norm() == 0.0);
        let small = gaussian_window(8).unwrap();
        assert!(matches!(
            istft_full(&zero, &small, &g),
            Err(Error::DimensionMismatch { .. })
        ));
        let zw = Window::raw(Signal::zeros(n).unwrap());
        assert_eq!(istft_full(&zero, &zw, &g), Err(Error::ZeroWindow));
        let bad = CoeffArray::zeros(vec![Axis::time(1, n), Axis::frequency(1, 2 * n)]).unwrap();
        assert!(istft_full(&bad, &g, &g).is_err());
    }

    #[test]
    fn two_variable_transform_matches_brute_force() {
        let n = 3;
        let mut kernel = CMatrix::zeros(n, n);
        let mut window = CMatrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                kernel[(a, b)] = c((a * n + b) as f64 * 0.3 - 1.0, (a as f64) - 0.5);
                window[(a, b)] = c(0.2 + b as f64 * 0.1, (a * b) as f64 * 0.05);
            }
        }
        let v = stft2_full(&kernel, &window).unwrap();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for t in 0..n {
                        let mut want = c(0.0, 0.0);
                        for a in 0..n {
                            for b in 0..n {
                                let phase = crate::signal::unit_phase(
                                    -((z * a + t * b) as i64),
                                    n as i64,
                                );
                                let w = window[((a + n - x) % n, (b + n - y) % n)];
                                want += kernel[(a, b)] * phase * w.conj();
                            }
                        }
                        let got = v.at(&[x, y, z, t]).unwrap();
                        assert!((got - want).norm() < 1e-12);
                    }
                }
            }
        }
    }
}
