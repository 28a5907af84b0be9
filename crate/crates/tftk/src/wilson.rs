//! Discrete Wilson orthonormal bases of C^N.
//!
//! The basis is generated by a real, even window g on the redundancy-2
//! lattice (time step M, frequency step K = N/(2M)). Elements combine the
//! two modulations +/- n of each translate:
//!
//! - n = 0:          `psi_{k,0}(t) = g(t - kM)`, k even;
//! - 0 < n < M:      `psi_{k,n} = 2^{-1/2} (e^{i pi n u / M}
//!                    + (-1)^{k+n} e^{-i pi n u / M}) g(u)`, u = t - kM,
//!                    all k in {0, .., 2K-1};
//! - n = M (Nyquist): `psi_{k,M}(t) = (-1)^{t - kM} g(t - kM)`, k even.
//!
//! The admissible index count is exactly N, and the construction is accepted
//! only if the Gram matrix equals the identity to 1e-10. The window is the
//! canonical tight window of the redundancy-2 Gaussian system, realified,
//! re-symmetrized, and scaled to unit norm; orthonormality is then a
//! consequence of the tight frame property, but the gate is what certifies
//! it here.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coeff::{Axis, CoeffArray};
use crate::error::{Error, Result};
use crate::gabor::{CanonicalKind, GaborLattice, GaborSystem};
use crate::operators::KernelOperator;
use crate::signal::{gaussian_window, Signal, Window};

/// Largest tolerated deviation of the Gram matrix from the identity.
pub const GRAM_GATE_TOL: f64 = 1e-10;

/// A Wilson index: time slot `k`, channel `n`.
///
/// Channels 0 < n < M admit every k in {0, .., 2K-1}; the edge channels
/// n = 0 and n = M admit even k only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WilsonIndex {
    pub k: usize,
    pub n: usize,
}

/// A discrete Wilson orthonormal basis of C^N with M channels, 2M | N.
#[derive(Debug, Clone, PartialEq)]
pub struct WilsonBasis {
    n: usize,
    m: usize,
    window: Window,
    indices: Vec<WilsonIndex>,
    elements: Vec<Signal>,
}

impl WilsonBasis {
    /// Builds the basis for ambient dimension `n` with `m` channels.
    ///
    /// Fails when 2m does not divide n or m < 2, and fails the Gram gate if
    /// the derived window does not generate an orthonormal system (for
    /// instance with an odd channel count, where the Nyquist parity used
    /// here does not close).
    pub fn build(n: usize, m: usize) -> Result<Self> {
        if m < 2 || n == 0 || n % (2 * m) != 0 {
            return Err(Error::InvalidChannelCount { n, m });
        }
        let kk = n / (2 * m);
        let seed = gaussian_window(n)?;
        let sys = GaborSystem::new(GaborLattice::new(n, m, kk)?, seed)?;
        let tight = sys.canonical_window(CanonicalKind::Tight)?;
        // realify, re-symmetrize, unit-normalize
        let mut g: Vec<f64> = tight.signal().values().iter().map(|z| z.re).collect();
        let sym: Vec<f64> = (0..n).map(|t| 0.5 * (g[t] + g[(n - t) % n])).collect();
        g = sym;
        let norm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::ZeroWindow);
        }
        let window = Window::unit(Signal::new(
            g.iter().map(|v| Complex64::new(v / norm, 0.0)).collect(),
        )?)?;
        Self::from_window(n, m, window)
    }

    /// Assembles elements from an explicit window and runs the Gram gate.
    pub fn from_window(n: usize, m: usize, window: Window) -> Result<Self> {
        if m < 2 || n == 0 || n % (2 * m) != 0 {
            return Err(Error::InvalidChannelCount { n, m });
        }
        if window.n() != n {
            return Err(Error::DimensionMismatch { expected: n, got: window.n() });
        }
        let kk = n / (2 * m);
        let g = window.signal();
        let mut indices = Vec::with_capacity(n);
        let mut elements = Vec::with_capacity(n);
        for k in 0..2 * kk {
            for ch in 0..=m {
                if edge_channel(ch, m) && k % 2 == 1 {
                    continue;
                }
                indices.push(WilsonIndex { k, n: ch });
                elements.push(wilson_element(g, n, m, k, ch));
            }
        }
        debug_assert_eq!(indices.len(), n);
        let basis = Self { n, m, window, indices, elements };
        let deviation = basis.gram_deviation();
        if deviation > GRAM_GATE_TOL {
            return Err(Error::GramGateFailed { deviation });
        }
        Ok(basis)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Channel count M; channels run over {0, .., M}.
    pub fn channels(&self) -> usize {
        self.m
    }

    /// Unit time slots K = N / (2M); time indices run over {0, .., 2K-1}.
    pub fn time_slots(&self) -> usize {
        self.n / (2 * self.m)
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn is_admissible(&self, k: usize, ch: usize) -> bool {
        k < 2 * self.time_slots()
            && ch <= self.m
            && !(edge_channel(ch, self.m) && k % 2 == 1)
    }

    /// All admissible indices, (k, n) row-major.
    pub fn indices(&self) -> &[WilsonIndex] {
        &self.indices
    }

    pub fn element(&self, k: usize, ch: usize) -> Result<&Signal> {
        let pos = self
            .indices
            .iter()
            .position(|i| i.k == k && i.n == ch)
            .ok_or(Error::InadmissibleIndex { k, n: ch })?;
        Ok(&self.elements[pos])
    }

    pub fn elements(&self) -> &[Signal] {
        &self.elements
    }

    /// Max absolute deviation of the Gram matrix from the identity.
    pub fn gram_deviation(&self) -> f64 {
        let mut dev = 0.0f64;
        for (i, a) in self.elements.iter().enumerate() {
            for (j, b) in self.elements.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                let got = a.inner(b).unwrap();
                dev = dev.max((got - Complex64::new(want, 0.0)).norm());
            }
        }
        dev
    }

    /// Coefficients `<f, psi_{k,n}>` as a dense (2K) x (M+1) array with
    /// inadmissible slots held at structural zero. The coefficient energy
    /// equals `||f||^2`.
    pub fn coefficients(&self, f: &Signal) -> Result<CoeffArray> {
        if f.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: f.n() });
        }
        let rows = 2 * self.time_slots();
        let cols = self.m + 1;
        let mut values = vec![Complex64::new(0.0, 0.0); rows * cols];
        for (idx, psi) in self.indices.iter().zip(&self.elements) {
            values[idx.k * cols + idx.n] = f.inner(psi)?;
        }
        CoeffArray::new(vec![Axis::time(1, rows), Axis::frequency(1, cols)], values)
    }

    /// Reconstructs `sum c_{k,n} psi_{k,n}` from a dense coefficient array.
    pub fn synthesize(&self, coeffs: &CoeffArray) -> Result<Signal> {
        let rows = 2 * self.time_slots();
        let cols = self.m + 1;
        let axes = coeffs.axes();
        if axes.len() != 2 || axes[0].extent != rows || axes[1].extent != cols {
            return Err(Error::ShapeMismatch { expected: rows * cols, got: coeffs.values().len() });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.n];
        for (idx, psi) in self.indices.iter().zip(&self.elements) {
            let c = coeffs.at(&[idx.k, idx.n])?;
            for (o, p) in out.iter_mut().zip(psi.values()) {
                *o += c * p;
            }
        }
        Signal::new(out)
    }

    /// Coefficients of a kernel against the tensor basis
    /// `(psi_{j1,l1} (x) psi_{j2,l2})(t, y) = psi_{j1,l1}(t) psi_{j2,l2}(y)`
    /// (no conjugate on either factor).
    ///
    /// Four axes (time 1, time 2, frequency 1, frequency 2) of extents
    /// (2K, 2K, M+1, M+1); inadmissible slots are structural zeros, and the
    /// total energy equals the squared Frobenius norm of the kernel.
    pub fn tensor_coefficients(&self, kernel: &KernelOperator) -> Result<CoeffArray> {
        if kernel.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: kernel.n() });
        }
        let rows = 2 * self.time_slots();
        let cols = self.m + 1;
        // w_i = K * conj(psi_i) once per second index
        let mat = kernel.matrix();
        let mut applied: Vec<Vec<Complex64>> = Vec::with_capacity(self.elements.len());
        for psi in &self.elements {
            let mut w = vec![Complex64::new(0.0, 0.0); self.n];
            for t in 0..self.n {
                let mut acc = Complex64::new(0.0, 0.0);
                for y in 0..self.n {
                    acc += mat[(t, y)] * psi[y].conj();
                }
                w[t] = acc;
            }
            applied.push(w);
        }
        let mut values =
            vec![Complex64::new(0.0, 0.0); rows * rows * cols * cols];
        for (i1, idx1) in self.indices.iter().enumerate() {
            for (i2, idx2) in self.indices.iter().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for t in 0..self.n {
                    acc += self.elements[i1][t].conj() * applied[i2][t];
                }
                let lin = ((idx1.k * rows + idx2.k) * cols + idx1.n) * cols + idx2.n;
                values[lin] = acc;
            }
        }
        CoeffArray::new(
            vec![
                Axis::time(1, rows),
                Axis::time(2, rows),
                Axis::frequency(1, cols),
                Axis::frequency(2, cols),
            ],
            values,
        )
    }
}

fn edge_channel(ch: usize, m: usize) -> bool {
    ch == 0 || ch == m
}

fn wilson_element(g: &Signal, n: usize, m: usize, k: usize, ch: usize) -> Signal {
    let shift = (k * m) as i64;
    let nn = n as i64;
    let mut values = vec![Complex64::new(0.0, 0.0); n];
    for (t, v) in values.iter_mut().enumerate() {
        let u = (t as i64 - shift).rem_euclid(nn);
        let gu = g[u as usize];
        *v = if ch == 0 {
            gu
        } else if ch == m {
            if u % 2 == 0 { gu } else { -gu }
        } else {
            let theta = PI * ch as f64 * u as f64 / m as f64;
            let plus = Complex64::from_polar(1.0, theta);
            let minus = Complex64::from_polar(1.0, -theta);
            let sign = if (k + ch) % 2 == 0 { 1.0 } else { -1.0 };
            (plus + minus.scale(sign)).scale(1.0 / 2f64.sqrt()) * gu
        };
    }
    Signal::new(values).expect("window entries are finite")
}

// JSON schema: {"N":.., "M":.., "window": Signal}; elements are rebuilt on
// load and the Gram gate re-runs.
#[derive(Serialize, Deserialize)]
struct WilsonBasisRepr {
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "M")]
    m: usize,
    window: Signal,
}

impl Serialize for WilsonBasis {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        WilsonBasisRepr {
            n: self.n,
            m: self.m,
            window: self.window.signal().clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WilsonBasis {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = WilsonBasisRepr::deserialize(deserializer)?;
        WilsonBasis::from_window(repr.n, repr.m, Window::tagged_auto(repr.window))
            .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_signal(n: usize) -> Signal {
        Signal::new(
            (0..n)
                .map(|t| Complex64::new((t as f64 * 0.61).sin() - 0.2, (t as f64 * 1.7).cos()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn build_validates_divisibility() {
        assert!(matches!(
            WilsonBasis::build(30, 4),
            Err(Error::InvalidChannelCount { .. })
        ));
        assert!(matches!(
            WilsonBasis::build(16, 1),
            Err(Error::InvalidChannelCount { .. })
        ));
    }

    #[test]
    fn gate_passes_at_32_4() {
        let b = WilsonBasis::build(32, 4).unwrap();
        assert_eq!(b.elements().len(), 32);
        assert!(b.gram_deviation() <= 1e-10);
        for e in b.elements() {
            assert!((e.norm() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn gate_rejects_odd_channel_count() {
        // even-parity Nyquist admissibility does not close for odd M
        assert!(matches!(
            WilsonBasis::build(24, 3),
            Err(Error::GramGateFailed { .. })
        ));
    }

    #[test]
    fn admissible_index_census() {
        let b = WilsonBasis::build(16, 4).unwrap();
        let kk = b.time_slots();
        assert_eq!(kk, 2);
        let count = b.indices().len();
        assert_eq!(count, 16);
        assert_eq!(count, kk + 2 * kk * (4 - 1) + kk);
        assert!(b.is_admissible(0, 0) && !b.is_admissible(1, 0));
        assert!(b.is_admissible(1, 2) && !b.is_admissible(1, 4));
        assert!(!b.is_admissible(4, 1)); // k out of range
    }

    #[test]
    fn coefficients_of_basis_element_are_a_delta() {
        let b = WilsonBasis::build(16, 2).unwrap();
        let psi = b.element(1, 1).unwrap().clone();
        let c = b.coefficients(&psi).unwrap();
        for (idx, v) in c.indexed_values() {
            let want = if idx == vec![1, 1] { 1.0 } else { 0.0 };
            assert!((v - Complex64::new(want, 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn coefficient_energy_and_completeness() {
        let b = WilsonBasis::build(32, 4).unwrap();
        let f = sample_signal(32);
        let c = b.coefficients(&f).unwrap();
        assert!((c.energy() - f.norm().powi(2)).abs() < 1e-10);
        let back = b.synthesize(&c).unwrap();
        for (x, y) in back.values().iter().zip(f.values()) {
            assert!((x - y).norm() < 1e-10);
        }
        let zero = b.coefficients(&Signal::zeros(32).unwrap()).unwrap();
        assert_eq!(zero.energy(), 0.0);
    }

    #[test]
    fn tensor_coefficients_energy_and_diagonal() {
        let b = WilsonBasis::build(16, 2).unwrap();
        let n = 16;
        // k = psi_{0,1} (x) psi_{0,1} -> single unit coefficient
        let psi = b.element(0, 1).unwrap();
        let mut m = crate::CMatrix::zeros(n, n);
        for t in 0..n {
            for y in 0..n {
                m[(t, y)] = psi[t] * psi[y];
            }
        }
        let k = KernelOperator::new(m).unwrap();
        let c = b.tensor_coefficients(&k).unwrap();
        for (idx, v) in c.indexed_values() {
            let want = if idx == vec![0, 0, 1, 1] { 1.0 } else { 0.0 };
            assert!((v - Complex64::new(want, 0.0)).norm() < 1e-9, "at {idx:?}");
        }
        // random kernel: energy identity
        let mut m = crate::CMatrix::zeros(n, n);
        for t in 0..n {
            for y in 0..n {
                m[(t, y)] = Complex64::new(
                    ((3 * t + y) as f64 * 0.21).sin(),
                    ((t + 5 * y) as f64 * 0.13).cos(),
                );
            }
        }
        let k = KernelOperator::new(m).unwrap();
        let c = b.tensor_coefficients(&k).unwrap();
        let fro2: f64 = k.matrix().iter().map(|z| z.norm_sqr()).sum();
        assert!((c.energy() - fro2).abs() / fro2 < 1e-10);
    }

    #[test]
    fn json_round_trip_rebuilds_elements() {
        let b = WilsonBasis::build(16, 4).unwrap();
        let text = serde_json::to_string(&b).unwrap();
        assert!(text.starts_with(r#"{"N":16,"M":4"#));
        let back: WilsonBasis = serde_json::from_str(&text).unwrap();
        assert_eq!(back, b);
    }
}
