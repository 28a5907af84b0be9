//! Lattice Gabor systems on C^N.
//!
//! A [`GaborSystem`] is generated by time-frequency shifting one window along
//! a separable lattice: element (k, l) is `M_{bl} T_{ak} g` for
//! k in {0, .., N/a - 1}, l in {0, .., N/b - 1}. The frame operator
//! `S = sum e e^*` is Hermitian positive semidefinite; its extreme
//! eigenvalues are the frame bounds, and its inverse (resp. inverse square
//! root) applied to the window yields the canonical dual (resp. tight)
//! window. The eigendecomposition is computed once per system and cached.

use std::sync::OnceLock;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coeff::{Axis, CoeffArray};
use crate::error::{Error, Result};
use crate::operators::KernelOperator;
use crate::signal::{tf_shift, Signal, Window};
use crate::CMatrix;

/// Eigenvalue floor, relative to the top eigenvalue, below which the frame
/// operator is treated as singular.
const FRAME_FLOOR: f64 = 1e-10;

/// Parseval tolerance on both frame bounds.
const PARSEVAL_TOL: f64 = 1e-8;

/// A separable time-frequency lattice: time step `a` samples, frequency step
/// `b` DFT bins, both dividing N. Redundancy N/(a b) >= 1 is required for the
/// frame property but is checked by [`GaborSystem::frame_bounds`], never
/// assumed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaborLattice {
    n: usize,
    a: usize,
    b: usize,
}

impl GaborLattice {
    pub fn new(n: usize, a: usize, b: usize) -> Result<Self> {
        if n == 0 || a == 0 || b == 0 || n % a != 0 || n % b != 0 {
            return Err(Error::InvalidLattice { n, a, b });
        }
        Ok(Self { n, a, b })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn time_step(&self) -> usize {
        self.a
    }

    pub fn freq_step(&self) -> usize {
        self.b
    }

    /// Number of time positions N/a.
    pub fn time_count(&self) -> usize {
        self.n / self.a
    }

    /// Number of frequency positions N/b.
    pub fn freq_count(&self) -> usize {
        self.n / self.b
    }

    pub fn redundancy(&self) -> f64 {
        self.n as f64 / (self.a * self.b) as f64
    }
}

/// Provenance tag for the stored window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WindowKind {
    Raw,
    Dual,
    Tight,
}

/// Which canonical window to derive from the frame operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CanonicalKind {
    Dual,
    Tight,
}

struct FrameEigen {
    /// Ascending eigenvalues of the frame operator.
    values: Vec<f64>,
    vectors: CMatrix,
}

/// A Gabor system: window plus lattice.
#[derive(Debug)]
pub struct GaborSystem {
    lattice: GaborLattice,
    window: Window,
    kind: WindowKind,
    eigen: OnceLock<std::result::Result<FrameEigen, Error>>,
}

impl Clone for GaborSystem {
    fn clone(&self) -> Self {
        // the cache is rebuilt on demand
        Self {
            lattice: self.lattice,
            window: self.window.clone(),
            kind: self.kind,
            eigen: OnceLock::new(),
        }
    }
}

impl std::fmt::Debug for FrameEigen {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FrameEigen").field("values", &self.values).finish()
    }
}

impl GaborSystem {
    pub fn new(lattice: GaborLattice, window: Window) -> Result<Self> {
        Self::with_kind(lattice, window, WindowKind::Raw)
    }

    pub fn with_kind(lattice: GaborLattice, window: Window, kind: WindowKind) -> Result<Self> {
        if window.n() != lattice.n() {
            return Err(Error::DimensionMismatch { expected: lattice.n(), got: window.n() });
        }
        Ok(Self { lattice, window, kind, eigen: OnceLock::new() })
    }

    pub fn lattice(&self) -> GaborLattice {
        self.lattice
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn kind(&self) -> WindowKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.lattice.n()
    }

    pub fn element_count(&self) -> usize {
        self.lattice.time_count() * self.lattice.freq_count()
    }

    /// The element `M_{bl} T_{ak} g`.
    pub fn element(&self, k: usize, l: usize) -> Signal {
        let a = self.lattice.time_step() as i64;
        let b = self.lattice.freq_step() as i64;
        tf_shift(self.window.signal(), a * k as i64, b * l as i64)
    }

    /// All elements in (k, l) row-major order.
    pub fn elements(&self) -> Vec<Signal> {
        let mut out = Vec::with_capacity(self.element_count());
        for k in 0..self.lattice.time_count() {
            for l in 0..self.lattice.freq_count() {
                out.push(self.element(k, l));
            }
        }
        out
    }

    /// Frame coefficients `<f, M_{bl} T_{ak} g>`, the full-grid transform
    /// subsampled at lattice points. Axes [(time,1,N/a), (frequency,1,N/b)].
    pub fn analysis(&self, f: &Signal) -> Result<CoeffArray> {
        let n = self.n();
        if f.n() != n {
            return Err(Error::DimensionMismatch { expected: n, got: f.n() });
        }
        let a = self.lattice.time_step();
        let b = self.lattice.freq_step();
        let gv = self.window.signal().values();
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(n);
        let mut row = vec![Complex64::new(0.0, 0.0); n];
        let mut values =
            Vec::with_capacity(self.lattice.time_count() * self.lattice.freq_count());
        for k in 0..self.lattice.time_count() {
            for t in 0..n {
                row[t] = f[t] * gv[(t + n - a * k) % n].conj();
            }
            fft.process(&mut row);
            for l in 0..self.lattice.freq_count() {
                values.push(row[b * l]);
            }
        }
        CoeffArray::new(
            vec![
                Axis::time(1, self.lattice.time_count()),
                Axis::frequency(1, self.lattice.freq_count()),
            ],
            values,
        )
    }

    /// Synthesis `sum_{k,l} C(k,l) M_{bl} T_{ak} g`, the adjoint of
    /// [`GaborSystem::analysis`].
    pub fn synthesis(&self, coeffs: &CoeffArray) -> Result<Signal> {
        let n = self.n();
        let kc = self.lattice.time_count();
        let lc = self.lattice.freq_count();
        let axes = coeffs.axes();
        if axes.len() != 2 || axes[0].extent != kc || axes[1].extent != lc {
            return Err(Error::ShapeMismatch {
                expected: kc * lc,
                got: coeffs.values().len(),
            });
        }
        let a = self.lattice.time_step();
        let b = self.lattice.freq_step();
        let gv = self.window.signal().values();
        let mut planner = FftPlanner::new();
        let ifft = planner.plan_fft_inverse(n);
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        let mut row = vec![Complex64::new(0.0, 0.0); n];
        for k in 0..kc {
            // spread coefficients onto the coarse bins, then one inverse DFT
            row.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
            for l in 0..lc {
                row[b * l] = coeffs.at(&[k, l])?;
            }
            ifft.process(&mut row);
            for t in 0..n {
                out[t] += row[t] * gv[(t + n - a * k) % n];
            }
        }
        Signal::new(out)
    }

    /// The frame operator `S = sum_{k,l} e_{kl} e_{kl}^*` as an N x N matrix.
    pub fn frame_operator(&self) -> CMatrix {
        let n = self.n();
        let mut s = CMatrix::zeros(n, n);
        for e in self.elements() {
            let v = e.values();
            for i in 0..n {
                for j in 0..n {
                    s[(i, j)] += v[i] * v[j].conj();
                }
            }
        }
        s
    }

    fn eigen(&self) -> Result<&FrameEigen> {
        self.eigen
            .get_or_init(|| {
                let mut s = self.frame_operator();
                // enforce exact Hermitian symmetry before the eigensolve
                let sh = s.adjoint();
                s = (s + sh).scale(0.5);
                let eig = s
                    .try_symmetric_eigen(f64::EPSILON, 100_000)
                    .ok_or(Error::NumericalBreakdown("frame operator eigensolve"))?;
                let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
                order.sort_by(|&i, &j| {
                    eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap()
                });
                let n = self.n();
                let mut vectors = CMatrix::zeros(n, n);
                let mut values = Vec::with_capacity(n);
                for (dst, &src) in order.iter().enumerate() {
                    values.push(eig.eigenvalues[src]);
                    for r in 0..n {
                        vectors[(r, dst)] = eig.eigenvectors[(r, src)];
                    }
                }
                Ok(FrameEigen { values, vectors })
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Frame bounds (A, B) as the extreme eigenvalues of the frame operator.
    /// A > 0 iff the system is a frame.
    pub fn frame_bounds(&self) -> Result<(f64, f64)> {
        let eig = self.eigen()?;
        Ok((eig.values[0].max(0.0), *eig.values.last().unwrap()))
    }

    /// True when both frame bounds are within 1e-8 of 1.
    pub fn is_parseval(&self) -> Result<bool> {
        let (lo, hi) = self.frame_bounds()?;
        Ok((lo - 1.0).abs() <= PARSEVAL_TOL && (hi - 1.0).abs() <= PARSEVAL_TOL)
    }

    /// The canonical dual window `S^{-1} g` or canonical tight window
    /// `S^{-1/2} g`. Fails with [`Error::NotAFrame`] when the smallest
    /// eigenvalue of S is below 1e-10 of the largest.
    pub fn canonical_window(&self, kind: CanonicalKind) -> Result<Window> {
        let eig = self.eigen()?;
        let top = *eig.values.last().unwrap();
        let bottom = eig.values[0];
        if !(bottom > FRAME_FLOOR * top && top > 0.0) {
            return Err(Error::NotAFrame { lower: bottom, upper: top });
        }
        let n = self.n();
        let g = CMatrix::from_column_slice(n, 1, self.window.signal().values());
        let coeffs = eig.vectors.adjoint() * &g;
        let mut out = CMatrix::zeros(n, 1);
        for j in 0..n {
            let scale = match kind {
                CanonicalKind::Dual => 1.0 / eig.values[j],
                CanonicalKind::Tight => 1.0 / eig.values[j].sqrt(),
            };
            let cj = coeffs[(j, 0)] * Complex64::new(scale, 0.0);
            for r in 0..n {
                out[(r, 0)] += eig.vectors[(r, j)] * cj;
            }
        }
        Ok(Window::raw(Signal::new(out.as_slice().to_vec())?))
    }

    /// A new system on the same lattice generated by a canonical window.
    pub fn canonical_system(&self, kind: CanonicalKind) -> Result<GaborSystem> {
        let w = self.canonical_window(kind)?;
        let tag = match kind {
            CanonicalKind::Dual => WindowKind::Dual,
            CanonicalKind::Tight => WindowKind::Tight,
        };
        GaborSystem::with_kind(self.lattice, w, tag)
    }

    /// Coefficients of a kernel against the tensor system
    /// `Phi_{m,n}(t, y) = phi_m(t) conj(phi_n(y))`.
    ///
    /// Four axes indexed (m-time, n-time, m-frequency, n-frequency); the
    /// entry equals `<k, Phi_{m,n}> = <A phi_n, phi_m>` for the integral
    /// operator A with kernel k.
    pub fn tensor_frame_coeffs(&self, kernel: &KernelOperator) -> Result<CoeffArray> {
        let n = self.n();
        if kernel.n() != n {
            return Err(Error::DimensionMismatch { expected: n, got: kernel.n() });
        }
        let kc = self.lattice.time_count();
        let lc = self.lattice.freq_count();
        let count = kc * lc;
        let mut e = CMatrix::zeros(n, count);
        for (col, elem) in self.elements().into_iter().enumerate() {
            for r in 0..n {
                e[(r, col)] = elem[r];
            }
        }
        let c = e.adjoint() * kernel.matrix() * &e;
        let mut values = vec![Complex64::new(0.0, 0.0); count * count];
        for k1 in 0..kc {
            for l1 in 0..lc {
                for k2 in 0..kc {
                    for l2 in 0..lc {
                        let lin = ((k1 * kc + k2) * lc + l1) * lc + l2;
                        values[lin] = c[(k1 * lc + l1, k2 * lc + l2)];
                    }
                }
            }
        }
        CoeffArray::new(
            vec![
                Axis::time(1, kc),
                Axis::time(2, kc),
                Axis::frequency(1, lc),
                Axis::frequency(2, lc),
            ],
            values,
        )
    }
}

// JSON schema: {"N":.., "a":.., "b":.., "window": Signal, "kind": "raw|dual|tight"}.
#[derive(Serialize, Deserialize)]
struct GaborSystemRepr {
    #[serde(rename = "N")]
    n: usize,
    a: usize,
    b: usize,
    window: Signal,
    kind: WindowKind,
}

impl Serialize for GaborSystem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GaborSystemRepr {
            n: self.lattice.n(),
            a: self.lattice.time_step(),
            b: self.lattice.freq_step(),
            window: self.window.signal().clone(),
            kind: self.kind,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GaborSystem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = GaborSystemRepr::deserialize(deserializer)?;
        let lattice = GaborLattice::new(repr.n, repr.a, repr.b).map_err(D::Error::custom)?;
        GaborSystem::with_kind(lattice, Window::tagged_auto(repr.window), repr.kind)
            .map_err(D::Error::custom)
    }
}
