//! Finite signals on the cyclic group Z_N and their elementary operations.
//!
//! A [`Signal`] models a function on {0, .., N-1} with the counting-measure
//! inner product `<f, h> = sum_t f(t) conj(h(t))`. Translation is cyclic,
//! modulation multiplies by the unimodular character `e^{2 pi i t xi / N}`,
//! and the DFT is unitary. These four operations preserve the l2 norm
//! exactly, which downstream frame and operator identities rely on.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Tolerance for the unit-norm window tag.
pub const UNIT_NORM_TOL: f64 = 1e-12;

/// A complex vector of length N indexed by t in {0, .., N-1}.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    values: Vec<Complex64>,
}

impl Signal {
    /// Builds a signal, rejecting empty or non-finite data.
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySignal);
        }
        if !values.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFiniteEntry);
        }
        Ok(Self { values })
    }

    /// The zero signal of length `n`.
    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(vec![Complex64::ZERO; n.max(0)])
    }

    /// The impulse delta_t of length `n`.
    pub fn delta(n: usize, t: usize) -> Result<Self> {
        if t >= n {
            return Err(Error::DimensionMismatch { expected: n, got: t });
        }
        let mut v = vec![Complex64::ZERO; n];
        v[t] = Complex64::ONE;
        Self::new(v)
    }

    /// The all-ones signal of length `n`.
    pub fn ones(n: usize) -> Result<Self> {
        Self::new(vec![Complex64::ONE; n])
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Counting-measure inner product `sum_t self(t) conj(other(t))`.
    pub fn inner(&self, other: &Signal) -> Result<Complex64> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), got: other.n() });
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum())
    }

    pub fn scaled(&self, c: Complex64) -> Signal {
        Signal { values: self.values.iter().map(|z| z * c).collect() }
    }
}

impl std::ops::Index<usize> for Signal {
    type Output = Complex64;
    fn index(&self, t: usize) -> &Complex64 {
        &self.values[t]
    }
}

/// Cyclic translation: `result(t) = f((t - x) mod N)`. The shift is reduced
/// mod N, so `x = 0` and `x = N` are both the identity.
pub fn translate(f: &Signal, x: i64) -> Signal {
    let n = f.n() as i64;
    let x = x.rem_euclid(n);
    let values = (0..n)
        .map(|t| f.values[(t - x).rem_euclid(n) as usize])
        .collect();
    Signal { values }
}

/// Modulation: `result(t) = e^{2 pi i t xi / N} f(t)` with `xi` reduced mod N.
pub fn modulate(f: &Signal, xi: i64) -> Signal {
    let n = f.n() as i64;
    let xi = xi.rem_euclid(n);
    let values = f
        .values
        .iter()
        .enumerate()
        .map(|(t, z)| z * unit_phase(t as i64 * xi, n))
        .collect();
    Signal { values }
}

/// Time-frequency shift `pi_(x, xi) = M_xi T_x`: modulation after translation.
pub fn tf_shift(f: &Signal, x: i64, xi: i64) -> Signal {
    modulate(&translate(f, x), xi)
}

/// `e^{2 pi i k / n}` for integer k.
pub fn unit_phase(k: i64, n: i64) -> Complex64 {
    let theta = 2.0 * PI * (k.rem_euclid(n) as f64) / n as f64;
    Complex64::from_polar(1.0, theta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Unitary DFT: forward is `F(xi) = N^{-1/2} sum_t f(t) e^{-2 pi i t xi / N}`,
/// inverse is its adjoint. `dft(dft(f, Forward), Inverse)` recovers `f`.
pub fn dft(f: &Signal, direction: Direction) -> Signal {
    let n = f.n();
    let mut buf = f.values.clone();
    let mut planner = rustfft::FftPlanner::new();
    let plan = match direction {
        Direction::Forward => planner.plan_fft_forward(n),
        Direction::Inverse => planner.plan_fft_inverse(n),
    };
    plan.process(&mut buf);
    let scale = 1.0 / (n as f64).sqrt();
    for z in &mut buf {
        *z *= scale;
    }
    Signal { values: buf }
}

/// How a [`Window`] is tagged: unit l2 norm or as-given.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    Unit,
    Raw,
}

/// A window function: a signal plus a normalization tag. Unit-tagged windows
/// satisfy `| ||g||_2 - 1 | <= 1e-12`, enforced on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Window {
    signal: Signal,
    normalization: Normalization,
}

impl Window {
    /// Wraps a signal without touching its scale.
    pub fn raw(signal: Signal) -> Self {
        Self { signal, normalization: Normalization::Raw }
    }

    /// Tags a signal as unit-norm, verifying the invariant.
    pub fn unit(signal: Signal) -> Result<Self> {
        let norm = signal.norm();
        if (norm - 1.0).abs() > UNIT_NORM_TOL {
            return Err(Error::NotUnitNorm { norm });
        }
        Ok(Self { signal, normalization: Normalization::Unit })
    }

    /// Scales a signal to unit l2 norm. Fails on the zero signal.
    pub fn normalized(signal: Signal) -> Result<Self> {
        let norm = signal.norm();
        if norm == 0.0 {
            return Err(Error::ZeroWindow);
        }
        let scaled = signal.scaled(Complex64::new(1.0 / norm, 0.0));
        Ok(Self { signal: scaled, normalization: Normalization::Unit })
    }

    /// Tags the signal Unit when its norm is already within tolerance of 1,
    /// Raw otherwise. Used when loading serialized windows.
    pub fn tagged_auto(signal: Signal) -> Self {
        let normalization = if (signal.norm() - 1.0).abs() <= UNIT_NORM_TOL {
            Normalization::Unit
        } else {
            Normalization::Raw
        };
        Self { signal, normalization }
    }

    pub fn signal(&self) -> &Signal {
        &self.signal
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn n(&self) -> usize {
        self.signal.n()
    }
}

/// Periodized sampled Gaussian `g(t) = sum_{j=-3}^{3} e^{-pi (t - jN)^2 / N}`,
/// unit-normalized. Strictly positive, even (`g(t) = g(N - t mod N)` up to
/// roundoff), with its maximum at t = 0. The truncation tail at |j| <= 3 is
/// below 1e-30 for N >= 8.
pub fn gaussian_window(n: usize) -> Result<Window> {
    if n < 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: n });
    }
    let mut g = vec![Complex64::ZERO; n];
    for (t, v) in g.iter_mut().enumerate() {
        let mut acc = 0.0;
        for j in -3i64..=3 {
            let u = t as f64 - j as f64 * n as f64;
            acc += (-PI * u * u / n as f64).exp();
        }
        *v = Complex64::new(acc, 0.0);
    }
    Window::normalized(Signal::new(g)?)
}

// JSON schema: {"n": N, "values": [[re, im], ...]}.
#[derive(Serialize, Deserialize)]
struct SignalRepr {
    n: usize,
    values: Vec<(f64, f64)>,
}

impl Serialize for Signal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SignalRepr {
            n: self.n(),
            values: self.values.iter().map(|z| (z.re, z.im)).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Signal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SignalRepr::deserialize(deserializer)?;
        if repr.values.len() != repr.n {
            return Err(D::Error::custom(format!(
                "signal declares n = {} but holds {} values",
                repr.n,
                repr.values.len()
            )));
        }
        Signal::new(repr.values.into_iter().map(|(re, im)| Complex64::new(re, im)).collect())
            .map_err(D::Error::custom)
    }
}
