//! Integral operators on C^N: kernels, singular values, Schatten norms, the
//! tensor-frame Schatten bound, and Kohn-Nirenberg quantization.
//!
//! Operator convention is counting-measure throughout: the operator *is* its
//! kernel matrix, `(A f)(t) = sum_y k(t, y) f(y)`, so the Schatten-2 norm
//! coincides exactly with the Frobenius norm of the kernel.
//!
//! The symbol map follows `k(t, y) = N^{-1} sum_xi tau(t, xi)
//! e^{2 pi i (t - y) xi / N}` (a partial inverse DFT followed by the cyclic
//! shear `(x, y) -> (x, x - y)`), the normalization fixed by the requirement
//! that the constant symbol quantizes to the identity operator.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::FftPlanner;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gabor::GaborSystem;
use crate::signal::Signal;
use crate::stft::stft2_full;
use crate::wilson::{WilsonBasis, WilsonIndex};
use crate::CMatrix;

/// An integral operator stored as its N x N kernel matrix, entry `k(t, y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelOperator {
    matrix: CMatrix,
}

/// A Kohn-Nirenberg symbol: an N x N matrix, entry `tau(t, xi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct KNSymbol {
    matrix: CMatrix,
}

fn check_square(matrix: &CMatrix) -> Result<()> {
    if matrix.nrows() == 0 || matrix.nrows() != matrix.ncols() {
        return Err(Error::DimensionMismatch {
            expected: matrix.nrows().max(1),
            got: matrix.ncols(),
        });
    }
    if !matrix.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFiniteEntry);
    }
    Ok(())
}

impl KernelOperator {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        check_square(&matrix)?;
        Ok(Self { matrix })
    }

    pub fn identity(n: usize) -> Self {
        Self { matrix: CMatrix::identity(n, n) }
    }

    pub fn n(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Matrix-vector action `(A f)(t) = sum_y k(t, y) f(y)`.
    pub fn apply(&self, f: &Signal) -> Result<Signal> {
        let n = self.n();
        if f.n() != n {
            return Err(Error::DimensionMismatch { expected: n, got: f.n() });
        }
        let v = CMatrix::from_column_slice(n, 1, f.values());
        let out = &self.matrix * v;
        Signal::new(out.as_slice().to_vec())
    }

    /// Singular values, descending.
    pub fn singular_values(&self) -> Result<SingularSpectrum> {
        let svd = self
            .matrix
            .clone()
            .try_svd_unordered(false, false, 1e-14, 100_000)
            .ok_or(Error::NumericalBreakdown("SVD"))?;
        let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
        sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
        SingularSpectrum::new(sv)
    }

    /// Schatten p-norm: the l^p norm of the singular values, with p = inf the
    /// operator norm. Requires p >= 1.
    pub fn schatten_norm(&self, p: f64) -> Result<f64> {
        Ok(self.singular_values()?.lp_norm(p)?)
    }
}

impl KNSymbol {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        check_square(&matrix)?;
        Ok(Self { matrix })
    }

    pub fn constant(n: usize, value: Complex64) -> Self {
        Self { matrix: CMatrix::from_element(n, n, value) }
    }

    pub fn n(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Nonincreasing singular values of an N x N operator.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularSpectrum(Vec<f64>);

impl SingularSpectrum {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::NonFiniteEntry);
        }
        if values.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NumericalBreakdown("unsorted singular values"));
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        if !(p >= 1.0) {
            return Err(Error::InvalidExponent { p });
        }
        if p.is_infinite() {
            return Ok(self.0.first().copied().unwrap_or(0.0));
        }
        Ok(self.0.iter().map(|v| v.powf(p)).sum::<f64>().powf(1.0 / p))
    }
}

/// Right-hand side of the tensor-frame Schatten bound for a Parseval system:
/// inner l^2 over the first-variable (m) axes of the tensor coefficients,
/// outer l^p over the second-variable (n) axes.
///
/// For every p in [1, 2] this dominates `schatten_norm(k, p)`, with equality
/// at p = 2 where both sides equal the Frobenius norm.
pub fn schatten_bound_rhs(kernel: &KernelOperator, sys: &GaborSystem, p: f64) -> Result<f64> {
    if !(1.0..=2.0).contains(&p) {
        return Err(Error::InvalidExponent { p });
    }
    let (lo, hi) = sys.frame_bounds()?;
    if !sys.is_parseval()? {
        return Err(Error::NotParseval { lower: lo, upper: hi });
    }
    let coeffs = sys.tensor_frame_coeffs(kernel)?;
    let kc = sys.lattice().time_count();
    let lc = sys.lattice().freq_count();
    // axes are (m-time, n-time, m-freq, n-freq); collapse m = (k1, l1)
    let mut acc = 0.0;
    for k2 in 0..kc {
        for l2 in 0..lc {
            let mut inner = 0.0;
            for k1 in 0..kc {
                for l1 in 0..lc {
                    inner += coeffs.at(&[k1, k2, l1, l2])?.norm_sqr();
                }
            }
            acc += inner.sqrt().powf(p);
        }
    }
    Ok(acc.powf(1.0 / p))
}

/// Quantization: symbol to kernel,
/// `k(t, y) = N^{-1} sum_xi tau(t, xi) e^{2 pi i (t - y) xi / N}`.
pub fn kn_to_kernel(tau: &KNSymbol) -> KernelOperator {
    let n = tau.n();
    let mut planner = FftPlanner::new();
    let ifft = planner.plan_fft_inverse(n);
    let mut k = CMatrix::zeros(n, n);
    let mut row = vec![Complex64::new(0.0, 0.0); n];
    for t in 0..n {
        for xi in 0..n {
            row[xi] = tau.matrix[(t, xi)];
        }
        // row(u) = sum_xi tau(t, xi) e^{2 pi i u xi / N}, then y = t - u
        ifft.process(&mut row);
        for u in 0..n {
            k[(t, (t + n - u) % n)] = row[u] / n as f64;
        }
    }
    KernelOperator { matrix: k }
}

/// Inverse quantization: un-shear the kernel, then a partial forward DFT
/// in the second variable. Exact inverse of [`kn_to_kernel`].
pub fn kernel_to_kn(kernel: &KernelOperator) -> KNSymbol {
    let n = kernel.n();
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(n);
    let mut tau = CMatrix::zeros(n, n);
    let mut row = vec![Complex64::new(0.0, 0.0); n];
    for t in 0..n {
        for u in 0..n {
            row[u] = kernel.matrix[(t, (t + n - u) % n)];
        }
        fft.process(&mut row);
        for xi in 0..n {
            tau[(t, xi)] = row[xi];
        }
    }
    KNSymbol { matrix: tau }
}

/// The isometric (unitary-scaled) symbol transform `N^{-1/2} kernel_to_kn`,
/// which preserves Frobenius norms. Both sides of the magnitude identity are
/// computed on this scale.
pub fn kn_unitary(matrix: &CMatrix) -> Result<CMatrix> {
    let op = KernelOperator::new(matrix.clone())?;
    let tau = kernel_to_kn(&op);
    Ok(tau.matrix.scale(1.0 / (op.n() as f64).sqrt()))
}

/// Frozen index remap of the magnitude identity: the full-grid coefficients
/// of a kernel at (x, y, z, t) and of its symbol at (x, -t, z+t, y-x) have
/// equal magnitude. Calibrated once by exhaustive search at N = 4.
pub fn magnitude_index_remap(n: usize, x: usize, y: usize, z: usize, t: usize) -> [usize; 4] {
    let n = n as i64;
    let (x, y, z, t) = (x as i64, y as i64, z as i64, t as i64);
    [
        x.rem_euclid(n) as usize,
        (-t).rem_euclid(n) as usize,
        (z + t).rem_euclid(n) as usize,
        (y - x).rem_euclid(n) as usize,
    ]
}

/// Outcome of [`kn_tf_magnitude_check`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MagnitudeReport {
    /// Largest observed `| |V_Phi k| - |V_Phi' tau| |` over the sampled tuples.
    pub max_deviation: f64,
    /// Number of index tuples checked.
    pub tuples: usize,
    /// True when every tuple in Z_N^4 was checked.
    pub exhaustive: bool,
}

/// Verifies the time-frequency magnitude identity between a kernel and its
/// symbol at sampled index tuples.
///
/// With `tau` the symbol of `kernel` and `window2` mapped by the same
/// transform (both on the isometric scale), checks
/// `|V_Phi k(x,y,z,t)| = |V_{Phi'} tau(x, -t, z+t, y-x)|`. Checks all N^4
/// tuples when `samples >= N^4`, otherwise `samples` seeded draws.
pub fn kn_tf_magnitude_check(
    kernel: &KernelOperator,
    window: &KernelOperator,
    samples: usize,
    seed: u64,
) -> Result<MagnitudeReport> {
    let n = kernel.n();
    if window.n() != n {
        return Err(Error::DimensionMismatch { expected: n, got: window.n() });
    }
    if window.frobenius_norm() == 0.0 {
        return Err(Error::ZeroWindow);
    }
    let tau_u = kn_unitary(&kernel.matrix)?;
    let window_u = kn_unitary(&window.matrix)?;
    let v_kernel = stft2_full(&kernel.matrix, &window.matrix)?;
    let v_symbol = stft2_full(&tau_u, &window_u)?;
    let total = n * n * n * n;
    let exhaustive = samples >= total;
    let mut max_deviation = 0.0f64;
    let mut check = |x: usize, y: usize, z: usize, t: usize| -> Result<()> {
        let lhs = v_kernel.at(&[x, y, z, t])?.norm();
        let rhs = v_symbol.at(&magnitude_index_remap(n, x, y, z, t))?.norm();
        max_deviation = max_deviation.max((lhs - rhs).abs());
        Ok(())
    };
    if exhaustive {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for t in 0..n {
                        check(x, y, z, t)?;
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let x = rng.gen_range(0..n);
            let y = rng.gen_range(0..n);
            let z = rng.gen_range(0..n);
            let t = rng.gen_range(0..n);
            check(x, y, z, t)?;
        }
    }
    Ok(MagnitudeReport {
        max_deviation,
        tuples: if exhaustive { total } else { samples },
        exhaustive,
    })
}

/// Assembles `k(t, y) = sum lambda_{l,j} psi_{j,l}(t) psi_{j,l}(y)` over
/// admissible Wilson indices. The resulting operator has singular values
/// equal to the magnitudes |lambda|, padded with zeros.
pub fn build_counterexample(
    basis: &WilsonBasis,
    lambda: &[(WilsonIndex, Complex64)],
) -> Result<KernelOperator> {
    let n = basis.n();
    let mut seen = std::collections::HashSet::new();
    let mut k = CMatrix::zeros(n, n);
    for &(idx, weight) in lambda {
        if !basis.is_admissible(idx.k, idx.n) {
            return Err(Error::InadmissibleIndex { k: idx.k, n: idx.n });
        }
        if !seen.insert((idx.k, idx.n)) {
            return Err(Error::DuplicateIndex { k: idx.k, n: idx.n });
        }
        let psi = basis.element(idx.k, idx.n)?;
        let v = psi.values();
        for t in 0..n {
            for y in 0..n {
                k[(t, y)] += weight * v[t] * v[y];
            }
        }
    }
    KernelOperator::new(k)
}

// JSON schema: {"N":.., "matrix": [[[re,im],..],..]} row-major in t.
#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    #[serde(rename = "N")]
    n: usize,
    matrix: Vec<Vec<(f64, f64)>>,
}

fn matrix_to_repr(m: &CMatrix) -> MatrixRepr {
    MatrixRepr {
        n: m.nrows(),
        matrix: (0..m.nrows())
            .map(|t| (0..m.ncols()).map(|y| (m[(t, y)].re, m[(t, y)].im)).collect())
            .collect(),
    }
}

fn matrix_from_repr(repr: MatrixRepr) -> Result<CMatrix> {
    let n = repr.n;
    if repr.matrix.len() != n || repr.matrix.iter().any(|row| row.len() != n) {
        return Err(Error::ShapeMismatch { expected: n * n, got: repr.matrix.len() });
    }
    let mut m = CMatrix::zeros(n, n);
    for (t, row) in repr.matrix.iter().enumerate() {
        for (y, &(re, im)) in row.iter().enumerate() {
            m[(t, y)] = Complex64::new(re, im);
        }
    }
    Ok(m)
}

impl Serialize for KernelOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        matrix_to_repr(&self.matrix).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for KernelOperator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let m = matrix_from_repr(MatrixRepr::deserialize(deserializer)?)
            .map_err(D::Error::custom)?;
        KernelOperator::new(m).map_err(D::Error::custom)
    }
}

impl Serialize for KNSymbol {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        matrix_to_repr(&self.matrix).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for KNSymbol {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let m = matrix_from_repr(MatrixRepr::deserialize(deserializer)?)
            .map_err(D::Error::custom)?;
        KNSymbol::new(m).map_err(D::Error::custom)
    }
}
