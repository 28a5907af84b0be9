//! Weights, coordinate permutations, iterated mixed norms, and modulation
//! norms.
//!
//! A mixed norm is evaluated in three steps: permute the axes of a labeled
//! array by `c` (so reading the result in storage order enumerates
//! `V o c`), multiply entrywise by a weight evaluated at the centered
//! integer index, then collapse axes innermost-first: an l^{p_1} norm over
//! the first axis, l^{p_2} over the second, and so on, with exponent
//! infinity meaning an exact supremum. Structural zeros participate as
//! zeros, which leaves every l^p norm unaffected.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coeff::{Axis, CoeffArray};
use crate::error::{Error, Result};
use crate::gabor::GaborSystem;
use crate::signal::{Signal, Window};
use crate::stft::{stft2_full, stft_full};
use crate::CMatrix;

/// An exponent in [1, inf]; infinity is an exact supremum, never a large-p
/// proxy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinite,
}

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_infinite() && p > 0.0 {
            return Ok(Self::Infinite);
        }
        if !(p >= 1.0) || !p.is_finite() {
            return Err(Error::InvalidExponent { p });
        }
        Ok(Self::Finite(p))
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            Self::Finite(p) => *p,
            Self::Infinite => f64::INFINITY,
        }
    }

    /// The Hoelder conjugate: 1/p + 1/p' = 1.
    pub fn conjugate(&self) -> Exponent {
        match self {
            Self::Infinite => Self::Finite(1.0),
            Self::Finite(p) if *p == 1.0 => Self::Infinite,
            Self::Finite(p) => Self::Finite(p / (p - 1.0)),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ExponentRepr {
    Num(f64),
    Word(String),
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::Finite(p) => serializer.serialize_f64(*p),
            Self::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        match ExponentRepr::deserialize(deserializer)? {
            ExponentRepr::Num(p) => Exponent::new(p).map_err(D::Error::custom),
            ExponentRepr::Word(w) if w == "inf" => Ok(Exponent::Infinite),
            ExponentRepr::Word(w) => Err(D::Error::custom(format!("unknown exponent {w:?}"))),
        }
    }
}

/// A positive weight on integer index vectors.
///
/// `Poly { s }` is `v_s(z) = (1 + |z|)^s` with the Euclidean norm;
/// `PolyOuter` evaluates the same expression on the trailing `outer`
/// coordinates only; `Custom` is a positive table over the centered box
/// `[-radius, radius]^arity` and errors outside it.
#[derive(Debug, Clone, PartialEq)]
pub enum Weight {
    One,
    Poly { s: f64 },
    PolyOuter { s: f64, outer: usize },
    Custom { radius: i64, arity: usize, values: Vec<f64> },
}

impl Weight {
    pub fn custom(radius: i64, arity: usize, values: Vec<f64>) -> Result<Self> {
        let side = (2 * radius + 1) as usize;
        let expected = side.pow(arity as u32);
        if radius < 0 || arity == 0 || values.len() != expected {
            return Err(Error::ShapeMismatch { expected, got: values.len() });
        }
        if !values.iter().all(|v| v.is_finite() && *v > 0.0) {
            return Err(Error::NonFiniteEntry);
        }
        Ok(Self::Custom { radius, arity, values })
    }

    /// The arity this weight is pinned to, if any.
    pub fn arity(&self) -> Option<usize> {
        match self {
            Self::Custom { arity, .. } => Some(*arity),
            _ => None,
        }
    }

    /// Evaluates the weight at an integer index vector.
    pub fn eval(&self, z: &[i64]) -> Result<f64> {
        match self {
            Self::One => Ok(1.0),
            Self::Poly { s } => Ok((1.0 + euclid(z)).powf(*s)),
            Self::PolyOuter { s, outer } => {
                if *outer > z.len() {
                    return Err(Error::ArityMismatch { expected: *outer, got: z.len() });
                }
                Ok((1.0 + euclid(&z[z.len() - outer..])).powf(*s))
            }
            Self::Custom { radius, arity, values } => {
                if z.len() != *arity {
                    return Err(Error::ArityMismatch { expected: *arity, got: z.len() });
                }
                let side = (2 * radius + 1) as usize;
                let mut lin = 0usize;
                for &zi in z {
                    if zi.abs() > *radius {
                        return Err(Error::WeightDomain { radius: *radius });
                    }
                    lin = lin * side + (zi + radius) as usize;
                }
                Ok(values[lin])
            }
        }
    }

    /// The pointwise reciprocal weight 1/w.
    pub fn reciprocal(&self) -> Weight {
        match self {
            Self::One => Self::One,
            Self::Poly { s } => Self::Poly { s: -s },
            Self::PolyOuter { s, outer } => Self::PolyOuter { s: -s, outer: *outer },
            Self::Custom { radius, arity, values } => Self::Custom {
                radius: *radius,
                arity: *arity,
                values: values.iter().map(|v| 1.0 / v).collect(),
            },
        }
    }
}

fn euclid(z: &[i64]) -> f64 {
    z.iter().map(|&v| (v as f64) * (v as f64)).sum::<f64>().sqrt()
}

/// Evaluates a weight at an index vector; see [`Weight::eval`].
pub fn weight_eval(w: &Weight, z: &[i64]) -> Result<f64> {
    w.eval(z)
}

// Weight JSON: {"kind": "one" | "poly" | "poly_outer" | "custom", ...}.
#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum WeightRepr {
    One,
    Poly { s: f64 },
    PolyOuter { s: f64, outer: usize },
    Custom { radius: i64, arity: usize, values: Vec<f64> },
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match self.clone() {
            Self::One => WeightRepr::One,
            Self::Poly { s } => WeightRepr::Poly { s },
            Self::PolyOuter { s, outer } => WeightRepr::PolyOuter { s, outer },
            Self::Custom { radius, arity, values } => WeightRepr::Custom { radius, arity, values },
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Ok(match WeightRepr::deserialize(deserializer)? {
            WeightRepr::One => Self::One,
            WeightRepr::Poly { s } => Self::Poly { s },
            WeightRepr::PolyOuter { s, outer } => Self::PolyOuter { s, outer },
            WeightRepr::Custom { radius, arity, values } => {
                Self::custom(radius, arity, values).map_err(D::Error::custom)?
            }
        })
    }
}

/// A permutation c of {1, .., m}, acting on index vectors by
/// `c(x)_i = x_{c(i)}`. Stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Self { image: (0..m).collect() }
    }

    /// Builds from the 1-based image [c(1), .., c(m)].
    pub fn from_one_based(image: &[usize]) -> Result<Self> {
        let m = image.len();
        let zero_based: Vec<usize> = image.iter().map(|&v| v.wrapping_sub(1)).collect();
        let mut seen = vec![false; m];
        for &v in &zero_based {
            if v >= m || seen[v] {
                return Err(Error::NotAPermutation);
            }
            seen[v] = true;
        }
        Ok(Self { image: zero_based })
    }

    pub fn arity(&self) -> usize {
        self.image.len()
    }

    /// 0-based image: slot i of the permuted tuple reads coordinate
    /// `image()[i]` of the original.
    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn one_based_image(&self) -> Vec<usize> {
        self.image.iter().map(|v| v + 1).collect()
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0usize; self.image.len()];
        for (i, &v) in self.image.iter().enumerate() {
            inv[v] = i;
        }
        Self { image: inv }
    }
}

/// True iff `c` is a slice permutation for kernels over d variables: it
/// sends the first variable's time and frequency slots into the inner
/// positions {1, .., 2d} and the second variable's into the outer positions
/// {2d+1, .., 4d}. Errors unless the arity is 4d.
pub fn is_slice_permutation(c: &Permutation, d: usize) -> Result<bool> {
    let m = 4 * d;
    if d == 0 || c.arity() != m {
        return Err(Error::ArityMismatch { expected: m, got: c.arity() });
    }
    let inner_slot = |s: usize| s < d || (2 * d..3 * d).contains(&s);
    Ok((0..m).all(|s| {
        if inner_slot(s) {
            c.image[s] < 2 * d
        } else {
            c.image[s] >= 2 * d
        }
    }))
}

/// Reorders axes so that reading the result in storage order enumerates
/// `V o c`: `result(x_1, .., x_m) = A(x_{c(1)}, .., x_{c(m)})`. Applying the
/// inverse permutation afterwards restores the original array.
pub fn permute_axes(a: &CoeffArray, c: &Permutation) -> Result<CoeffArray> {
    let m = a.arity();
    if c.arity() != m {
        return Err(Error::ArityMismatch { expected: m, got: c.arity() });
    }
    let inv = c.inverse();
    let in_extents = a.extents();
    let out_axes: Vec<Axis> = (0..m).map(|j| a.axes()[inv.image()[j]]).collect();
    let out_extents: Vec<usize> = out_axes.iter().map(|ax| ax.extent).collect();
    let mut out_values = vec![Complex64::new(0.0, 0.0); a.values().len()];
    let mut x = vec![0usize; m];
    let mut y = vec![0usize; m];
    for (lin, slot) in out_values.iter_mut().enumerate() {
        // decode lin into x (row-major over out_extents)
        let mut rem = lin;
        for j in (0..m).rev() {
            x[j] = rem % out_extents[j];
            rem /= out_extents[j];
        }
        for s in 0..m {
            y[s] = x[c.image()[s]];
        }
        let mut src = 0usize;
        for s in 0..m {
            src = src * in_extents[s] + y[s];
        }
        *slot = a.values()[src];
    }
    CoeffArray::new(out_axes, out_values)
}

/// Exponent vector, permutation, and weight defining an iterated norm.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedNormSpec {
    exponents: Vec<Exponent>,
    permutation: Permutation,
    weight: Weight,
}

impl MixedNormSpec {
    pub fn new(exponents: Vec<Exponent>, permutation: Permutation, weight: Weight) -> Result<Self> {
        let m = exponents.len();
        if m == 0 || permutation.arity() != m {
            return Err(Error::ArityMismatch { expected: m.max(1), got: permutation.arity() });
        }
        if let Some(wa) = weight.arity() {
            if wa != m {
                return Err(Error::ArityMismatch { expected: m, got: wa });
            }
        }
        if let Weight::PolyOuter { outer, .. } = weight {
            if outer > m {
                return Err(Error::ArityMismatch { expected: m, got: outer });
            }
        }
        Ok(Self { exponents, permutation, weight })
    }

    /// Unweighted spec with the identity permutation.
    pub fn unweighted(ps: &[f64]) -> Result<Self> {
        let exponents = ps.iter().map(|&p| Exponent::new(p)).collect::<Result<Vec<_>>>()?;
        let m = exponents.len();
        Self::new(exponents, Permutation::identity(m), Weight::One)
    }

    pub fn arity(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[Exponent] {
        &self.exponents
    }

    pub fn permutation(&self) -> &Permutation {
        &self.permutation
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    /// The dual spec: conjugate exponents, same permutation, reciprocal
    /// weight.
    pub fn conjugate(&self) -> MixedNormSpec {
        MixedNormSpec {
            exponents: self.exponents.iter().map(Exponent::conjugate).collect(),
            permutation: self.permutation.clone(),
            weight: self.weight.reciprocal(),
        }
    }
}

// JSON: {"p": [2, "inf"], "perm": [c(1), ..], "weight": {"kind": ..}}.
#[derive(Serialize, Deserialize)]
struct MixedNormSpecRepr {
    p: Vec<Exponent>,
    perm: Vec<usize>,
    weight: Weight,
}

impl Serialize for MixedNormSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MixedNormSpecRepr {
            p: self.exponents.clone(),
            perm: self.permutation.one_based_image(),
            weight: self.weight.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MixedNormSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = MixedNormSpecRepr::deserialize(deserializer)?;
        let perm = Permutation::from_one_based(&repr.perm).map_err(D::Error::custom)?;
        MixedNormSpec::new(repr.p, perm, repr.weight).map_err(D::Error::custom)
    }
}

/// The iterated weighted norm of a labeled array.
pub fn mixed_norm(a: &CoeffArray, spec: &MixedNormSpec) -> Result<f64> {
    if spec.arity() != a.arity() {
        return Err(Error::ArityMismatch { expected: a.arity(), got: spec.arity() });
    }
    let permuted = permute_axes(a, &spec.permutation)?;
    let mut extents = permuted.extents();
    let m = extents.len();
    let mut vals = Vec::with_capacity(permuted.values().len());
    let centers: Vec<i64> = extents.iter().map(|&e| (e / 2) as i64).collect();
    let mut z = vec![0i64; m];
    for (idx, v) in permuted.indexed_values() {
        for j in 0..m {
            z[j] = idx[j] as i64 - centers[j];
        }
        vals.push(v.norm() * spec.weight.eval(&z)?);
    }
    // collapse innermost-first: axis 0 of the permuted array
    for exp in &spec.exponents {
        let e0 = extents[0];
        let stride: usize = extents[1..].iter().product();
        let mut out = vec![0.0f64; stride];
        match exp {
            Exponent::Infinite => {
                for (j, o) in out.iter_mut().enumerate() {
                    let mut sup = 0.0f64;
                    for i in 0..e0 {
                        sup = sup.max(vals[i * stride + j]);
                    }
                    *o = sup;
                }
            }
            Exponent::Finite(p) => {
                for (j, o) in out.iter_mut().enumerate() {
                    let mut acc = 0.0f64;
                    for i in 0..e0 {
                        acc += vals[i * stride + j].powf(*p);
                    }
                    *o = acc.powf(1.0 / p);
                }
            }
        }
        vals = out;
        extents.remove(0);
    }
    debug_assert_eq!(vals.len(), 1);
    Ok(vals[0])
}

/// Full-grid modulation norm: the mixed norm of the short-time transform.
///
/// Arity-2 specs treat `f` as a signal on Z_N. Arity-4 specs treat `f` as a
/// row-major flattened kernel on Z_N x Z_N (its length must be a perfect
/// square) and `g` as a flattened two-variable window, and evaluate the norm
/// of the four-axis transform ordered (time 1, time 2, frequency 1,
/// frequency 2) before the permutation acts.
pub fn modulation_norm_full(f: &Signal, g: &Window, spec: &MixedNormSpec) -> Result<f64> {
    match spec.arity() {
        2 => {
            let coeffs = stft_full(f, g)?;
            mixed_norm(&coeffs, spec)
        }
        4 => {
            let kernel = square_reshape(f)?;
            let window = square_reshape(g.signal())?;
            if kernel.nrows() != window.nrows() {
                return Err(Error::DimensionMismatch {
                    expected: kernel.nrows(),
                    got: window.nrows(),
                });
            }
            let coeffs = stft2_full(&kernel, &window)?;
            mixed_norm(&coeffs, spec)
        }
        other => Err(Error::ArityMismatch { expected: 2, got: other }),
    }
}

fn square_reshape(f: &Signal) -> Result<CMatrix> {
    let len = f.n();
    let n = (len as f64).sqrt().round() as usize;
    if n * n != len {
        return Err(Error::NotASquareLength { len });
    }
    let mut m = CMatrix::zeros(n, n);
    for t in 0..n {
        for y in 0..n {
            m[(t, y)] = f[t * n + y];
        }
    }
    Ok(m)
}

/// Lattice-sampled modulation norm: the mixed norm of the Gabor analysis
/// coefficients of `f`.
pub fn modulation_norm_lattice(
    f: &Signal,
    sys: &GaborSystem,
    spec: &MixedNormSpec,
) -> Result<f64> {
    if spec.arity() != 2 {
        return Err(Error::ArityMismatch { expected: 2, got: spec.arity() });
    }
    mixed_norm(&sys.analysis(f)?, spec)
}

/// Worst ratios observed when sampling the weight laws.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightLawReport {
    pub arity: usize,
    pub box_radius: i64,
    pub samples: usize,
    /// max v(z1 + z2) / (v(z1) v(z2)); <= 1 iff submultiplicative on the box.
    pub submultiplicative_max_ratio: f64,
    /// max w(z1 + z2) / (v(z1) w(z2)); the smallest feasible C observed.
    pub moderate_max_ratio: f64,
}

/// Samples submultiplicativity of `v` and v-moderateness of `w` over a
/// centered box, deterministically under `seed`.
///
/// The box radius is 8, shrunk to half a custom table's radius so that sums
/// z1 + z2 stay inside its domain.
pub fn check_weight_laws(
    w: &Weight,
    v: &Weight,
    samples: usize,
    seed: u64,
) -> Result<WeightLawReport> {
    let arity = w.arity().or(v.arity()).unwrap_or(2);
    if let (Some(a), Some(b)) = (w.arity(), v.arity()) {
        if a != b {
            return Err(Error::ArityMismatch { expected: a, got: b });
        }
    }
    let mut radius: i64 = 8;
    for weight in [w, v] {
        if let Weight::Custom { radius: r, .. } = weight {
            radius = radius.min(r / 2);
        }
    }
    if radius < 1 {
        return Err(Error::WeightDomain { radius });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sub_max = 0.0f64;
    let mut mod_max = 0.0f64;
    let mut z1 = vec![0i64; arity];
    let mut z2 = vec![0i64; arity];
    let mut z12 = vec![0i64; arity];
    for _ in 0..samples {
        for j in 0..arity {
            z1[j] = rng.gen_range(-radius..=radius);
            z2[j] = rng.gen_range(-radius..=radius);
            z12[j] = z1[j] + z2[j];
        }
        sub_max = sub_max.max(v.eval(&z12)? / (v.eval(&z1)? * v.eval(&z2)?));
        mod_max = mod_max.max(w.eval(&z12)? / (v.eval(&z1)? * w.eval(&z2)?));
    }
    Ok(WeightLawReport {
        arity,
        box_radius: radius,
        samples,
        submultiplicative_max_ratio: sub_max,
        moderate_max_ratio: mod_max,
    })
}

/// The Hoelder constant certifying the weighted-l2 into mixed-l^{2,p}
/// embedding, with a convergence certificate for its defining sum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingConstant {
    /// Outer-sum exponent q = 2p / (2 - p); infinite at p = 2.
    pub q: f64,
    /// Truncated sum of (1 + |n|)^{-qs} over the centered box in Z^{2d}.
    pub partial_sum: f64,
    /// Integral-test bound on the sum outside the box; finite because
    /// qs > 2d on the admitted parameter region.
    pub tail_bound: f64,
    /// The constant from the truncated sum, `partial_sum^{1/q}`.
    pub constant: f64,
    /// Upper bound including the tail, `(partial_sum + tail_bound)^{1/q}`.
    pub constant_with_tail: f64,
}

/// Computes `C = || (1 + |n|)^{-s} ||_{l^q(Z^{2d} cap box)}` with
/// q = 2p/(2-p), valid for s >= 0, 1 <= p <= 2 and p > 2d/(d+s). At p = 2
/// the constant is exactly 1. Outside that region no finite constant is
/// claimed and an error is returned.
pub fn embedding_constant(
    d: usize,
    s: f64,
    p: f64,
    truncation: usize,
) -> Result<EmbeddingConstant> {
    if d == 0 || !(0.0..).contains(&s) || !(1.0..=2.0).contains(&p) {
        return Err(Error::EmbeddingRegion { d, s, p });
    }
    if p == 2.0 {
        return Ok(EmbeddingConstant {
            q: f64::INFINITY,
            partial_sum: 1.0,
            tail_bound: 0.0,
            constant: 1.0,
            constant_with_tail: 1.0,
        });
    }
    let two_d = 2.0 * d as f64;
    if !(p > two_d / (d as f64 + s)) {
        return Err(Error::EmbeddingRegion { d, s, p });
    }
    let q = 2.0 * p / (2.0 - p);
    let t = truncation as f64;
    let mut partial_sum = 0.0f64;
    let mut idx = vec![-(truncation as i64); 2 * d];
    'outer: loop {
        partial_sum += (1.0 + euclid(&idx)).powf(-q * s);
        for j in (0..idx.len()).rev() {
            idx[j] += 1;
            if idx[j] <= truncation as i64 {
                continue 'outer;
            }
            idx[j] = -(truncation as i64);
            if j == 0 {
                break 'outer;
            }
        }
    }
    // lattice shells of sup-radius r > T hold at most 4d (2r+1)^{2d-1}
    // points, each term at most (1+r)^{-qs}; the integral test closes it
    let tail_bound = 4.0 * d as f64 * 2f64.powf(two_d - 1.0) * (t + 1.0).powf(two_d - q * s)
        / (q * s - two_d);
    Ok(EmbeddingConstant {
        q,
        partial_sum,
        tail_bound,
        constant: partial_sum.powf(1.0 / q),
        constant_with_tail: (partial_sum + tail_bound).powf(1.0 / q),
    })
}

/// The strictness witness value at outer index `z` in Z^{2d}:
/// `(1 + |z|)^{-(s+d)} (1 + ln(1 + |z|))^{1/2}`.
///
/// Its weighted-l2 truncated norms grow without bound as the box grows while
/// its l^p sums converge whenever p > 2d/(d+s); the logarithmic exponent was
/// selected by partial summation over doubling boxes.
pub fn embedding_witness_value(z: &[i64], d: usize, s: f64) -> f64 {
    let r = euclid(z);
    (1.0 + r).powf(-(s + d as f64)) * (1.0 + (1.0 + r).ln()).sqrt()
}

/// Truncated norms of the witness family over the centered box of the given
/// radius in Z^{2d}: the v_s-weighted l2 norm and the l^p norm.
pub fn embedding_witness_norms(d: usize, s: f64, p: f64, radius: i64) -> (f64, f64) {
    let mut sum2 = 0.0f64;
    let mut sump = 0.0f64;
    let mut idx = vec![-radius; 2 * d];
    'outer: loop {
        let y = embedding_witness_value(&idx, d, s);
        let w = (1.0 + euclid(&idx)).powf(s);
        sum2 += (w * y) * (w * y);
        sump += y.powf(p);
        for j in (0..idx.len()).rev() {
            idx[j] += 1;
            if idx[j] <= radius {
                continue 'outer;
            }
            idx[j] = -radius;
            if j == 0 {
                break 'outer;
            }
        }
    }
    (sum2.sqrt(), sump.powf(1.0 / p))
}

/// The periodized-Gaussian two-variable window `Phi(t, y) = g(t) g(y)`,
/// flattened kernel-style; the standard window for kernel-level modulation
/// norms.
pub fn tensor_gaussian_window(n: usize) -> Result<CMatrix> {
    let g = crate::signal::gaussian_window(n)?;
    let gv = g.signal().values();
    let mut m = CMatrix::zeros(n, n);
    for t in 0..n {
        for y in 0..n {
            m[(t, y)] = gv[t] * gv[y];
        }
    }
    Ok(m)
}
