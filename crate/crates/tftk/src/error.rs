use std::fmt;

/// The error type for fallible operations in this crate.
#[derive(Debug, Clone, PartialEq)]
#[non_exhaustive]
pub enum Error {
    /// A signal must hold at least one sample.
    EmptySignal,
    /// A value was NaN or infinite where a finite number is required.
    NonFiniteEntry,
    /// Two objects that must share the ambient dimension N do not.
    DimensionMismatch { expected: usize, got: usize },
    /// Axis extents do not multiply out to the stored value count.
    ShapeMismatch { expected: usize, got: usize },
    /// Two axes carry the same (role, variable) pair.
    DuplicateAxis,
    /// A window tagged unit-norm must have l2 norm within 1e-12 of 1.
    NotUnitNorm { norm: f64 },
    /// The analysis window of an inversion must be nonzero.
    ZeroWindow,
    /// Lattice steps must divide the ambient dimension.
    InvalidLattice { n: usize, a: usize, b: usize },
    /// The frame operator is numerically singular: no dual or tight window.
    NotAFrame { lower: f64, upper: f64 },
    /// The system must be Parseval (frame bounds within 1e-8 of 1).
    NotParseval { lower: f64, upper: f64 },
    /// Wilson bases need 2M | N and M >= 2.
    InvalidChannelCount { n: usize, m: usize },
    /// The constructed system failed its orthonormality gate.
    GramGateFailed { deviation: f64 },
    /// A Wilson index outside the admissible set.
    InadmissibleIndex { k: usize, n: usize },
    /// The same admissible index appeared twice in a coefficient list.
    DuplicateIndex { k: usize, n: usize },
    /// An index tuple has the wrong number of coordinates.
    ArityMismatch { expected: usize, got: usize },
    /// Exponents must lie in [1, inf].
    InvalidExponent { p: f64 },
    /// A permutation image must be a bijection of {1..m}.
    NotAPermutation,
    /// Custom table weights are only defined on their index box.
    WeightDomain { radius: i64 },
    /// Outside the convergence region p > 2d/(d+s); no finite constant is claimed.
    EmbeddingRegion { d: usize, s: f64, p: f64 },
    /// A signal standing for a two-variable kernel must have square length.
    NotASquareLength { len: usize },
    /// Iterative eigensolve or SVD did not converge.
    NumericalBreakdown(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::EmptySignal => write!(f, "signal must have length >= 1"),
            Self::NonFiniteEntry => write!(f, "non-finite entry (NaN or infinity)"),
            Self::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Self::ShapeMismatch { expected, got } => {
                write!(f, "axis extents require {expected} values, got {got}")
            }
            Self::DuplicateAxis => write!(f, "duplicate (role, variable) axis pair"),
            Self::NotUnitNorm { norm } => {
                write!(f, "window tagged unit-norm has l2 norm {norm}")
            }
            Self::ZeroWindow => write!(f, "analysis window has zero norm"),
            Self::InvalidLattice { n, a, b } => {
                write!(f, "lattice steps ({a}, {b}) must divide N = {n}")
            }
            Self::NotAFrame { lower, upper } => {
                write!(f, "not a frame: bounds ({lower:.3e}, {upper:.3e})")
            }
            Self::NotParseval { lower, upper } => {
                write!(f, "system is not Parseval: bounds ({lower}, {upper})")
            }
            Self::InvalidChannelCount { n, m } => {
                write!(f, "need 2M | N and M >= 2, got N = {n}, M = {m}")
            }
            Self::GramGateFailed { deviation } => {
                write!(f, "Gram matrix deviates from identity by {deviation:.3e}")
            }
            Self::InadmissibleIndex { k, n } => {
                write!(f, "index (k = {k}, n = {n}) is not admissible")
            }
            Self::DuplicateIndex { k, n } => {
                write!(f, "index (k = {k}, n = {n}) appears twice")
            }
            Self::ArityMismatch { expected, got } => {
                write!(f, "arity mismatch: expected {expected}, got {got}")
            }
            Self::InvalidExponent { p } => write!(f, "exponent {p} outside [1, inf]"),
            Self::NotAPermutation => write!(f, "image is not a bijection"),
            Self::WeightDomain { radius } => {
                write!(f, "index outside the weight table box of radius {radius}")
            }
            Self::EmbeddingRegion { d, s, p } => {
                write!(f, "(d = {d}, s = {s}, p = {p}) violates p > 2d/(d+s)")
            }
            Self::NotASquareLength { len } => {
                write!(f, "kernel-valued signal needs square length, got {len}")
            }
            Self::NumericalBreakdown(what) => write!(f, "numerical breakdown in {what}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
