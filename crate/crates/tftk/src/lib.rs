//! Discrete time-frequency analysis on the cyclic group Z_N.
//!
//! The crate models signals as complex vectors of length N and builds the
//! standard time-frequency machinery on top of them:
//!
//! - [`signal`]: translation, modulation, the unitary DFT, and periodized
//!   Gaussian windows;
//! - [`stft`]: full-grid short-time Fourier transforms of signals and of
//!   two-variable kernels, with exact inversion;
//! - [`gabor`]: lattice Gabor systems, frame bounds, canonical dual and
//!   tight windows, and tensor frames for kernels;
//! - [`wilson`]: discrete Wilson orthonormal bases and their coefficient
//!   maps;
//! - [`norms`]: weights, coordinate permutations, iterated mixed norms, and
//!   modulation norms;
//! - [`operators`]: integral operators as kernels, singular values and
//!   Schatten norms, the tensor-frame Schatten bound, and Kohn-Nirenberg
//!   quantization.
//!
//! Everything is pure and deterministic; values are safe to share across
//! threads. The companion `verify` binary packages the theorem-level
//! numerical checks as named, seeded experiments.
//!
//! ```
//! use tftk::signal::{gaussian_window, Signal};
//! use tftk::stft::{istft_full, stft_full};
//! use num_complex::Complex64;
//!
//! let f = Signal::new((0..16).map(|t| Complex64::new((t as f64).sin(), 0.0)).collect()).unwrap();
//! let g = gaussian_window(16).unwrap();
//! let coeffs = stft_full(&f, &g).unwrap();
//! let back = istft_full(&coeffs, &g, &g).unwrap();
//! let err: f64 = back.values().iter().zip(f.values()).map(|(a, b)| (a - b).norm()).sum();
//! assert!(err < 1e-10);
//! ```

pub mod coeff;
pub mod error;
pub mod gabor;
pub mod norms;
pub mod operators;
pub mod signal;
pub mod stft;
pub mod wilson;

pub use error::{Error, Result};

/// Dense complex matrix used for kernels, symbols, and frame operators.
pub type CMatrix = nalgebra::DMatrix<num_complex::Complex64>;

pub use num_complex::Complex64;
