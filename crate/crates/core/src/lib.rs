//! Spectral toolkit for one-dimensional Schrodinger operators `H = -d2/dx2 + V(x)`
//! with short-range potentials, aimed at the low-energy resonant case.
//!
//! The crate computes Jost solutions and scattering data (`jost`, `scattering`),
//! builds the distorted Fourier transform attached to `H` (`dft`), splits the
//! generalized eigenfunctions into singular and regular parts (`eigensplit`),
//! assembles the induced nonlinear spectral distribution for the cubic
//! nonlinearity (`nsd`), verifies dispersive decay and smoothing estimates for
//! the linear flow (`linflow`), and evolves the cubic NLS in the distorted basis
//! (`nlsolve`) far enough in time to observe the asymptotic phase correction
//! (`asymptotics`).

pub mod fft;
pub mod grid;
pub mod numerics;
pub mod potential;

use thiserror::Error;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// Shorthand for the imaginary unit.
pub const I: C64 = C64::new(0.0, 1.0);

#[derive(Debug, Error)]
pub enum Error {
    #[error("singular linear system: pivot {pivot:.3e} at column {col}")]
    SingularSystem { pivot: f64, col: usize },
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("propagation horizon too long: mass near the box edge exceeds {frac:.2e} at t = {t:.3e}; largest safe horizon ~ {t_safe:.3e}")]
    HorizonExceeded { t: f64, frac: f64, t_safe: f64 },
    #[error("spectral amplitude at k=0 is below the noise floor ({amp:.3e} < {floor:.3e}); jump ratio undefined")]
    JumpBelowNoise { amp: f64, floor: f64 },
    #[error("operation requires a resonant (non-generic) potential, classification is {0}")]
    NotResonant(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
