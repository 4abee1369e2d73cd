//! Potentials with prescribed zero-energy behavior.
//!
//! Resonant potentials are built from a bounded profile `phi` solving
//! `-phi'' + V phi = 0` via `V = phi''/phi`; the profile's parity decides the
//! parity of the resonance. Built-in profiles have closed-form second
//! derivatives, so no numerical differentiation enters construction.

use crate::grid::XGrid;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

/// Bounded zero-energy profiles with closed-form curvature.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub enum ResonanceProfile {
    /// phi = 1: the free line.
    One,
    /// phi = tanh(x): odd, limits -1/+1.
    Tanh,
    /// phi = 1 + c sech^2(x), c >= 0: even, strictly positive, limit 1.
    SechBump { c: f64 },
}

impl ResonanceProfile {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            ResonanceProfile::One => 1.0,
            ResonanceProfile::Tanh => x.tanh(),
            ResonanceProfile::SechBump { c } => {
                let s = 1.0 / x.cosh();
                1.0 + c * s * s
            }
        }
    }

    /// V = phi''/phi, evaluated in closed form (finite at profile nodes).
    pub fn potential(&self, x: f64) -> f64 {
        match *self {
            ResonanceProfile::One => 0.0,
            // tanh'' = -2 sech^2 tanh; the tanh factors cancel at the node.
            ResonanceProfile::Tanh => {
                let s = 1.0 / x.cosh();
                -2.0 * s * s
            }
            // (sech^2)'' = 4 sech^2 - 6 sech^4.
            ResonanceProfile::SechBump { c } => {
                let s2 = {
                    let s = 1.0 / x.cosh();
                    s * s
                };
                c * (4.0 * s2 - 6.0 * s2 * s2) / (1.0 + c * s2)
            }
        }
    }

    pub fn parity(&self) -> Parity {
        match self {
            ResonanceProfile::Tanh => Parity::Odd,
            _ => Parity::Even,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum PotentialKind {
    Zero,
    /// -n(n+1) sech^2 x.
    PoschlTeller { n: u32 },
    /// -s sech^2 x for arbitrary coupling s (generic unless s = n(n+1)).
    SechWell { s: f64 },
    /// a exp(-x^2/(2 w^2)).
    GaussianBump { amp: f64, width: f64 },
    /// phi''/phi for a built-in resonance profile.
    FromResonance { profile: ResonanceProfile },
}

impl PotentialKind {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            PotentialKind::Zero => 0.0,
            PotentialKind::PoschlTeller { n } => {
                let s = 1.0 / x.cosh();
                -((n * (n + 1)) as f64) * s * s
            }
            PotentialKind::SechWell { s } => {
                let c = 1.0 / x.cosh();
                -s * c * c
            }
            PotentialKind::GaussianBump { amp, width } => {
                amp * (-x * x / (2.0 * width * width)).exp()
            }
            PotentialKind::FromResonance { profile } => profile.potential(x),
        }
    }
}

/// Sampled real potential with decay metadata.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Potential {
    pub kind: PotentialKind,
    pub grid: XGrid,
    pub samples: Vec<f64>,
    /// Decay exponent: <x>^gamma |V| stays integrable.
    pub gamma: f64,
    pub even: bool,
    pub has_discrete_spectrum: bool,
    /// Parity of the built-in resonance when constructed from a profile.
    pub resonance_parity: Option<Parity>,
    /// Profile samples when constructed from a profile (normalized to 1 at +inf).
    pub phi_samples: Option<Vec<f64>>,
}

/// Sampled decay weights `W_+^s(x) = int_x^inf <y>^s |V| dy` and its mirror.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecayWeights {
    pub s: f64,
    pub w_plus: Vec<f64>,
    pub w_minus: Vec<f64>,
}

fn build(kind: PotentialKind, grid: &XGrid) -> Potential {
    let samples: Vec<f64> = grid.xs.iter().map(|&x| kind.eval(x)).collect();
    let even = {
        let mut dev = 0.0f64;
        for j in 0..grid.len() {
            dev = dev.max((samples[j] - samples[grid.len() - 1 - j]).abs());
        }
        dev < 1e-12
    };
    Potential {
        kind,
        grid: grid.clone(),
        samples,
        gamma: 8.0,
        even,
        has_discrete_spectrum: false,
        resonance_parity: None,
        phi_samples: None,
    }
}

/// Construct `V = phi''/phi` from a built-in bounded profile; records the
/// profile samples and its parity. Odd profiles force one negative eigenvalue
/// (their zero-energy solution has a node), which is flagged, not removed.
pub fn from_resonance(profile: ResonanceProfile, grid: &XGrid) -> Potential {
    let mut p = build(PotentialKind::FromResonance { profile }, grid);
    p.resonance_parity = Some(profile.parity());
    p.has_discrete_spectrum = matches!(profile.parity(), Parity::Odd);
    p.phi_samples = Some(grid.xs.iter().map(|&x| profile.eval(x)).collect());
    p
}

/// V(x) = -n(n+1) sech^2 x; reflectionless for integer n, one or more bound
/// states for n >= 1.
pub fn poschl_teller(n: u32, grid: &XGrid) -> Result<Potential> {
    if n == 0 {
        return Err(Error::InvalidParameter("poschl_teller needs n >= 1".into()));
    }
    let mut p = build(PotentialKind::PoschlTeller { n }, grid);
    p.has_discrete_spectrum = true;
    if n == 1 {
        // Same operator as from_resonance(tanh); keep the profile metadata.
        p.resonance_parity = Some(Parity::Odd);
        p.phi_samples = Some(grid.xs.iter().map(|&x| x.tanh()).collect());
    }
    Ok(p)
}

/// Attractive sech^2 well with arbitrary coupling (generic scattering for
/// generic coupling); any attractive well binds at least one state.
pub fn sech_well(s: f64, grid: &XGrid) -> Potential {
    let mut p = build(PotentialKind::SechWell { s }, grid);
    p.has_discrete_spectrum = s > 0.0;
    p
}

/// Repulsive/attractive Gaussian bump; repulsive bumps are generic with no
/// discrete spectrum.
pub fn gaussian_bump(amp: f64, width: f64, grid: &XGrid) -> Potential {
    let mut p = build(PotentialKind::GaussianBump { amp, width }, grid);
    p.has_discrete_spectrum = amp < 0.0;
    p
}

pub fn zero(grid: &XGrid) -> Potential {
    build(PotentialKind::Zero, grid)
}

impl Potential {
    pub fn l1_norm(&self) -> f64 {
        self.grid
            .weights()
            .iter()
            .zip(&self.samples)
            .map(|(&w, &v)| w * v.abs())
            .sum()
    }

    /// Estimated tail mass `int_L^inf <y>^s |V| dy` from the decay rate fitted
    /// on the last samples (assumes at-least-exponential decay of built-ins).
    fn tail_estimate(&self, s: f64) -> f64 {
        let n = self.grid.len();
        let lag = 16.min(n / 4);
        let v_end = self.samples[n - 1].abs().max(1e-300);
        let v_in = self.samples[n - 1 - lag].abs().max(1e-300);
        let rate = (v_in / v_end).ln() / (lag as f64 * self.grid.dx);
        let weight = (1.0 + self.grid.l * self.grid.l).sqrt().powf(s);
        if rate <= 0.1 {
            // No convincing decay; report a large pessimistic tail.
            return v_end * weight * 1e6;
        }
        v_end * weight / rate
    }

    /// Cumulative decay weights from both ends.
    pub fn decay_weights(&self, s: f64) -> Result<DecayWeights> {
        if s < 0.0 {
            return Err(Error::InvalidParameter("decay weight order must be >= 0".into()));
        }
        if s > self.gamma - 1.0 {
            return Err(Error::InvalidParameter(format!(
                "decay weight order {s} exceeds gamma - 1 = {}",
                self.gamma - 1.0
            )));
        }
        let tail = self.tail_estimate(s);
        let tol = 1e-10;
        if tail > tol {
            return Err(Error::InvalidParameter(format!(
                "potential tail beyond the box is ~{tail:.2e} (> {tol:.0e}); increase the half-width above L = {}",
                self.grid.l
            )));
        }
        let n = self.grid.len();
        let wq = self.grid.weights();
        let integrand: Vec<f64> = self
            .grid
            .xs
            .iter()
            .zip(&self.samples)
            .map(|(&x, &v)| (1.0 + x * x).sqrt().powf(s) * v.abs())
            .collect();
        // Cumulative trapezoid sums from each end; endpoints use the grid's
        // half-weights so w_plus(-L) equals the full weighted norm.
        let mut w_plus = vec![0.0; n];
        let mut acc = 0.0;
        for j in (0..n).rev() {
            acc += wq[j] * integrand[j];
            w_plus[j] = acc;
        }
        let mut w_minus = vec![0.0; n];
        acc = 0.0;
        for j in 0..n {
            acc += wq[j] * integrand[j];
            w_minus[j] = acc;
        }
        Ok(DecayWeights { s, w_plus, w_minus })
    }
}
