//! Spatial and spectral grids.
//!
//! Two k-grid families are used. Analysis grids place nodes at half-integer
//! multiples of the step so `sgn(k)` is never evaluated at 0; quadrature
//! weights carry Euler-Maclaurin endpoint corrections on each side of k=0 so
//! that integrands which are smooth on each half-line (but possibly kinked at
//! the origin) still integrate to high order. Evolution grids are FFT-native
//! lattices (k=0 on-grid) restricted to a band, with Gregory-corrected
//! trapezoid weights at the origin.

use crate::numerics::fd_weights;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Uniform spatial grid on `[-l, l]`.
///
/// Bounded grids include both endpoints (`n_cells + 1` points) and carry
/// trapezoid weights; periodic grids have `n_points` points spaced `2l/n`
/// starting at `-l`, with uniform weights.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct XGrid {
    pub l: f64,
    pub dx: f64,
    pub xs: Vec<f64>,
    pub periodic: bool,
}

impl XGrid {
    pub fn bounded(l: f64, n_cells: usize) -> Self {
        assert!(n_cells >= 2 && l > 0.0);
        let dx = 2.0 * l / n_cells as f64;
        let xs = (0..=n_cells).map(|j| -l + dx * j as f64).collect();
        XGrid { l, dx, xs, periodic: false }
    }

    pub fn periodic(l: f64, n_points: usize) -> Self {
        assert!(n_points >= 2 && l > 0.0);
        let dx = 2.0 * l / n_points as f64;
        let xs = (0..n_points).map(|j| -l + dx * j as f64).collect();
        XGrid { l, dx, xs, periodic: true }
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// Trapezoid quadrature weights adapted to the grid kind.
    pub fn weights(&self) -> Vec<f64> {
        let n = self.xs.len();
        let mut w = vec![self.dx; n];
        if !self.periodic {
            w[0] *= 0.5;
            w[n - 1] *= 0.5;
        }
        w
    }

    /// Index of the mirrored node `-x` (bounded grids are symmetric).
    pub fn reflect(&self, j: usize) -> usize {
        assert!(!self.periodic, "reflection is used on bounded grids only");
        self.xs.len() - 1 - j
    }

    /// Indices whose |x| does not exceed `half_width`.
    pub fn window_indices(&self, half_width: f64) -> Vec<usize> {
        (0..self.xs.len())
            .filter(|&j| self.xs[j].abs() <= half_width + 1e-12)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KGridKind {
    /// Nodes at +-(i+1/2)dk; k=0 excluded.
    HalfInteger,
    /// FFT lattice nodes m*dk restricted to a band; k=0 on-grid.
    FftBand,
}

/// Spectral grid with quadrature weights.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KGrid {
    pub ks: Vec<f64>,
    pub weights: Vec<f64>,
    pub dk: f64,
    pub k_max: f64,
    pub kind: KGridKind,
    /// Index of k=0 for FFT-band grids.
    pub zero_index: Option<usize>,
    /// FFT mode number for each node (FFT-band grids only).
    pub fft_modes: Option<Vec<i64>>,
}

/// Number of boundary nodes that receive endpoint-corrected weights.
const CORRECTION_STENCIL: usize = 6;

impl KGrid {
    /// Symmetric half-integer grid: nodes `+-(i+1/2)dk` for `i < n_pos` where
    /// `n_pos = round(k_max/dk)`, ascending. The midpoint-rule weights get
    /// Euler-Maclaurin corrections at both sides of the excluded origin:
    /// `int_0^inf f = dk*sum f_i - dk^2/24 f'(0) + 7dk^4/5760 f'''(0)`,
    /// with the derivatives replaced by one-sided stencils.
    pub fn half_integer(dk: f64, k_max: f64) -> Self {
        assert!(dk > 0.0 && k_max > dk);
        let n_pos = (k_max / dk).round() as usize;
        assert!(n_pos > CORRECTION_STENCIL);
        let mut ks = Vec::with_capacity(2 * n_pos);
        for i in (0..n_pos).rev() {
            ks.push(-(i as f64 + 0.5) * dk);
        }
        for i in 0..n_pos {
            ks.push((i as f64 + 0.5) * dk);
        }
        let mut weights = vec![dk; 2 * n_pos];
        let pos_nodes: Vec<f64> =
            (0..CORRECTION_STENCIL).map(|i| (i as f64 + 0.5) * dk).collect();
        let d1 = fd_weights(&pos_nodes, 0.0, 1).expect("stencil");
        let d3 = fd_weights(&pos_nodes, 0.0, 3).expect("stencil");
        for i in 0..CORRECTION_STENCIL {
            let corr = -dk * dk / 24.0 * d1[i] + 7.0 * dk.powi(4) / 5760.0 * d3[i];
            weights[n_pos + i] += corr;
            // Mirror: the left-side stencil nodes are -(i+1/2)dk; odd-order
            // derivative weights flip sign under reflection, and so does the
            // orientation of the correction, leaving the same adjustment.
            weights[n_pos - 1 - i] += corr;
        }
        KGrid {
            ks,
            weights,
            dk,
            k_max: (n_pos as f64) * dk,
            kind: KGridKind::HalfInteger,
            zero_index: None,
            fft_modes: None,
        }
    }

    /// Band-restricted FFT lattice for a periodic box of half-width `l_half`
    /// sampled at `n_x` points: nodes `m*dk`, `dk = pi/l_half`, `|m*dk| <=
    /// k_band`. Trapezoid weights with Gregory corrections at the on-grid
    /// origin, each half-line treated separately:
    /// `int_0^inf f = dk*(f_0/2 + f_1 + ...) + dk^2/12 f'(0) - dk^4/720 f'''(0)`.
    pub fn fft_band(l_half: f64, n_x: usize, k_band: f64) -> Self {
        assert!(l_half > 0.0 && n_x >= 8);
        let dk = std::f64::consts::PI / l_half;
        let m_nyq = (n_x / 2) as i64;
        let m_max = ((k_band / dk).floor() as i64).min(m_nyq - 1);
        assert!(m_max as usize > CORRECTION_STENCIL);
        let ms: Vec<i64> = (-m_max..=m_max).collect();
        let ks: Vec<f64> = ms.iter().map(|&m| m as f64 * dk).collect();
        let zero = m_max as usize;
        let mut weights = vec![dk; ks.len()];
        let nodes: Vec<f64> = (0..CORRECTION_STENCIL).map(|i| i as f64 * dk).collect();
        let d1 = fd_weights(&nodes, 0.0, 1).expect("stencil");
        let d3 = fd_weights(&nodes, 0.0, 3).expect("stencil");
        // Base: f_0 gets dk/2 from each side, interior nodes dk.
        for i in 0..CORRECTION_STENCIL {
            let corr = dk * dk / 12.0 * d1[i] - dk.powi(4) / 720.0 * d3[i];
            weights[zero + i] += corr;
            weights[zero - i] += corr; // i=0 applies both sides' corrections at the shared node
        }
        KGrid {
            ks,
            weights,
            dk,
            k_max: m_max as f64 * dk,
            kind: KGridKind::FftBand,
            zero_index: Some(zero),
            fft_modes: Some(ms),
        }
    }

    pub fn len(&self) -> usize {
        self.ks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ks.is_empty()
    }

    /// Strictly positive nodes, ascending.
    pub fn positive(&self) -> Vec<f64> {
        self.ks.iter().copied().filter(|&k| k > 0.0).collect()
    }

    /// Map each node to (index of |k| in the `positive()` list, sign of k).
    /// FFT-band k=0 maps to (usize::MAX, 0); callers handle it separately.
    pub fn magnitude_lookup(&self) -> Vec<(usize, i8)> {
        let pos = self.positive();
        self.ks
            .iter()
            .map(|&k| {
                if k == 0.0 {
                    return (usize::MAX, 0i8);
                }
                let target = k.abs();
                let mut j = pos.partition_point(|&p| p < target);
                if j >= pos.len()
                    || (j > 0 && (pos[j - 1] - target).abs() < (pos[j] - target).abs())
                {
                    j -= 1;
                }
                debug_assert!((pos[j] - target).abs() < 1e-9 * self.dk.max(1.0));
                (j, if k > 0.0 { 1 } else { -1 })
            })
            .collect()
    }
}

/// Largest safe linear-propagation horizon on a box of half-width `l` for
/// spectral content up to `k_max`: fronts travel at group velocity `2k`.
pub fn safe_horizon(l: f64, k_max: f64, margin: f64) -> f64 {
    margin * l / (2.0 * k_max)
}

/// Check that `t` is within the safe horizon, with an explicit error naming
/// the largest admissible time.
pub fn require_safe_horizon(l: f64, k_max: f64, t: f64, margin: f64) -> Result<()> {
    let t_safe = safe_horizon(l, k_max, margin);
    if t > t_safe {
        return Err(Error::HorizonExceeded { t, frac: margin, t_safe });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn bounded_grid_is_symmetric_and_weights_sum_to_length() {
        let g = XGrid::bounded(40.0, 4096);
        assert_eq!(g.len(), 4097);
        assert_abs_diff_eq!(g.xs[0], -40.0, epsilon = 1e-12);
        assert_abs_diff_eq!(g.xs[4096], 40.0, epsilon = 1e-12);
        for j in 0..g.len() {
            assert_abs_diff_eq!(g.xs[g.reflect(j)], -g.xs[j], epsilon = 1e-10);
        }
        let total: f64 = g.weights().iter().sum();
        assert_abs_diff_eq!(total, 80.0, epsilon = 1e-9);
    }

    #[test]
    fn periodic_grid_excludes_right_endpoint() {
        let g = XGrid::periodic(10.0, 64);
        assert_eq!(g.len(), 64);
        assert_abs_diff_eq!(g.xs[0], -10.0, epsilon = 1e-12);
        assert!(g.xs[63] < 10.0);
        let total: f64 = g.weights().iter().sum();
        assert_abs_diff_eq!(total, 20.0, epsilon = 1e-9);
    }

    #[test]
    fn half_integer_grid_has_no_origin_and_integrates_smooth_kinks() {
        let g = KGrid::half_integer(1.0 / 64.0, 16.0);
        assert_eq!(g.len(), 2048);
        assert!(g.ks.iter().all(|&k| k != 0.0));
        for w in g.ks.windows(2) {
            assert_abs_diff_eq!(w[1] - w[0], g.dk, epsilon = 1e-12);
        }
        // |k| e^{-k^2} has a kink at 0; each half-line is smooth. The
        // corrected midpoint rule must beat plain midpoint by a wide margin.
        let exact = 1.0 - (-256.0f64).exp(); // int |k| e^{-k^2} over the line
        let quad: f64 = g
            .ks
            .iter()
            .zip(&g.weights)
            .map(|(&k, &w)| w * k.abs() * (-k * k).exp())
            .sum();
        assert!((quad - exact).abs() < 1e-10, "corrected error {:e}", quad - exact);
        let plain: f64 = g.ks.iter().map(|&k| g.dk * k.abs() * (-k * k).exp()).sum();
        assert!((plain - exact).abs() > 1e-7, "midpoint alone should be visibly worse");
    }

    #[test]
    fn half_integer_weights_also_handle_globally_smooth_integrands() {
        let g = KGrid::half_integer(1.0 / 64.0, 16.0);
        let quad: f64 = g
            .ks
            .iter()
            .zip(&g.weights)
            .map(|(&k, &w)| w * (-k * k / 2.0).exp())
            .sum();
        let exact = (2.0 * std::f64::consts::PI).sqrt();
        assert!((quad - exact).abs() < 1e-12, "error {:e}", quad - exact);
    }

    #[test]
    fn fft_band_grid_handles_one_sided_kinks() {
        let g = KGrid::fft_band(1280.0, 16384, 6.0);
        assert_eq!(g.zero_index.map(|i| g.ks[i]), Some(0.0));
        let m = g.fft_modes.as_ref().unwrap();
        assert_eq!(m[g.zero_index.unwrap()], 0);
        assert!(g.k_max <= 6.0 + 1e-12);
        let quad: f64 = g
            .ks
            .iter()
            .zip(&g.weights)
            .map(|(&k, &w)| w * k.abs() * (-2.0 * k * k).exp())
            .sum();
        let exact = 0.5; // int |k| e^{-2k^2} = 2 * (1/(2*2))
        assert!((quad - exact).abs() < 1e-10, "error {:e}", quad - exact);
    }

    #[test]
    fn horizon_guard_reports_safe_time() {
        assert!(require_safe_horizon(1280.0, 6.0, 90.0, 0.9).is_ok());
        let err = require_safe_horizon(1280.0, 6.0, 200.0, 0.9).unwrap_err();
        match err {
            Error::HorizonExceeded { t_safe, .. } => {
                assert_abs_diff_eq!(t_safe, 96.0, epsilon = 1e-9)
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
