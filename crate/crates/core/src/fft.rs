//! FFT plumbing: cached power-of-two FFT plans and a Bluestein chirp
//! transform for Fourier sums between arbitrary uniform grids
//! (off-lattice steps and offsets), used for flat transforms and for
//! sampling profile transforms on spectral lattices.

use crate::grid::{KGrid, XGrid};
use crate::C64;
use once_cell::sync::Lazy;
use rustfft::{Fft, FftPlanner};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

static PLANS: Lazy<Mutex<HashMap<(usize, bool), Arc<dyn Fft<f64>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn plan(n: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    let mut cache = PLANS.lock().unwrap();
    cache
        .entry((n, inverse))
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            if inverse {
                planner.plan_fft_inverse(n)
            } else {
                planner.plan_fft_forward(n)
            }
        })
        .clone()
}

/// Unnormalized in-place DFT: forward uses kernel `e^{-2 pi i jm/n}`.
pub fn fft_in_place(data: &mut [C64], inverse: bool) {
    plan(data.len(), inverse).process(data);
}

fn next_pow2(n: usize) -> usize {
    n.next_power_of_two()
}

/// Precomputed Bluestein evaluation of `X_m = sum_j f_j e^{s i k_m x_j}` for
/// `x_j = x0 + j dx` (j < n_in) and `k_m = k0 + m dk` (m < n_out), `s = +-1`.
pub struct ChirpPlan {
    n_in: usize,
    n_out: usize,
    len: usize,
    sign: f64,
    x0: f64,
    k0: f64,
    dx: f64,
    dk: f64,
    /// e^{i theta j^2 / 2} for the input dressing, theta = s dk dx.
    chirp_in: Vec<C64>,
    /// e^{i theta m^2 / 2} for the output dressing.
    chirp_out: Vec<C64>,
    /// FFT of the wrapped kernel conj(e^{i theta t^2 / 2}).
    kernel_hat: Vec<C64>,
}

impl ChirpPlan {
    pub fn new(n_in: usize, x0: f64, dx: f64, n_out: usize, k0: f64, dk: f64, sign: f64) -> Self {
        assert!(n_in > 0 && n_out > 0);
        assert!(sign == 1.0 || sign == -1.0);
        let theta = sign * dk * dx;
        let len = next_pow2(n_in + n_out - 1);
        let phase = |t: i64| -> C64 {
            // e^{i theta t^2 / 2}; reduce t^2/2 * theta modulo 2 pi using
            // f64 on the reduced square to keep the argument small.
            let tf = t as f64;
            let arg = 0.5 * theta * tf * tf;
            let tau = 2.0 * std::f64::consts::PI;
            C64::from_polar(1.0, arg % tau)
        };
        let chirp_in: Vec<C64> = (0..n_in as i64).map(phase).collect();
        let chirp_out: Vec<C64> = (0..n_out as i64).map(phase).collect();
        let mut kernel = vec![C64::new(0.0, 0.0); len];
        for t in -(n_in as i64 - 1)..=(n_out as i64 - 1) {
            let idx = t.rem_euclid(len as i64) as usize;
            kernel[idx] = phase(t).conj();
        }
        fft_in_place(&mut kernel, false);
        ChirpPlan {
            n_in,
            n_out,
            len,
            sign,
            x0,
            k0,
            dx,
            dk,
            chirp_in,
            chirp_out,
            kernel_hat: kernel,
        }
    }

    pub fn apply(&self, f: &[C64]) -> Vec<C64> {
        assert_eq!(f.len(), self.n_in);
        let mut work = vec![C64::new(0.0, 0.0); self.len];
        for j in 0..self.n_in {
            // input dressing e^{s i k0 j dx} * chirp
            let arg = self.sign * self.k0 * (j as f64) * self.dx;
            work[j] = f[j] * C64::from_polar(1.0, arg) * self.chirp_in[j];
        }
        fft_in_place(&mut work, false);
        for (w, k) in work.iter_mut().zip(&self.kernel_hat) {
            *w *= k;
        }
        fft_in_place(&mut work, true);
        let norm = 1.0 / self.len as f64;
        let mut out = Vec::with_capacity(self.n_out);
        for m in 0..self.n_out {
            let km = self.k0 + m as f64 * self.dk;
            let outer = C64::from_polar(1.0, self.sign * km * self.x0);
            out.push(work[m] * norm * self.chirp_out[m] * outer);
        }
        out
    }
}

/// One-shot chirp transform; see [`ChirpPlan`].
pub fn chirp_ft(
    f: &[C64],
    x0: f64,
    dx: f64,
    k0: f64,
    dk: f64,
    n_out: usize,
    sign: f64,
) -> Vec<C64> {
    ChirpPlan::new(f.len(), x0, dx, n_out, k0, dk, sign).apply(f)
}

/// Flat Fourier transform `(2 pi)^{-1/2} int e^{-ikx} f(x) dx` sampled on a
/// spectral grid, with the x-grid's trapezoid weights folded in.
pub fn flat_forward(f: &[C64], xg: &XGrid, kg: &KGrid) -> Vec<C64> {
    let w = xg.weights();
    let weighted: Vec<C64> = f.iter().zip(&w).map(|(&v, &wx)| v * wx).collect();
    let norm = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
    let mut out = chirp_ft(&weighted, xg.xs[0], xg.dx, kg.ks[0], kg.dk, kg.len(), -1.0);
    for v in &mut out {
        *v *= norm;
    }
    out
}

/// Flat inverse transform `(2 pi)^{-1/2} int e^{+ikx} g(k) dk` sampled on the
/// x-grid, with the k-grid's corrected weights folded in.
pub fn flat_inverse(g: &[C64], kg: &KGrid, xg: &XGrid) -> Vec<C64> {
    let weighted: Vec<C64> = g.iter().zip(&kg.weights).map(|(&v, &wk)| v * wk).collect();
    let norm = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
    let mut out = chirp_ft(&weighted, kg.ks[0], kg.dk, xg.xs[0], xg.dx, xg.len(), 1.0);
    for v in &mut out {
        *v *= norm;
    }
    out
}

/// Spectral second derivative on a periodic grid via FFT; for bounded grids
/// the data must decay well inside the box (the wraparound is then harmless).
pub fn second_derivative_spectral(f: &[C64], xg: &XGrid) -> Vec<C64> {
    let n = if xg.periodic { xg.len() } else { xg.len() - 1 };
    let mut buf: Vec<C64> = f[..n].to_vec();
    fft_in_place(&mut buf, false);
    let box_len = 2.0 * xg.l;
    for (m, v) in buf.iter_mut().enumerate() {
        let mm = if m <= n / 2 { m as f64 } else { m as f64 - n as f64 };
        let kappa = 2.0 * std::f64::consts::PI * mm / box_len;
        *v *= -kappa * kappa / n as f64;
    }
    fft_in_place(&mut buf, true);
    let mut out = buf;
    if !xg.periodic {
        let first = out[0];
        out.push(first);
    }
    out
}
