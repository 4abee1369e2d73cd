//! Small dense linear algebra and interpolation kernels shared by the solver
//! modules: partial-pivot elimination, finite-difference weight generation,
//! Neville extrapolation, least-squares line fits, and a cyclic Jacobi
//! eigensolver for Hermitian matrices (used for low-rank kernel compression).

use crate::{C64, Error, Result};
use num_complex::ComplexFloat;

/// Solve `a x = b` in place for a dense row-major `n x n` complex system with
/// partial pivoting. On return `b` holds the solution; `a` is destroyed.
pub fn solve_complex(a: &mut [C64], b: &mut [C64], n: usize) -> Result<()> {
    debug_assert_eq!(a.len(), n * n);
    debug_assert_eq!(b.len(), n);
    for col in 0..n {
        let mut piv = col;
        let mut best = a[col * n + col].abs();
        for row in col + 1..n {
            let mag = a[row * n + col].abs();
            if mag > best {
                best = mag;
                piv = row;
            }
        }
        if !(best > 0.0) || !best.is_finite() {
            return Err(Error::SingularSystem { pivot: best, col });
        }
        if piv != col {
            for j in col..n {
                a.swap(piv * n + j, col * n + j);
            }
            b.swap(piv, col);
        }
        let inv = C64::new(1.0, 0.0) / a[col * n + col];
        for row in col + 1..n {
            let factor = a[row * n + col] * inv;
            if factor == C64::new(0.0, 0.0) {
                continue;
            }
            for j in col + 1..n {
                let sub = factor * a[col * n + j];
                a[row * n + j] -= sub;
            }
            b[row] -= factor * b[col];
        }
    }
    for col in (0..n).rev() {
        let mut acc = b[col];
        for j in col + 1..n {
            acc -= a[col * n + j] * b[j];
        }
        b[col] = acc / a[col * n + col];
    }
    Ok(())
}

/// Real version of [`solve_complex`].
pub fn solve_real(a: &mut [f64], b: &mut [f64], n: usize) -> Result<()> {
    let mut ac: Vec<C64> = a.iter().map(|&v| C64::new(v, 0.0)).collect();
    let mut bc: Vec<C64> = b.iter().map(|&v| C64::new(v, 0.0)).collect();
    solve_complex(&mut ac, &mut bc, n)?;
    for (dst, src) in b.iter_mut().zip(&bc) {
        *dst = src.re;
    }
    for (dst, src) in a.iter_mut().zip(&ac) {
        *dst = src.re;
    }
    Ok(())
}

/// Weights `w_i` such that `sum_i w_i f(x_i)` approximates the `order`-th
/// derivative of `f` at `x0`, exact for polynomials of degree `< nodes.len()`.
///
/// Nodes are rescaled internally so the Vandermonde solve stays conditioned
/// for the small stencils (<= 8 nodes) used here.
pub fn fd_weights(nodes: &[f64], x0: f64, order: usize) -> Result<Vec<f64>> {
    let n = nodes.len();
    if order >= n {
        return Err(Error::InvalidParameter(format!(
            "derivative order {order} needs more than {n} nodes"
        )));
    }
    let scale = nodes
        .iter()
        .map(|&x| (x - x0).abs())
        .fold(0.0f64, f64::max)
        .max(f64::MIN_POSITIVE);
    // Row p of the system: sum_i w_i t_i^p = p! delta_{p,order} in the scaled
    // variable t = (x - x0)/scale.
    let mut a = vec![0.0f64; n * n];
    let mut b = vec![0.0f64; n];
    for (i, &x) in nodes.iter().enumerate() {
        let t = (x - x0) / scale;
        let mut tp = 1.0;
        for p in 0..n {
            a[p * n + i] = tp;
            tp *= t;
        }
    }
    let mut fact = 1.0;
    for p in 1..=order {
        fact *= p as f64;
    }
    b[order] = fact;
    solve_real(&mut a, &mut b, n)?;
    let correction = scale.powi(order as i32);
    for w in &mut b {
        *w /= correction;
    }
    Ok(b)
}

/// Monomial coefficients of the Lagrange basis on the given nodes:
/// `out[r][p]` is the coefficient of `t^p` in the basis polynomial that is 1
/// at `nodes[r]` and 0 at the others.
pub fn lagrange_to_monomial(nodes: &[f64]) -> Vec<Vec<f64>> {
    let n = nodes.len();
    let mut out = vec![vec![0.0; n]; n];
    for r in 0..n {
        let mut coeff = vec![0.0; n];
        coeff[0] = 1.0;
        let mut deg = 0usize;
        let mut denom = 1.0;
        for (j, &xj) in nodes.iter().enumerate() {
            if j == r {
                continue;
            }
            // multiply by (t - xj)
            for p in (1..=deg + 1).rev() {
                coeff[p] = coeff[p - 1] - xj * coeff[p];
            }
            coeff[0] *= -xj;
            deg += 1;
            denom *= nodes[r] - xj;
        }
        for p in 0..n {
            out[r][p] = coeff[p] / denom;
        }
    }
    out
}

/// Neville polynomial interpolation of `(xs, ys)` evaluated at `x`.
pub fn neville(xs: &[f64], ys: &[C64], x: f64) -> C64 {
    let n = xs.len();
    let mut p: Vec<C64> = ys.to_vec();
    for level in 1..n {
        for i in 0..n - level {
            let num = (x - xs[i + level]) * p[i] + (xs[i] - x) * p[i + 1];
            p[i] = num / (xs[i] - xs[i + level]);
        }
    }
    p[0]
}

/// Real-valued [`neville`].
pub fn neville_real(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let yc: Vec<C64> = ys.iter().map(|&v| C64::new(v, 0.0)).collect();
    neville(xs, &yc, x).re
}

/// Least-squares straight line through `(xs, ys)`; returns `(slope, intercept)`.
pub fn fit_line(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    let denom = n * sxx - sx * sx;
    let slope = (n * sxy - sx * sy) / denom;
    (slope, (sy - slope * sx) / n)
}

/// Slope of `log(ys)` against `log(xs)`: the empirical power-law exponent.
/// Non-positive samples are skipped.
pub fn fit_power_law(xs: &[f64], ys: &[f64]) -> f64 {
    let mut lx = Vec::with_capacity(xs.len());
    let mut ly = Vec::with_capacity(ys.len());
    for (&x, &y) in xs.iter().zip(ys) {
        if x > 0.0 && y > 0.0 {
            lx.push(x.ln());
            ly.push(y.ln());
        }
    }
    assert!(lx.len() >= 2, "power-law fit needs at least two positive samples");
    fit_line(&lx, &ly).0
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// `a` is row-major `n x n` and is destroyed. Returns eigenvalues in
/// descending order and the matching orthonormal eigenvectors as columns of a
/// row-major matrix.
pub fn hermitian_eig(a: &mut [C64], n: usize) -> (Vec<f64>, Vec<C64>) {
    debug_assert_eq!(a.len(), n * n);
    let mut v = vec![C64::new(0.0, 0.0); n * n];
    for i in 0..n {
        v[i * n + i] = C64::new(1.0, 0.0);
    }
    let norm: f64 = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let tol = 1e-14 * norm.max(f64::MIN_POSITIVE);
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                off += a[p * n + q].norm_sqr();
            }
        }
        if off.sqrt() <= tol {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let gamma = a[p * n + q];
                let mag = gamma.abs();
                if mag <= tol * 1e-2 {
                    continue;
                }
                let phase = gamma / mag;
                let alpha = a[p * n + p].re;
                let beta = a[q * n + q].re;
                let tau = (alpha - beta) / (2.0 * mag);
                let t = if tau.abs() < 1e300 {
                    tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                } else {
                    0.0
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Column update A <- A U with U[pp]=c, U[pq]=-s*phase,
                // U[qp]=s*conj(phase), U[qq]=c, then the mirrored row update.
                for i in 0..n {
                    let aip = a[i * n + p];
                    let aiq = a[i * n + q];
                    a[i * n + p] = aip * c + aiq * s * phase.conj();
                    a[i * n + q] = -aip * s * phase + aiq * c;
                }
                for j in 0..n {
                    let apj = a[p * n + j];
                    let aqj = a[q * n + j];
                    a[p * n + j] = apj * c + aqj * s * phase;
                    a[q * n + j] = -apj * s * phase.conj() + aqj * c;
                }
                a[p * n + q] = C64::new(0.0, 0.0);
                a[q * n + p] = C64::new(0.0, 0.0);
                for i in 0..n {
                    let vip = v[i * n + p];
                    let viq = v[i * n + q];
                    v[i * n + p] = vip * c + viq * s * phase.conj();
                    v[i * n + q] = -vip * s * phase + viq * c;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    let evals: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    order.sort_by(|&i, &j| evals[j].partial_cmp(&evals[i]).unwrap());
    let sorted_vals: Vec<f64> = order.iter().map(|&i| evals[i]).collect();
    let mut sorted_vecs = vec![C64::new(0.0, 0.0); n * n];
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            sorted_vecs[row * n + new_col] = v[row * n + old_col];
        }
    }
    (sorted_vals, sorted_vecs)
}

/// Four-point Lagrange interpolation of tabulated complex values on a sorted
/// abscissa vector. Falls back to the nearest full stencil at the ends.
pub fn interp4(xs: &[f64], ys: &[C64], x: f64) -> C64 {
    let n = xs.len();
    assert!(n >= 4, "interp4 needs at least four samples");
    let pos = xs.partition_point(|&v| v < x);
    let start = pos.saturating_sub(2).min(n - 4);
    neville(&xs[start..start + 4], &ys[start..start + 4], x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn elimination_solves_random_systems() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [1usize, 2, 4, 7] {
            let a: Vec<C64> = (0..n * n)
                .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let x_true: Vec<C64> = (0..n)
                .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let mut b = vec![C64::new(0.0, 0.0); n];
            for i in 0..n {
                for j in 0..n {
                    b[i] += a[i * n + j] * x_true[j];
                }
            }
            let mut a_work = a.clone();
            solve_complex(&mut a_work, &mut b, n).unwrap();
            for i in 0..n {
                assert!((b[i] - x_true[i]).abs() < 1e-11, "n={n} i={i}");
            }
        }
    }

    #[test]
    fn elimination_reports_singular_input() {
        let mut a = vec![C64::new(0.0, 0.0); 4];
        a[0] = C64::new(1.0, 0.0);
        a[1] = C64::new(2.0, 0.0);
        a[2] = C64::new(2.0, 0.0);
        a[3] = C64::new(4.0, 0.0);
        let mut b = vec![C64::new(1.0, 0.0); 2];
        assert!(solve_complex(&mut a, &mut b, 2).is_err());
    }

    #[test]
    fn fd_weights_match_classical_stencils() {
        let h = 0.37;
        let nodes = [-h, 0.0, h];
        let w = fd_weights(&nodes, 0.0, 2).unwrap();
        assert_abs_diff_eq!(w[0], 1.0 / (h * h), epsilon = 1e-10);
        assert_abs_diff_eq!(w[1], -2.0 / (h * h), epsilon = 1e-10);
        assert_abs_diff_eq!(w[2], 1.0 / (h * h), epsilon = 1e-10);

        // One-sided first derivative on half-integer nodes, checked against a
        // smooth function instead of published coefficients.
        let nodes: Vec<f64> = (0..6).map(|i| (i as f64 + 0.5) * 0.1).collect();
        let w = fd_weights(&nodes, 0.0, 1).unwrap();
        let f = |x: f64| (1.3 * x).sin() + 0.4 * (x * x);
        let approx: f64 = nodes.iter().zip(&w).map(|(&x, &c)| c * f(x)).sum();
        assert_abs_diff_eq!(approx, 1.3, epsilon = 1e-6);
    }

    #[test]
    fn lagrange_basis_coefficients_reproduce_cardinal_values() {
        let nodes = [0.0, 0.25, 0.5, 0.75, 1.0];
        let c = lagrange_to_monomial(&nodes);
        for r in 0..5 {
            for (j, &xj) in nodes.iter().enumerate() {
                let mut val = 0.0;
                let mut tp = 1.0;
                for p in 0..5 {
                    val += c[r][p] * tp;
                    tp *= xj;
                }
                let expect = if j == r { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(val, expect, epsilon = 1e-11);
            }
        }
    }

    #[test]
    fn neville_recovers_polynomials_exactly() {
        let xs = [0.5, 1.0, 1.5, 2.0];
        let poly = |x: f64| C64::new(2.0 - x + 3.0 * x * x, 0.5 * x * x * x);
        let ys: Vec<C64> = xs.iter().map(|&x| poly(x)).collect();
        let got = neville(&xs, &ys, 0.0);
        assert!((got - poly(0.0)).abs() < 1e-12);
    }

    #[test]
    fn line_fit_recovers_exact_line() {
        let xs: Vec<f64> = (0..20).map(|i| i as f64 * 0.3).collect();
        let ys: Vec<f64> = xs.iter().map(|x| -1.7 * x + 0.9).collect();
        let (slope, icept) = fit_line(&xs, &ys);
        assert_abs_diff_eq!(slope, -1.7, epsilon = 1e-12);
        assert_abs_diff_eq!(icept, 0.9, epsilon = 1e-12);
    }

    #[test]
    fn jacobi_eigensolver_matches_residual_and_orthogonality() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 12;
        let mut a = vec![C64::new(0.0, 0.0); n * n];
        for i in 0..n {
            a[i * n + i] = C64::new(rng.gen_range(-2.0..2.0), 0.0);
            for j in i + 1..n {
                let z = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                a[i * n + j] = z;
                a[j * n + i] = z.conj();
            }
        }
        let a0 = a.clone();
        let (vals, vecs) = hermitian_eig(&mut a, n);
        for col in 0..n {
            // residual A v - lambda v
            let mut res = 0.0f64;
            for row in 0..n {
                let mut av = C64::new(0.0, 0.0);
                for j in 0..n {
                    av += a0[row * n + j] * vecs[j * n + col];
                }
                res += (av - vals[col] * vecs[row * n + col]).norm_sqr();
            }
            assert!(res.sqrt() < 1e-10, "col {col} residual {res:e}");
        }
        for c1 in 0..n {
            for c2 in 0..n {
                let mut dot = C64::new(0.0, 0.0);
                for row in 0..n {
                    dot += vecs[row * n + c1].conj() * vecs[row * n + c2];
                }
                let expect = if c1 == c2 { 1.0 } else { 0.0 };
                assert!((dot - expect).abs() < 1e-11);
            }
        }
        for w in vals.windows(2) {
            assert!(w[0] >= w[1]);
        }
    }

    #[test]
    fn interp4_tracks_smooth_samples() {
        let xs: Vec<f64> = (0..40).map(|i| -2.0 + 0.1 * i as f64).collect();
        let f = |x: f64| C64::new((1.7 * x).cos(), (0.9 * x).sin());
        let ys: Vec<C64> = xs.iter().map(|&x| f(x)).collect();
        for &x in &[-1.97, -0.513, 0.0, 0.844, 1.62] {
            assert!((interp4(&xs, &ys, x) - f(x)).abs() < 2e-5);
        }
    }
}
