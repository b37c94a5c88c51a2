//! Slow, obviously-correct reference implementations used as ground truth.
//!
//! Everything here runs in f64 regardless of the kernel's working precision
//! and favors clarity over speed: the direct O(N²) transforms, a dense
//! materialized block-circulant operator, and central finite differences.
//! Comparisons against a lower-precision kernel should widen the kernel's
//! output to f64 (which is exact) rather than recompute the reference at
//! reduced precision.

use num_complex::Complex64;

use crate::{Error, Result};

/// Direct O(N²) discrete Fourier transform, negative-exponent convention,
/// no normalization.
pub fn naive_dft(x: &[f64]) -> Vec<Complex64> {
    let n = x.len();
    let roots = unit_roots(n);
    (0..n)
        .map(|k| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, &v) in x.iter().enumerate() {
                acc += roots[k * j % n] * v;
            }
            acc
        })
        .collect()
}

/// Direct O(N²) inverse transform with the 1/N factor.
///
/// For Hermitian input the imaginary parts of the result vanish up to
/// rounding; callers that expect a real signal should assert that.
pub fn naive_idft(spectrum: &[Complex64]) -> Vec<Complex64> {
    let n = spectrum.len();
    let roots = unit_roots(n);
    let scale = 1.0 / n as f64;
    (0..n)
        .map(|t| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, &y) in spectrum.iter().enumerate() {
                acc += roots[k * t % n].conj() * y;
            }
            acc * scale
        })
        .collect()
}

/// Table of e^{-2πi t / n} for t in 0..n.
fn unit_roots(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|t| {
            let angle = -2.0 * std::f64::consts::PI * t as f64 / n as f64;
            Complex64::new(angle.cos(), angle.sin())
        })
        .collect()
}

/// Dense materialization of a block-circulant matrix.
///
/// The matrix is `m × n` with `m = q_out·p`, `n = q_in·p`, partitioned into
/// p×p circulant blocks. Block (i, j) is defined by its first column
/// `c_ij`, entry formula `B[r][s] = c[(r − s) mod p]`.
pub struct DenseCirculant {
    p: usize,
    q_out: usize,
    q_in: usize,
    /// Row-major m × n.
    matrix: Vec<f64>,
}

impl DenseCirculant {
    /// Build from the flat first columns, row-major over (i, j): the block
    /// (i, j) occupies `first_cols[(i·q_in + j)·p ..][..p]`.
    pub fn new(p: usize, q_out: usize, q_in: usize, first_cols: &[f64]) -> Result<Self> {
        if p == 0 || q_out == 0 || q_in == 0 {
            return Err(Error::SizeError { n: p });
        }
        Error::check_len(q_out * q_in * p, first_cols.len())?;
        let (m, n) = (q_out * p, q_in * p);
        let mut matrix = vec![0.0; m * n];
        for i in 0..q_out {
            for j in 0..q_in {
                let c = &first_cols[(i * q_in + j) * p..][..p];
                for r in 0..p {
                    for s in 0..p {
                        matrix[(i * p + r) * n + (j * p + s)] = c[(p + r - s) % p];
                    }
                }
            }
        }
        Ok(Self {
            p,
            q_out,
            q_in,
            matrix,
        })
    }

    pub fn rows(&self) -> usize {
        self.q_out * self.p
    }

    pub fn cols(&self) -> usize {
        self.q_in * self.p
    }

    /// y = C x.
    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        Error::check_len(self.cols(), x.len())?;
        let (m, n) = (self.rows(), self.cols());
        let mut y = vec![0.0; m];
        for r in 0..m {
            let row = &self.matrix[r * n..(r + 1) * n];
            y[r] = row.iter().zip(x).map(|(a, b)| a * b).sum();
        }
        Ok(y)
    }

    /// ∂L/∂x = Cᵀ g for upstream gradient g = ∂L/∂y.
    pub fn grad_input(&self, g: &[f64]) -> Result<Vec<f64>> {
        Error::check_len(self.rows(), g.len())?;
        let (m, n) = (self.rows(), self.cols());
        let mut gx = vec![0.0; n];
        for r in 0..m {
            let row = &self.matrix[r * n..(r + 1) * n];
            for s in 0..n {
                gx[s] += row[s] * g[r];
            }
        }
        Ok(gx)
    }

    /// ∂L/∂c for every block, flat row-major over (i, j).
    ///
    /// Per block this is the circular cross-correlation of the output-block
    /// gradient with the input block: `grad_c[s] = Σ_t g_i[t]·x_j[(t−s) mod p]`.
    pub fn grad_weights(&self, x: &[f64], g: &[f64]) -> Result<Vec<f64>> {
        Error::check_len(self.cols(), x.len())?;
        Error::check_len(self.rows(), g.len())?;
        let p = self.p;
        let mut gw = vec![0.0; self.q_out * self.q_in * p];
        for i in 0..self.q_out {
            let gi = &g[i * p..(i + 1) * p];
            for j in 0..self.q_in {
                let xj = &x[j * p..(j + 1) * p];
                let block = &mut gw[(i * self.q_in + j) * p..][..p];
                for s in 0..p {
                    block[s] = (0..p).map(|t| gi[t] * xj[(p + t - s) % p]).sum();
                }
            }
        }
        Ok(gw)
    }
}

/// Convenience wrapper: materialize the dense operator and multiply.
pub fn naive_circulant_matvec(
    p: usize,
    q_out: usize,
    q_in: usize,
    first_cols: &[f64],
    x: &[f64],
) -> Result<Vec<f64>> {
    DenseCirculant::new(p, q_out, q_in, first_cols)?.matvec(x)
}

/// Central finite differences: (L(θ+h) − L(θ−h)) / 2h per coordinate.
pub fn finite_difference_grad<F>(mut loss: F, params: &[f64], step: f64) -> Vec<f64>
where
    F: FnMut(&[f64]) -> f64,
{
    assert!(step > 0.0, "finite-difference step must be positive");
    let mut work = params.to_vec();
    let mut grad = vec![0.0; params.len()];
    for i in 0..params.len() {
        let saved = work[i];
        work[i] = saved + step;
        let plus = loss(&work);
        work[i] = saved - step;
        let minus = loss(&work);
        work[i] = saved;
        grad[i] = (plus - minus) / (2.0 * step);
    }
    grad
}

/// Largest elementwise |a − b|.
pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: Complex64, b: Complex64, tol: f64) {
        assert!(
            (a - b).norm() <= tol,
            "expected {b}, got {a} (tol {tol:e})"
        );
    }

    #[test]
    fn dft_of_1234_matches_hand_computation() {
        let y = naive_dft(&[1.0, 2.0, 3.0, 4.0]);
        assert_close(y[0], Complex64::new(10.0, 0.0), 1e-12);
        assert_close(y[1], Complex64::new(-2.0, 2.0), 1e-12);
        assert_close(y[2], Complex64::new(-2.0, 0.0), 1e-12);
        assert_close(y[3], Complex64::new(-2.0, -2.0), 1e-12);
    }

    #[test]
    fn dft_of_impulse_is_all_ones() {
        let mut x = vec![0.0; 8];
        x[0] = 1.0;
        for y in naive_dft(&x) {
            assert_close(y, Complex64::new(1.0, 0.0), 1e-12);
        }
    }

    #[test]
    fn dft_of_zeros_is_zeros() {
        for y in naive_dft(&[0.0; 6]) {
            assert_close(y, Complex64::new(0.0, 0.0), 0.0);
        }
    }

    #[test]
    fn idft_inverts_dft() {
        // Deterministic pseudo-random signals; inversion identity to 1e-12.
        // No power-of-two restriction applies here.
        for n in [3usize, 128, 1000, 4096] {
            let x: Vec<f64> =
                (0..n).map(|i| ((i * 37 + 11) % 97) as f64 / 97.0 - 0.5).collect();
            let back = naive_idft(&naive_dft(&x));
            for (t, b) in back.iter().enumerate() {
                assert!((b.re - x[t]).abs() <= 1e-12, "n={n}");
                assert!(b.im.abs() <= 1e-12, "n={n}");
            }
        }
    }

    #[test]
    fn idft_of_all_ones_is_impulse() {
        let ones = vec![Complex64::new(1.0, 0.0); 8];
        let x = naive_idft(&ones);
        assert_close(x[0], Complex64::new(1.0, 0.0), 1e-12);
        for v in &x[1..] {
            assert_close(*v, Complex64::new(0.0, 0.0), 1e-12);
        }
    }

    #[test]
    fn idft_of_dc_only_is_constant() {
        let mut spec = vec![Complex64::new(0.0, 0.0); 16];
        spec[0] = Complex64::new(16.0 * 2.5, 0.0);
        for v in naive_idft(&spec) {
            assert_close(v, Complex64::new(2.5, 0.0), 1e-12);
        }
    }

    #[test]
    fn conjugate_symmetry_of_real_input() {
        let x: Vec<f64> = (0..64).map(|i| (i as f64 * 0.7).sin()).collect();
        let y = naive_dft(&x);
        let n = y.len();
        for k in 1..=n / 2 {
            assert!((y[n - k] - y[k].conj()).norm() <= 1e-12 * 64.0);
        }
    }

    #[test]
    fn identity_circulant_matvec_is_identity() {
        let mut c = vec![0.0; 4];
        c[0] = 1.0;
        let x = [1.0, -2.0, 3.5, 0.25];
        let y = naive_circulant_matvec(4, 1, 1, &c, &x).unwrap();
        assert_eq!(y, x);
    }

    #[test]
    fn shift_circulant_is_cyclic_shift() {
        let c = [0.0, 1.0, 0.0, 0.0];
        let x = [10.0, 20.0, 30.0, 40.0];
        let y = naive_circulant_matvec(4, 1, 1, &c, &x).unwrap();
        assert_eq!(y, [40.0, 10.0, 20.0, 30.0]);
    }

    #[test]
    fn block_shapes_are_respected() {
        // p=8, q_out=2, q_in=3 -> m=16, n=24
        let first_cols = vec![0.0; 2 * 3 * 8];
        let d = DenseCirculant::new(8, 2, 3, &first_cols).unwrap();
        assert_eq!(d.rows(), 16);
        assert_eq!(d.cols(), 24);
    }

    #[test]
    fn finite_difference_of_quadratic() {
        let theta = [0.5, -1.25, 2.0];
        let grad = finite_difference_grad(
            |p| p.iter().map(|v| v * v).sum::<f64>() / 2.0,
            &theta,
            1e-5,
        );
        for (g, t) in grad.iter().zip(&theta) {
            assert!((g - t).abs() <= 1e-9);
        }
    }

    #[test]
    fn finite_difference_at_symmetric_minimum_is_zero() {
        let grad = finite_difference_grad(|p| p[0] * p[0] * p[0] * p[0], &[0.0], 1e-3);
        assert!(grad[0].abs() <= 1e-9);
    }
}
