//! Block-circulant linear operators computed entirely through the in-place
//! real-domain transform.
//!
//! A layer is an m × n matrix (m = q_out·p, n = q_in·p) of p×p circulant
//! blocks, each defined by its first column: block entry `B[r][s] =
//! c[(r − s) mod p]`. Multiplication by a circulant block is circular
//! convolution, so the whole forward pass runs as packed-spectrum
//! multiply-accumulates between the stored weight spectra and the block
//! spectra of the input, followed by one inverse transform per output
//! block.
//!
//! Weights live permanently in the spectral domain: each first column is
//! transformed once at construction and updated spectrally, so no per-step
//! weight transforms are needed. A layer with dims (m, n) stores exactly
//! m·n/p trainable scalars.
//!
//! Forward and backward acquire no memory; every intermediate value lives
//! in the caller's input/output/gradient buffers. The price is a
//! destructive convention: `forward` leaves the input holding its block
//! spectra unless a cache buffer is supplied, and `backward` turns the
//! upstream gradient into its block spectra.

use std::io::{Read, Write};

use crate::fft::Plan;
use crate::{packed, Error, Real, Result};

/// A block-circulant weight matrix held as packed per-block spectra.
#[derive(Debug, Clone)]
pub struct CirculantLayer<T> {
    p: usize,
    q_out: usize,
    q_in: usize,
    plan: Plan<T>,
    /// q_out · q_in packed spectra of length p, row-major over (i, j).
    weight_spectra: Vec<T>,
}

/// Caller-owned gradient storage for one layer shape.
///
/// Allocated once up front; `backward` then works entirely inside these
/// buffers (the weight-gradient blocks double as its workspace).
#[derive(Debug, Clone)]
pub struct GradientSet<T> {
    /// ∂L/∂x, length n = q_in·p.
    pub grad_input: Vec<T>,
    /// ∂L/∂c for every block, length q_out·q_in·p, row-major over (i, j).
    pub grad_weights: Vec<T>,
}

impl<T: Real> GradientSet<T> {
    /// Zero-filled gradients shaped for `layer`.
    pub fn zeros_for(layer: &CirculantLayer<T>) -> Self {
        Self {
            grad_input: vec![T::zero(); layer.input_len()],
            grad_weights: vec![T::zero(); layer.weight_len()],
        }
    }

    /// The (i, j) weight-gradient block.
    pub fn weight_block(&self, layer: &CirculantLayer<T>, i: usize, j: usize) -> &[T] {
        let p = layer.p;
        &self.grad_weights[(i * layer.q_in + j) * p..][..p]
    }
}

impl<T: Real> CirculantLayer<T> {
    /// Create a layer from the time-domain first columns of its blocks,
    /// flat row-major over (i, j).
    ///
    /// Each column is transformed once and stored as a packed spectrum;
    /// this constructor is the only allocation point for the layer.
    pub fn new(p: usize, q_out: usize, q_in: usize, init_weights: &[T]) -> Result<Self> {
        if q_out == 0 || q_in == 0 {
            return Err(Error::SizeError { n: 0 });
        }
        let plan = Plan::new(p)?;
        Error::check_len(q_out * q_in * p, init_weights.len())?;

        let mut weight_spectra = init_weights.to_vec();
        for block in weight_spectra.chunks_exact_mut(p) {
            plan.forward_in_place(block)?;
        }
        Ok(Self {
            p,
            q_out,
            q_in,
            plan,
            weight_spectra,
        })
    }

    pub fn block_size(&self) -> usize {
        self.p
    }

    pub fn q_out(&self) -> usize {
        self.q_out
    }

    pub fn q_in(&self) -> usize {
        self.q_in
    }

    /// (m, n) = (q_out·p, q_in·p).
    pub fn dims(&self) -> (usize, usize) {
        (self.q_out * self.p, self.q_in * self.p)
    }

    pub fn input_len(&self) -> usize {
        self.q_in * self.p
    }

    pub fn output_len(&self) -> usize {
        self.q_out * self.p
    }

    fn weight_len(&self) -> usize {
        self.q_out * self.q_in * self.p
    }

    /// Number of trainable scalars: m·n/p, a factor p fewer than dense.
    pub fn parameter_count(&self) -> usize {
        self.weight_len()
    }

    /// The transform plan shared by all block operations (size p).
    pub fn plan(&self) -> &Plan<T> {
        &self.plan
    }

    /// Packed weight spectrum of block (i, j).
    pub fn weight_spectrum(&self, i: usize, j: usize) -> &[T] {
        &self.weight_spectra[(i * self.q_in + j) * self.p..][..self.p]
    }

    /// Time-domain first column of block (i, j), recovered by inverse
    /// transform. Allocates; intended for inspection and serial formats
    /// that want time-domain weights, not for training loops.
    pub fn weight_column(&self, i: usize, j: usize) -> Vec<T> {
        let mut col = self.weight_spectrum(i, j).to_vec();
        self.plan
            .inverse_in_place(&mut col)
            .expect("stored spectrum has plan length");
        col
    }

    /// y = C x.
    ///
    /// `x` is transformed blockwise in place and left holding its packed
    /// block spectra — exactly what [`backward`](Self::backward) consumes.
    /// Supplying `x_spec_cache` (length n) redirects the spectra there and
    /// preserves `x`. The output buffer `y` (length m) is overwritten.
    pub fn forward(
        &self,
        x: &mut [T],
        y: &mut [T],
        x_spec_cache: Option<&mut [T]>,
    ) -> Result<()> {
        Error::check_len(self.input_len(), x.len())?;
        Error::check_len(self.output_len(), y.len())?;
        if let Some(idx) = x.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index: idx });
        }

        let p = self.p;
        let x_spec: &mut [T] = match x_spec_cache {
            Some(cache) => {
                Error::check_len(self.input_len(), cache.len())?;
                cache.copy_from_slice(x);
                cache
            }
            None => x,
        };
        for block in x_spec.chunks_exact_mut(p) {
            self.plan.forward_in_place(block)?;
        }

        for v in y.iter_mut() {
            *v = T::zero();
        }
        for i in 0..self.q_out {
            let y_block = &mut y[i * p..(i + 1) * p];
            for j in 0..self.q_in {
                packed::multiply_add_in_place(
                    y_block,
                    self.weight_spectrum(i, j),
                    &x_spec[j * p..(j + 1) * p],
                    false,
                )?;
            }
            self.plan.inverse_in_place(y_block)?;
        }
        Ok(())
    }

    /// Analytic gradients for upstream gradient g = ∂L/∂y.
    ///
    /// `x_spec` holds the forward pass's input block spectra (the
    /// destructive-forward artifact or the cache). `g` is transformed
    /// blockwise in place to its spectra. Results land in `grads`:
    /// per input block, ∂L/∂x sums conj(W_ij) ⊙ Fg_i over output blocks in
    /// the frequency domain before a single inverse transform; each weight
    /// gradient is built inside its own output slot (copy Fg_i, conjugate-
    /// multiply by Fx_j, invert in place).
    pub fn backward(&self, x_spec: &[T], g: &mut [T], grads: &mut GradientSet<T>) -> Result<()> {
        Error::check_len(self.input_len(), x_spec.len())?;
        Error::check_len(self.output_len(), g.len())?;
        Error::check_len(self.input_len(), grads.grad_input.len())?;
        Error::check_len(self.weight_len(), grads.grad_weights.len())?;

        let p = self.p;
        for block in g.chunks_exact_mut(p) {
            self.plan.forward_in_place(block)?;
        }

        for j in 0..self.q_in {
            let gx_block = &mut grads.grad_input[j * p..(j + 1) * p];
            for v in gx_block.iter_mut() {
                *v = T::zero();
            }
            for i in 0..self.q_out {
                packed::multiply_add_in_place(
                    gx_block,
                    self.weight_spectrum(i, j),
                    &g[i * p..(i + 1) * p],
                    true,
                )?;
            }
            self.plan.inverse_in_place(gx_block)?;
        }

        for i in 0..self.q_out {
            let g_block = &g[i * p..(i + 1) * p];
            for j in 0..self.q_in {
                let gw_block = &mut grads.grad_weights[(i * self.q_in + j) * p..][..p];
                gw_block.copy_from_slice(g_block);
                packed::multiply_in_place(gw_block, &x_spec[j * p..(j + 1) * p], true)?;
                self.plan.inverse_in_place(gw_block)?;
            }
        }
        Ok(())
    }

    /// SGD step: c_ij ← c_ij − lr · grad_ij for every block.
    ///
    /// By linearity this happens in the frequency domain: each gradient
    /// block is transformed in place (destructively) and accumulated into
    /// the stored weight spectrum, so weights never leave the spectral
    /// domain.
    pub fn apply_gradients(&mut self, grad_weights: &mut [T], learning_rate: T) -> Result<()> {
        Error::check_len(self.weight_len(), grad_weights.len())?;
        let p = self.p;
        for (idx, grad_block) in grad_weights.chunks_exact_mut(p).enumerate() {
            self.plan.forward_in_place(grad_block)?;
            let w_block = &mut self.weight_spectra[idx * p..(idx + 1) * p];
            packed::axpy_in_place(w_block, grad_block, -learning_rate)?;
        }
        Ok(())
    }

    /// Serialize: little-endian header of four u32 words (p, q_out, q_in,
    /// precision tag) followed by the packed weight spectra row-major over
    /// (i, j).
    pub fn write_to<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        for v in [self.p as u32, self.q_out as u32, self.q_in as u32, T::PRECISION.tag()] {
            w.write_all(&v.to_le_bytes())?;
        }
        for &s in &self.weight_spectra {
            s.write_le(w)?;
        }
        Ok(())
    }

    /// Deserialize a layer written by [`write_to`](Self::write_to). The
    /// stored precision tag must match `T`.
    pub fn read_from<R: Read>(r: &mut R) -> Result<Self> {
        let mut word = [0u8; 4];
        let mut next = || -> Result<u32> {
            r.read_exact(&mut word)?;
            Ok(u32::from_le_bytes(word))
        };
        let p = next()? as usize;
        let q_out = next()? as usize;
        let q_in = next()? as usize;
        let tag = next()?;
        if tag != T::PRECISION.tag() {
            return Err(Error::Format(format!(
                "precision tag {tag} does not match requested {}",
                T::PRECISION.tag()
            )));
        }
        if q_out == 0 || q_in == 0 {
            return Err(Error::Format("zero block count".into()));
        }
        let plan = Plan::new(p)?;
        let count = q_out * q_in * p;
        let mut weight_spectra = Vec::with_capacity(count);
        for _ in 0..count {
            weight_spectra.push(T::read_le(r)?);
        }
        Ok(Self {
            p,
            q_out,
            q_in,
            plan,
            weight_spectra,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn lcg_signal(len: usize, seed: u64) -> Vec<f64> {
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
        (0..len)
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 33) as f64 / (1u64 << 31) as f64) - 1.0
            })
            .collect()
    }

    #[test]
    fn identity_block_has_all_ones_spectrum() {
        let mut c = vec![0.0f64; 4];
        c[0] = 1.0;
        let layer = CirculantLayer::new(4, 1, 1, &c).unwrap();
        for (got, want) in layer.weight_spectrum(0, 0).iter().zip(&[1.0, 1.0, 1.0, 0.0]) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn shifted_impulse_spectrum() {
        let c = vec![0.0, 1.0, 0.0, 0.0];
        let layer = CirculantLayer::new(4, 1, 1, &c).unwrap();
        for (got, want) in layer.weight_spectrum(0, 0).iter().zip(&[1.0f64, 0.0, -1.0, -1.0]) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn dims_and_parameter_count() {
        let layer = CirculantLayer::new(8, 2, 3, &[0.0f32; 2 * 3 * 8]).unwrap();
        assert_eq!(layer.dims(), (16, 24));
        // m·n/p = 16·24/8
        assert_eq!(layer.parameter_count(), 48);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(CirculantLayer::<f64>::new(3, 1, 1, &[0.0; 3]).is_err());
        assert!(CirculantLayer::<f64>::new(4, 0, 1, &[]).is_err());
        assert!(CirculantLayer::<f64>::new(4, 1, 1, &[0.0; 5]).is_err());
    }

    #[test]
    fn rejects_mismatched_buffers() {
        let layer = CirculantLayer::new(4, 2, 1, &[0.0f64; 8]).unwrap();
        let mut x = vec![0.0; 4];
        let mut y = vec![0.0; 8];
        let mut grads = GradientSet::zeros_for(&layer);

        let mut short_y = vec![0.0; 4];
        assert!(matches!(
            layer.forward(&mut x, &mut short_y, None),
            Err(Error::SizeMismatch { expected: 8, got: 4 })
        ));

        let mut short_cache = vec![0.0; 2];
        assert!(layer.forward(&mut x, &mut y, Some(&mut short_cache)).is_err());

        let mut g_bad = vec![0.0; 3];
        assert!(layer.backward(&x, &mut g_bad, &mut grads).is_err());

        let mut gw_bad = vec![0.0; 7];
        let mut layer = layer;
        assert!(layer.apply_gradients(&mut gw_bad, 0.1).is_err());
    }

    #[test]
    fn identity_layer_forward_is_identity() {
        let mut c = vec![0.0f64; 8];
        c[0] = 1.0;
        let layer = CirculantLayer::new(8, 1, 1, &c).unwrap();
        let x0 = lcg_signal(8, 7);
        let mut x = x0.clone();
        let mut y = vec![0.0; 8];
        layer.forward(&mut x, &mut y, None).unwrap();
        for (got, want) in y.iter().zip(&x0) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn shift_layer_rotates_input() {
        let c = vec![0.0, 1.0, 0.0, 0.0];
        let layer = CirculantLayer::new(4, 1, 1, &c).unwrap();
        let mut x = vec![10.0, 20.0, 30.0, 40.0];
        let mut y = vec![0.0; 4];
        layer.forward(&mut x, &mut y, None).unwrap();
        for (got, want) in y.iter().zip(&[40.0f64, 10.0, 20.0, 30.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn forward_matches_dense_oracle() {
        for (p, q_out, q_in) in [(2, 1, 1), (4, 2, 3), (8, 3, 2), (16, 2, 2)] {
            let cols = lcg_signal(q_out * q_in * p, 101);
            let x0 = lcg_signal(q_in * p, 42);
            let layer = CirculantLayer::new(p, q_out, q_in, &cols).unwrap();
            let mut x = x0.clone();
            let mut y = vec![0.0; q_out * p];
            layer.forward(&mut x, &mut y, None).unwrap();

            let expected = oracle::naive_circulant_matvec(p, q_out, q_in, &cols, &x0).unwrap();
            for (got, want) in y.iter().zip(&expected) {
                assert!((got - want).abs() < 1e-10, "p={p} q={q_out}x{q_in}");
            }
        }
    }

    #[test]
    fn forward_with_cache_preserves_input() {
        let cols = lcg_signal(4 * 2 * 2, 5);
        let layer = CirculantLayer::new(4, 2, 2, &cols).unwrap();
        let x0 = lcg_signal(8, 6);

        let mut x_destructive = x0.clone();
        let mut y1 = vec![0.0; 8];
        layer.forward(&mut x_destructive, &mut y1, None).unwrap();
        assert_ne!(x_destructive, x0);

        let mut x_kept = x0.clone();
        let mut cache = vec![0.0; 8];
        let mut y2 = vec![0.0; 8];
        layer.forward(&mut x_kept, &mut y2, Some(&mut cache)).unwrap();
        assert_eq!(x_kept, x0);
        assert_eq!(cache, x_destructive);
        assert_eq!(y1, y2);
    }

    #[test]
    fn forward_rejects_non_finite_input() {
        let layer = CirculantLayer::new(4, 1, 1, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        let mut x = vec![1.0, f64::NAN, 0.0, 0.0];
        let mut y = vec![0.0; 4];
        assert!(matches!(
            layer.forward(&mut x, &mut y, None),
            Err(Error::NonFinite { index: 1 })
        ));
    }

    #[test]
    fn identity_layer_backward_passes_gradient_through() {
        let p = 8;
        let mut c = vec![0.0f64; p];
        c[0] = 1.0;
        let layer = CirculantLayer::new(p, 1, 1, &c).unwrap();
        let x0 = lcg_signal(p, 3);
        let mut x = x0.clone();
        let mut y = vec![0.0; p];
        layer.forward(&mut x, &mut y, None).unwrap();

        let g0 = lcg_signal(p, 9);
        let mut g = g0.clone();
        let mut grads = GradientSet::zeros_for(&layer);
        layer.backward(&x, &mut g, &mut grads).unwrap();
        for (got, want) in grads.grad_input.iter().zip(&g0) {
            assert!((got - want).abs() < 1e-12);
        }

        // The weight gradient is the circular cross-correlation of x and g
        // regardless of the weights.
        for s in 0..p {
            let want: f64 = (0..p).map(|t| g0[t] * x0[(p + t - s) % p]).sum();
            assert!((grads.grad_weights[s] - want).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_upstream_gradient_gives_zero_gradients() {
        let cols = lcg_signal(8 * 2 * 2, 21);
        let layer = CirculantLayer::new(8, 2, 2, &cols).unwrap();
        let mut x = lcg_signal(16, 22);
        let mut y = vec![0.0; 16];
        layer.forward(&mut x, &mut y, None).unwrap();

        let mut g = vec![0.0; 16];
        let mut grads = GradientSet::zeros_for(&layer);
        layer.backward(&x, &mut g, &mut grads).unwrap();
        assert!(grads.grad_input.iter().all(|v| v.abs() < 1e-14));
        assert!(grads.grad_weights.iter().all(|v| v.abs() < 1e-14));
    }

    #[test]
    fn backward_matches_dense_gradients() {
        for (p, q_out, q_in) in [(4, 1, 1), (8, 2, 3)] {
            let cols = lcg_signal(q_out * q_in * p, 31);
            let x0 = lcg_signal(q_in * p, 32);
            let g0 = lcg_signal(q_out * p, 33);

            let layer = CirculantLayer::new(p, q_out, q_in, &cols).unwrap();
            let mut x = x0.clone();
            let mut y = vec![0.0; q_out * p];
            layer.forward(&mut x, &mut y, None).unwrap();
            let mut g = g0.clone();
            let mut grads = GradientSet::zeros_for(&layer);
            layer.backward(&x, &mut g, &mut grads).unwrap();

            let dense = oracle::DenseCirculant::new(p, q_out, q_in, &cols).unwrap();
            let gx = dense.grad_input(&g0).unwrap();
            let gw = dense.grad_weights(&x0, &g0).unwrap();
            assert!(oracle::max_abs_diff(&grads.grad_input, &gx) < 1e-10);
            assert!(oracle::max_abs_diff(&grads.grad_weights, &gw) < 1e-10);
        }
    }

    #[test]
    fn intermediate_blocks_hold_the_true_spectra() {
        // After a destructive forward, each input block holds exactly the
        // packed spectrum of its original content, and after backward the
        // upstream-gradient blocks hold theirs: the operator pipeline keeps
        // the encoding consistent end to end.
        let (p, q_out, q_in) = (8, 2, 2);
        let cols = lcg_signal(q_out * q_in * p, 71);
        let layer = CirculantLayer::new(p, q_out, q_in, &cols).unwrap();
        let x0 = lcg_signal(q_in * p, 72);
        let g0 = lcg_signal(q_out * p, 73);

        let mut x = x0.clone();
        let mut y = vec![0.0; q_out * p];
        layer.forward(&mut x, &mut y, None).unwrap();
        for (j, block) in x.chunks_exact(p).enumerate() {
            let expected =
                crate::packed::pack(&crate::oracle::naive_dft(&x0[j * p..(j + 1) * p])).unwrap();
            assert!(crate::oracle::max_abs_diff(block, &expected) < 1e-12 * p as f64);
        }

        let mut g = g0.clone();
        let mut grads = GradientSet::zeros_for(&layer);
        layer.backward(&x, &mut g, &mut grads).unwrap();
        for (i, block) in g.chunks_exact(p).enumerate() {
            let expected =
                crate::packed::pack(&crate::oracle::naive_dft(&g0[i * p..(i + 1) * p])).unwrap();
            assert!(crate::oracle::max_abs_diff(block, &expected) < 1e-12 * p as f64);
        }
    }

    #[test]
    fn apply_zero_learning_rate_leaves_layer_unchanged() {
        let cols = lcg_signal(8, 41);
        let mut layer = CirculantLayer::new(8, 1, 1, &cols).unwrap();
        let before = layer.weight_spectrum(0, 0).to_vec();
        let mut grads = lcg_signal(8, 42);
        layer.apply_gradients(&mut grads, 0.0).unwrap();
        assert_eq!(layer.weight_spectrum(0, 0), &before[..]);
    }

    #[test]
    fn full_step_on_own_weights_zeroes_the_layer() {
        let mut c = vec![0.0f64; 4];
        c[0] = 1.0;
        let mut layer = CirculantLayer::new(4, 1, 1, &c).unwrap();
        let mut grads = c.clone();
        layer.apply_gradients(&mut grads, 1.0).unwrap();
        for v in layer.weight_spectrum(0, 0) {
            assert!(v.abs() < 1e-15);
        }
    }

    #[test]
    fn sgd_reduces_least_squares_loss() {
        // Fit y_target = C* x for fixed x with a randomly initialized layer.
        let p = 16;
        let target_cols = lcg_signal(p, 51);
        let target = CirculantLayer::new(p, 1, 1, &target_cols).unwrap();
        let x0 = lcg_signal(p, 52);

        let mut y_target = vec![0.0; p];
        {
            let mut x = x0.clone();
            target.forward(&mut x, &mut y_target, None).unwrap();
        }

        let mut layer = CirculantLayer::new(p, 1, 1, &lcg_signal(p, 53)).unwrap();
        let mut grads = GradientSet::zeros_for(&layer);
        let mut cache = vec![0.0; p];
        let mut y = vec![0.0; p];
        let mut residual = vec![0.0; p];

        // Gradient descent on c is stable for lr < 2 / max_k |Fx_k|^2.
        let lr = 1.0
            / oracle::naive_dft(&x0)
                .iter()
                .map(|b| b.norm_sqr())
                .fold(0.0, f64::max);

        let loss_of = |y: &[f64]| -> f64 {
            y.iter().zip(&y_target).map(|(a, b)| (a - b) * (a - b)).sum::<f64>() / 2.0
        };

        let mut x = x0.clone();
        layer.forward(&mut x, &mut y, Some(&mut cache)).unwrap();
        let initial_loss = loss_of(&y);

        let mut prev_loss = f64::INFINITY;
        let mut final_loss = initial_loss;
        for _ in 0..100 {
            let mut x_in = x0.clone();
            layer.forward(&mut x_in, &mut y, Some(&mut cache)).unwrap();
            final_loss = loss_of(&y);
            assert!(final_loss <= prev_loss * (1.0 + 1e-9), "loss trend not monotone");
            prev_loss = final_loss;
            for (r, (a, b)) in residual.iter_mut().zip(y.iter().zip(&y_target)) {
                *r = a - b;
            }
            layer.backward(&cache, &mut residual, &mut grads).unwrap();
            layer.apply_gradients(&mut grads.grad_weights, lr).unwrap();
        }
        assert!(
            final_loss < initial_loss * 0.5,
            "loss did not decrease: {initial_loss} -> {final_loss}"
        );
    }

    #[test]
    fn layer_is_read_shared_across_threads() {
        // Weights are read-only during forward/backward; distinct buffer
        // sets may run concurrently against one layer.
        let (p, q_out, q_in) = (16, 2, 2);
        let cols = lcg_signal(q_out * q_in * p, 81);
        let layer = CirculantLayer::new(p, q_out, q_in, &cols).unwrap();

        std::thread::scope(|scope| {
            for t in 0..4u64 {
                let (layer, cols) = (&layer, &cols);
                scope.spawn(move || {
                    let x0 = lcg_signal(q_in * p, 82 + t);
                    let mut x = x0.clone();
                    let mut y = vec![0.0; q_out * p];
                    let mut cache = vec![0.0; q_in * p];
                    layer.forward(&mut x, &mut y, Some(&mut cache)).unwrap();

                    let mut g = y.clone();
                    let mut grads = GradientSet::zeros_for(layer);
                    layer.backward(&cache, &mut g, &mut grads).unwrap();

                    let expected =
                        crate::oracle::naive_circulant_matvec(p, q_out, q_in, cols, &x0).unwrap();
                    for (got, want) in y.iter().zip(&expected) {
                        assert!((got - want).abs() < 1e-10);
                    }
                });
            }
        });
    }

    #[test]
    fn serialization_roundtrip() {
        let cols: Vec<f32> = lcg_signal(4 * 2 * 3, 61).iter().map(|v| *v as f32).collect();
        let layer = CirculantLayer::<f32>::new(4, 2, 3, &cols).unwrap();
        let mut bytes = Vec::new();
        layer.write_to(&mut bytes).unwrap();

        let restored = CirculantLayer::<f32>::read_from(&mut bytes.as_slice()).unwrap();
        assert_eq!(restored.dims(), layer.dims());
        assert_eq!(restored.weight_spectra, layer.weight_spectra);

        // Wrong precision is rejected.
        assert!(matches!(
            CirculantLayer::<f64>::read_from(&mut bytes.as_slice()),
            Err(Error::Format(_))
        ));
    }
}
