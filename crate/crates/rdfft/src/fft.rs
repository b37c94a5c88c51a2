//! The in-place forward and inverse real-domain FFT.
//!
//! A decimation-in-time radix-2 transform that keeps the Hermitian spectrum
//! of a real signal inside the original real buffer at every stage, using
//! the packed layout of [`crate::packed`]. After bit reversal, stage s
//! merges adjacent packed sub-spectra of size m = 2^(s-1) into packed
//! spectra of size 2m. Within a merge block at base β the slots fall into
//! three classes:
//!
//! - k = 0: slots (β, β+m) hold the two sub-DC bins, both real; they become
//!   the merged DC and Nyquist bins via (a, b) → (a+b, a−b).
//! - k = m/2 (m >= 2): slots (β+m/2, β+3m/2) hold the two sub-Nyquist bins;
//!   the twiddle is −i, so the merged bin is a − ib and the update is a pure
//!   sign flip of the second slot.
//! - 1 <= k < m/2: the four slots {β+k, β+m−k, β+m+k, β+2m−k} carry exactly
//!   the real/imaginary parts of one conjugate pair from each sub-spectrum.
//!   The set is closed under the butterfly, so the four new scalars land in
//!   the same four slots.
//!
//! The inverse runs the same butterfly graph backwards. Solving the 2×2
//! butterfly system introduces a factor 1/2 per stage, which accumulates to
//! the 1/n of the inverse DFT, so no separate normalization pass is needed.
//!
//! Transforms never allocate and never touch memory outside the caller's
//! buffer; all precomputation lives in the immutable [`Plan`].

use num_complex::Complex;

use crate::real::check_transform_len;
use crate::{Error, Real, Result};

/// Immutable precomputation for one transform size.
///
/// Construction is the only allocating step in this module; a plan can be
/// shared freely across threads and used for any number of transforms.
#[derive(Debug, Clone)]
pub struct Plan<T> {
    n: usize,
    stages: u32,
    /// Self-inverse permutation: element i swaps with bitrev[i].
    bitrev: Vec<u32>,
    /// W_n^k = e^{-2πik/n} for k = 1 .. n/2-1, stored at index k-1.
    /// Stage twiddles are strided lookups: W_{2m}^k = W_n^{k·n/(2m)}.
    twiddles: Vec<Complex<T>>,
}

impl<T: Real> Plan<T> {
    /// Build a plan for transforms of length `n` (power of two, n >= 2).
    pub fn new(n: usize) -> Result<Self> {
        check_transform_len(n)?;
        let stages = n.trailing_zeros();

        let bitrev = (0..n as u32)
            .map(|i| i.reverse_bits() >> (u32::BITS - stages))
            .collect();

        // Angles are evaluated in f64 and rounded once to the working
        // precision.
        let twiddles = (1..n / 2)
            .map(|k| {
                let angle = -2.0 * std::f64::consts::PI * k as f64 / n as f64;
                Complex::new(T::from_f64(angle.cos()), T::from_f64(angle.sin()))
            })
            .collect();

        Ok(Self {
            n,
            stages,
            bitrev,
            twiddles,
        })
    }

    /// Transform length.
    pub fn len(&self) -> usize {
        self.n
    }

    /// Number of butterfly stages, log₂(n).
    pub fn stages(&self) -> u32 {
        self.stages
    }

    /// Twiddle W_{block}^k for 1 <= k < block/2.
    #[inline]
    fn twiddle(&self, k: usize, block: usize) -> Complex<T> {
        self.twiddles[k * (self.n / block) - 1]
    }

    #[inline]
    fn check_buf(&self, buf: &[T]) -> Result<()> {
        Error::check_len(self.n, buf.len())
    }

    /// Apply the bit-reversal permutation in place. Self-inverse.
    pub fn bit_reverse_in_place(&self, buf: &mut [T]) -> Result<()> {
        self.check_buf(buf)?;
        self.bit_reverse_unchecked(buf);
        Ok(())
    }

    fn bit_reverse_unchecked(&self, buf: &mut [T]) {
        for (i, &rev) in self.bitrev.iter().enumerate() {
            let j = rev as usize;
            if i < j {
                buf.swap(i, j);
            }
        }
    }

    /// One forward merge stage: combine adjacent packed sub-spectra of size
    /// `m` into packed spectra of size `2m`.
    fn forward_stage(&self, buf: &mut [T], m: usize) {
        let block = 2 * m;
        for base in (0..self.n).step_by(block) {
            // k = 0: both sub-DC bins are real.
            let a = buf[base];
            let b = buf[base + m];
            buf[base] = a + b;
            buf[base + m] = a - b;

            if m >= 2 {
                // k = m/2: twiddle is exactly -i; merged bin a - ib keeps
                // its real part in place and stores -b as the imaginary
                // part at the mirror slot.
                buf[base + 3 * m / 2] = -buf[base + 3 * m / 2];

                for k in 1..m / 2 {
                    let w = self.twiddle(k, block);
                    let ar = buf[base + k];
                    let ai = buf[base + m - k];
                    let br = buf[base + m + k];
                    let bi = buf[base + 2 * m - k];
                    // u = W · B_k
                    let ur = br * w.re - bi * w.im;
                    let ui = br * w.im + bi * w.re;
                    buf[base + k] = ar + ur; // Re(A + u)
                    buf[base + 2 * m - k] = ai + ui; // Im(A + u)
                    buf[base + m - k] = ar - ur; // Re(A - u)
                    buf[base + m + k] = -(ai - ui); // conj mirror of A - u
                }
            }
        }
    }

    /// One inverse merge stage: split packed spectra of size `2m` back into
    /// the two packed sub-spectra of size `m` they were merged from, halving
    /// as it goes.
    fn inverse_stage(&self, buf: &mut [T], m: usize) {
        let block = 2 * m;
        let half = T::from_f64(0.5);
        for base in (0..self.n).step_by(block) {
            let a = buf[base];
            let b = buf[base + m];
            buf[base] = (a + b) * half;
            buf[base + m] = (a - b) * half;

            if m >= 2 {
                buf[base + 3 * m / 2] = -buf[base + 3 * m / 2];

                for k in 1..m / 2 {
                    let w = self.twiddle(k, block);
                    // y_k from its own slots; y_{m+k} = conj(y_{m-k}).
                    let yr = buf[base + k];
                    let yi = buf[base + 2 * m - k];
                    let cr = buf[base + m - k];
                    let ci = buf[base + m + k];
                    // A = (y_k + y_{m+k}) / 2
                    let ar = (yr + cr) * half;
                    let ai = (yi - ci) * half;
                    // B = (y_k - y_{m+k}) / (2W) = d · conj(W), |W| = 1
                    let dr = (yr - cr) * half;
                    let di = (yi + ci) * half;
                    let br = dr * w.re + di * w.im;
                    let bi = di * w.re - dr * w.im;
                    buf[base + k] = ar;
                    buf[base + m - k] = ai;
                    buf[base + m + k] = br;
                    buf[base + 2 * m - k] = bi;
                }
            }
        }
    }

    /// In-place forward transform: the real signal in `buf` is replaced by
    /// its packed spectrum (unnormalized DFT, negative-exponent convention).
    pub fn forward_in_place(&self, buf: &mut [T]) -> Result<()> {
        self.check_buf(buf)?;
        self.bit_reverse_unchecked(buf);
        let mut m = 1;
        while m < self.n {
            self.forward_stage(buf, m);
            m *= 2;
        }
        Ok(())
    }

    /// In-place inverse transform: the packed spectrum in `buf` is replaced
    /// by the real signal whose forward transform it is (includes the 1/n
    /// factor, applied as 1/2 per stage).
    pub fn inverse_in_place(&self, buf: &mut [T]) -> Result<()> {
        self.check_buf(buf)?;
        let mut m = self.n / 2;
        while m >= 1 {
            self.inverse_stage(buf, m);
            m /= 2;
        }
        self.bit_reverse_unchecked(buf);
        Ok(())
    }

    /// Forward transform that snapshots the buffer after every merge stage.
    ///
    /// Diagnostic variant of [`Plan::forward_in_place`] for inspecting the
    /// per-stage invariant: after the stage with sub-block size r, every
    /// aligned length-r window is a valid packed spectrum of the
    /// corresponding input segment. The snapshots allocate; the transform
    /// applied to `buf` is identical to the plain forward path.
    pub fn forward_staged(&self, buf: &mut [T]) -> Result<Vec<StageView<T>>> {
        self.check_buf(buf)?;
        self.bit_reverse_unchecked(buf);
        let mut views = Vec::with_capacity(self.stages as usize);
        let mut m = 1;
        let mut stage_index = 1;
        while m < self.n {
            self.forward_stage(buf, m);
            views.push(StageView {
                stage_index,
                block_size: 2 * m,
                buffer: buf.to_vec(),
            });
            m *= 2;
            stage_index += 1;
        }
        Ok(views)
    }
}

/// Buffer snapshot taken after one forward merge stage.
#[derive(Debug, Clone)]
pub struct StageView<T> {
    /// 1-based stage number.
    pub stage_index: u32,
    /// Size of the packed sub-spectra the buffer consists of after this
    /// stage.
    pub block_size: usize,
    pub buffer: Vec<T>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::naive_dft;
    use crate::packed;

    #[test]
    fn plan_rejects_bad_sizes() {
        for n in [0usize, 1, 3, 6, 100] {
            assert!(matches!(Plan::<f32>::new(n), Err(Error::SizeError { .. })));
        }
    }

    #[test]
    fn plan_n2_has_one_stage_and_no_twiddles() {
        let plan = Plan::<f64>::new(2).unwrap();
        assert_eq!(plan.stages(), 1);
        assert!(plan.twiddles.is_empty());
    }

    #[test]
    fn plan_n16_has_four_stages() {
        let plan = Plan::<f64>::new(16).unwrap();
        assert_eq!(plan.stages(), 4);
        assert_eq!(plan.len(), 16);
    }

    #[test]
    fn twiddles_lie_on_the_unit_circle() {
        let plan = Plan::<f32>::new(1024).unwrap();
        for w in &plan.twiddles {
            let norm = w.re as f64 * w.re as f64 + w.im as f64 * w.im as f64;
            // within 2 ulp of 1 in the working precision
            assert!((norm - 1.0).abs() <= 2.0 * f32::EPSILON as f64);
        }
    }

    #[test]
    fn bitrev_is_an_involution() {
        let plan = Plan::<f64>::new(256).unwrap();
        for (i, &r) in plan.bitrev.iter().enumerate() {
            assert_eq!(plan.bitrev[r as usize] as usize, i);
        }
    }

    #[test]
    fn bit_reverse_known_permutations() {
        let plan = Plan::<f64>::new(4).unwrap();
        let mut buf = vec![0.0, 1.0, 2.0, 3.0];
        plan.bit_reverse_in_place(&mut buf).unwrap();
        assert_eq!(buf, vec![0.0, 2.0, 1.0, 3.0]);

        let plan = Plan::<f64>::new(8).unwrap();
        let mut buf: Vec<f64> = (0..8).map(f64::from).collect();
        plan.bit_reverse_in_place(&mut buf).unwrap();
        assert_eq!(buf, vec![0.0, 4.0, 2.0, 6.0, 1.0, 5.0, 3.0, 7.0]);
    }

    #[test]
    fn bit_reverse_twice_is_identity() {
        let plan = Plan::<f64>::new(64).unwrap();
        let original: Vec<f64> = (0..64).map(|i| i as f64 * 0.5 - 3.0).collect();
        let mut buf = original.clone();
        plan.bit_reverse_in_place(&mut buf).unwrap();
        plan.bit_reverse_in_place(&mut buf).unwrap();
        assert_eq!(buf, original);
    }

    #[test]
    fn transforms_reject_wrong_length() {
        let plan = Plan::<f64>::new(8).unwrap();
        let mut buf = vec![0.0; 4];
        assert!(matches!(
            plan.forward_in_place(&mut buf),
            Err(Error::SizeMismatch { expected: 8, got: 4 })
        ));
        assert!(plan.inverse_in_place(&mut buf).is_err());
        assert!(plan.bit_reverse_in_place(&mut buf).is_err());
        assert!(plan.forward_staged(&mut buf).is_err());
    }

    #[test]
    fn forward_of_1234() {
        let plan = Plan::<f64>::new(4).unwrap();
        let mut buf = vec![1.0, 2.0, 3.0, 4.0];
        plan.forward_in_place(&mut buf).unwrap();
        for (got, want) in buf.iter().zip(&[10.0, -2.0, -2.0, 2.0]) {
            assert!((got - want).abs() < 1e-12, "{buf:?}");
        }
    }

    #[test]
    fn forward_of_impulse_is_all_ones_packed() {
        let plan = Plan::<f64>::new(8).unwrap();
        let mut buf = vec![0.0; 8];
        buf[0] = 1.0;
        plan.forward_in_place(&mut buf).unwrap();
        for (got, want) in buf.iter().zip(&[1.0, 1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0]) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn forward_of_constant_is_dc_only() {
        let plan = Plan::<f64>::new(8).unwrap();
        let c = 2.75;
        let mut buf = vec![c; 8];
        plan.forward_in_place(&mut buf).unwrap();
        assert!((buf[0] - 8.0 * c).abs() < 1e-12);
        for v in &buf[1..] {
            assert!(v.abs() < 1e-12);
        }
    }

    #[test]
    fn forward_matches_packed_oracle_across_sizes() {
        for log_n in 1..=10 {
            let n = 1usize << log_n;
            let plan = Plan::<f64>::new(n).unwrap();
            let x: Vec<f64> = (0..n)
                .map(|i| ((i * 2654435761usize) % 1000) as f64 / 500.0 - 1.0)
                .collect();
            let mut buf = x.clone();
            plan.forward_in_place(&mut buf).unwrap();
            let expected = packed::pack(&naive_dft(&x)).unwrap();
            for (slot, (got, want)) in buf.iter().zip(&expected).enumerate() {
                assert!(
                    (got - want).abs() < 1e-9 * n as f64,
                    "n={n} slot={slot}: got {got}, want {want}"
                );
            }
        }
    }

    #[test]
    fn inverse_of_packed_spectrum_recovers_signal() {
        let plan = Plan::<f64>::new(4).unwrap();
        let mut buf = vec![10.0, -2.0, -2.0, 2.0];
        plan.inverse_in_place(&mut buf).unwrap();
        for (got, want) in buf.iter().zip(&[1.0, 2.0, 3.0, 4.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn inverse_of_dc_only_is_constant() {
        let plan = Plan::<f64>::new(16).unwrap();
        let c = -1.25;
        let mut buf = vec![0.0; 16];
        buf[0] = 16.0 * c;
        plan.inverse_in_place(&mut buf).unwrap();
        for v in &buf {
            assert!((v - c).abs() < 1e-12);
        }
    }

    #[test]
    fn inverse_of_all_ones_spectrum_is_impulse() {
        let plan = Plan::<f64>::new(8).unwrap();
        let mut buf = vec![1.0, 1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0];
        plan.inverse_in_place(&mut buf).unwrap();
        assert!((buf[0] - 1.0).abs() < 1e-15);
        for v in &buf[1..] {
            assert!(v.abs() < 1e-15);
        }
    }

    #[test]
    fn roundtrip_across_sizes_f32() {
        for log_n in 1..=12 {
            let n = 1usize << log_n;
            let plan = Plan::<f32>::new(n).unwrap();
            let x: Vec<f32> = (0..n)
                .map(|i| (((i * 7919 + 13) % 2003) as f32 / 1001.5) - 1.0)
                .collect();
            let mut buf = x.clone();
            plan.forward_in_place(&mut buf).unwrap();
            plan.inverse_in_place(&mut buf).unwrap();
            for (got, want) in buf.iter().zip(&x) {
                assert!((got - want).abs() < 1e-5, "n={n}");
            }
        }
    }

    #[test]
    fn staged_n2_single_stage_equals_output() {
        let plan = Plan::<f64>::new(2).unwrap();
        let mut buf = vec![3.0, 5.0];
        let views = plan.forward_staged(&mut buf).unwrap();
        assert_eq!(views.len(), 1);
        assert_eq!(views[0].block_size, 2);
        assert_eq!(views[0].buffer, buf);
        assert_eq!(buf, vec![8.0, -2.0]);
    }

    #[test]
    fn staged_n4_first_stage_is_two_packed_2point_spectra() {
        let plan = Plan::<f64>::new(4).unwrap();
        let x = vec![0.5, -1.5, 2.25, 4.0];
        let mut buf = x.clone();
        let views = plan.forward_staged(&mut buf).unwrap();
        assert_eq!(views.len(), 2);

        // After bit reversal the halves are [x0, x2] and [x1, x3]; each
        // 2-point spectrum is (sum, difference).
        let first = &views[0];
        assert_eq!(first.block_size, 2);
        let expect = [x[0] + x[2], x[0] - x[2], x[1] + x[3], x[1] - x[3]];
        for (got, want) in first.buffer.iter().zip(&expect) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn plan_is_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Plan<f32>>();
        assert_send_sync::<Plan<f64>>();

        // One plan, concurrent transforms on disjoint buffers.
        let plan = Plan::<f64>::new(256).unwrap();
        let results: Vec<Vec<f64>> = std::thread::scope(|scope| {
            (0..4)
                .map(|t| {
                    let plan = &plan;
                    scope.spawn(move || {
                        let mut buf: Vec<f64> =
                            (0..256).map(|i| ((i + t * 97) as f64 * 0.13).sin()).collect();
                        let original = buf.clone();
                        plan.forward_in_place(&mut buf).unwrap();
                        plan.inverse_in_place(&mut buf).unwrap();
                        for (got, want) in buf.iter().zip(&original) {
                            assert!((got - want).abs() < 1e-12);
                        }
                        buf
                    })
                })
                .collect::<Vec<_>>()
                .into_iter()
                .map(|h| h.join().unwrap())
                .collect()
        });
        assert_eq!(results.len(), 4);
    }

    #[test]
    fn staged_windows_decode_to_subsignal_spectra() {
        // n=16: after every stage each aligned window unpacks to the DFT of
        // the window's own bit-reversed content taken from the reordered
        // input.
        let n = 16;
        let plan = Plan::<f64>::new(n).unwrap();
        let x: Vec<f64> = (0..n).map(|i| ((i as f64) * 0.37).cos()).collect();

        let mut reordered = x.clone();
        plan.bit_reverse_in_place(&mut reordered).unwrap();

        let mut buf = x;
        let views = plan.forward_staged(&mut buf).unwrap();
        for view in &views {
            let r = view.block_size;
            let sub_plan = Plan::<f64>::new(r).unwrap();
            for (w, window) in view.buffer.chunks_exact(r).enumerate() {
                let mut segment = reordered[w * r..(w + 1) * r].to_vec();
                sub_plan.bit_reverse_in_place(&mut segment).unwrap();
                let expected = packed::pack(&naive_dft(&segment)).unwrap();
                for (got, want) in window.iter().zip(&expected) {
                    assert!(
                        (got - want).abs() < 1e-10,
                        "stage {} window {w}",
                        view.stage_index
                    );
                }
            }
        }
    }
}
