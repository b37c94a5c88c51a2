//! The packed real-buffer encoding of Hermitian spectra and the arithmetic
//! closed over it.
//!
//! The spectrum of a length-n real signal is Hermitian: bin n−k is the
//! conjugate of bin k, and the DC and Nyquist bins are purely real. That
//! leaves exactly n independent real scalars, which fit back into the
//! original buffer:
//!
//! ```text
//! slot 0     = Re(y_0)          (DC, real)
//! slot k     = Re(y_k)          for 1 <= k < n/2
//! slot n/2   = Re(y_{n/2})      (Nyquist, real)
//! slot n - k = Im(y_k)          for 1 <= k < n/2
//! ```
//!
//! Every length-n real buffer is a valid packed spectrum and every Hermitian
//! spectrum has exactly one encoding. The arithmetic below (conjugation,
//! elementwise complex multiply, scaled accumulation) operates directly on
//! the encoding without decoding and without temporaries, which is what lets
//! the circulant operators run with zero scratch.
//!
//! `pack`/`unpack` are the boundary to the explicit complex representation;
//! they allocate and are meant for construction, inspection and testing, not
//! for kernel inner loops.

use num_complex::Complex;

use crate::real::check_transform_len;
use crate::{Error, Real, Result};

/// Encode a Hermitian complex spectrum into the packed real layout.
///
/// The input must have power-of-two length n >= 2 and satisfy
/// `y[n-k] = conj(y[k])` with real DC and Nyquist bins, within a relative
/// tolerance of [`Real::HERMITIAN_EPS`] times the largest bin magnitude.
/// Violations are rejected rather than projected.
pub fn pack<T: Real>(spectrum: &[Complex<T>]) -> Result<Vec<T>> {
    let n = spectrum.len();
    check_transform_len(n)?;

    let max_mag = spectrum
        .iter()
        .map(|y| {
            let (re, im) = (y.re.as_f64(), y.im.as_f64());
            (re * re + im * im).sqrt()
        })
        .fold(0.0, f64::max);
    let tol = T::HERMITIAN_EPS * max_mag;

    let check = |bin: usize, deviation: f64| -> Result<()> {
        if deviation > tol {
            Err(Error::HermitianViolation {
                bin,
                deviation,
                tolerance: tol,
            })
        } else {
            Ok(())
        }
    };

    check(0, spectrum[0].im.as_f64().abs())?;
    check(n / 2, spectrum[n / 2].im.as_f64().abs())?;
    for k in 1..n / 2 {
        let a = spectrum[k];
        let b = spectrum[n - k];
        let dev_re = (a.re.as_f64() - b.re.as_f64()).abs();
        let dev_im = (a.im.as_f64() + b.im.as_f64()).abs();
        check(n - k, dev_re.max(dev_im))?;
    }

    let mut out = vec![T::zero(); n];
    out[0] = spectrum[0].re;
    out[n / 2] = spectrum[n / 2].re;
    for k in 1..n / 2 {
        out[k] = spectrum[k].re;
        out[n - k] = spectrum[k].im;
    }
    Ok(out)
}

/// Decode a packed buffer into the full redundant complex spectrum.
///
/// Exact inverse of [`pack`]: bins above n/2 are reconstructed by
/// conjugation, so the result is Hermitian by construction.
pub fn unpack<T: Real>(packed: &[T]) -> Result<Vec<Complex<T>>> {
    let n = packed.len();
    check_transform_len(n)?;

    let mut out = vec![Complex::new(T::zero(), T::zero()); n];
    out[0] = Complex::new(packed[0], T::zero());
    out[n / 2] = Complex::new(packed[n / 2], T::zero());
    for k in 1..n / 2 {
        let y = Complex::new(packed[k], packed[n - k]);
        out[k] = y;
        out[n - k] = y.conj();
    }
    Ok(out)
}

/// Conjugate the decoded spectrum in place: negates the imaginary slots
/// n/2+1 .. n-1 and touches nothing else.
pub fn conjugate_in_place<T: Real>(packed: &mut [T]) -> Result<()> {
    let n = packed.len();
    check_transform_len(n)?;
    for slot in &mut packed[n / 2 + 1..] {
        *slot = -*slot;
    }
    Ok(())
}

/// Elementwise complex product of two packed spectra, stored into `acc`.
///
/// With `conjugate_other` set, `other` is conjugated on the fly. Each bin's
/// product is formed in scalar temporaries and written straight back into
/// `acc`; no storage outside `acc` is modified. The product of two Hermitian
/// spectra is Hermitian (DC and Nyquist stay exactly real: they are products
/// of two stored reals), so the encoding is closed under this operation.
pub fn multiply_in_place<T: Real>(acc: &mut [T], other: &[T], conjugate_other: bool) -> Result<()> {
    let n = acc.len();
    check_transform_len(n)?;
    Error::check_len(n, other.len())?;

    acc[0] *= other[0];
    acc[n / 2] *= other[n / 2];
    for k in 1..n / 2 {
        let (ar, ai) = (acc[k], acc[n - k]);
        let br = other[k];
        let bi = if conjugate_other { -other[n - k] } else { other[n - k] };
        acc[k] = ar * br - ai * bi;
        acc[n - k] = ar * bi + ai * br;
    }
    Ok(())
}

/// Elementwise complex multiply-accumulate: `acc += a ⊙ b` binwise, with
/// optional conjugation of `a`.
///
/// This is the fused accumulation the block-circulant forward and backward
/// passes use to sum frequency-domain block products without a product
/// temporary.
pub fn multiply_add_in_place<T: Real>(
    acc: &mut [T],
    a: &[T],
    b: &[T],
    conjugate_a: bool,
) -> Result<()> {
    let n = acc.len();
    check_transform_len(n)?;
    Error::check_len(n, a.len())?;
    Error::check_len(n, b.len())?;

    acc[0] += a[0] * b[0];
    acc[n / 2] += a[n / 2] * b[n / 2];
    for k in 1..n / 2 {
        let ar = a[k];
        let ai = if conjugate_a { -a[n - k] } else { a[n - k] };
        let (br, bi) = (b[k], b[n - k]);
        acc[k] += ar * br - ai * bi;
        acc[n - k] += ar * bi + ai * br;
    }
    Ok(())
}

/// Slotwise scaled accumulation: `acc += scale · other`.
///
/// Valid on spectra because the packed encoding is linear in the spectrum.
pub fn axpy_in_place<T: Real>(acc: &mut [T], other: &[T], scale: T) -> Result<()> {
    let n = acc.len();
    check_transform_len(n)?;
    Error::check_len(n, other.len())?;
    for (a, o) in acc.iter_mut().zip(other) {
        *a += scale * *o;
    }
    Ok(())
}

/// Σ_k |y_k|² over all n bins, computed from the packed buffer without
/// decoding. Conjugate pairs contribute twice.
pub fn spectral_energy<T: Real>(packed: &[T]) -> Result<f64> {
    let n = packed.len();
    check_transform_len(n)?;
    let dc = packed[0].as_f64();
    let ny = packed[n / 2].as_f64();
    let mut sum = dc * dc + ny * ny;
    for k in 1..n / 2 {
        let (re, im) = (packed[k].as_f64(), packed[n - k].as_f64());
        sum += 2.0 * (re * re + im * im);
    }
    Ok(sum)
}
