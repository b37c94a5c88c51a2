//! Fully in-place real-domain FFT kernels with zero dynamic memory
//! acquisition after plan construction.
//!
//! The discrete Fourier transform of a length-n real signal is Hermitian
//! symmetric, which leaves exactly n independent real scalars. This crate
//! keeps those scalars inside the original n-element buffer at every stage
//! of a radix-2 transform — no complex output buffer, no n+2 padding, no
//! scratch — and builds on that:
//!
//! - [`packed`]: the packed spectrum layout plus arithmetic closed over it
//!   (conjugation, elementwise multiply, scaled accumulation).
//! - [`fft`]: [`Plan`] with in-place forward/inverse transforms and a
//!   staged diagnostic variant.
//! - [`circulant`]: block-circulant linear layers computed through the
//!   transforms, with analytic input/weight gradients and spectral-domain
//!   SGD updates.
//! - [`oracle`]: slow O(n²) reference transforms, dense circulant algebra
//!   and finite differences; the ground truth for every accuracy check.
//! - [`bench`](mod@bench): the measurement harness behind the `rdfft-bench` binary —
//!   timing, oracle verification and allocation audits.
//! - [`alloc_counter`]: the instrumented allocator used to prove the
//!   zero-allocation contract instead of assuming it.
//!
//! # Example
//!
//! ```
//! use rdfft::Plan;
//!
//! let plan = Plan::<f32>::new(8).unwrap();
//! let mut buf = [1.0f32, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0];
//! plan.forward_in_place(&mut buf).unwrap();   // buf now holds the packed spectrum
//! plan.inverse_in_place(&mut buf).unwrap();   // and now the signal again
//! assert!((buf[3] - 4.0).abs() < 1e-5);
//! ```
//!
//! Runnable walkthroughs for each capability live in `examples/`.

pub mod alloc_counter;
pub mod bench;
pub mod circulant;
pub mod error;
pub mod fft;
pub mod io;
pub mod oracle;
pub mod packed;
pub mod real;

pub use alloc_counter::CountingAllocator;
pub use circulant::{CirculantLayer, GradientSet};
pub use error::{Error, Result};
pub use fft::{Plan, StageView};
pub use real::{Precision, Real};

// The library's own unit tests exercise the allocation audit machinery, so
// the test harness registers the counting allocator.
#[cfg(test)]
#[global_allocator]
static TEST_ALLOC: CountingAllocator = CountingAllocator;
