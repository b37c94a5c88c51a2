//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by transforms, packed-spectrum arithmetic and layers.
#[derive(Debug, Error)]
pub enum Error {
    /// A length is not a power of two, or is below the minimum of 2.
    #[error("invalid transform length {n}: must be a power of two and at least 2")]
    SizeError { n: usize },

    /// Two buffers that must agree in length do not.
    #[error("size mismatch: expected length {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    /// A complex spectrum handed to `pack` is not Hermitian within tolerance.
    #[error("Hermitian symmetry violated at bin {bin}: deviation {deviation:.3e} exceeds tolerance {tolerance:.3e}")]
    HermitianViolation {
        bin: usize,
        deviation: f64,
        tolerance: f64,
    },

    /// An input scalar is NaN or infinite.
    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    /// Underlying I/O failure while reading or writing a serialized form.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// A serialized byte stream does not match the expected format.
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Helper for the pervasive "buffer must have length n" check.
    pub(crate) fn check_len(expected: usize, got: usize) -> Result<()> {
        if expected == got {
            Ok(())
        } else {
            Err(Error::SizeMismatch { expected, got })
        }
    }
}
