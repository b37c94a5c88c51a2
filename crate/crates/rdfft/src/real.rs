//! Scalar abstraction over the two working precisions (f32 and f64).

use std::fmt::{Debug, Display};
use std::io::{Read, Write};
use std::ops::{AddAssign, MulAssign, SubAssign};

use num_traits::Float;
use serde::{Deserialize, Serialize};

/// Tag identifying a working precision, used in serialized headers and
/// benchmark reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    F32,
    F64,
}

impl Precision {
    /// Width of one scalar in bytes.
    pub fn byte_width(self) -> usize {
        match self {
            Precision::F32 => 4,
            Precision::F64 => 8,
        }
    }

    /// Numeric tag written into serialized headers (the bit width).
    pub fn tag(self) -> u32 {
        match self {
            Precision::F32 => 32,
            Precision::F64 => 64,
        }
    }

    pub fn from_tag(tag: u32) -> Option<Self> {
        match tag {
            32 => Some(Precision::F32),
            64 => Some(Precision::F64),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Precision::F32 => "f32",
            Precision::F64 => "f64",
        }
    }
}

impl Display for Precision {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Precision {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "f32" | "F32" | "32" => Ok(Precision::F32),
            "f64" | "F64" | "64" => Ok(Precision::F64),
            other => Err(format!("unknown precision `{other}` (expected f32 or f64)")),
        }
    }
}

/// Real scalar type usable as the working precision of the kernels.
///
/// Implemented for `f32` and `f64`. Trigonometric tables and tolerance
/// computations are always carried out in f64 and converted down, so the
/// trait only needs lossy conversions plus raw little-endian byte access
/// for the dump formats.
pub trait Real:
    Float
    + AddAssign
    + SubAssign
    + MulAssign
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    const PRECISION: Precision;

    /// Relative tolerance scale for the Hermitian symmetry check in `pack`.
    const HERMITIAN_EPS: f64;

    fn from_f64(v: f64) -> Self;
    fn as_f64(self) -> f64;

    /// Append the scalar in little-endian IEEE-754 form.
    fn write_le<W: Write>(self, w: &mut W) -> std::io::Result<()>;

    /// Read one scalar in little-endian IEEE-754 form.
    fn read_le<R: Read>(r: &mut R) -> std::io::Result<Self>;
}

impl Real for f32 {
    const PRECISION: Precision = Precision::F32;
    const HERMITIAN_EPS: f64 = 1e-6;

    #[inline]
    fn from_f64(v: f64) -> Self {
        v as f32
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self as f64
    }

    fn write_le<W: Write>(self, w: &mut W) -> std::io::Result<()> {
        w.write_all(&self.to_le_bytes())
    }

    fn read_le<R: Read>(r: &mut R) -> std::io::Result<Self> {
        let mut b = [0u8; 4];
        r.read_exact(&mut b)?;
        Ok(f32::from_le_bytes(b))
    }
}

impl Real for f64 {
    const PRECISION: Precision = Precision::F64;
    const HERMITIAN_EPS: f64 = 1e-12;

    #[inline]
    fn from_f64(v: f64) -> Self {
        v
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self
    }

    fn write_le<W: Write>(self, w: &mut W) -> std::io::Result<()> {
        w.write_all(&self.to_le_bytes())
    }

    fn read_le<R: Read>(r: &mut R) -> std::io::Result<Self> {
        let mut b = [0u8; 8];
        r.read_exact(&mut b)?;
        Ok(f64::from_le_bytes(b))
    }
}

/// Returns `Ok(())` when `n` is a power of two and at least 2.
pub(crate) fn check_transform_len(n: usize) -> crate::Result<()> {
    if n >= 2 && n.is_power_of_two() {
        Ok(())
    } else {
        Err(crate::Error::SizeError { n })
    }
}
