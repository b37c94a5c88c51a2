//! Raw scalar dump format for cross-validation with external tools.
//!
//! Little-endian IEEE-754 scalars of the working precision, no header; the
//! element count is inferred from the byte count. Packed spectra and time
//! signals dumped this way can be diffed against other FFT implementations
//! directly.

use std::io::{Read, Write};

use crate::{Error, Real, Result};

/// Write scalars as consecutive little-endian values.
pub fn write_raw<T: Real, W: Write>(data: &[T], w: &mut W) -> std::io::Result<()> {
    for &v in data {
        v.write_le(w)?;
    }
    Ok(())
}

/// Read a whole stream of little-endian scalars.
///
/// Fails with [`Error::Format`] when the byte count is not a multiple of
/// the scalar width.
pub fn read_raw<T: Real, R: Read>(r: &mut R) -> Result<Vec<T>> {
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    let width = T::PRECISION.byte_width();
    if bytes.len() % width != 0 {
        return Err(Error::Format(format!(
            "stream of {} bytes is not a multiple of the {width}-byte scalar width",
            bytes.len()
        )));
    }
    let mut cursor = bytes.as_slice();
    let mut out = Vec::with_capacity(bytes.len() / width);
    for _ in 0..bytes.len() / width {
        out.push(T::read_le(&mut cursor)?);
    }
    Ok(out)
}
