//! Exchange packed spectra with external tools via the raw dump format:
//! little-endian IEEE-754 scalars, no header, length inferred from the
//! byte count.
//!
//! ```bash
//! cargo run --example dump_raw
//! # inspect with e.g. python:
//! #   numpy.fromfile("/tmp/rdfft_signal.f32", dtype="<f4")
//! ```

use std::fs::File;

use rdfft::{io, Plan};

fn main() -> std::io::Result<()> {
    let n = 64usize;
    let plan = Plan::<f32>::new(n).unwrap();
    let signal: Vec<f32> = (0..n).map(|i| (i as f32 * 0.2).sin()).collect();

    let signal_path = std::env::temp_dir().join("rdfft_signal.f32");
    let spectrum_path = std::env::temp_dir().join("rdfft_spectrum.f32");

    io::write_raw(&signal, &mut File::create(&signal_path)?)?;

    let mut buf = signal.clone();
    plan.forward_in_place(&mut buf).unwrap();
    io::write_raw(&buf, &mut File::create(&spectrum_path)?)?;

    println!("wrote {} ({} bytes)", signal_path.display(), 4 * n);
    println!("wrote {} ({} bytes)", spectrum_path.display(), 4 * n);

    // Read the spectrum dump back and invert it.
    let mut reloaded: Vec<f32> = io::read_raw(&mut File::open(&spectrum_path)?).unwrap();
    assert_eq!(reloaded.len(), n);
    plan.inverse_in_place(&mut reloaded).unwrap();

    let worst = reloaded
        .iter()
        .zip(&signal)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f32, f32::max);
    println!("inverse of the reloaded spectrum matches the signal to {worst:.2e}");
    Ok(())
}
