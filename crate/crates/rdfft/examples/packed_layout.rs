//! Tour of the packed spectrum encoding: where each bin lives inside the
//! real buffer, and the arithmetic that stays closed over it.
//!
//! ```bash
//! cargo run --example packed_layout
//! ```

use rdfft::{packed, Plan};

fn main() {
    let n = 8;
    let plan = Plan::<f64>::new(n).unwrap();
    let mut buf: Vec<f64> = (0..n).map(|i| (i as f64 * 0.9).cos()).collect();
    println!("signal: {buf:?}\n");

    plan.forward_in_place(&mut buf).unwrap();
    println!("packed spectrum (same buffer):");
    for (slot, v) in buf.iter().enumerate() {
        let meaning = match slot {
            0 => "Re(y0)  DC".to_string(),
            s if s == n / 2 => format!("Re(y{s})  Nyquist"),
            s if s < n / 2 => format!("Re(y{s})"),
            s => format!("Im(y{})", n - s),
        };
        println!("  slot {slot}: {v:+.6}   {meaning}");
    }

    let spectrum = packed::unpack(&buf).unwrap();
    println!("\ndecoded bins (upper half reconstructed by conjugation):");
    for (k, y) in spectrum.iter().enumerate() {
        println!("  y{k} = {:+.6} {:+.6}i", y.re, y.im);
    }

    // pack is the exact inverse of unpack.
    let repacked = packed::pack(&spectrum).unwrap();
    assert_eq!(repacked, buf);
    println!("\npack(unpack(buffer)) reproduced the buffer bit-exactly");

    // Conjugation flips only the imaginary slots; twice is the identity.
    let mut conj = buf.clone();
    packed::conjugate_in_place(&mut conj).unwrap();
    println!("conjugated:   {conj:?}");
    packed::conjugate_in_place(&mut conj).unwrap();
    assert_eq!(conj, buf);

    // Multiplying by the all-ones spectrum (the impulse's transform) is the
    // identity.
    let mut identity = vec![0.0; n];
    for slot in identity.iter_mut().take(n / 2 + 1) {
        *slot = 1.0;
    }
    let mut product = buf.clone();
    packed::multiply_in_place(&mut product, &identity, false).unwrap();
    assert_eq!(product, buf);
    println!("multiplying by the impulse spectrum left the buffer unchanged");
}
