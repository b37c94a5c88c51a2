//! Block-circulant linear layer: m×n matrix stored as m·n/p scalars,
//! multiplied in O((m+n)·log p), checked against the dense materialized
//! operator, then saved and restored.
//!
//! ```bash
//! cargo run --example circulant_layer
//! ```

use rdfft::oracle::DenseCirculant;
use rdfft::CirculantLayer;

fn main() {
    let (p, q_out, q_in) = (8usize, 2usize, 3usize);
    let cols: Vec<f64> = (0..q_out * q_in * p)
        .map(|i| ((i * 37 + 5) % 23) as f64 / 11.5 - 1.0)
        .collect();

    let layer = CirculantLayer::new(p, q_out, q_in, &cols).unwrap();
    let (m, n) = layer.dims();
    println!("layer dims {m}x{n}, block size {p}");
    println!(
        "trainable scalars: {} (dense would need {}, compression x{})",
        layer.parameter_count(),
        m * n,
        m * n / layer.parameter_count()
    );

    let x: Vec<f64> = (0..n).map(|i| (i as f64 * 0.31).sin()).collect();

    // Fast path. The cache keeps x intact and collects its block spectra
    // for a later backward pass.
    let mut x_input = x.clone();
    let mut y = vec![0.0; m];
    let mut cache = vec![0.0; n];
    layer.forward(&mut x_input, &mut y, Some(&mut cache)).unwrap();

    // Dense reference path.
    let dense = DenseCirculant::new(p, q_out, q_in, &cols).unwrap();
    let y_dense = dense.matvec(&x).unwrap();

    let worst = y
        .iter()
        .zip(&y_dense)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    println!("spectral vs dense matvec, max deviation: {worst:.2e}");
    println!("y[..4] = {:?}", &y[..4]);

    // Serialization round trip: header + packed weight spectra.
    let mut bytes = Vec::new();
    layer.write_to(&mut bytes).unwrap();
    println!("serialized layer: {} bytes", bytes.len());
    let restored = CirculantLayer::<f64>::read_from(&mut bytes.as_slice()).unwrap();

    let mut x_input = x;
    let mut y_restored = vec![0.0; m];
    restored.forward(&mut x_input, &mut y_restored, None).unwrap();
    assert_eq!(y, y_restored);
    println!("restored layer reproduces the forward pass bit-exactly");
}
