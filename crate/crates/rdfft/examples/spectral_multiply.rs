//! Circular convolution through the packed spectra: transform both
//! signals in place, multiply binwise, invert — three buffers total, zero
//! scratch.
//!
//! ```bash
//! cargo run --example spectral_multiply
//! ```

use rdfft::{packed, Plan};

/// Direct O(n²) circular convolution for comparison.
fn direct_circular_convolution(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len();
    (0..n)
        .map(|t| (0..n).map(|s| a[s] * b[(n + t - s) % n]).sum())
        .collect()
}

fn main() {
    let n = 16;
    let plan = Plan::<f64>::new(n).unwrap();

    let a: Vec<f64> = (0..n).map(|i| if i < 4 { 1.0 } else { 0.0 }).collect();
    let b: Vec<f64> = (0..n).map(|i| (i as f64 * 0.45).sin()).collect();
    let expected = direct_circular_convolution(&a, &b);

    let mut fa = a.clone();
    let mut fb = b.clone();
    plan.forward_in_place(&mut fa).unwrap();
    plan.forward_in_place(&mut fb).unwrap();
    packed::multiply_in_place(&mut fa, &fb, false).unwrap();
    plan.inverse_in_place(&mut fa).unwrap();

    println!("{:>4} {:>14} {:>14} {:>10}", "t", "spectral", "direct", "diff");
    let mut worst = 0.0f64;
    for t in 0..n {
        let diff = (fa[t] - expected[t]).abs();
        worst = worst.max(diff);
        println!("{t:>4} {:>14.8} {:>14.8} {diff:>10.2e}", fa[t], expected[t]);
    }
    println!("\nmax deviation from the direct convolution: {worst:.2e}");

    // Correlation instead of convolution: conjugate one factor.
    let mut fa = a;
    let mut fb = b;
    plan.forward_in_place(&mut fa).unwrap();
    plan.forward_in_place(&mut fb).unwrap();
    packed::multiply_in_place(&mut fa, &fb, true).unwrap();
    plan.inverse_in_place(&mut fa).unwrap();
    println!("circular cross-correlation at lag 0: {:+.8}", fa[0]);
}
