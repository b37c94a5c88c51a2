//! In-place forward and inverse transforms: one buffer, no scratch.
//!
//! ```bash
//! cargo run --example forward_inverse
//! ```

use rdfft::Plan;

fn main() {
    // The classic worked example: DFT of [1, 2, 3, 4].
    let plan = Plan::<f32>::new(4).unwrap();
    let mut buf = [1.0f32, 2.0, 3.0, 4.0];
    println!("signal:          {buf:?}");
    plan.forward_in_place(&mut buf).unwrap();
    println!("packed spectrum: {buf:?}   (Re y0, Re y1, Re y2, Im y1)");
    plan.inverse_in_place(&mut buf).unwrap();
    println!("recovered:       {buf:?}\n");

    // Round-trip error across sizes, f32 and f64.
    println!("{:>6}  {:>12}  {:>12}", "n", "f32 max err", "f64 max err");
    for log_n in [3u32, 6, 9, 12] {
        let n = 1usize << log_n;
        let signal: Vec<f64> = (0..n).map(|i| (i as f64 * 0.713).sin() * 2.0).collect();

        let err32 = {
            let plan = Plan::<f32>::new(n).unwrap();
            let x: Vec<f32> = signal.iter().map(|&v| v as f32).collect();
            let mut buf = x.clone();
            plan.forward_in_place(&mut buf).unwrap();
            plan.inverse_in_place(&mut buf).unwrap();
            buf.iter()
                .zip(&x)
                .map(|(a, b)| (a - b).abs() as f64)
                .fold(0.0, f64::max)
        };
        let err64 = {
            let plan = Plan::<f64>::new(n).unwrap();
            let mut buf = signal.clone();
            plan.forward_in_place(&mut buf).unwrap();
            plan.inverse_in_place(&mut buf).unwrap();
            buf.iter()
                .zip(&signal)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        };
        println!("{n:>6}  {err32:>12.3e}  {err64:>12.3e}");
    }
}
