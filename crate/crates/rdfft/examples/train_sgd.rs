//! Train a circulant layer with plain SGD on a least-squares objective:
//! analytic spectral-domain gradients, weights updated without ever
//! leaving the frequency domain, and a finite-difference spot check.
//!
//! ```bash
//! cargo run --example train_sgd
//! ```

use rdfft::oracle::{finite_difference_grad, naive_circulant_matvec};
use rdfft::{CirculantLayer, GradientSet};

fn main() {
    let p = 16usize;

    // Ground truth: a hidden circulant operator applied to a fixed input.
    let hidden_cols: Vec<f64> = (0..p).map(|i| ((i * 13 + 3) % 17) as f64 / 8.5 - 1.0).collect();
    let x: Vec<f64> = (0..p).map(|i| ((i * 29 + 11) % 19) as f64 / 9.5 - 1.0).collect();
    let target = naive_circulant_matvec(p, 1, 1, &hidden_cols, &x).unwrap();

    let init: Vec<f64> = (0..p).map(|i| ((i * 7 + 1) % 13) as f64 / 65.0).collect();
    let mut layer = CirculantLayer::new(p, 1, 1, &init).unwrap();
    let mut grads = GradientSet::zeros_for(&layer);

    // All buffers for the training loop, allocated once.
    let mut x_in = vec![0.0; p];
    let mut x_spec = vec![0.0; p];
    let mut y = vec![0.0; p];
    let mut residual = vec![0.0; p];

    let lr = 0.02;
    println!("{:>6} {:>14}", "step", "loss");
    let mut loss = f64::INFINITY;
    for step in 0..=200 {
        x_in.copy_from_slice(&x);
        layer.forward(&mut x_in, &mut y, Some(&mut x_spec)).unwrap();
        for (r, (a, b)) in residual.iter_mut().zip(y.iter().zip(&target)) {
            *r = a - b;
        }
        loss = residual.iter().map(|r| r * r).sum::<f64>() / 2.0;
        if step % 25 == 0 {
            println!("{step:>6} {loss:>14.6e}");
        }
        if step == 200 {
            break;
        }

        layer.backward(&x_spec, &mut residual, &mut grads).unwrap();

        // Spot-check the analytic weight gradient on the first step.
        if step == 0 {
            let current: Vec<f64> = layer.weight_column(0, 0);
            let fd = finite_difference_grad(
                |c| {
                    let y = naive_circulant_matvec(p, 1, 1, c, &x).unwrap();
                    y.iter().zip(&target).map(|(a, b)| (a - b) * (a - b)).sum::<f64>() / 2.0
                },
                &current,
                1e-5,
            );
            let worst = grads
                .grad_weights
                .iter()
                .zip(&fd)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            println!("  analytic vs finite-difference gradient, max deviation: {worst:.2e}");
        }

        layer.apply_gradients(&mut grads.grad_weights, lr).unwrap();
    }

    // How close did the learned first column get to the hidden one?
    let learned = layer.weight_column(0, 0);
    let col_err = learned
        .iter()
        .zip(&hidden_cols)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    println!("\nfinal loss {loss:.3e}, max weight deviation from ground truth {col_err:.3e}");
}
