//! Prove the zero-allocation contract at runtime: register the counting
//! allocator, run every kernel, and show the acquisition counters plus
//! guard-band canaries.
//!
//! ```bash
//! cargo run --example alloc_audit
//! ```

use rdfft::{alloc_counter, CirculantLayer, GradientSet, Plan};

#[global_allocator]
static ALLOC: rdfft::CountingAllocator = rdfft::CountingAllocator;

const GUARD: usize = 4;
const CANARY: f64 = 12345.6789;

fn main() {
    let n = 2048usize;

    // Plan construction is the one allocating step.
    let (plan, setup) = alloc_counter::measure(|| Plan::<f64>::new(n).unwrap());
    println!(
        "plan construction: {} acquisitions, {} bytes",
        setup.stats.count, setup.stats.bytes
    );

    // Guard bands around the working region catch out-of-range writes.
    let mut buf = vec![CANARY; n + 2 * GUARD];
    for (i, v) in buf[GUARD..GUARD + n].iter_mut().enumerate() {
        *v = (i as f64 * 0.37).sin();
    }

    let (_, fwd) = alloc_counter::measure(|| {
        plan.forward_in_place(&mut buf[GUARD..GUARD + n]).unwrap();
        plan.inverse_in_place(&mut buf[GUARD..GUARD + n]).unwrap();
    });
    println!(
        "forward + inverse: {} acquisitions, {} bytes (tracked: {})",
        fwd.stats.count, fwd.stats.bytes, fwd.tracked
    );
    assert_eq!(fwd.stats.count, 0);

    let guards_ok = buf[..GUARD].iter().chain(&buf[GUARD + n..]).all(|&v| v == CANARY);
    println!("guard bands intact: {guards_ok}");
    assert!(guards_ok);

    // The full layer pipeline: forward, backward, gradient application.
    let (p, q_out, q_in) = (256usize, 2usize, 2usize);
    let cols: Vec<f64> = (0..q_out * q_in * p).map(|i| (i as f64 * 0.11).cos()).collect();
    let layer = CirculantLayer::new(p, q_out, q_in, &cols).unwrap();
    let mut layer = layer;

    let mut x: Vec<f64> = (0..q_in * p).map(|i| (i as f64 * 0.23).sin()).collect();
    let mut y = vec![0.0; q_out * p];
    let mut cache = vec![0.0; q_in * p];
    let mut g: Vec<f64> = (0..q_out * p).map(|i| (i as f64 * 0.05).cos()).collect();
    let mut grads = GradientSet::zeros_for(&layer);

    let (_, pass) = alloc_counter::measure(|| {
        layer.forward(&mut x, &mut y, Some(&mut cache)).unwrap();
        layer.backward(&cache, &mut g, &mut grads).unwrap();
        layer.apply_gradients(&mut grads.grad_weights, 1e-2).unwrap();
    });
    println!(
        "circulant forward + backward + update: {} acquisitions, {} bytes",
        pass.stats.count, pass.stats.bytes
    );
    assert_eq!(pass.stats.count, 0);

    println!("zero-allocation contract holds");
}
