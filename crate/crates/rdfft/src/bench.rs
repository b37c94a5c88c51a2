//! Measurement harness behind the `rdfft-bench` binary: wall-clock timing,
//! accuracy verification against the reference transforms, and allocation
//! audits, emitted as human-readable, JSON or CSV reports.
//!
//! # Measurement protocol
//!
//! Timing uses the monotonic clock around batched inner loops so clock
//! overhead amortizes; per-call figures are reported (mean over all calls,
//! median and min over batches). Destructive ops (`fft`, `ifft`,
//! `circulant-bwd`) restore their input with a `copy_from_slice` inside the
//! timed body; the copy allocates nothing and costs a few percent of a
//! transform. Inputs are unit normal, drawn from a ChaCha stream seeded per
//! cell, so a report is reproducible from its seed (timings excluded).
//!
//! # Error metrics
//!
//! With `--verify`, each cell's output is compared against a 64-bit
//! recomputation by the [`crate::oracle`] module on the same seeded inputs:
//!
//! - `abs_err`: max |got − reference| normalized by the reference's largest
//!   magnitude (error per unit of output scale). This is the gated metric:
//!   unnormalized spectral error necessarily grows with √n · input scale —
//!   a working precision whose epsilon exceeds the tolerance at the
//!   spectrum's magnitude cannot represent the answer more accurately.
//! - `abs_err_raw`, `mean_abs_err`: the unnormalized max and mean.
//! - `rel_err`: max per-element |got − reference| / |reference|, skipping
//!   exact zeros. Reported for every op, gated only for `fft` (time-domain
//!   samples pass arbitrarily close to zero, making the per-element ratio
//!   ill-conditioned for the other ops).
//!
//! # Strict thresholds
//!
//! | op            | abs_err (f32 / f64) | rel_err (f32 / f64) |
//! |---------------|---------------------|---------------------|
//! | fft           | 5e-6 / 1e-12        | 5e-3 / 1e-9         |
//! | ifft          | 5e-6 / 1e-12        | —                   |
//! | roundtrip     | raw: 1e-5 / 1e-11   | —                   |
//! | circulant-fwd | 1e-4 / 1e-10        | —                   |
//! | circulant-bwd | 1e-4 / 1e-10        | —                   |
//!
//! Every cell additionally requires `alloc_count == 0` and
//! `scratch_bytes == 0` over the measured kernel region (after plan and
//! layer construction). Allocation counting must be live — register
//! [`crate::CountingAllocator`] as the global allocator, as the bench
//! binary does — otherwise `run_bench` refuses to report fabricated zeros.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::circulant::{CirculantLayer, GradientSet};
use crate::fft::Plan;
use crate::oracle::{self, DenseCirculant};
use crate::{alloc_counter, packed, Precision, Real};

/// Operations the harness can measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BenchOp {
    Fft,
    Ifft,
    Roundtrip,
    CirculantFwd,
    CirculantBwd,
}

impl BenchOp {
    pub const ALL: [BenchOp; 5] = [
        BenchOp::Fft,
        BenchOp::Ifft,
        BenchOp::Roundtrip,
        BenchOp::CirculantFwd,
        BenchOp::CirculantBwd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BenchOp::Fft => "fft",
            BenchOp::Ifft => "ifft",
            BenchOp::Roundtrip => "roundtrip",
            BenchOp::CirculantFwd => "circulant-fwd",
            BenchOp::CirculantBwd => "circulant-bwd",
        }
    }
}

impl fmt::Display for BenchOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BenchOp {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fft" => Ok(BenchOp::Fft),
            "ifft" => Ok(BenchOp::Ifft),
            "roundtrip" => Ok(BenchOp::Roundtrip),
            "circulant-fwd" => Ok(BenchOp::CirculantFwd),
            "circulant-bwd" => Ok(BenchOp::CirculantBwd),
            other => Err(format!(
                "unknown op `{other}` (expected fft, ifft, roundtrip, circulant-fwd or circulant-bwd)"
            )),
        }
    }
}

/// Report serialization formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Human,
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "human" => Ok(OutputFormat::Human),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(format!("unknown format `{other}` (expected human, json or csv)")),
        }
    }
}

/// Full measurement matrix: every (op, size, precision) combination becomes
/// one report cell.
#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub ops: Vec<BenchOp>,
    pub sizes: Vec<usize>,
    pub precisions: Vec<Precision>,
    pub reps: usize,
    pub warmup: usize,
    pub seed: u64,
    /// Compute error columns against the oracle.
    pub verify: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            ops: BenchOp::ALL.to_vec(),
            sizes: vec![512, 1024, 4096],
            precisions: vec![Precision::F32, Precision::F64],
            reps: 1000,
            warmup: 5,
            seed: 42,
            verify: false,
        }
    }
}

impl BenchConfig {
    fn validate(&self) -> Result<(), BenchError> {
        if self.ops.is_empty() || self.sizes.is_empty() || self.precisions.is_empty() {
            return Err(BenchError::Config("empty op, size or precision list".into()));
        }
        if self.reps < 1 {
            return Err(BenchError::Config("reps must be at least 1".into()));
        }
        for &n in &self.sizes {
            if n < 2 || !n.is_power_of_two() {
                return Err(BenchError::Config(format!(
                    "size {n} is not a power of two >= 2"
                )));
            }
        }
        Ok(())
    }
}

/// One measured (op, size, precision) combination.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BenchCell {
    pub op: BenchOp,
    pub n: usize,
    pub precision: Precision,
    pub mean_ns: f64,
    pub median_ns: f64,
    pub min_ns: f64,
    pub abs_err: Option<f64>,
    pub abs_err_raw: Option<f64>,
    pub mean_abs_err: Option<f64>,
    pub rel_err: Option<f64>,
    pub alloc_count: u64,
    pub scratch_bytes: u64,
    pub passed: bool,
}

/// Machine-readable result of a [`run_bench`] invocation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BenchReport {
    pub seed: u64,
    pub reps: usize,
    pub warmup: usize,
    pub verified: bool,
    pub cells: Vec<BenchCell>,
    /// Soft findings (e.g. timing scaling) — never gate the exit status.
    pub warnings: Vec<String>,
}

impl BenchReport {
    /// Human-readable descriptions of every failed threshold.
    pub fn violations(&self) -> Vec<String> {
        self.cells
            .iter()
            .filter(|c| !c.passed)
            .map(|c| {
                format!(
                    "{} n={} {}: abs_err={:?} rel_err={:?} alloc_count={} scratch_bytes={}",
                    c.op, c.n, c.precision, c.abs_err, c.rel_err, c.alloc_count, c.scratch_bytes
                )
            })
            .collect()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("config error: {0}")]
    Config(String),
    #[error("kernel error: {0}")]
    Kernel(#[from] crate::Error),
}

/// Gated limits per (op, precision): `(abs_unit, abs_raw, rel)`.
fn thresholds(op: BenchOp, precision: Precision) -> (Option<f64>, Option<f64>, Option<f64>) {
    let f32bit = precision == Precision::F32;
    match op {
        BenchOp::Fft => (
            Some(if f32bit { 5e-6 } else { 1e-12 }),
            None,
            Some(if f32bit { 5e-3 } else { 1e-9 }),
        ),
        BenchOp::Ifft => (Some(if f32bit { 5e-6 } else { 1e-12 }), None, None),
        BenchOp::Roundtrip => (None, Some(if f32bit { 1e-5 } else { 1e-11 }), None),
        BenchOp::CirculantFwd | BenchOp::CirculantBwd => {
            (Some(if f32bit { 1e-4 } else { 1e-10 }), None, None)
        }
    }
}

/// Accuracy of `got` against `reference`, elementwise in f64.
#[derive(Debug, Clone, Copy)]
struct ErrMetrics {
    max_abs_raw: f64,
    max_abs_unit: f64,
    mean_abs: f64,
    max_rel: f64,
    len: usize,
}

fn error_metrics(got: &[f64], reference: &[f64]) -> ErrMetrics {
    assert_eq!(got.len(), reference.len());
    let scale = reference.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut max_abs = 0.0f64;
    let mut sum_abs = 0.0f64;
    let mut max_rel = 0.0f64;
    for (&g, &r) in got.iter().zip(reference) {
        let d = (g - r).abs();
        max_abs = max_abs.max(d);
        sum_abs += d;
        if r != 0.0 {
            max_rel = max_rel.max(d / r.abs());
        }
    }
    ErrMetrics {
        max_abs_raw: max_abs,
        max_abs_unit: if scale > 0.0 { max_abs / scale } else { max_abs },
        mean_abs: sum_abs / got.len() as f64,
        max_rel,
        len: got.len(),
    }
}

impl ErrMetrics {
    /// Combine metrics of two separately normalized buffers.
    fn merge(self, other: ErrMetrics) -> ErrMetrics {
        let total = (self.len + other.len) as f64;
        ErrMetrics {
            max_abs_raw: self.max_abs_raw.max(other.max_abs_raw),
            max_abs_unit: self.max_abs_unit.max(other.max_abs_unit),
            mean_abs: (self.mean_abs * self.len as f64 + other.mean_abs * other.len as f64)
                / total,
            max_rel: self.max_rel.max(other.max_rel),
            len: self.len + other.len,
        }
    }
}

/// Per-cell deterministic seed derived from the base seed and the cell
/// coordinates (splitmix64 finalizer).
fn cell_seed(base: u64, op: BenchOp, n: usize, precision: Precision) -> u64 {
    let op_code = BenchOp::ALL.iter().position(|&o| o == op).unwrap() as u64;
    let mut z = base
        ^ (op_code << 56)
        ^ ((precision.tag() as u64) << 40)
        ^ (n as u64);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn normal_vec<T: Real>(rng: &mut ChaCha8Rng, len: usize) -> Vec<T> {
    (0..len)
        .map(|_| T::from_f64(rng.sample::<f64, _>(StandardNormal)))
        .collect()
}

fn widen<T: Real>(v: &[T]) -> Vec<f64> {
    v.iter().map(|x| x.as_f64()).collect()
}

#[derive(Debug, Clone, Copy)]
struct TimingStats {
    mean_ns: f64,
    median_ns: f64,
    min_ns: f64,
}

/// Warm up, audit one call for allocations, then time batched calls.
fn time_and_audit(
    reps: usize,
    warmup: usize,
    mut body: impl FnMut(),
) -> Result<(TimingStats, alloc_counter::AllocStats), BenchError> {
    for _ in 0..warmup {
        body();
    }

    let ((), measurement) = alloc_counter::measure(&mut body);
    if !measurement.tracked {
        return Err(BenchError::Config(
            "allocation tracking inactive; register rdfft::CountingAllocator as the global \
             allocator (the rdfft-bench binary does this)"
                .into(),
        ));
    }

    let batch_count = reps.clamp(1, 20);
    let batch_size = reps.div_ceil(batch_count);
    let mut per_call = Vec::with_capacity(batch_count);
    let mut total_ns: u128 = 0;
    let mut calls = 0usize;
    while calls < reps {
        let this_batch = batch_size.min(reps - calls);
        let t0 = Instant::now();
        for _ in 0..this_batch {
            body();
        }
        let ns = t0.elapsed().as_nanos();
        total_ns += ns;
        calls += this_batch;
        per_call.push(ns as f64 / this_batch as f64);
    }
    per_call.sort_by(f64::total_cmp);

    Ok((
        TimingStats {
            mean_ns: total_ns as f64 / calls as f64,
            median_ns: per_call[per_call.len() / 2],
            min_ns: per_call[0],
        },
        measurement.stats,
    ))
}

fn build_cell(
    op: BenchOp,
    n: usize,
    precision: Precision,
    timing: TimingStats,
    alloc: alloc_counter::AllocStats,
    err: Option<ErrMetrics>,
) -> BenchCell {
    let (abs_unit_lim, abs_raw_lim, rel_lim) = thresholds(op, precision);
    let mut passed = alloc.count == 0 && alloc.bytes == 0;
    if let Some(e) = &err {
        if let Some(lim) = abs_unit_lim {
            passed &= e.max_abs_unit <= lim;
        }
        if let Some(lim) = abs_raw_lim {
            passed &= e.max_abs_raw <= lim;
        }
        if let Some(lim) = rel_lim {
            passed &= e.max_rel <= lim;
        }
    }
    BenchCell {
        op,
        n,
        precision,
        mean_ns: timing.mean_ns,
        median_ns: timing.median_ns,
        min_ns: timing.min_ns,
        abs_err: err.as_ref().map(|e| e.max_abs_unit),
        abs_err_raw: err.as_ref().map(|e| e.max_abs_raw),
        mean_abs_err: err.as_ref().map(|e| e.mean_abs),
        rel_err: err.as_ref().map(|e| e.max_rel),
        alloc_count: alloc.count,
        scratch_bytes: alloc.bytes,
        passed,
    }
}

fn bench_fft<T: Real>(n: usize, cfg: &BenchConfig, rng: &mut ChaCha8Rng) -> Result<BenchCell, BenchError> {
    let plan = Plan::<T>::new(n)?;
    let pristine = normal_vec::<T>(rng, n);
    let mut buf = pristine.clone();

    let (timing, alloc) = time_and_audit(cfg.reps, cfg.warmup, || {
        buf.copy_from_slice(&pristine);
        plan.forward_in_place(&mut buf).unwrap();
    })?;

    let err = if cfg.verify {
        let x64 = widen(&pristine);
        let reference = packed::pack(&oracle::naive_dft(&x64))?;
        buf.copy_from_slice(&pristine);
        plan.forward_in_place(&mut buf)?;
        Some(error_metrics(&widen(&buf), &reference))
    } else {
        None
    };
    Ok(build_cell(BenchOp::Fft, n, T::PRECISION, timing, alloc, err))
}

fn bench_ifft<T: Real>(n: usize, cfg: &BenchConfig, rng: &mut ChaCha8Rng) -> Result<BenchCell, BenchError> {
    let plan = Plan::<T>::new(n)?;
    // A realistic packed spectrum: transform of a unit-normal signal,
    // rounded to the working precision.
    let x = normal_vec::<T>(rng, n);
    let spectrum64 = packed::pack(&oracle::naive_dft(&widen(&x)))?;
    let pristine: Vec<T> = spectrum64.iter().map(|&v| T::from_f64(v)).collect();
    let mut buf = pristine.clone();

    let (timing, alloc) = time_and_audit(cfg.reps, cfg.warmup, || {
        buf.copy_from_slice(&pristine);
        plan.inverse_in_place(&mut buf).unwrap();
    })?;

    let err = if cfg.verify {
        // Reference: exact inverse DFT of the same rounded spectrum.
        let rounded64 = widen(&pristine);
        let reference: Vec<f64> = oracle::naive_idft(&packed::unpack(&rounded64)?)
            .iter()
            .map(|c| c.re)
            .collect();
        buf.copy_from_slice(&pristine);
        plan.inverse_in_place(&mut buf)?;
        Some(error_metrics(&widen(&buf), &reference))
    } else {
        None
    };
    Ok(build_cell(BenchOp::Ifft, n, T::PRECISION, timing, alloc, err))
}

fn bench_roundtrip<T: Real>(
    n: usize,
    cfg: &BenchConfig,
    rng: &mut ChaCha8Rng,
) -> Result<BenchCell, BenchError> {
    let plan = Plan::<T>::new(n)?;
    let pristine = normal_vec::<T>(rng, n);
    let mut buf = pristine.clone();

    // Forward + inverse restores the buffer up to roundoff, so the timed
    // body needs no reset copy; each call is one full round trip.
    let (timing, alloc) = time_and_audit(cfg.reps, cfg.warmup, || {
        plan.forward_in_place(&mut buf).unwrap();
        plan.inverse_in_place(&mut buf).unwrap();
    })?;

    let err = if cfg.verify {
        buf.copy_from_slice(&pristine);
        plan.forward_in_place(&mut buf)?;
        plan.inverse_in_place(&mut buf)?;
        Some(error_metrics(&widen(&buf), &widen(&pristine)))
    } else {
        None
    };
    Ok(build_cell(BenchOp::Roundtrip, n, T::PRECISION, timing, alloc, err))
}

fn bench_circulant_fwd<T: Real>(
    p: usize,
    cfg: &BenchConfig,
    rng: &mut ChaCha8Rng,
) -> Result<BenchCell, BenchError> {
    let cols = normal_vec::<T>(rng, p);
    let layer = CirculantLayer::new(p, 1, 1, &cols)?;
    let mut x = normal_vec::<T>(rng, p);
    let mut y = vec![T::zero(); p];
    let mut cache = vec![T::zero(); p];

    let (timing, alloc) = time_and_audit(cfg.reps, cfg.warmup, || {
        layer.forward(&mut x, &mut y, Some(&mut cache)).unwrap();
    })?;

    let err = if cfg.verify {
        let dense = DenseCirculant::new(p, 1, 1, &widen(&cols))?;
        let reference = dense.matvec(&widen(&x))?;
        layer.forward(&mut x, &mut y, Some(&mut cache))?;
        Some(error_metrics(&widen(&y), &reference))
    } else {
        None
    };
    Ok(build_cell(BenchOp::CirculantFwd, p, T::PRECISION, timing, alloc, err))
}

fn bench_circulant_bwd<T: Real>(
    p: usize,
    cfg: &BenchConfig,
    rng: &mut ChaCha8Rng,
) -> Result<BenchCell, BenchError> {
    let cols = normal_vec::<T>(rng, p);
    let layer = CirculantLayer::new(p, 1, 1, &cols)?;
    let x0 = normal_vec::<T>(rng, p);
    let g0 = normal_vec::<T>(rng, p);

    let mut x = x0.clone();
    let mut y = vec![T::zero(); p];
    let mut x_spec = vec![T::zero(); p];
    layer.forward(&mut x, &mut y, Some(&mut x_spec))?;

    let mut g = g0.clone();
    let mut grads = GradientSet::zeros_for(&layer);

    let (timing, alloc) = time_and_audit(cfg.reps, cfg.warmup, || {
        g.copy_from_slice(&g0);
        layer.backward(&x_spec, &mut g, &mut grads).unwrap();
    })?;

    let err = if cfg.verify {
        g.copy_from_slice(&g0);
        layer.backward(&x_spec, &mut g, &mut grads)?;
        let dense = DenseCirculant::new(p, 1, 1, &widen(&cols))?;
        let ref_gx = dense.grad_input(&widen(&g0))?;
        let ref_gw = dense.grad_weights(&widen(&x0), &widen(&g0))?;
        let m_in = error_metrics(&widen(&grads.grad_input), &ref_gx);
        let m_w = error_metrics(&widen(&grads.grad_weights), &ref_gw);
        Some(m_in.merge(m_w))
    } else {
        None
    };
    Ok(build_cell(BenchOp::CirculantBwd, p, T::PRECISION, timing, alloc, err))
}

fn run_cell(
    op: BenchOp,
    n: usize,
    precision: Precision,
    cfg: &BenchConfig,
) -> Result<BenchCell, BenchError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cell_seed(cfg.seed, op, n, precision));
    macro_rules! dispatch {
        ($f:ident) => {
            match precision {
                Precision::F32 => $f::<f32>(n, cfg, &mut rng),
                Precision::F64 => $f::<f64>(n, cfg, &mut rng),
            }
        };
    }
    match op {
        BenchOp::Fft => dispatch!(bench_fft),
        BenchOp::Ifft => dispatch!(bench_ifft),
        BenchOp::Roundtrip => dispatch!(bench_roundtrip),
        BenchOp::CirculantFwd => dispatch!(bench_circulant_fwd),
        BenchOp::CirculantBwd => dispatch!(bench_circulant_bwd),
    }
}

/// Soft check: fft timing medians should scale no worse than C·n·log₂(n)
/// across sizes, within a generous hardware-noise factor of 4.
fn scaling_warnings(cells: &[BenchCell]) -> Vec<String> {
    let mut warnings = Vec::new();
    for precision in [Precision::F32, Precision::F64] {
        let mut points: Vec<(usize, f64)> = cells
            .iter()
            .filter(|c| c.op == BenchOp::Fft && c.precision == precision)
            .map(|c| (c.n, c.median_ns))
            .collect();
        points.sort_by_key(|&(n, _)| n);
        for pair in points.windows(2) {
            let ((a, ta), (b, tb)) = (pair[0], pair[1]);
            let model = (b as f64 * (b as f64).log2()) / (a as f64 * (a as f64).log2());
            if tb > 4.0 * model * ta {
                warnings.push(format!(
                    "fft {precision} median scaling {a}->{b}: observed x{:.1}, n·log n predicts x{model:.1}",
                    tb / ta
                ));
            }
        }
    }
    warnings
}

/// Execute the full measurement matrix.
///
/// Deterministic given the seed (timings excluded). Requires
/// [`crate::CountingAllocator`] to be the registered global allocator so
/// the allocation columns are measured rather than assumed.
pub fn run_bench(cfg: &BenchConfig) -> Result<BenchReport, BenchError> {
    cfg.validate()?;
    let mut cells = Vec::new();
    for &op in &cfg.ops {
        for &n in &cfg.sizes {
            for &precision in &cfg.precisions {
                cells.push(run_cell(op, n, precision, cfg)?);
            }
        }
    }
    let warnings = scaling_warnings(&cells);
    Ok(BenchReport {
        seed: cfg.seed,
        reps: cfg.reps,
        warmup: cfg.warmup,
        verified: cfg.verify,
        cells,
        warnings,
    })
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.3e}")).unwrap_or_default()
}

/// Serialize a report.
///
/// JSON is a stable schema: the top level carries `seed`, `reps`,
/// `warmup`, `verified`, `warnings` and `cells`; every cell carries `op`,
/// `n`, `precision`, `mean_ns`, `median_ns`, `min_ns`, `abs_err`,
/// `abs_err_raw`, `mean_abs_err`, `rel_err`, `alloc_count`,
/// `scratch_bytes` and `passed` (error fields are null without
/// `--verify`). CSV is one row per cell under a header line.
pub fn emit_report(report: &BenchReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let mut out = String::from(
                "op,n,precision,mean_ns,median_ns,min_ns,abs_err,abs_err_raw,mean_abs_err,rel_err,alloc_count,scratch_bytes,passed\n",
            );
            for c in &report.cells {
                out.push_str(&format!(
                    "{},{},{},{:.1},{:.1},{:.1},{},{},{},{},{},{},{}\n",
                    c.op,
                    c.n,
                    c.precision,
                    c.mean_ns,
                    c.median_ns,
                    c.min_ns,
                    fmt_opt(c.abs_err),
                    fmt_opt(c.abs_err_raw),
                    fmt_opt(c.mean_abs_err),
                    fmt_opt(c.rel_err),
                    c.alloc_count,
                    c.scratch_bytes,
                    c.passed
                ));
            }
            out
        }
        OutputFormat::Human => {
            let mut out = String::new();
            out.push_str(&format!(
                "seed={} reps={} warmup={} verified={}\n",
                report.seed, report.reps, report.warmup, report.verified
            ));
            out.push_str(&format!(
                "{:<14} {:>6} {:>5} {:>12} {:>12} {:>12} {:>10} {:>10} {:>6} {:>8} {:>5}\n",
                "op", "n", "prec", "mean_ns", "median_ns", "min_ns", "abs_err", "rel_err",
                "alloc", "scratch", "pass"
            ));
            for c in &report.cells {
                out.push_str(&format!(
                    "{:<14} {:>6} {:>5} {:>12.1} {:>12.1} {:>12.1} {:>10} {:>10} {:>6} {:>8} {:>5}\n",
                    c.op.to_string(),
                    c.n,
                    c.precision.to_string(),
                    c.mean_ns,
                    c.median_ns,
                    c.min_ns,
                    fmt_opt(c.abs_err),
                    fmt_opt(c.rel_err),
                    c.alloc_count,
                    c.scratch_bytes,
                    if c.passed { "ok" } else { "FAIL" }
                ));
            }
            for w in &report.warnings {
                out.push_str(&format!("warning: {w}\n"));
            }
            out
        }
    }
}
