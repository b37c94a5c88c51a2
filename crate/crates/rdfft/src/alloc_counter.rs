//! Instrumented global allocator for auditing the zero-allocation contract.
//!
//! [`CountingAllocator`] wraps the system allocator and counts every
//! acquisition (alloc, zeroed alloc, realloc) on the current thread.
//! Counters are thread-local, so audits are immune to allocations made by
//! other threads (e.g. a parallel test runner).
//!
//! The allocator only counts when registered, which each binary does for
//! itself:
//!
//! ```ignore
//! #[global_allocator]
//! static ALLOC: rdfft::CountingAllocator = rdfft::CountingAllocator;
//! ```
//!
//! [`measure`] reports whether counting is actually live, so a missing
//! registration reads as "not tracked" rather than as a fake zero.

use std::alloc::{GlobalAlloc, Layout, System};
use std::cell::Cell;

thread_local! {
    static COUNT: Cell<u64> = const { Cell::new(0) };
    static BYTES: Cell<u64> = const { Cell::new(0) };
}

/// System allocator wrapper that counts acquisitions per thread.
pub struct CountingAllocator;

unsafe impl GlobalAlloc for CountingAllocator {
    unsafe fn alloc(&self, layout: Layout) -> *mut u8 {
        record(layout.size());
        System.alloc(layout)
    }

    unsafe fn alloc_zeroed(&self, layout: Layout) -> *mut u8 {
        record(layout.size());
        System.alloc_zeroed(layout)
    }

    unsafe fn realloc(&self, ptr: *mut u8, layout: Layout, new_size: usize) -> *mut u8 {
        record(new_size);
        System.realloc(ptr, layout, new_size)
    }

    unsafe fn dealloc(&self, ptr: *mut u8, layout: Layout) {
        System.dealloc(ptr, layout)
    }
}

#[inline]
fn record(size: usize) {
    COUNT.with(|c| c.set(c.get().wrapping_add(1)));
    BYTES.with(|b| b.set(b.get().wrapping_add(size as u64)));
}

/// Cumulative acquisitions on the current thread since it started.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AllocStats {
    pub count: u64,
    pub bytes: u64,
}

/// Snapshot of the current thread's counters.
pub fn snapshot() -> AllocStats {
    AllocStats {
        count: COUNT.with(Cell::get),
        bytes: BYTES.with(Cell::get),
    }
}

/// Acquisitions since an earlier snapshot.
pub fn since(earlier: AllocStats) -> AllocStats {
    let now = snapshot();
    AllocStats {
        count: now.count.wrapping_sub(earlier.count),
        bytes: now.bytes.wrapping_sub(earlier.bytes),
    }
}

/// Outcome of a measured region.
#[derive(Debug, Clone, Copy)]
pub struct Measurement {
    /// Acquisitions attributed to the closure.
    pub stats: AllocStats,
    /// False when [`CountingAllocator`] is not the registered global
    /// allocator, in which case `stats` is meaningless.
    pub tracked: bool,
}

/// Run `f` and report the allocations it performed on this thread.
///
/// A probe allocation before the measured region verifies that counting is
/// live; `tracked` is false otherwise.
pub fn measure<R>(f: impl FnOnce() -> R) -> (R, Measurement) {
    let probe_before = snapshot();
    let probe = std::hint::black_box(Box::new(0u8));
    drop(probe);
    let tracked = since(probe_before).count > 0;

    let before = snapshot();
    let result = f();
    let stats = since(before);
    (result, Measurement { stats, tracked })
}
