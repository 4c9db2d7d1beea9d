//! Process-wide resource limits.
//!
//! Both limits are read once from the environment (`CODERCO_INDEX_BOUND`,
//! `CODERCO_MAX_DEGREE`) and may be overridden programmatically.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Once;

pub const DEFAULT_INDEX_BOUND: usize = 10_000_000;
pub const DEFAULT_MAX_DEGREE: usize = 4;

static INDEX_BOUND: AtomicUsize = AtomicUsize::new(DEFAULT_INDEX_BOUND);
static MAX_DEGREE: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_DEGREE);
static ENV: Once = Once::new();

fn load_env() {
    ENV.call_once(|| {
        if let Some(v) = read_var("CODERCO_INDEX_BOUND") {
            INDEX_BOUND.store(v, Ordering::Relaxed);
        }
        if let Some(v) = read_var("CODERCO_MAX_DEGREE") {
            MAX_DEGREE.store(v, Ordering::Relaxed);
        }
    });
}

fn read_var(name: &str) -> Option<usize> {
    std::env::var(name).ok()?.trim().parse().ok()
}

/// Largest row or column count any assembled matrix may have.
pub fn index_bound() -> usize {
    load_env();
    INDEX_BOUND.load(Ordering::Relaxed)
}

pub fn set_index_bound(bound: usize) {
    load_env();
    INDEX_BOUND.store(bound, Ordering::Relaxed);
}

/// Highest cochain degree the cohomology drivers will assemble.
pub fn max_degree() -> usize {
    load_env();
    MAX_DEGREE.load(Ordering::Relaxed)
}

pub fn set_max_degree(degree: usize) {
    load_env();
    MAX_DEGREE.store(degree, Ordering::Relaxed);
}
