//! Switchable data-parallel execution.
//!
//! With the default `parallel` feature the helpers here fan work out through
//! rayon; without it they compile down to plain sequential iteration. The
//! runtime override exists so benchmarks can compare both paths inside one
//! binary.
//!
//! Results are always produced as an index-ordered `Vec` and reduced
//! sequentially by callers, so outputs are bit-identical whichever path runs.

use std::sync::atomic::{AtomicBool, Ordering};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

static FORCE_SEQUENTIAL: AtomicBool = AtomicBool::new(false);

/// Force the sequential path even when the `parallel` feature is compiled in.
pub fn set_sequential(sequential: bool) {
    FORCE_SEQUENTIAL.store(sequential, Ordering::Relaxed);
}

/// Whether the helpers will actually run on the rayon pool.
pub fn is_parallel() -> bool {
    cfg!(feature = "parallel") && !FORCE_SEQUENTIAL.load(Ordering::Relaxed)
}

/// `(0..n).map(f)` collected in index order, parallel when enabled.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        return (0..n).into_par_iter().map(f).collect();
    }
    (0..n).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_paths_agree_in_order() {
        let f = |i: usize| (i * i) as f64 / 3.0;
        set_sequential(true);
        let seq = map_indexed(1000, f);
        set_sequential(false);
        let par = map_indexed(1000, f);
        assert_eq!(seq, par);
    }
}
