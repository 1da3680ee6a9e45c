//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) the helpers run on the rayon pool;
//! without it, or after [`set_parallel(false)`](set_parallel), they run on the
//! calling thread. Output order never depends on scheduling: every helper
//! returns results in input order.

use std::sync::atomic::{AtomicBool, Ordering};

static PARALLEL: AtomicBool = AtomicBool::new(true);

/// Enable or disable parallel execution at runtime. Has no effect when the
/// crate is built without the `parallel` feature.
pub fn set_parallel(enabled: bool) {
    PARALLEL.store(enabled, Ordering::Relaxed);
}

pub fn parallel_enabled() -> bool {
    cfg!(feature = "parallel") && PARALLEL.load(Ordering::Relaxed)
}

/// Size the global worker pool. Only the first call takes effect.
pub fn init_threads(threads: usize) {
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
}

/// `items.iter().map(f).collect()`, possibly in parallel.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel_enabled() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

/// Map over `0..n` in chunks, concatenating the per-chunk outputs in order.
pub fn flat_map_range<R, F>(n: usize, chunk: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(std::ops::Range<usize>) -> Vec<R> + Sync + Send,
{
    let chunk = chunk.max(1);
    let ranges: Vec<_> = (0..n)
        .step_by(chunk)
        .map(|lo| lo..(lo + chunk).min(n))
        .collect();
    map(&ranges, |r| f(r.clone())).into_iter().flatten().collect()
}

/// Filter `items` by `pred`, preserving order.
pub fn filter<T, F>(items: &[T], pred: F) -> Vec<T>
where
    T: Sync + Send + Clone,
    F: Fn(&T) -> bool + Sync + Send,
{
    flat_map_range(items.len(), 1 << 14, |r| {
        items[r].iter().filter(|x| pred(x)).cloned().collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved_both_ways() {
        let xs: Vec<u32> = (0..100_000).collect();
        set_parallel(true);
        let a = filter(&xs, |x| x % 7 == 3);
        set_parallel(false);
        let b = filter(&xs, |x| x % 7 == 3);
        set_parallel(true);
        assert_eq!(a, b);
        assert_eq!(a[0], 3);
        assert!(a.windows(2).all(|w| w[0] < w[1]));
    }
}
