//! Index-parallel map, with a sequential build when the `parallel` feature is off.

/// Evaluates `f(0..n)` and collects the results in index order.
///
/// With `parallel = false`, or without the `parallel` feature, runs on the calling thread.
pub fn map_indexed<T, F>(n: usize, parallel: bool, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = parallel;
    (0..n).map(f).collect()
}

/// True when the crate was built with rayon.
pub const fn enabled() -> bool {
    cfg!(feature = "parallel")
}
