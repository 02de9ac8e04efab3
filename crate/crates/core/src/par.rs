//! Index-parallel map with deterministic output order.

/// Worker count; `None` uses the global pool.
pub type Workers = Option<usize>;

#[cfg(feature = "parallel")]
pub fn map_indexed<T, F>(count: usize, workers: Workers, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    let run = || (0..count).into_par_iter().with_min_len(64).map(&f).collect();
    match workers {
        Some(1) => (0..count).map(&f).collect(),
        Some(w) => match rayon::ThreadPoolBuilder::new().num_threads(w).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        },
        None => run(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T, F>(count: usize, _workers: Workers, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..count).map(f).collect()
}
