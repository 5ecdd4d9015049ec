//! Worker-count plumbing. With the `parallel` feature the closures run on a
//! rayon pool of the requested size; without it everything is sequential.
//! Callers only ever combine results with exact, order-independent
//! arithmetic, so the output never depends on the worker count.

/// Requested degree of parallelism. `0` means "rayon's default".
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Workers(pub usize);

impl Default for Workers {
    fn default() -> Self {
        Workers(0)
    }
}

impl Workers {
    pub const SEQUENTIAL: Workers = Workers(1);

    pub fn is_sequential(self) -> bool {
        self.0 == 1 || !cfg!(feature = "parallel")
    }
}

/// Map `f` over `items`, preserving input order in the output.
pub fn map<T, R, F>(workers: Workers, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if !workers.is_sequential() {
            use rayon::prelude::*;
            return install(workers, || items.par_iter().map(&f).collect());
        }
    }
    let _ = workers;
    items.iter().map(f).collect()
}

/// Map `f` over `0..len`, preserving order.
pub fn map_range<R, F>(workers: Workers, len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if !workers.is_sequential() {
            use rayon::prelude::*;
            return install(workers, || (0..len).into_par_iter().map(&f).collect());
        }
    }
    let _ = workers;
    (0..len).map(f).collect()
}

#[cfg(feature = "parallel")]
fn install<R: Send>(workers: Workers, op: impl FnOnce() -> R + Send) -> R {
    if workers.0 == 0 {
        return op();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers.0).build() {
        Ok(pool) => pool.install(op),
        Err(_) => op(),
    }
}
