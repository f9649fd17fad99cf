/// How independent trials are scheduled.
///
/// `Parallel` uses the rayon pool when the `parallel` feature is enabled and
/// runs sequentially otherwise. Results come back in index order either way.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

/// `f(0), …, f(n−1)` in order.
pub fn map_indexed<T, F>(n: u64, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    match exec {
        Execution::Sequential => (0..n).map(f).collect(),
        Execution::Parallel => parallel(n, f),
    }
}

#[cfg(feature = "parallel")]
fn parallel<T: Send, F: Fn(u64) -> T + Sync + Send>(n: u64, f: F) -> Vec<T> {
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn parallel<T: Send, F: Fn(u64) -> T + Sync + Send>(n: u64, f: F) -> Vec<T> {
    (0..n).map(f).collect()
}
