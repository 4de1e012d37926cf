use std::ops::Range;

/// Execution strategy for the data-parallel sweeps.
///
/// Without the `parallel` feature `Parallel` silently runs sequentially.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Parallelism {
    Sequential,
    #[default]
    Parallel,
}

impl Parallelism {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Parallelism::Parallel
    }
}

/// Maps `f` over a range, preserving order.
pub(crate) fn map_range<T, F>(mode: Parallelism, range: Range<u64>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        use rayon::prelude::*;
        return range.into_par_iter().map(f).collect();
    }
    let _ = mode;
    range.map(f).collect()
}

/// Maps `f` over a slice, preserving order.
pub(crate) fn map_slice<S, T, F>(mode: Parallelism, items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = mode;
    items.iter().map(f).collect()
}

/// Folds fixed-size chunks of a range independently and combines the partial
/// results with `reduce`.
pub(crate) fn fold_chunks<T, F, R>(
    mode: Parallelism,
    range: Range<u64>,
    chunk: u64,
    identity: T,
    fold: F,
    reduce: R,
) -> T
where
    T: Send + Sync + Clone,
    F: Fn(Range<u64>) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    let chunk = chunk.max(1);
    let starts: Vec<u64> = (range.start..range.end).step_by(chunk as usize).collect();
    let end = range.end;
    let piece = |&s: &u64| fold(s..(s + chunk).min(end));
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        use rayon::prelude::*;
        return starts
            .par_iter()
            .map(piece)
            .reduce(|| identity.clone(), &reduce);
    }
    let _ = mode;
    starts.iter().map(piece).fold(identity, reduce)
}
