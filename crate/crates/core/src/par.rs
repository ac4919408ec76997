//! Thin switch between rayon and plain iteration.
//!
//! With the default `parallel` feature the mapping helpers fan out over a
//! rayon pool; without it they run sequentially with identical results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `items`, preserving input order in the output.
#[cfg(feature = "parallel")]
pub fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    items.into_iter().map(f).collect()
}

/// Sequential mapping regardless of features; baseline for benchmarks.
pub fn map_collect_seq<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}
