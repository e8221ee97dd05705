//! Data-parallel map with a sequential fallback.
//!
//! Built with the default `parallel` feature, `par_map` fans work out over
//! rayon; without it the same call runs sequentially, which is useful for
//! benchmarking the parallel speedup and for minimal builds.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub fn par_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn par_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

/// Find the first item (in input order) whose image under `f` is `Some`.
#[cfg(feature = "parallel")]
pub fn par_find_map_first<T, U, F>(items: Vec<T>, f: F) -> Option<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> Option<U> + Sync + Send,
{
    items.into_par_iter().find_map_first(f)
}

#[cfg(not(feature = "parallel"))]
pub fn par_find_map_first<T, U, F>(items: Vec<T>, f: F) -> Option<U>
where
    F: Fn(T) -> Option<U>,
{
    items.into_iter().find_map(f)
}
